"""Verification suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import build_arrangement
from .braid import AffineBraidGroup, BraidWord, T
from .errors import LevelTooSmall
from .heckeshadow import V_MINUS_V_INV, DemazureLusztig, GroupAlgebraElem, ball
from .localsystem import VerifyOptions, verify_local_system
from .report import Report
from .rootdata import RootDatum, parse_type

SUITES = ("salvetti", "hecke", "bernstein", "localsystem")


@dataclass(frozen=True)
class Config:
    series: str
    rank: int
    J: tuple[int, ...] = ()
    p: int = 5
    window: Fraction | None = None
    seed: int = 0
    bound: int = 20000
    radius: int = 2
    loops: int = 20
    loop_length: int = 8
    v_spec: Fraction | None = None

    @property
    def root_datum(self) -> RootDatum:
        return parse_type(f"{self.series}{self.rank}")

    def validate(self) -> "Config":
        rd = self.root_datum
        if self.p <= rd.coxeter_number:
            raise LevelTooSmall(f"p={self.p} must exceed the Coxeter number h={rd.coxeter_number}")
        if not set(self.J) <= set(range(1, rd.rank + 1)):
            raise ValueError(f"J={list(self.J)} is not a subset of 1..{rd.rank}")
        if self.window is not None and self.window <= 0:
            raise ValueError("window radius must be positive")
        if self.radius < 0 or self.bound <= 0 or self.loops < 0 or self.loop_length < 2:
            raise ValueError("radius, bound, loops and loop length must be positive")
        if self.v_spec is not None and self.v_spec == 0:
            raise ValueError("v-specialization must be nonzero")
        return self

    def effective_window(self) -> Fraction:
        return self.window if self.window is not None else Fraction(2 * self.p)


def _agree(a: GroupAlgebraElem, b: GroupAlgebraElem, v_spec) -> bool:
    if v_spec is None:
        return a == b
    return a.evaluate(v_spec) == b.evaluate(v_spec)


def verify_hecke(cfg: Config) -> Report:
    """Quadratic and braid relations of the Demazure-Lusztig operators on a ball."""
    rd = cfg.root_datum
    dl = DemazureLusztig(rd, cfg.p)
    group = AffineBraidGroup(rd, cfg.p, cfg.bound, cfg.radius)
    testset = ball(rd.rank, cfg.radius)
    certifying = cfg.v_spec is None
    report = Report()
    if not certifying:
        report.notes.append(f"v specialized to {cfg.v_spec}: screening only, not a certificate")
    for s in dl.W.indices:
        bad = None
        for x in testset:
            f = GroupAlgebraElem.basis(x)
            tf = dl.apply_T(s, f)
            # (T - v)(T + v^-1) = 0  <=>  T^2 = (v - v^-1) T + 1
            if not _agree(dl.apply_T(s, tf), tf.scale(V_MINUS_V_INV) + f, cfg.v_spec):
                bad = list(x)
                break
        report.add(f"hecke/quadratic/s{s}", "hecke-quadratic", bad is None,
                   relation=f"(T{s} - v)(T{s} + v^-1) = 0", test_set_size=len(testset),
                   witness=bad, certifying=certifying)
    for i in dl.W.indices:
        for j in dl.W.indices:
            if j <= i:
                continue
            m = group.coxeter_m(i, j)
            if m is None:
                continue
            lhs = BraidWord(tuple(T(i if k % 2 == 0 else j) for k in range(m)))
            rhs = BraidWord(tuple(T(j if k % 2 == 0 else i) for k in range(m)))
            ok = dl.operators_agree(lhs, rhs, testset, cfg.v_spec)
            report.add(f"hecke/braid/s{i}s{j}", "hecke-braid", ok, m=m,
                       relation=f"{lhs} = {rhs}", test_set_size=len(testset),
                       certifying=certifying)
    return report.sorted()


def verify_bernstein(cfg: Config) -> Report:
    """Every pairing-0 and pairing-1 Bernstein relation with x in the test ball."""
    rd = cfg.root_datum
    group = AffineBraidGroup(rd, cfg.p, cfg.bound, cfg.radius)
    report = Report()
    for s in range(1, rd.rank + 1):
        for x in ball(rd.rank, cfg.radius):
            if x[s - 1] not in (0, 1):
                continue
            verdict = group.bernstein_check(s, x)
            xs = ",".join(str(c) for c in x)
            report.add(f"bernstein/s{s}/({xs})", "bernstein", verdict.holds,
                       pairing=x[s - 1], relation=verdict.relation,
                       certificate=verdict.certificate)
    return report.sorted()


def verify_localsystem_suite(cfg: Config, suites=("salvetti", "independence", "identity", "purity")) -> Report:
    arr = build_arrangement(cfg.root_datum, cfg.J, cfg.p)
    opts = VerifyOptions(window=cfg.effective_window(), loops=cfg.loops,
                         loop_length=cfg.loop_length, seed=cfg.seed,
                         search_bound=cfg.bound, test_radius=cfg.radius, suites=tuple(suites))
    return verify_local_system(arr, opts)


def run_suite(name: str, cfg: Config) -> Report:
    if name == "salvetti":
        return verify_localsystem_suite(cfg, ("salvetti",))
    if name == "hecke":
        return verify_hecke(cfg)
    if name == "bernstein":
        return verify_bernstein(cfg)
    if name == "localsystem":
        return verify_localsystem_suite(cfg)
    raise ValueError(f"unknown suite {name!r}")


def run_suites(names, cfg: Config, jobs: int = 1) -> Report:
    """Run suites (concurrently when jobs > 1); the merged report is sorted by id."""
    names = list(names)
    if jobs > 1 and len(names) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=min(jobs, len(names))) as pool:
            parts = list(pool.map(run_suite, names, [cfg] * len(names)))
    else:
        parts = [run_suite(n, cfg) for n in names]
    out = Report()
    for part in parts:
        out.extend(part)
    return out.sorted()
