"""Formal functor expressions between the categories of the local system.

Atoms
    Loc(P, lam, A)      D^b(A_lam-mod_0)            -> D^b(D_lam(G/P)-mod_0)
    Gamma(P, lam, A)    D^b(D_lam(G/P)-mod_0)       -> D^b(A_lam-mod_0)
    Twist(nu)           D^b(D_lam(G/P)-mod_0)       -> D^b(D_{lam+nu}(G/P)-mod_0)
    FDCoh(P)            D^b(D_0(G/P)-mod_0)         -> D^b(Coh_0(T*G/P))
    Kernel(P, word)     D^b(Coh_0(T*G/P))           -> itself (braid action)

``Compose(f1, ..., fn)`` means ``f1 o ... o fn`` (fn is applied first).
Simplification uses only the rewrite axioms listed in ``simplify``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .braid import BraidWord
from .errors import IllTyped


def _vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def _fmt(v) -> str:
    return "(" + ",".join(str(Fraction(x)) for x in v) + ")"


class FunctorExpr:
    def inverse(self) -> "FunctorExpr":
        return Inverse(self)


@dataclass(frozen=True)
class Identity(FunctorExpr):
    def __str__(self):
        return "Id"


@dataclass(frozen=True)
class Loc(FunctorExpr):
    P: str
    weight: tuple
    alcove: tuple

    def __post_init__(self):
        object.__setattr__(self, "weight", _vec(self.weight))

    def __str__(self):
        return f"Loc^{self.P}_{_fmt(self.weight)}"


@dataclass(frozen=True)
class Gamma(FunctorExpr):
    P: str
    weight: tuple
    alcove: tuple

    def __post_init__(self):
        object.__setattr__(self, "weight", _vec(self.weight))

    def __str__(self):
        return f"Gamma^{self.P}_{_fmt(self.weight)}"


@dataclass(frozen=True)
class Twist(FunctorExpr):
    nu: tuple

    def __post_init__(self):
        object.__setattr__(self, "nu", _vec(self.nu))

    def __str__(self):
        return f"O{_fmt(self.nu)}"


@dataclass(frozen=True)
class FDCoh(FunctorExpr):
    P: str

    def __str__(self):
        return f"F_(D,Coh_{self.P})"


@dataclass(frozen=True)
class Kernel(FunctorExpr):
    P: str
    word: BraidWord

    def __str__(self):
        return f"K_{self.P}[{self.word}]"


@dataclass(frozen=True)
class Inverse(FunctorExpr):
    expr: FunctorExpr

    def __str__(self):
        return f"({self.expr})^-1"


@dataclass(frozen=True)
class Compose(FunctorExpr):
    factors: tuple

    def __str__(self):
        return " . ".join(str(f) for f in self.factors) or "Id"


def compose(*factors: FunctorExpr) -> FunctorExpr:
    return Compose(tuple(factors))


# typing ----------------------------------------------------------------------

@dataclass(frozen=True)
class CategoryLabel:
    kind: str                   # "alcove", "dmod" or "coh"
    P: str | None = None
    weight: tuple | None = None
    alcove: tuple | None = None

    def __str__(self):
        if self.kind == "alcove":
            return f"D^b(A_lambda-mod_0)[k={list(self.alcove)}]"
        if self.kind == "coh":
            return f"D^b(Coh_0(T*G/{self.P}))"
        w = "?" if self.weight is None else _fmt(self.weight)
        return f"D^b(D_{w}(G/{self.P or '?'})-mod_0)"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "label": str(self)}
        if self.alcove is not None:
            out["k"] = list(self.alcove)
        if self.P is not None:
            out["P"] = self.P
        return out


def alcove_category(k) -> CategoryLabel:
    return CategoryLabel("alcove", alcove=tuple(k))


def point_category(P: str) -> CategoryLabel:
    return CategoryLabel("coh", P=P)


def _atom_type(atom, src):
    if isinstance(atom, Loc):
        want = alcove_category(atom.alcove)
        return want, CategoryLabel("dmod", atom.P, atom.weight)
    if isinstance(atom, Gamma):
        return CategoryLabel("dmod", atom.P, atom.weight), alcove_category(atom.alcove)
    if isinstance(atom, FDCoh):
        zero = None if src is None or src.weight is None else tuple(Fraction(0) for _ in src.weight)
        return CategoryLabel("dmod", atom.P, zero), point_category(atom.P)
    if isinstance(atom, Inverse) and isinstance(atom.expr, FDCoh):
        zero = None
        return point_category(atom.expr.P), CategoryLabel("dmod", atom.expr.P, zero)
    if isinstance(atom, Kernel):
        return point_category(atom.P), point_category(atom.P)
    if isinstance(atom, Twist):
        if src is None:
            wild = CategoryLabel("dmod")      # polymorphic: any twisted D-module category
            return wild, wild
        if src.kind != "dmod":
            raise IllTyped(f"{atom} applied to {src}")
        w = src.weight
        tgt = None if w is None else tuple(a + b for a, b in zip(w, atom.nu))
        return src, CategoryLabel("dmod", src.P, tgt)
    raise IllTyped(f"not an atom: {atom!r}")


def _compatible(have: CategoryLabel, want: CategoryLabel) -> bool:
    if have.kind != want.kind:
        return False
    if have.kind == "dmod" and None in (have.P, want.P):
        return True
    if have.P != want.P or have.alcove != want.alcove:
        return False
    if have.weight is None or want.weight is None:
        return True
    return have.weight == want.weight


def infer_type(expr: FunctorExpr) -> tuple[CategoryLabel | None, CategoryLabel | None]:
    """(source, target) of an expression; raises IllTyped on a mismatch."""
    atoms = _flatten(_push_inverses(expr))
    src = cur = None
    for atom in reversed(atoms):
        a_src, a_tgt = _atom_type(atom, cur)
        if cur is None:
            src = a_src
        elif not _compatible(cur, a_src):
            raise IllTyped(f"{atom} expects {a_src}, got {cur}")
        if a_tgt.kind == "dmod" and a_tgt.weight is None and cur is not None and cur.kind == "dmod":
            a_tgt = CategoryLabel("dmod", a_tgt.P, cur.weight)
        cur = a_tgt
    return src, cur


# normalization ------------------------------------------------------------------

def _push_inverses(expr: FunctorExpr, inv: bool = False) -> FunctorExpr:
    if isinstance(expr, Inverse):
        return _push_inverses(expr.expr, not inv)
    if isinstance(expr, Compose):
        parts = [_push_inverses(f, inv) for f in expr.factors]
        return Compose(tuple(reversed(parts)) if inv else tuple(parts))
    if not inv:
        return expr
    if isinstance(expr, Loc):
        return Gamma(expr.P, expr.weight, expr.alcove)
    if isinstance(expr, Gamma):
        return Loc(expr.P, expr.weight, expr.alcove)
    if isinstance(expr, Twist):
        return Twist(tuple(-x for x in expr.nu))
    if isinstance(expr, Kernel):
        return Kernel(expr.P, expr.word.inverse())
    if isinstance(expr, Identity):
        return expr
    return Inverse(expr)


def _flatten(expr: FunctorExpr) -> list:
    if isinstance(expr, Compose):
        out = []
        for f in expr.factors:
            out.extend(_flatten(f))
        return out
    return [expr]


def _is_fd_inv(atom, P=None) -> bool:
    return isinstance(atom, Inverse) and isinstance(atom.expr, FDCoh) and (P is None or atom.expr.P == P)


# callback (P, source alcove, target alcove) -> canonical parabolic or None
AxiomOracle = Callable[[str, tuple, tuple], "str | None"]


@dataclass
class SimplifyStats:
    steps: int = 0
    axiom_uses: int = 0
    axiom_sites: list = field(default_factory=list)


def _rewrite_once(atoms: list, axiom: AxiomOracle | None, stats: SimplifyStats) -> bool:
    for i, a in enumerate(atoms):
        if isinstance(a, Identity) or (isinstance(a, Twist) and not any(a.nu)) \
                or (isinstance(a, Kernel) and not len(a.word.free_reduce())):
            del atoms[i]
            return True
    for i in range(len(atoms) - 1):
        a, b = atoms[i], atoms[i + 1]
        pair = None
        if isinstance(a, Gamma) and isinstance(b, Loc) and (a.P, a.weight, a.alcove) == (b.P, b.weight, b.alcove):
            pair = []
        elif isinstance(a, Loc) and isinstance(b, Gamma) and (a.P, a.weight, a.alcove) == (b.P, b.weight, b.alcove):
            pair = []
        elif isinstance(a, Twist) and isinstance(b, Twist):
            pair = [Twist(tuple(x + y for x, y in zip(a.nu, b.nu)))]
        elif isinstance(a, FDCoh) and _is_fd_inv(b, a.P):
            pair = []
        elif _is_fd_inv(a) and isinstance(b, FDCoh) and b.P == a.expr.P:
            pair = []
        elif isinstance(a, Kernel) and isinstance(b, Kernel) and a.P == b.P:
            pair = [Kernel(a.P, (a.word * b.word).free_reduce())]
        if pair is not None:
            atoms[i:i + 2] = pair
            return True
    if axiom is not None:
        for i in range(len(atoms) - 2):
            g, t, l = atoms[i], atoms[i + 1], atoms[i + 2]
            if not (isinstance(g, Gamma) and isinstance(t, Twist) and isinstance(l, Loc)):
                continue
            if g.P != l.P or tuple(a - b for a, b in zip(g.weight, l.weight)) != t.nu:
                continue
            target = axiom(g.P, l.alcove, g.alcove)
            if target is not None and target != g.P:
                atoms[i] = Gamma(target, g.weight, g.alcove)
                atoms[i + 2] = Loc(target, l.weight, l.alcove)
                stats.axiom_uses += 1
                stats.axiom_sites.append({"from": g.P, "to": target,
                                          "source": list(l.alcove), "target": list(g.alcove)})
                return True
    return False


def simplify(expr: FunctorExpr, axiom: AxiomOracle | None = None,
             stats: SimplifyStats | None = None) -> FunctorExpr:
    """Normal form under the rewrite axioms.

    * ``Gamma^P_lam o Loc^P_lam -> Id`` and ``Loc^P_lam o Gamma^P_lam -> Id``;
    * ``Twist(0) -> Id``, ``Twist(a) o Twist(b) -> Twist(a + b)``;
    * ``F o F^-1 -> Id`` and inverses pushed to atoms;
    * braid kernels multiply, empty kernels vanish;
    * with ``axiom``: ``Gamma^Q_mu Twist(mu - lam) Loc^Q_lam`` is relabelled to the
      parabolic the oracle names (independence of the refining parabolic).

    Every rule shortens the expression or moves a parabolic label to its
    canonical representative, so the loop terminates.
    """
    infer_type(expr)
    stats = stats if stats is not None else SimplifyStats()
    atoms = _flatten(_push_inverses(expr))
    while _rewrite_once(atoms, axiom, stats):
        stats.steps += 1
    if not atoms:
        return Identity()
    if len(atoms) == 1:
        return atoms[0]
    return Compose(tuple(atoms))


def is_identity(expr: FunctorExpr) -> bool:
    return isinstance(expr, Identity)
