"""The local system of categories on the complexified arrangement complement.

Points of the groupoid are the real alcoves and one symbolic point ``pt_P``
for each parabolic ``P`` with the fixed Levi.  Paths are token sequences:

* ``crossPos(wall)``  positive half loop to the alcove across a wall;
* ``crossNeg(wall)``  the inverse of the positive half loop back;
* ``toPoint(P)``      the straight path from the current alcove to ``pt_P``;
* ``fromPoint(P, k)`` the straight path from ``pt_P`` down to alcove k.

Each path compiles to a formal functor expression and to an affine braid
word; ``verify_local_system`` checks the relations that make both well
defined.

Parabolics with Levi L correspond to chambers of the central arrangement of
non-Levi coroots on V.  They are enumerated as ``w^-1 P_{J'} w`` for the
standard parabolics ``P_{J'}`` associated with ``P_J`` and the ``w`` with
``w(Phi_J) = Phi_{J'}``; the cone of such a parabolic is spanned by the
``w^-1 omega_i``, i outside J'.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .arrangement import (Alcove, Arrangement, ConeSpec, Wall, build_arrangement,
                          cone_order)
from .braid import AffineBraidGroup, BraidWord, DEFAULT_SEARCH_BOUND
from .errors import (InvalidAlcove, InvalidParabolic, InvalidPath,
                     NoValidParabolic, NotALoop, NotSupported)
from .functors import (CategoryLabel, Compose, FDCoh, FunctorExpr, Gamma,
                       Inverse, Kernel, Loc, SimplifyStats, Twist,
                       alcove_category, point_category, simplify)
from .report import Report
from .rootdata import associated_subsets, conjugators


# parabolics --------------------------------------------------------------------

@dataclass(frozen=True)
class Parabolic:
    J: tuple[int, ...]
    variant: int
    cone: ConeSpec = field(compare=False)

    @property
    def name(self) -> str:
        base = "B" if not self.J else "P{" + ",".join(map(str, self.J)) + "}"
        return base if self.variant == 0 else f"{base}#{self.variant}"

    @property
    def eta(self) -> tuple[Fraction, ...]:
        """An interior direction of the cone."""
        gens = self.cone.generators
        return tuple(sum(g[i] for g in gens) for i in range(self.cone.dim))

    def to_json(self) -> dict:
        return {"P": list(self.J), "variant": self.variant, "name": self.name,
                "cone": self.cone.to_json()}

    def __str__(self):
        return self.name


def parabolic_class(arr: Arrangement) -> tuple[Parabolic, ...]:
    """Parabolics with the Levi of ``P_J``; the first entry is ``P_J`` itself."""
    if "parabolics" in arr._cache:
        return arr._cache["parabolics"]
    rd, J = arr.rd, arr.J
    subsets = associated_subsets(rd, J)
    subsets.sort(key=lambda s: (s != J, sorted(s)))
    seen, out = set(), []
    for J2 in subsets:
        variant = 0
        for w in conjugators(rd, J, J2):
            winv = linalg.to_int_matrix(linalg.inverse(w.matrix))
            gens = []
            for i in range(1, rd.rank + 1):
                if i in J2:
                    continue
                col = tuple(row[i - 1] for row in winv)     # w^-1 omega_i
                gens.append(arr.restrict(col))
            key = tuple(sorted(linalg.primitive(g) for g in gens))
            if key in seen:
                continue
            seen.add(key)
            out.append(Parabolic(tuple(sorted(J2)), variant, ConeSpec(tuple(gens))))
            variant += 1
    arr._cache["parabolics"] = tuple(out)
    return arr._cache["parabolics"]


# paths ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathToken:
    kind: str                         # crossPos, crossNeg, toPoint, fromPoint
    wall: int | None = None
    P: Parabolic | None = None
    target: Alcove | None = None

    @classmethod
    def cross_pos(cls, wall: int) -> "PathToken":
        return cls("crossPos", wall=wall)

    @classmethod
    def cross_neg(cls, wall: int) -> "PathToken":
        return cls("crossNeg", wall=wall)

    @classmethod
    def to_point(cls, P: Parabolic) -> "PathToken":
        return cls("toPoint", P=P)

    @classmethod
    def from_point(cls, P: Parabolic, target: Alcove) -> "PathToken":
        return cls("fromPoint", P=P, target=target)

    def to_json(self) -> dict:
        if self.kind in ("crossPos", "crossNeg"):
            return {self.kind: {"wall": self.wall}}
        body = {"P": list(self.P.J)}
        if self.P.variant:
            body["variant"] = self.P.variant
        if self.kind == "fromPoint":
            body["k"] = list(self.target.k)
        return {self.kind: body}


@dataclass(frozen=True)
class Path:
    base: Alcove
    tokens: tuple[PathToken, ...] = ()

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "tokens": [t.to_json() for t in self.tokens]}

    def __len__(self):
        return len(self.tokens)


Location = "Alcove | Parabolic"


@dataclass(frozen=True)
class Step:
    token: PathToken
    source: object
    target: object
    origin: Alcove | None = None      # alcove a toPoint/fromPoint pair started from


# the local system -------------------------------------------------------------

@dataclass
class VerifyOptions:
    window: Fraction | int | None = None      # default 2p
    loops: int = 20
    loop_length: int = 8
    seed: int = 0
    search_bound: int = DEFAULT_SEARCH_BOUND
    test_radius: int = 2
    gallery_words: int = 4
    suites: tuple[str, ...] = ("salvetti", "independence", "identity", "purity")


class LocalSystem:
    def __init__(self, arr: Arrangement, search_bound: int = DEFAULT_SEARCH_BOUND,
                 test_radius: int = 2):
        self.arr = arr
        self.braid = AffineBraidGroup(arr.rd, arr.p, search_bound, test_radius)
        self.parabolics = parabolic_class(arr)
        self.P0 = self.parabolics[0]
        self._full = build_arrangement(arr.rd, (), arr.p)
        self._order: dict = {}
        self._lift: dict = {}
        self._segment: dict = {}

    # parabolic labels --------------------------------------------------------

    def parabolic(self, J: Iterable[int], variant: int = 0) -> Parabolic:
        J = tuple(sorted(int(j) for j in J))
        for P in self.parabolics:
            if P.J == J and P.variant == variant:
                return P
        names = ", ".join(P.name for P in self.parabolics)
        raise InvalidParabolic(f"J={list(J)} variant {variant} is not in the class [{names}]")

    def by_name(self, name: str) -> Parabolic:
        for P in self.parabolics:
            if P.name == name:
                return P
        raise InvalidParabolic(name)

    def category_at(self, point) -> CategoryLabel:
        if isinstance(point, Parabolic):
            if point not in self.parabolics:
                raise InvalidParabolic(point.name)
            return point_category(point.name)
        if isinstance(point, Alcove):
            self.arr.geometry(point)
            return alcove_category(point.k)
        raise InvalidPath(f"not a point of the groupoid: {point!r}")

    # order and refinement ----------------------------------------------------------

    def order(self, P: Parabolic, a: Alcove, b: Alcove) -> bool:
        key = (P.name, a, b)
        if key not in self._order:
            self._order[key] = cone_order(self.arr, a, b, P.cone)
        return self._order[key]

    def refine_crossing(self, a: Alcove, b: Alcove) -> list[Parabolic]:
        """Parabolics P of the class with ``a <_P b``, in class order."""
        self.arr.wall_between(a, b)
        return [P for P in self.parabolics if self.order(P, a, b)]

    def weight(self, alc: Alcove) -> tuple:
        return tuple(Fraction(x) for x in self.arr.representative(alc))

    # paths ----------------------------------------------------------------------------

    def path_from_json(self, data: dict) -> Path:
        try:
            base = Alcove(tuple(int(x) for x in data["base"]["k"]))
            tokens = []
            for tok in data.get("tokens", []):
                ((kind, body),) = tok.items()
                if kind in ("crossPos", "crossNeg"):
                    tokens.append(PathToken(kind, wall=int(body["wall"])))
                elif kind in ("toPoint", "fromPoint"):
                    P = self.parabolic(body["P"], int(body.get("variant", 0)))
                    target = Alcove(tuple(int(x) for x in body["k"])) if kind == "fromPoint" else None
                    tokens.append(PathToken(kind, P=P, target=target))
                else:
                    raise InvalidPath(f"unknown token {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidPath(f"malformed path: {exc}") from exc
        return Path(base, tuple(tokens))

    def trace(self, path: Path) -> list[Step]:
        try:
            self.arr.geometry(path.base)
        except InvalidAlcove as exc:
            raise InvalidPath(f"invalid base alcove: {exc}") from exc
        cur, origin, steps = path.base, None, []
        for tok in path.tokens:
            if tok.kind in ("crossPos", "crossNeg"):
                if not isinstance(cur, Alcove):
                    raise InvalidPath(f"{tok.kind} from the point {cur}")
                try:
                    _, nxt = self.arr.neighbor_across(cur, tok.wall)
                except IndexError as exc:
                    raise InvalidPath(str(exc)) from exc
                steps.append(Step(tok, cur, nxt))
            elif tok.kind == "toPoint":
                if not isinstance(cur, Alcove):
                    raise InvalidPath("toPoint must start at an alcove")
                origin, nxt = cur, tok.P
                steps.append(Step(tok, cur, nxt))
            elif tok.kind == "fromPoint":
                if cur != tok.P:
                    raise InvalidPath(f"fromPoint({tok.P}) does not start at pt_{tok.P}")
                if not self.arr.is_valid(tok.target):
                    raise InvalidPath(f"invalid target alcove {list(tok.target.k)}")
                nxt = tok.target
                steps.append(Step(tok, cur, nxt, origin))
            else:
                raise InvalidPath(f"unknown token {tok.kind!r}")
            cur = nxt
        return steps

    def endpoint(self, path: Path):
        steps = self.trace(path)
        return steps[-1].target if steps else path.base

    def is_loop(self, path: Path) -> bool:
        return self.endpoint(path) == path.base

    def concat(self, p1: Path, p2: Path) -> Path:
        if self.endpoint(p1) != p2.base:
            raise InvalidPath("paths do not chain")
        return Path(p1.base, p1.tokens + p2.tokens)

    def reverse(self, path: Path) -> Path:
        """The reversed path (inverse in the groupoid)."""
        steps = self.trace(path)
        end = steps[-1].target if steps else path.base
        if not isinstance(end, Alcove):
            raise NotSupported("cannot reverse a path ending at a point pt_P")
        out = []
        for st in reversed(steps):
            tok = st.token
            if tok.kind in ("crossPos", "crossNeg"):
                idx = self._wall_index(st.target, st.source)
                out.append(PathToken("crossNeg" if tok.kind == "crossPos" else "crossPos", wall=idx))
            elif tok.kind == "fromPoint":
                out.append(PathToken.to_point(tok.P))
            else:
                out.append(PathToken.from_point(tok.P, st.source))
        return Path(end, tuple(out))

    def _wall_index(self, a: Alcove, b: Alcove) -> int:
        for i, (_, nb) in enumerate(self.arr.walls_and_neighbors(a)):
            if nb == b:
                return i
        raise InvalidPath(f"{list(a.k)} and {list(b.k)} are not adjacent")

    # functors -------------------------------------------------------------------

    def crossing_functor(self, a: Alcove, b: Alcove, P: Parabolic) -> FunctorExpr:
        lam, mu = self.weight(a), self.weight(b)
        return Compose((Gamma(P.name, mu, b.k), Twist(linalg.vsub(mu, lam)),
                        Loc(P.name, lam, a.k)))

    def to_point_functor(self, a: Alcove, P: Parabolic) -> FunctorExpr:
        lam = self.weight(a)
        return Compose((FDCoh(P.name), Twist(tuple(-x for x in lam)), Loc(P.name, lam, a.k)))

    def from_point_functor(self, P: Parabolic, b: Alcove) -> FunctorExpr:
        mu = self.weight(b)
        return Compose((Gamma(P.name, mu, b.k), Twist(mu), Inverse(FDCoh(P.name))))

    def functor_of_crossing(self, a: Alcove, b: Alcove, allow_kernel: bool = False) -> FunctorExpr:
        valid = self.refine_crossing(a, b)
        if valid:
            return self.crossing_functor(a, b, valid[0])
        if not allow_kernel:
            raise NoValidParabolic(f"no parabolic P of the class has {list(a.k)} <_P {list(b.k)}")
        # braid-group action on the P0 side, conjugated back to the alcoves
        kernel = Kernel(self.P0.name, self.lift(a, b))
        return Compose((Inverse(self.to_point_functor(b, self.P0)), kernel,
                        self.to_point_functor(a, self.P0)))

    def functor_of_token(self, step: Step, allow_kernel: bool = False) -> FunctorExpr:
        tok = step.token
        if tok.kind == "crossPos":
            return self.functor_of_crossing(step.source, step.target, allow_kernel)
        if tok.kind == "crossNeg":
            return Inverse(self.functor_of_crossing(step.target, step.source, allow_kernel))
        if tok.kind == "toPoint":
            return self.to_point_functor(step.source, tok.P)
        return self.from_point_functor(tok.P, step.target)

    def functor_of_path(self, path: Path, allow_kernel: bool = False) -> FunctorExpr:
        parts = [self.functor_of_token(st, allow_kernel) for st in self.trace(path)]
        return Compose(tuple(reversed(parts)))

    def axiom(self, name: str, src: tuple, tgt: tuple) -> str | None:
        """P-vs-Q identification: any valid parabolic may be replaced by the
        first valid one of the class for the same crossing."""
        a, b = Alcove(tuple(src)), Alcove(tuple(tgt))
        try:
            valid = self.refine_crossing(a, b)
        except Exception:
            return None
        names = [P.name for P in valid]
        return names[0] if name in names else None

    def simplify(self, expr: FunctorExpr, use_axiom: bool = True,
                 stats: SimplifyStats | None = None) -> FunctorExpr:
        return simplify(expr, self.axiom if use_axiom else None, stats)

    def conjugated_crossing(self, a: Alcove, b: Alcove) -> FunctorExpr:
        """``F_{u_mu} o F_{lam,mu} o F_{u_lam}^-1`` for the base parabolic."""
        P = self.P0
        return Compose((self.to_point_functor(b, P), self.crossing_functor(a, b, P),
                        Inverse(self.to_point_functor(a, P))))

    # braid words -------------------------------------------------------------------

    def lift_words(self, a: Alcove, b: Alcove, limit: int = 1) -> list[tuple[int, ...]]:
        """Reduced words of the relative position of the full alcoves containing a, b."""
        key = (a, b, limit)
        if key not in self._lift:
            if self.arr.is_full:
                fa, fb = a, b
            else:
                fa, _ = self.arr.full_alcove_containing(a)
                fb, _ = self.arr.full_alcove_containing(b)
            tr = self._full.transporter(fa, fb)
            if limit == 1:
                words = [tr.word]
            else:
                words = list(self._full.affine_group.reduced_words(tr.element, limit))
                words.sort()
                if tr.word in words:
                    words.remove(tr.word)
                words.insert(0, tr.word)
            self._lift[key] = words
        return self._lift[key]

    def lift(self, a: Alcove, b: Alcove) -> BraidWord:
        """Canonical positive lift of the crossing ``a -> b``."""
        return BraidWord.positive(self.lift_words(a, b)[0])

    def _crossings(self, x, y) -> list[Wall] | None:
        """Walls met by the segment x -> y in order; None if two are met at once."""
        arr, p = self.arr, self.arr.p
        hits: dict = {}
        for q in range(len(arr.functionals)):
            vx = linalg.dot(arr.functionals[q], x) + arr.constants[q]
            vy = linalg.dot(arr.functionals[q], y) + arr.constants[q]
            if vx == vy:
                continue
            lo, hi = sorted((vx, vy))
            n = lo // p + 1
            while n * p < hi:
                s = (n * p - vx) / (vy - vx)
                wall = arr.hyperplane(q, n)
                hits[(wall.normal, wall.offset)] = (s, wall)
                n += 1
        ordered = sorted(hits.values(), key=lambda sw: sw[0])
        times = [s for s, _ in ordered]
        if len(set(times)) != len(times):
            return None
        return [w for _, w in ordered]

    def _endpoint_candidates(self, a: Alcove, b: Alcove):
        arr = self.arr
        ga, gb = arr.geometry(a), arr.geometry(b)
        try:
            wall = arr.wall_between(a, b)
        except Exception:
            wall = None
        if wall is not None:
            facet = [v for v in ga.vertices if linalg.dot(wall.normal, v) == wall.offset]
            m = tuple(sum(v[i] for v in facet) / len(facet) for i in range(arr.dim))
            eps = Fraction(1, 2)
            for _ in range(12):
                yield (tuple(mi + eps * (c - mi) for mi, c in zip(m, ga.centroid)),
                       tuple(mi + eps * (c - mi) for mi, c in zip(m, gb.centroid)))
                eps /= 2
        yield ga.centroid, gb.centroid
        for den in (3, 5, 7, 11, 13):
            for va in ga.vertices:
                for vb in gb.vertices:
                    yield (tuple(c + (v - c) / den for c, v in zip(ga.centroid, va)),
                           tuple(c + (v - c) / (den + 1) for c, v in zip(gb.centroid, vb)))

    def segment_walls(self, a: Alcove, b: Alcove) -> list[tuple[Alcove, Alcove, tuple]]:
        """Gallery traced by a generic straight segment from a to b.

        Returns ``(from, to, direction normal)`` per crossed wall, the normal
        oriented along the motion.
        """
        arr = self.arr
        for x, y in self._endpoint_candidates(a, b):
            walls = self._crossings(x, y)
            if walls is None:
                continue
            cur, out = a, []
            for wall in walls:
                nxt = None
                for w2, nb in arr.walls_and_neighbors(cur):
                    if (w2.normal, w2.offset) == (wall.normal, wall.offset):
                        nxt = nb
                        break
                if nxt is None:
                    break
                d = linalg.dot(wall.normal, linalg.vsub(y, x))
                n = wall.normal if d > 0 else tuple(-c for c in wall.normal)
                out.append((cur, nxt, n))
                cur = nxt
            else:
                if cur == b:
                    return out
        raise NotSupported(f"no generic segment from {list(a.k)} to {list(b.k)}")  # pragma: no cover

    def segment_word(self, a: Alcove, b: Alcove, P: Parabolic) -> BraidWord:
        """Word of the path a -> pt_P -> b.

        The path is homotopic to the straight segment with imaginary part a
        positive multiple of an interior vector eta of C_P; a crossing is a
        positive half loop exactly when the oriented normal is positive on eta.
        """
        if b < a:
            return self.segment_word(b, a, P).inverse()
        key = (a, b, P.name)
        if key not in self._segment:
            eta = P.eta
            word = BraidWord()
            for x, y, n in self.segment_walls(a, b):
                s = linalg.dot(n, eta)
                if s == 0:
                    raise NotSupported(f"wall normal {n} is orthogonal to the cone of {P}")
                word = word * (self.lift(x, y) if s > 0 else self.lift(y, x).inverse())
            self._segment[key] = word
        return self._segment[key]

    def step_word(self, st: Step) -> BraidWord:
        tok = st.token
        if tok.kind == "crossPos":
            return self.lift(st.source, st.target)
        if tok.kind == "crossNeg":
            return self.lift(st.target, st.source).inverse()
        if tok.kind == "toPoint":
            return BraidWord()
        return self.segment_word(st.origin, st.target, tok.P)

    def braid_word_of_path(self, path: Path) -> BraidWord:
        steps = self.trace(path)
        if steps and isinstance(steps[-1].target, Parabolic):
            raise NotSupported("braid words are defined for paths between alcoves")
        word = BraidWord()
        for st in steps:
            word = word * self.step_word(st)
        return word

    def monodromy(self, loop: Path) -> tuple[BraidWord, bool]:
        if not self.is_loop(loop):
            raise NotALoop("path does not return to its base alcove")
        word = self.braid_word_of_path(loop)
        return word, self.braid.project(word).is_identity

    # random loops ----------------------------------------------------------------------

    def random_loop(self, rng: random.Random, max_length: int, base: Alcove | None = None) -> Path:
        """A loop out along random tokens and back along the reversed walls,
        each return crossing with a random sign."""
        base = base or self.arr.fundamental_alcove()
        half = rng.randint(1, max(1, max_length // 2))
        cur, tokens, trail = base, [], []
        used = 0
        while used < half:
            nbrs = self.arr.walls_and_neighbors(cur)
            idx = rng.randrange(len(nbrs))
            nxt = nbrs[idx][1]
            if used + 2 <= half and rng.random() < 0.25:
                P = rng.choice(self.parabolics)
                tokens += [PathToken.to_point(P), PathToken.from_point(P, nxt)]
                trail.append(("point", cur, nxt, P))
                used += 2
            else:
                tokens.append(PathToken("crossPos" if rng.random() < 0.5 else "crossNeg", wall=idx))
                trail.append(("wall", cur, nxt, None))
                used += 1
            cur = nxt
        for kind, src, dst, P in reversed(trail):
            if kind == "point":
                tokens += [PathToken.to_point(P), PathToken.from_point(P, src)]
            else:
                idx = self._wall_index(dst, src)
                tokens.append(PathToken("crossPos" if rng.random() < 0.5 else "crossNeg", wall=idx))
        return Path(base, tuple(tokens))


# verification ---------------------------------------------------------------------

def _kstr(alc: Alcove) -> str:
    return "[" + ",".join(str(x) for x in alc.k) + "]"


def _pstr(pt) -> str:
    return "(" + ",".join(linalg.fmt_rational(x) for x in pt) + ")"


def codim2_flats(arr: Arrangement, radius) -> list[tuple[tuple, list[Alcove]]]:
    """Vertices of the window with the cyclically ordered alcoves around them (dim 2)."""
    if arr.dim != 2:
        return []
    window = arr.alcoves_in_window(radius)
    verts = sorted({v for a in window for v in arr.geometry(a).vertices
                    if all(abs(c) <= radius for c in v)})
    out = []
    for x in verts:
        start = next(a for a in window if x in arr.geometry(a).vertices)
        star, stack = {start}, [start]
        while stack:
            a = stack.pop()
            for _, b in arr.walls_and_neighbors(a):
                if b not in star and x in arr.geometry(b).vertices:
                    star.add(b)
                    stack.append(b)
        first = min(star)
        cycle = [first]
        prev = None
        while True:
            nbrs = sorted(b for _, b in arr.walls_and_neighbors(cycle[-1]) if b in star and b != prev)
            nxt = nbrs[0]
            if nxt == first:
                break
            prev = cycle[-1]
            cycle.append(nxt)
            if len(cycle) > len(star):  # pragma: no cover - star is a cycle
                raise RuntimeError("star of a vertex is not a cycle")
        out.append((x, cycle))
    return out


def _gallery_path(ls: LocalSystem, gallery: Sequence[Alcove]) -> Path:
    tokens = tuple(PathToken.cross_pos(ls._wall_index(a, b)) for a, b in zip(gallery, gallery[1:]))
    return Path(gallery[0], tokens)


def _check_salvetti(ls: LocalSystem, radius, report: Report) -> None:
    arr = ls.arr
    if arr.dim != 2:
        report.notes.append(f"salvetti: no codimension-2 checks for dim V = {arr.dim}")
        return
    for x, cycle in codim2_flats(arr, radius):
        n = len(cycle)
        m = n // 2
        for i, a in enumerate(cycle):
            g1 = [cycle[(i + j) % n] for j in range(m + 1)]
            g2 = [cycle[(i - j) % n] for j in range(m + 1)]
            w1 = ls.braid_word_of_path(_gallery_path(ls, g1))
            w2 = ls.braid_word_of_path(_gallery_path(ls, g2))
            verdict = ls.braid.word_equal(w1, w2)
            report.add(f"salvetti/{_pstr(x)}/{_kstr(a)}", "salvetti", verdict.kind == "Equal",
                       flat=[linalg.fmt_rational(c) for c in x], m=m,
                       source=list(a.k), target=list(g1[-1].k),
                       words=[w1.to_json(), w2.to_json()],
                       verdict=verdict.kind, certificate=verdict.certificate)


def _adjacent_pairs(ls: LocalSystem, radius):
    for a in ls.arr.alcoves_in_window(radius):
        for _, b in ls.arr.walls_and_neighbors(a):
            yield a, b


def _check_independence(ls: LocalSystem, radius, gallery_words: int, report: Report) -> None:
    for a, b in _adjacent_pairs(ls, radius):
        cid = f"{_kstr(a)}->{_kstr(b)}"
        valid = ls.refine_crossing(a, b)
        cross = ls.crossing_functor
        # refinement soundness: the refined path gives the crossing functor
        for P in valid:
            refined = Compose((ls.from_point_functor(P, b), ls.to_point_functor(a, P)))
            ok = ls.simplify(refined, use_axiom=False) == ls.simplify(cross(a, b, P), use_axiom=False)
            report.add(f"refinement/{cid}/{P.name}", "refinement", ok,
                       source=list(a.k), target=list(b.k), P=P.name,
                       expression=str(ls.simplify(refined, use_axiom=False)))
        if not ls.arr.is_full:
            words = ls.lift_words(a, b, gallery_words)
            w0 = BraidWord.positive(words[0])
            for j, w in enumerate(words[1:], start=1):
                verdict = ls.braid.word_equal(w0, BraidWord.positive(w))
                report.add(f"gallery/{cid}/{j}", "gallery", verdict.kind == "Equal",
                           words=[list(words[0]), list(w)], verdict=verdict.kind,
                           certificate=verdict.certificate)
        if len(valid) < 2:
            continue
        base_word = ls.segment_word(a, b, valid[0])
        stats = SimplifyStats()
        base_expr = ls.simplify(cross(a, b, valid[0]), stats=stats)
        for P in valid[1:]:
            verdict = ls.braid.word_equal(base_word, ls.segment_word(a, b, P))
            st = SimplifyStats()
            expr = ls.simplify(cross(a, b, P), stats=st)
            ok = verdict.kind == "Equal" and expr == base_expr
            report.add(f"independence/{cid}/{valid[0].name}~{P.name}", "independence", ok,
                       parabolics=[valid[0].name, P.name], verdict=verdict.kind,
                       certificate=verdict.certificate, axiom_uses=st.axiom_uses,
                       normal_form=str(expr))


def _check_identity(ls: LocalSystem, radius, report: Report) -> None:
    for a, b in _adjacent_pairs(ls, radius):
        if not ls.order(ls.P0, a, b):
            continue
        stats = SimplifyStats()
        nf = ls.simplify(ls.conjugated_crossing(a, b), use_axiom=False, stats=stats)
        report.add(f"identity/{_kstr(a)}->{_kstr(b)}", "identity", str(nf) == "Id",
                   source=list(a.k), target=list(b.k), P=ls.P0.name,
                   normal_form=str(nf), rewrite_steps=stats.steps)


def _check_purity(ls: LocalSystem, loops: int, max_length: int, seed: int, report: Report) -> None:
    rng = random.Random(seed)
    empty = BraidWord()
    for i in range(loops):
        loop = ls.random_loop(rng, max_length)
        word, pure = ls.monodromy(loop)
        report.add(f"purity/{i:04d}", "purity", pure, path=loop.to_json(),
                   word=word.to_json(), projection=ls.braid.project(word).to_json())
        contractible = ls.concat(loop, ls.reverse(loop))
        cw = ls.braid_word_of_path(contractible)
        verdict = ls.braid.word_equal(cw, empty)
        report.add(f"contractible/{i:04d}", "contractible", verdict.kind == "Equal",
                   length=len(contractible), verdict=verdict.kind,
                   certificate=verdict.certificate)


def verify_local_system(arr: Arrangement, options: VerifyOptions | None = None) -> Report:
    opts = options or VerifyOptions()
    radius = Fraction(opts.window) if opts.window is not None else Fraction(2 * arr.p)
    ls = LocalSystem(arr, opts.search_bound, opts.test_radius)
    report = Report()
    if "salvetti" in opts.suites:
        _check_salvetti(ls, radius, report)
    if "independence" in opts.suites:
        _check_independence(ls, radius, opts.gallery_words, report)
    if "identity" in opts.suites:
        _check_identity(ls, radius, report)
    if "purity" in opts.suites:
        _check_purity(ls, opts.loops, opts.loop_length, opts.seed, report)
    return report.sorted()
