"""The level-p arrangement of p-regular weights on the Levi lattice.

The ambient space is ``V = Lambda_L (x) Q``, parametrized by the fundamental
weight coordinates outside J (``t``).  Every positive coroot ``beta^vee`` that
is not a Levi coroot gives a family of hyperplanes
``<lambda + rho, beta^vee> = n p``; on V this reads ``f_beta . t + c_beta = n p``.
Levi coroots never vanish mod p on V (their pairing with ``lambda + rho`` is a
height, strictly between 0 and p), so they contribute no walls.

An alcove is recorded by its k-vector ``k_beta = floor(<lambda + rho, beta^vee> / p)``,
one entry per family.  Alcoves are bounded polytopes; their geometry
(vertices, facets) is computed exactly by vertex enumeration.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from . import linalg
from .affine import AffineWeylElement, AffineWeylGroup
from .errors import (InvalidAlcove, LevelTooSmall, NotAdjacent, NotSupported,
                     OnWall)
from .rootdata import RootDatum, free_indices


@dataclass(frozen=True, order=True)
class Alcove:
    k: tuple[int, ...]

    def to_json(self) -> dict:
        return {"k": list(self.k)}


@dataclass(frozen=True)
class Wall:
    """A restricted hyperplane ``normal . t = offset`` (deduplicated locus)."""

    normal: tuple[int, ...]               # primitive, first nonzero entry positive
    offset: Fraction
    members: tuple[tuple[int, int], ...]  # (family position, n) cutting this locus

    @property
    def key(self):
        return self.members[0]

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "offset": linalg.fmt_rational(self.offset),
                "members": [list(m) for m in self.members]}


@dataclass(frozen=True)
class ConeSpec:
    """A polyhedral cone in V given by generators (rational vectors)."""

    generators: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        gens = tuple(tuple(Fraction(x) for x in g) for g in self.generators)
        if any(not any(g) for g in gens):
            raise ValueError("cone generators must be nonzero")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        return len(self.generators[0]) if self.generators else 0

    @classmethod
    def orthant(cls, dim: int) -> "ConeSpec":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)))

    def dual(self) -> tuple[tuple[Fraction, ...], ...]:
        """Inward facet normals ``y`` with ``C = {x : y . x >= 0 for all y}``.

        Only defined for full-dimensional cones.
        """
        d = self.dim
        if linalg.rank(self.generators) != d:
            raise NotSupported("dual description requires a full-dimensional cone")
        if d == 1:
            signs = {g[0] > 0 for g in self.generators}
            if signs == {True, False}:
                return ()
            return ((Fraction(1 if True in signs else -1),),)
        normals = set()
        for sub in combinations(self.generators, d - 1):
            if linalg.rank(sub) != d - 1:
                continue
            (y,) = linalg.nullspace(sub, d)
            for cand in (y, tuple(-c for c in y)):
                if all(linalg.dot(cand, g) >= 0 for g in self.generators):
                    normals.add(linalg.primitive(cand))
        return tuple(tuple(Fraction(c) for c in y) for y in sorted(normals))

    def contains(self, v) -> bool:
        """Exact membership ``v in cone(generators)``."""
        m = len(self.generators)
        if m == 0:
            return not any(v)
        ineqs = []
        for i in range(len(v)):
            row = tuple(g[i] for g in self.generators)
            ineqs.append((row, v[i]))
            ineqs.append((tuple(-x for x in row), -v[i]))
        for j in range(m):
            ineqs.append((tuple(-Fraction(int(i == j)) for i in range(m)), 0))
        return linalg.fm_feasible(ineqs, m)

    def to_json(self) -> list:
        return [[linalg.fmt_rational(x) for x in g] for g in self.generators]


@dataclass(frozen=True)
class AlcoveGeometry:
    vertices: tuple[tuple[Fraction, ...], ...]
    centroid: tuple[Fraction, ...]


@dataclass(frozen=True)
class Transport:
    """Relative position of two alcoves of the full arrangement.

    ``element`` is the unique ``w`` in ``W x pQ`` with ``B = g_A w . A_0`` when
    ``A = g_A . A_0``; its length is the number of separating hyperplanes and
    ``word`` is a reduced word read off a minimal gallery.  ``dot_element`` is
    the unique element sending A to B under the (left) dot action.
    """

    source: Alcove
    target: Alcove
    element: AffineWeylElement
    dot_element: AffineWeylElement
    word: tuple[int, ...]
    gallery: tuple[Alcove, ...]

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class Arrangement:
    rd: RootDatum
    J: frozenset
    p: int
    free: tuple[int, ...]
    families: tuple[int, ...]                    # positive-root indices with nonzero restriction
    functionals: tuple[tuple[int, ...], ...]     # restricted coroot on V coordinates
    constants: tuple[int, ...]                   # <rho + (Levi part), beta^vee>
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.free)

    @property
    def is_full(self) -> bool:
        return not self.J

    @property
    def affine_group(self) -> AffineWeylGroup:
        if "W" not in self._cache:
            self._cache["W"] = AffineWeylGroup(self.rd, self.p)
        return self._cache["W"]

    # coordinates -----------------------------------------------------------

    def embed(self, t: Sequence) -> tuple:
        """V coordinates -> full weight coordinates."""
        out = [0] * self.rd.rank
        for i, x in zip(self.free, t):
            out[i] = x
        return tuple(out)

    def restrict(self, weight: Sequence) -> tuple:
        if any(weight[j - 1] != 0 for j in self.J):
            raise ValueError("weight is not in the Levi lattice")
        return tuple(weight[i] for i in self.free)

    def pairings(self, t: Sequence) -> tuple:
        return tuple(linalg.dot(f, t) + c for f, c in zip(self.functionals, self.constants))

    # hyperplanes -------------------------------------------------------------

    def _locus(self, q: int, n: int) -> tuple[tuple[int, ...], Fraction]:
        f = self.functionals[q]
        g = linalg.primitive(f)
        if next(x for x in g if x) < 0:
            g = tuple(-x for x in g)
        d = next(Fraction(a, b) for a, b in zip(f, g) if b)
        return g, Fraction(n * self.p - self.constants[q]) / d

    def hyperplane(self, q: int, n: int) -> Wall:
        key = self._locus(q, n)
        cached = self._cache.setdefault("walls", {})
        if key in cached:
            return cached[key]
        g, off = key
        members = []
        for q2, f2 in enumerate(self.functionals):
            if linalg.rank([g, f2]) != 1:
                continue
            d2 = next(Fraction(a, b) for a, b in zip(f2, g) if b)
            n2 = (d2 * off + self.constants[q2]) / self.p
            if n2.denominator == 1:
                members.append((q2, int(n2)))
        wall = Wall(g, off, tuple(sorted(members)))
        cached[key] = wall
        return wall

    # alcove geometry -----------------------------------------------------------

    def _bounds(self, alc: Alcove):
        p = self.p
        return [(k * p - c, (k + 1) * p - c) for k, c in zip(alc.k, self.constants)]

    def geometry(self, alc: Alcove) -> AlcoveGeometry:
        cache = self._cache.setdefault("geom", {})
        if alc in cache:
            return cache[alc]
        if len(alc.k) != len(self.families):
            raise InvalidAlcove(f"k-vector has {len(alc.k)} entries, expected {len(self.families)}")
        d = self.dim
        bounds = self._bounds(alc)
        if d == 0:
            geom = AlcoveGeometry(((),), ())
            cache[alc] = geom
            return geom
        planes = []
        for f, (lo, hi) in zip(self.functionals, bounds):
            planes.append((f, lo))
            planes.append((f, hi))
        verts = set()
        for combo in combinations(planes, d):
            sol = linalg.solve([f for f, _ in combo], [b for _, b in combo])
            if sol is None:
                continue
            vals = self.pairings(sol)
            if all(lo <= v - c <= hi for v, c, (lo, hi) in zip(vals, self.constants, bounds)):
                verts.add(sol)
        if not verts:
            raise InvalidAlcove(f"empty alcove {alc.k}")
        verts = tuple(sorted(verts))
        n = len(verts)
        centroid = tuple(sum(v[i] for v in verts) / n for i in range(d))
        vals = self.pairings(centroid)
        if not all(lo < v - c < hi for v, c, (lo, hi) in zip(vals, self.constants, bounds)):
            raise InvalidAlcove(f"alcove {alc.k} has empty interior")
        geom = AlcoveGeometry(verts, centroid)
        cache[alc] = geom
        return geom

    def is_valid(self, alc: Alcove) -> bool:
        try:
            self.geometry(alc)
        except InvalidAlcove:
            return False
        return True

    def sample_point(self, alc: Alcove) -> tuple[Fraction, ...]:
        return self.geometry(alc).centroid

    def representative(self, alc: Alcove) -> tuple:
        """An interior integral weight (V coordinates) closest to the centroid,
        falling back to the centroid when the alcove has no lattice point."""
        cache = self._cache.setdefault("rep", {})
        if alc in cache:
            return cache[alc]
        geom = self.geometry(alc)
        lo = [min(v[i] for v in geom.vertices) for i in range(self.dim)]
        hi = [max(v[i] for v in geom.vertices) for i in range(self.dim)]
        best = None
        for pt in product(*[range(int(a) - 1, int(b) + 2) for a, b in zip(lo, hi)]):
            try:
                if self.locate(pt) != alc:
                    continue
            except OnWall:
                continue
            dist = sum(abs(Fraction(x) - c) for x, c in zip(pt, geom.centroid))
            cand = (dist, pt)
            if best is None or cand < best:
                best = cand
        rep = best[1] if best else geom.centroid
        cache[alc] = rep
        return rep

    def locate(self, point: Sequence) -> Alcove:
        """The alcove containing a p-regular point of V."""
        point = tuple(Fraction(x) for x in point)
        if len(point) != self.dim:
            raise ValueError(f"point must have {self.dim} coordinates")
        vals = self.pairings(point)
        hits = []
        for q, v in enumerate(vals):
            if (v / self.p).denominator == 1:
                hits.append(self.hyperplane(q, int(v / self.p)))
        if hits:
            raise OnWall(sorted(set(hits), key=lambda w: w.key))
        return Alcove(tuple(int(v // self.p) for v in vals))

    def fundamental_alcove(self) -> Alcove:
        return Alcove((0,) * len(self.families))

    def walls_and_neighbors(self, alc: Alcove) -> list[tuple[Wall, Alcove]]:
        """Facets of the alcove with the alcove across each, in a fixed order."""
        cache = self._cache.setdefault("nbrs", {})
        if alc in cache:
            return cache[alc]
        geom = self.geometry(alc)
        d = self.dim
        out = {}
        for q, k in enumerate(alc.k):
            for n in (k, k + 1):
                wall = self.hyperplane(q, n)
                if wall.key in out:
                    continue
                on = [v for v in geom.vertices if linalg.dot(wall.normal, v) == wall.offset]
                if linalg.affine_rank(on) != d - 1:
                    continue
                k2 = list(alc.k)
                for q2, n2 in wall.members:
                    k2[q2] = n2 if n2 == alc.k[q2] + 1 else n2 - 1
                out[wall.key] = (wall, Alcove(tuple(k2)))
        result = [out[key] for key in sorted(out)]
        cache[alc] = result
        return result

    def neighbor_across(self, alc: Alcove, wall_index: int) -> tuple[Wall, Alcove]:
        nbrs = self.walls_and_neighbors(alc)
        if not 0 <= wall_index < len(nbrs):
            raise IndexError(f"alcove {alc.k} has {len(nbrs)} walls")
        return nbrs[wall_index]

    def wall_between(self, a: Alcove, b: Alcove) -> Wall:
        for wall, nb in self.walls_and_neighbors(a):
            if nb == b:
                return wall
        raise NotAdjacent(f"{a.k} and {b.k} are not adjacent")

    def separating_count(self, a: Alcove, b: Alcove) -> int:
        """Number of distinct hyperplane loci separating two alcoves."""
        walls = set()
        for q, (x, y) in enumerate(zip(a.k, b.k)):
            for n in range(min(x, y) + 1, max(x, y) + 1):
                w = self.hyperplane(q, n)
                walls.add((w.normal, w.offset))
        return len(walls)

    # enumeration ---------------------------------------------------------------

    def meets_box(self, alc: Alcove, radius) -> bool:
        d = self.dim
        ineqs = []
        for f, (lo, hi) in zip(self.functionals, self._bounds(alc)):
            ineqs.append((f, hi))
            ineqs.append((tuple(-x for x in f), -lo))
        for i in range(d):
            e = tuple(int(i == j) for j in range(d))
            ineqs.append((e, radius))
            ineqs.append((tuple(-x for x in e), radius))
        return linalg.fm_feasible(ineqs, d)

    def alcoves_in_window(self, radius) -> list[Alcove]:
        """All alcoves whose closure meets the box ``max |t_i| <= radius``."""
        key = ("window", Fraction(radius))
        if key in self._cache:
            return self._cache[key]
        start = self.fundamental_alcove()
        seen = {start}
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for _, b in self.walls_and_neighbors(a):
                if b not in seen and self.meets_box(b, radius):
                    seen.add(b)
                    queue.append(b)
        result = sorted(seen)
        self._cache[key] = result
        return result

    # transporters (full arrangement only) ----------------------------------------

    def _require_full(self):
        if not self.is_full:
            raise NotSupported("transporters need the full arrangement (J = {})")

    @staticmethod
    def k_distance(a: Sequence[int], b: Sequence[int]) -> int:
        return sum(abs(x - y) for x, y in zip(a, b))

    def _walk(self, g: AffineWeylElement, target: Alcove):
        W = self.affine_group
        word, gallery = [], [Alcove(W.alcove_k(g))]
        cur = W.alcove_k(g)
        while cur != target.k:
            dist = self.k_distance(cur, target.k)
            for i in W.indices:
                g2 = g * W.simple_reflections[i]
                k2 = W.alcove_k(g2)
                if self.k_distance(k2, target.k) < dist:
                    g, cur = g2, k2
                    word.append(i)
                    gallery.append(Alcove(k2))
                    break
            else:  # pragma: no cover - a separating wall always exists
                raise RuntimeError("gallery walk stuck")
        return g, tuple(word), tuple(gallery)

    def element_of(self, alc: Alcove) -> AffineWeylElement:
        """The unique ``g`` in ``W x pQ`` with ``g . A_0 = alc``."""
        self._require_full()
        cache = self._cache.setdefault("elem", {})
        if alc not in cache:
            self.geometry(alc)
            g, _, _ = self._walk(self.affine_group.identity(), alc)
            cache[alc] = g
        return cache[alc]

    def alcove_of(self, g: AffineWeylElement) -> Alcove:
        self._require_full()
        return Alcove(self.affine_group.alcove_k(g))

    def transporter(self, a: Alcove, b: Alcove) -> Transport:
        self._require_full()
        ga, gb = self.element_of(a), self.element_of(b)
        _, word, gallery = self._walk(ga, b)
        return Transport(a, b, ga.inverse() * gb, gb * ga.inverse(), word, gallery)

    def wall_type(self, alc: Alcove, wall_index: int) -> int:
        """Index of the simple affine reflection labelling a wall of a full alcove."""
        self._require_full()
        _, nb = self.neighbor_across(alc, wall_index)
        g = self.element_of(alc)
        W = self.affine_group
        for i in W.indices:
            if W.alcove_k(g * W.simple_reflections[i]) == nb.k:
                return i
        raise RuntimeError("wall type not found")  # pragma: no cover

    def full_alcove_containing(self, alc: Alcove) -> tuple[Alcove, "Arrangement"]:
        """The alcove of the full arrangement that contains a restricted alcove."""
        full = build_arrangement(self.rd, (), self.p)
        point = self.embed(self.sample_point(alc))
        return full.locate(point), full


def build_arrangement(rd: RootDatum, J: Iterable[int], p: int) -> Arrangement:
    J = frozenset(J)
    if p <= rd.coxeter_number:
        raise LevelTooSmall(f"p={p} must exceed the Coxeter number h={rd.coxeter_number}")
    key = (rd, J, p)
    if key in _ARRANGEMENTS:
        return _ARRANGEMENTS[key]
    free = free_indices(rd, J)
    fams, funcs, consts = [], [], []
    for b, cor in enumerate(rd.positive_coroots):
        f = tuple(cor[i] for i in free)
        if any(f):
            fams.append(b)
            funcs.append(f)
            consts.append(sum(cor))
    arr = Arrangement(rd, J, p, free, tuple(fams), tuple(funcs), tuple(consts))
    _ARRANGEMENTS[key] = arr
    return arr


_ARRANGEMENTS: dict = {}


# cone order ------------------------------------------------------------------

def dominant_cone(arr: Arrangement) -> ConeSpec:
    """The cone ``<v, alpha_i^vee> >= 0`` for the simple coroots outside J, on V."""
    return ConeSpec.orthant(arr.dim)


def in_closure_plus_cone(arr: Arrangement, alc: Alcove, point, cone: ConeSpec) -> bool:
    """Exact test ``point in cl(alc) + cone``."""
    gens = cone.generators
    m = len(gens)
    ineqs = []
    for f, (lo, hi) in zip(arr.functionals, arr._bounds(alc)):
        fg = tuple(linalg.dot(f, g) for g in gens)
        fv = linalg.dot(f, point)
        ineqs.append((fg, fv - lo))
        ineqs.append((tuple(-x for x in fg), hi - fv))
    for j in range(m):
        ineqs.append((tuple(-Fraction(int(i == j)) for i in range(m)), 0))
    if m == 0:
        return all(b >= 0 for _, b in ineqs)
    return linalg.fm_feasible(ineqs, m)


def cone_order(arr: Arrangement, a: Alcove, a2: Alcove, cone: ConeSpec) -> bool:
    """``a2`` is above ``a`` with respect to ``cone``: ``cl(a2) in cl(a) + cone``.

    Alcoves are bounded, so it is enough to test the vertices of ``cl(a2)``.
    """
    if a == a2:
        return True
    return all(in_closure_plus_cone(arr, a, v, cone) for v in arr.geometry(a2).vertices)


def positive_normal(arr: Arrangement, a: Alcove, a2: Alcove) -> tuple[int, ...]:
    """Primitive integral normal of the common wall, oriented from ``a`` to ``a2``."""
    wall = arr.wall_between(a, a2)
    side = linalg.dot(wall.normal, arr.sample_point(a2)) - wall.offset
    return wall.normal if side > 0 else tuple(-x for x in wall.normal)


def half_loop_in(arr: Arrangement, a: Alcove, a2: Alcove, cone: ConeSpec) -> bool:
    """Whether the positive half loop ``a -> a2`` can be drawn inside ``V_R + iC``.

    The half loop runs from a to a2 with imaginary part ``s * eta``; it avoids
    the complexified wall exactly when the oriented normal is positive on eta,
    so it fits in ``V_R + iC`` iff the normal is positive somewhere on C.
    """
    n = positive_normal(arr, a, a2)
    return any(linalg.dot(n, g) > 0 for g in cone.generators)
