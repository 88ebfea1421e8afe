"""Root data, Weyl groups, Levi lattices and parabolic cones.

Conventions
-----------
* Weights are integer vectors in the basis of fundamental weights.
* Coroots are stored in the basis of simple coroots; since the fundamental
  weights are dual to the simple coroots, ``<lambda, beta^vee>`` is the plain
  dot product of the weight vector with the coroot coefficient vector.
* ``cartan[i][j] = <alpha_i, alpha_j^vee>``, so row ``i`` of the Cartan matrix
  is the simple root ``alpha_i`` in weight coordinates.
* Simple indices in the public API are 1-based (``J = {1}`` means the first
  simple root); index 0 is reserved for the affine reflection.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import linalg
from .errors import GroupTooLarge, UnsupportedType

DEFAULT_GROUP_BOUND = 10**5


def cartan_matrix(series: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix ``<alpha_i, alpha_j^vee>`` in Bourbaki numbering."""
    series = series.upper()
    n = rank
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }
    if series not in valid or not valid[series]:
        raise UnsupportedType(f"no root system of type {series}{rank}")
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2

    def link(i, j, a=-1, b=-1):
        # 1-based; <alpha_i, alpha_j^vee> = a, <alpha_j, alpha_i^vee> = b
        m[i - 1][j - 1] = a
        m[j - 1][i - 1] = b

    if series in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if series == "B":
            link(n - 1, n, -2, -1)  # alpha_n short
        elif series == "C":
            link(n - 1, n, -1, -2)  # alpha_n long
    elif series == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif series == "E":
        link(1, 3)
        link(3, 4)
        link(4, 5)
        link(2, 4)
        for i in range(5, n):
            link(i, i + 1)
    elif series == "F":
        link(1, 2)
        link(2, 3, -2, -1)
        link(3, 4)
    elif series == "G":
        link(1, 2, -1, -3)  # alpha_1 short
    return tuple(tuple(row) for row in m)


@dataclass(frozen=True)
class RootDatum:
    series: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]    # simple-root coordinates
    positive_coroots: tuple[tuple[int, ...], ...]  # simple-coroot coordinates, aligned
    coxeter_number: int

    @property
    def label(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    @property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        return self.cartan

    @property
    def simple_coroots(self) -> tuple[tuple[int, ...], ...]:
        return linalg.identity(self.rank)

    def root_weight(self, root: Iterable[int]) -> tuple[int, ...]:
        """Convert simple-root coordinates to weight coordinates."""
        out = [0] * self.rank
        for c, row in zip(root, self.cartan):
            for j in range(self.rank):
                out[j] += c * row[j]
        return tuple(out)

    @property
    def positive_roots_weight(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.root_weight(r) for r in self.positive_roots)

    def pairing(self, weight, coroot) -> object:
        return linalg.dot(weight, coroot)

    def highest_coroot_index(self) -> int:
        """Index of the coroot of maximal height (defines the affine wall)."""
        heights = [sum(c) for c in self.positive_coroots]
        return max(range(len(heights)), key=lambda i: (heights[i], -i))

    def reflection_matrix(self, root_index: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of ``x -> x - <x, beta^vee> beta`` on weight coordinates."""
        beta = self.positive_roots_weight[root_index]
        cor = self.positive_coroots[root_index]
        n = self.rank
        return tuple(
            tuple(int(a == b) - beta[a] * cor[b] for b in range(n)) for a in range(n)
        )

    def simple_reflection_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of ``s_i`` (1-based) on weight coordinates."""
        n = self.rank
        alpha = self.cartan[i - 1]
        return tuple(
            tuple(int(a == b) - alpha[a] * int(b == i - 1) for b in range(n))
            for a in range(n)
        )

    def to_json(self) -> dict:
        return {
            "series": self.series,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots_weight],
            "positive_coroots": [list(c) for c in self.positive_coroots],
            "rho": list(self.rho),
            "coxeter_number": self.coxeter_number,
        }


def _root_sort_key(coords: tuple[int, ...]):
    return (sum(coords), tuple(-c for c in coords))


def build_root_datum(series: str, rank: int) -> RootDatum:
    """Cartan data of the given type with positive roots found by reflection closure."""
    cart = cartan_matrix(series, rank)
    n = rank
    pairs = set()
    queue = deque()
    for i in range(n):
        e = tuple(int(j == i) for j in range(n))
        pairs.add((e, e))
        queue.append((e, e))
    while queue:
        root, cor = queue.popleft()
        for i in range(n):
            # <beta, alpha_i^vee> and <alpha_i, beta^vee>
            b_ai = sum(root[k] * cart[k][i] for k in range(n))
            ai_b = sum(cor[j] * cart[i][j] for j in range(n))
            new_root = tuple(root[k] - b_ai * int(k == i) for k in range(n))
            new_cor = tuple(cor[k] - ai_b * int(k == i) for k in range(n))
            pair = (new_root, new_cor)
            if pair not in pairs:
                pairs.add(pair)
                queue.append(pair)
    positive = sorted((p for p in pairs if all(c >= 0 for c in p[0])),
                      key=lambda p: _root_sort_key(p[0]))
    roots = tuple(p[0] for p in positive)
    coroots = tuple(p[1] for p in positive)
    h = 2 * len(roots) // n
    return RootDatum(series.upper(), rank, cart, roots, coroots, h)


def parse_type(label: str, rank: int | None = None) -> RootDatum:
    """Accept ``"A2"`` or (``"A"``, 2)."""
    label = label.strip()
    if len(label) > 1:
        series, r = label[0], int(label[1:])
        if rank is not None and rank != r:
            raise UnsupportedType(f"rank mismatch: {label} vs {rank}")
        return build_root_datum(series, r)
    if rank is None:
        raise UnsupportedType(f"missing rank for series {label}")
    return build_root_datum(label, rank)


# Weyl group -----------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]                    # 1-based simple reflections, left to right
    matrix: tuple[tuple[int, ...], ...]
    is_identity: bool = False
    is_longest: bool = False

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, weight):
        return linalg.mat_vec(self.matrix, weight)


def weyl_group(rd: RootDatum, bound: int = DEFAULT_GROUP_BOUND) -> list[WeylElement]:
    """All elements of W, by breadth-first search, so every stored word is reduced."""
    n = rd.rank
    gens = [rd.simple_reflection_matrix(i) for i in range(1, n + 1)]
    ident = linalg.identity(n)
    rho = rd.rho
    seen = {rho: ((), ident)}
    frontier = [((), ident)]
    while frontier:
        nxt = []
        for word, mat in frontier:
            for i, g in enumerate(gens, start=1):
                m2 = linalg.mat_mul(mat, g)
                key = linalg.mat_vec(m2, rho)
                if key not in seen:
                    seen[key] = (word + (i,), m2)
                    if len(seen) > bound:
                        raise GroupTooLarge(f"|W({rd.label})| exceeds bound {bound}")
                    nxt.append((word + (i,), m2))
        frontier = nxt
    maxlen = max(len(w) for w, _ in seen.values())
    elems = [
        WeylElement(word, mat, is_identity=not word, is_longest=len(word) == maxlen)
        for word, mat in seen.values()
    ]
    elems.sort(key=lambda e: (e.length, e.word))
    return elems


def inversion_count(rd: RootDatum, w: WeylElement) -> int:
    """``|{beta > 0 : w(beta) < 0}|``; an independent route to the length."""
    count = 0
    cart_inv = linalg.inverse(rd.cartan)
    for beta in rd.positive_roots_weight:
        image = w.act(beta)
        # back to simple-root coordinates: weight = coords . cartan
        coords = linalg.mat_vec(tuple(zip(*cart_inv)), image)
        if all(c <= 0 for c in coords):
            count += 1
    return count


# Parabolics -------------------------------------------------------------------

def _check_subset(rd: RootDatum, J: Iterable[int]) -> frozenset[int]:
    J = frozenset(int(j) for j in J)
    if not J <= set(range(1, rd.rank + 1)):
        raise ValueError(f"J={sorted(J)} is not a subset of 1..{rd.rank}")
    return J


def levi_lattice(rd: RootDatum, J: Iterable[int]) -> list[tuple[int, ...]]:
    """Integral basis of ``{lambda : <lambda, alpha_j^vee> = 0 for j in J}``.

    In fundamental-weight coordinates the constraints just kill coordinates, so
    the basis is the fundamental weights outside J.
    """
    J = _check_subset(rd, J)
    return [tuple(int(k == i - 1) for k in range(rd.rank))
            for i in range(1, rd.rank + 1) if i not in J]


def free_indices(rd: RootDatum, J: Iterable[int]) -> tuple[int, ...]:
    """0-based coordinates that parametrize the Levi lattice."""
    J = _check_subset(rd, J)
    return tuple(i - 1 for i in range(1, rd.rank + 1) if i not in J)


def subsystem(rd: RootDatum, J: Iterable[int]) -> frozenset[tuple[int, ...]]:
    """All roots (both signs, weight coordinates) spanned by the simple roots in J."""
    J = _check_subset(rd, J)
    out = set()
    for coords, wt in zip(rd.positive_roots, rd.positive_roots_weight):
        if all(c == 0 or (k + 1) in J for k, c in enumerate(coords)):
            out.add(wt)
            out.add(tuple(-x for x in wt))
    return frozenset(out)


def conjugators(rd: RootDatum, J: Iterable[int], J2: Iterable[int],
                bound: int = DEFAULT_GROUP_BOUND) -> list[WeylElement]:
    """Elements ``w`` with ``w(Phi_J) = Phi_J2``."""
    src, dst = subsystem(rd, J), subsystem(rd, J2)
    if len(src) != len(dst):
        return []
    return [w for w in weyl_group(rd, bound)
            if frozenset(w.act(r) for r in src) == dst]


def associated_subsets(rd: RootDatum, J: Iterable[int],
                       bound: int = DEFAULT_GROUP_BOUND) -> list[frozenset[int]]:
    """Subsets J' whose root subsystem is W-conjugate to that of J (J included)."""
    from itertools import combinations

    J = _check_subset(rd, J)
    src = subsystem(rd, J)
    group = weyl_group(rd, bound)
    images = {frozenset(w.act(r) for r in src) for w in group}
    out = []
    for cand in combinations(range(1, rd.rank + 1), len(J)):
        if subsystem(rd, cand) in images:
            out.append(frozenset(cand))
    out.sort(key=lambda s: sorted(s))
    return out


def cone_of_parabolic(rd: RootDatum, J: Iterable[int]) -> list[tuple[Fraction, ...]]:
    """Generators of ``C_P = {v in Lambda_L (x) R : <v, alpha_i^vee> >= 0, i not in J}``.

    Returned in weight coordinates of the ambient lattice; they are the
    fundamental weights outside J.
    """
    return [tuple(Fraction(x) for x in b) for b in levi_lattice(rd, J)]


@dataclass(frozen=True)
class ParabolicType:
    J: frozenset[int]
    levi_basis: tuple[tuple[int, ...], ...]
    cone_generators: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    @classmethod
    def of(cls, rd: RootDatum, J: Iterable[int]) -> "ParabolicType":
        J = _check_subset(rd, J)
        return cls(J, tuple(levi_lattice(rd, J)), tuple(cone_of_parabolic(rd, J)))
