"""The affine Weyl group at level p acting by the dot action.

Elements are stored in rho-shifted coordinates ``x = lambda + rho``, where the
dot action ``w . lambda = w(lambda + rho) - rho`` becomes the linear action.
An element is a pair ``(w, nu)`` acting by ``x -> w x + nu``; the translation
``nu`` is already scaled by p.

Simple affine reflections are indexed 0..rank: ``s_i`` (i >= 1) are the finite
simple reflections, ``s_0`` is the reflection in the far wall
``<x, gamma^vee> = p`` of the fundamental alcove, ``gamma^vee`` the highest
coroot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from . import linalg
from .errors import NotSupported
from .rootdata import RootDatum


@dataclass(frozen=True)
class AffineWeylElement:
    linear: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]

    @classmethod
    def identity(cls, rank: int) -> "AffineWeylElement":
        return cls(linalg.identity(rank), (0,) * rank)

    @classmethod
    def translation_by(cls, nu) -> "AffineWeylElement":
        return cls(linalg.identity(len(nu)), tuple(int(x) for x in nu))

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        lin = linalg.mat_mul(self.linear, other.linear)
        tr = linalg.vadd(linalg.mat_vec(self.linear, other.translation), self.translation)
        return AffineWeylElement(lin, tr)

    def inverse(self) -> "AffineWeylElement":
        inv = linalg.to_int_matrix(linalg.inverse(self.linear))
        tr = tuple(-x for x in linalg.mat_vec(inv, self.translation))
        return AffineWeylElement(inv, tr)

    @property
    def is_identity(self) -> bool:
        n = len(self.translation)
        return self.linear == linalg.identity(n) and not any(self.translation)

    def act_shifted(self, x):
        return linalg.vadd(linalg.mat_vec(self.linear, x), self.translation)

    def dot(self, weight, rho):
        """``w(lambda + rho) - rho + nu``."""
        return linalg.vsub(self.act_shifted(linalg.vadd(weight, rho)), rho)

    def to_json(self) -> dict:
        return {"linear": [list(r) for r in self.linear],
                "translation": list(self.translation)}


class AffineWeylGroup:
    """W semidirect pQ at level p, with lengths, descents and reduced words."""

    def __init__(self, rd: RootDatum, p: int):
        self.rd = rd
        self.p = p
        self.rank = rd.rank
        self._gamma = rd.highest_coroot_index()

    @cached_property
    def simple_reflections(self) -> tuple[AffineWeylElement, ...]:
        rd, p = self.rd, self.p
        gens = []
        gamma_w = rd.positive_roots_weight[self._gamma]
        s0 = AffineWeylElement(rd.reflection_matrix(self._gamma),
                               tuple(p * c for c in gamma_w))
        gens.append(s0)
        for i in range(1, rd.rank + 1):
            gens.append(AffineWeylElement(rd.simple_reflection_matrix(i), (0,) * rd.rank))
        return tuple(gens)

    @property
    def indices(self) -> range:
        return range(self.rank + 1)

    def gradient_root(self, i: int) -> tuple[int, ...]:
        """Linear part of the affine simple root of ``s_i`` (weight coordinates)."""
        if i == 0:
            return tuple(-c for c in self.rd.positive_roots_weight[self._gamma])
        return self.rd.cartan[i - 1]

    def affine_root_value(self, i: int, x):
        """Value at shifted point x of the affine simple root of ``s_i``.

        Positive on the fundamental alcove; ``s_i x = x - value * gradient_root(i)``.
        """
        if i == 0:
            return self.p - linalg.dot(x, self.rd.positive_coroots[self._gamma])
        return x[i - 1]

    def identity(self) -> AffineWeylElement:
        return AffineWeylElement.identity(self.rank)

    def element_of_word(self, word) -> AffineWeylElement:
        g = self.identity()
        for i in word:
            g = g * self.simple_reflections[i]
        return g

    def alcove_k(self, g: AffineWeylElement) -> tuple[int, ...]:
        """k-vector (one floor per positive coroot) of the alcove ``g . A_0``."""
        y = g.act_shifted(self.rd.rho)
        return tuple(linalg.dot(y, c) // self.p for c in self.rd.positive_coroots)

    def length(self, g: AffineWeylElement) -> int:
        """Number of level-p hyperplanes separating ``A_0`` from ``g . A_0``."""
        return sum(abs(k) for k in self.alcove_k(g))

    def in_coroot_translations(self, g: AffineWeylElement) -> bool:
        """Whether the translation part lies in pQ (root lattice)."""
        cart_inv = linalg.inverse(self.rd.cartan)
        coords = linalg.mat_vec(tuple(zip(*cart_inv)),
                                [Fraction(x, self.p) for x in g.translation])
        return all(c.denominator == 1 for c in coords)

    def left_descents(self, g: AffineWeylElement) -> list[int]:
        n = self.length(g)
        return [i for i in self.indices
                if self.length(self.simple_reflections[i] * g) < n]

    def reduced_word(self, g: AffineWeylElement) -> tuple[int, ...]:
        """A reduced word ``(i1, ..., ik)`` with ``g = s_i1 ... s_ik``."""
        word = []
        while not g.is_identity:
            ds = self.left_descents(g)
            if not ds:
                raise NotSupported("element has a length-zero part outside W x pQ")
            word.append(ds[0])
            g = self.simple_reflections[ds[0]] * g
        return tuple(word)

    def reduced_words(self, g: AffineWeylElement, limit: int = 1000) -> Iterator[tuple[int, ...]]:
        """Enumerate reduced words of g (at most ``limit``)."""
        count = 0

        def rec(h):
            if h.is_identity:
                yield ()
                return
            ds = self.left_descents(h)
            if not ds:
                raise NotSupported("element has a length-zero part outside W x pQ")
            for i in ds:
                for rest in rec(self.simple_reflections[i] * h):
                    yield (i,) + rest

        for w in rec(g):
            yield w
            count += 1
            if count >= limit:
                return

    def coxeter_m(self, i: int, j: int, cap: int = 12) -> int | None:
        """Order of ``s_i s_j``; None when infinite (checked up to ``cap``)."""
        if i == j:
            return 1
        st = self.simple_reflections[i] * self.simple_reflections[j]
        g = st
        for m in range(1, cap + 1):
            if g.is_identity:
                return m
            g = g * st
        return None
