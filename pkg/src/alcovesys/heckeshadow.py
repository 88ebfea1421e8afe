"""Demazure-Lusztig operators on the group algebra of the weight lattice.

Exponents ``e^x`` are read in rho-shifted coordinates (``x = lambda + rho``),
so the level-p dot reflections act by affine maps of exponents and the finite
simple reflections act linearly.  Scalars are Laurent polynomials in ``v``
with integer coefficients.

    T_s f = v s(f) + (v - v^-1) (f - s(f)) / (1 - e^{-a_s})

where ``a_s`` is the gradient of the affine simple root of ``s``; this
normalization gives ``(T_s - v)(T_s + v^-1) = 0``.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .affine import AffineWeylGroup
from .errors import InexactDivision
from .rootdata import RootDatum


class Laurent:
    """Finitely supported map exponent -> nonzero integer coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        items = {}
        for e, c in (terms or {}).items():
            if c:
                items[int(e)] = int(c)
        self.terms = tuple(sorted(items.items()))

    @classmethod
    def const(cls, c: int) -> "Laurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, c: int = 1) -> "Laurent":
        return cls({exp: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent.const(other)
        return isinstance(other, Laurent) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        if isinstance(other, int):
            other = Laurent.const(other)
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return Laurent(d)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self.terms})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Laurent) else Laurent.const(-other))

    def __mul__(self, other):
        if isinstance(other, int):
            return Laurent({e: c * other for e, c in self.terms})
        d: dict[int, int] = defaultdict(int)
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] += c1 * c2
        return Laurent(d)

    __rmul__ = __mul__

    def evaluate(self, v) -> Fraction:
        v = Fraction(v)
        return sum((c * v ** e for e, c in self.terms), Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*v^{e}" for e, c in self.terms)

    def to_json(self) -> dict:
        return {str(e): c for e, c in self.terms}


V = Laurent.monomial(1)
V_INV = Laurent.monomial(-1)
V_MINUS_V_INV = V - V_INV


class GroupAlgebraElem:
    """A finite formal sum ``sum c_x e^x`` with Laurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Laurent] | None = None):
        self.terms = {tuple(x): c for x, c in (terms or {}).items() if c}

    @classmethod
    def basis(cls, x: Sequence[int], coeff: Laurent | int = 1) -> "GroupAlgebraElem":
        if isinstance(coeff, int):
            coeff = Laurent.const(coeff)
        return cls({tuple(x): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElem) and self.terms == other.terms

    def __add__(self, other: "GroupAlgebraElem") -> "GroupAlgebraElem":
        d = dict(self.terms)
        for x, c in other.terms.items():
            d[x] = d[x] + c if x in d else c
        return GroupAlgebraElem(d)

    def __neg__(self):
        return GroupAlgebraElem({x: -c for x, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Laurent) -> "GroupAlgebraElem":
        return GroupAlgebraElem({x: c * a for x, a in self.terms.items()})

    def shift(self, y: Sequence[int]) -> "GroupAlgebraElem":
        """Multiplication by ``e^y``."""
        return GroupAlgebraElem({tuple(a + b for a, b in zip(x, y)): c
                                 for x, c in self.terms.items()})

    def map_exponents(self, fn) -> "GroupAlgebraElem":
        d: dict[tuple, Laurent] = {}
        for x, c in self.terms.items():
            y = tuple(fn(x))
            d[y] = d[y] + c if y in d else c
        return GroupAlgebraElem(d)

    def __mul__(self, other: "GroupAlgebraElem") -> "GroupAlgebraElem":
        out = GroupAlgebraElem()
        for y, c in other.terms.items():
            out = out + self.shift(y).scale(c)
        return out

    def divide_one_minus(self, alpha: Sequence[int]) -> "GroupAlgebraElem":
        """Exact quotient by ``1 - e^{-alpha}``.

        Along each coset ``x0 + Z alpha`` write the coefficients as ``c_j``
        (exponent ``x0 + j alpha``); the quotient has ``q_j = sum_{i >= j} c_i``,
        which is finitely supported iff the coefficients on the coset sum to 0.
        """
        alpha = tuple(alpha)
        piv = next(i for i, a in enumerate(alpha) if a)
        chains: dict[tuple, dict[int, Laurent]] = defaultdict(dict)
        for x, c in self.terms.items():
            j = x[piv] // alpha[piv]
            base = tuple(a - j * b for a, b in zip(x, alpha))
            chains[base][j] = c
        out: dict[tuple, Laurent] = {}
        for base, coeffs in chains.items():
            js = sorted(coeffs)
            total = Laurent()
            # q_j is constant between consecutive support points; walk downwards
            for idx in range(len(js) - 1, -1, -1):
                j = js[idx]
                total = total + coeffs[j]
                lower = js[idx - 1] if idx > 0 else None
                if lower is None:
                    if total:
                        raise InexactDivision(f"coset {base} does not sum to zero")
                    break
                if total:
                    for jj in range(lower + 1, j + 1):
                        out[tuple(a + jj * b for a, b in zip(base, alpha))] = total
        return GroupAlgebraElem(out)

    def evaluate(self, v) -> dict[tuple, Fraction]:
        out = {x: c.evaluate(v) for x, c in self.terms.items()}
        return {x: c for x, c in out.items() if c}

    def __repr__(self):
        return " + ".join(f"({c})e^{list(x)}" for x, c in sorted(self.terms.items())) or "0"

    def to_json(self) -> dict:
        return {"terms": [{"weight": list(x), "coeffs": c.to_json()}
                          for x, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "GroupAlgebraElem":
        return cls({tuple(t["weight"]): Laurent({int(e): c for e, c in t["coeffs"].items()})
                    for t in data["terms"]})


def ball(rank: int, radius: int) -> list[tuple[int, ...]]:
    """Weights with all fundamental-weight coordinates in ``[-radius, radius]``."""
    return [tuple(x) for x in product(range(-radius, radius + 1), repeat=rank)]


class DemazureLusztig:
    """The polynomial representation of the affine braid group at level p."""

    def __init__(self, rd: RootDatum, p: int):
        self.rd = rd
        self.p = p
        self.W = AffineWeylGroup(rd, p)

    def reflect(self, i: int, x: Sequence[int]) -> tuple[int, ...]:
        a = self.W.affine_root_value(i, x)
        g = self.W.gradient_root(i)
        return tuple(xi - a * gi for xi, gi in zip(x, g))

    def apply_s(self, i: int, f: GroupAlgebraElem) -> GroupAlgebraElem:
        return f.map_exponents(lambda x: self.reflect(i, x))

    def apply_T(self, i: int, f: GroupAlgebraElem) -> GroupAlgebraElem:
        sf = self.apply_s(i, f)
        div = (f - sf).divide_one_minus(self.W.gradient_root(i))
        return sf.scale(V) + div.scale(V_MINUS_V_INV)

    def apply_Tinv(self, i: int, f: GroupAlgebraElem) -> GroupAlgebraElem:
        # from (T - v)(T + v^-1) = 0:  T^-1 = T - (v - v^-1)
        return self.apply_T(i, f) - f.scale(V_MINUS_V_INV)

    @staticmethod
    def apply_theta(x: Sequence[int], f: GroupAlgebraElem) -> GroupAlgebraElem:
        return f.shift(x)

    def apply_word(self, word, f: GroupAlgebraElem) -> GroupAlgebraElem:
        """Apply a braid word, rightmost letter first."""
        for letter in reversed(tuple(word)):
            if letter.kind == "T":
                f = self.apply_T(letter.index, f)
            elif letter.kind == "Tinv":
                f = self.apply_Tinv(letter.index, f)
            else:
                f = self.apply_theta(letter.weight, f)
        return f

    def operators_agree(self, w1, w2, testset: Iterable[Sequence[int]],
                        v_spec=None) -> bool:
        """Whether two words act identically on every ``e^x``, x in the test set.

        With ``v_spec`` the comparison is made after evaluating at a rational v;
        that is a fast screen, not a certificate of equality.
        """
        testset = list(testset)
        if not testset:
            raise ValueError("test set must be nonempty")
        for x in testset:
            e = GroupAlgebraElem.basis(x)
            a, b = self.apply_word(w1, e), self.apply_word(w2, e)
            if v_spec is None:
                if a != b:
                    return False
            elif a.evaluate(v_spec) != b.evaluate(v_spec):
                return False
        return True
