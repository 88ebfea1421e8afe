"""Words in the extended affine braid group (Bernstein presentation).

Letters are ``T_i``, ``T_i^-1`` (i = 0..rank, 0 the affine reflection) and
``theta_x`` for weights x.  Word equality is decided by a sound but
incomplete pipeline:

1. free reduction (cancel ``T T^-1``, merge thetas) - equal reductions are Equal;
2. projection to ``W x p Lambda`` - different images are Distinct;
3. for two positive T-words, exhaustive braid-move search - reaching the
   other word is Equal, exhausting the (finite) class is Distinct, since
   positive Artin monoids embed in their groups;
4. the Demazure-Lusztig shadow on a test ball - disagreement is Distinct,
   agreement alone only gives Unknown.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .affine import AffineWeylElement, AffineWeylGroup
from .errors import NotApplicable
from .heckeshadow import DemazureLusztig, GroupAlgebraElem, ball
from .rootdata import RootDatum

DEFAULT_SEARCH_BOUND = 20000


@dataclass(frozen=True)
class Letter:
    kind: str                         # "T", "Tinv" or "theta"
    index: int | None = None
    weight: tuple[int, ...] | None = None

    def inverse(self) -> "Letter":
        if self.kind == "T":
            return Letter("Tinv", self.index)
        if self.kind == "Tinv":
            return Letter("T", self.index)
        return Letter("theta", weight=tuple(-x for x in self.weight))

    def to_json(self) -> dict:
        if self.kind == "theta":
            return {"theta": list(self.weight)}
        return {self.kind: f"s{self.index}"}

    @classmethod
    def from_json(cls, data: dict) -> "Letter":
        ((kind, val),) = data.items()
        if kind == "theta":
            return cls("theta", weight=tuple(int(x) for x in val))
        if kind not in ("T", "Tinv"):
            raise ValueError(f"unknown letter {data}")
        return cls(kind, int(str(val).lstrip("s")))

    def __str__(self):
        if self.kind == "T":
            return f"T{self.index}"
        if self.kind == "Tinv":
            return f"T{self.index}^-1"
        return "theta" + str(list(self.weight))


def T(i: int) -> Letter:
    return Letter("T", i)


def Tinv(i: int) -> Letter:
    return Letter("Tinv", i)


def theta(x: Sequence[int]) -> Letter:
    return Letter("theta", weight=tuple(x))


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, letters: Iterable[Letter]) -> "BraidWord":
        return cls(tuple(letters))

    @classmethod
    def positive(cls, indices: Iterable[int]) -> "BraidWord":
        return cls(tuple(T(i) for i in indices))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple(l.inverse() for l in reversed(self.letters)))

    def free_reduce(self) -> "BraidWord":
        stack: list[Letter] = []
        for l in self.letters:
            if l.kind == "theta" and not any(l.weight):
                continue
            if stack:
                top = stack[-1]
                if l.kind == "theta" and top.kind == "theta":
                    merged = tuple(a + b for a, b in zip(top.weight, l.weight))
                    stack.pop()
                    if any(merged):
                        stack.append(theta(merged))
                    continue
                if l.kind != "theta" and top == l.inverse():
                    stack.pop()
                    continue
            stack.append(l)
        return BraidWord(tuple(stack))

    @property
    def is_positive(self) -> bool:
        return all(l.kind == "T" for l in self.letters)

    def indices(self) -> tuple[int, ...]:
        return tuple(l.index for l in self.letters)

    def to_json(self) -> list:
        return [l.to_json() for l in self.letters]

    @classmethod
    def from_json(cls, data: list) -> "BraidWord":
        return cls(tuple(Letter.from_json(d) for d in data))

    def __str__(self):
        return " ".join(str(l) for l in self.letters) or "e"


def multiply(w1: BraidWord, w2: BraidWord) -> BraidWord:
    return w1 * w2


def inverse(w: BraidWord) -> BraidWord:
    return w.inverse()


def free_reduce(w: BraidWord) -> BraidWord:
    return w.free_reduce()


@dataclass(frozen=True)
class EqualityVerdict:
    kind: str                     # "Equal", "Distinct" or "Unknown"
    certificate: dict = field(default_factory=dict)
    reason: str | None = None

    def __post_init__(self):
        if self.kind in ("Equal", "Distinct") and not self.certificate:
            raise ValueError(f"{self.kind} verdict needs a certificate")

    def to_json(self) -> dict:
        out = {"verdict": self.kind, "certificate": self.certificate}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class BernsteinVerdict:
    relation: str
    holds: bool
    certificate: dict

    def to_json(self) -> dict:
        return {"relation": self.relation, "holds": self.holds,
                "certificate": self.certificate}


def _alternating(s: int, t: int, m: int) -> tuple[int, ...]:
    return tuple(s if k % 2 == 0 else t for k in range(m))


class AffineBraidGroup:
    """Word algebra, projection, canonical section and equality oracle."""

    def __init__(self, rd: RootDatum, p: int, search_bound: int = DEFAULT_SEARCH_BOUND,
                 test_radius: int = 2):
        self.rd = rd
        self.p = p
        self.W = AffineWeylGroup(rd, p)
        self.shadow = DemazureLusztig(rd, p)
        self.search_bound = search_bound
        self.test_radius = test_radius
        self._m = {(i, j): self.W.coxeter_m(i, j)
                   for i in self.W.indices for j in self.W.indices}

    def coxeter_m(self, i: int, j: int) -> int | None:
        return self._m[i, j]

    # projection and lifts ------------------------------------------------------

    def project(self, word: BraidWord) -> AffineWeylElement:
        """Image in ``W x p Lambda``: ``T_s -> s``, ``theta_x -> translation by p x``."""
        g = self.W.identity()
        for l in word:
            if l.kind == "theta":
                g = g * AffineWeylElement.translation_by([self.p * x for x in l.weight])
            else:
                g = g * self.W.simple_reflections[l.index]
        return g

    def dot_action(self, g: AffineWeylElement, weight):
        return g.dot(weight, self.rd.rho)

    def canonical_lift(self, g: AffineWeylElement, word: Sequence[int] | None = None) -> BraidWord:
        """``T_g`` along a reduced word of g (a chosen one if ``word`` is given)."""
        if word is None:
            word = self.W.reduced_word(g)
        elif len(word) != self.W.length(g) or self.W.element_of_word(word) != g:
            raise ValueError("word is not a reduced word of g")
        return BraidWord.positive(word)

    # braid moves --------------------------------------------------------------

    def _moves(self, word: tuple[int, ...]):
        n = len(word)
        for pos in range(n - 1):
            s, t = word[pos], word[pos + 1]
            if s == t:
                continue
            m = self._m[s, t]
            if m is None or pos + m > n:
                continue
            if word[pos:pos + m] == _alternating(s, t, m):
                new = word[:pos] + _alternating(t, s, m) + word[pos + m:]
                yield pos, m, new

    def braid_move_search(self, w1: Sequence[int], w2: Sequence[int], bound: int | None = None):
        """Breadth-first search through braid moves.

        Returns ``("found", moves)``, ``("exhausted", class_size)`` or
        ``("bound", visited)``.
        """
        bound = self.search_bound if bound is None else bound
        start, goal = tuple(w1), tuple(w2)
        if len(start) != len(goal):
            return "exhausted", 0
        parent = {start: None}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            if cur == goal:
                moves = []
                while parent[cur] is not None:
                    prev, pos, m = parent[cur]
                    moves.append({"at": pos, "from": list(prev[pos:pos + m]),
                                  "to": list(cur[pos:pos + m])})
                    cur = prev
                return "found", moves[::-1]
            for pos, m, new in self._moves(cur):
                if new not in parent:
                    parent[new] = (cur, pos, m)
                    if len(parent) > bound:
                        return "bound", len(parent)
                    queue.append(new)
        return "exhausted", len(parent)

    # equality -------------------------------------------------------------------

    def test_set(self, radius: int | None = None) -> list[tuple[int, ...]]:
        return ball(self.rd.rank, self.test_radius if radius is None else radius)

    def word_equal(self, w1: BraidWord, w2: BraidWord, radius: int | None = None,
                   v_spec=None) -> EqualityVerdict:
        r1, r2 = w1.free_reduce(), w2.free_reduce()
        if r1 == r2:
            return EqualityVerdict("Equal", {"method": "free-reduction",
                                             "reduced": r1.to_json()})
        g1, g2 = self.project(r1), self.project(r2)
        if g1 != g2:
            return EqualityVerdict("Distinct", {"method": "projection",
                                                "images": [g1.to_json(), g2.to_json()]})
        reason = None
        if r1.is_positive and r2.is_positive:
            if len(r1) != len(r2):
                return EqualityVerdict("Distinct", {"method": "positive-length",
                                                    "lengths": [len(r1), len(r2)]})
            status, info = self.braid_move_search(r1.indices(), r2.indices())
            if status == "found":
                return EqualityVerdict("Equal", {"method": "braid-moves",
                                                 "start": list(r1.indices()),
                                                 "moves": info})
            if status == "exhausted":
                return EqualityVerdict("Distinct", {"method": "positive-class-exhausted",
                                                    "class_size": info})
            reason = f"braid-move search bound exceeded after {info} words"
        testset = self.test_set(radius)
        for x in testset:
            e = GroupAlgebraElem.basis(x)
            a = self.shadow.apply_word(r1, e)
            b = self.shadow.apply_word(r2, e)
            differ = a != b if v_spec is None else a.evaluate(v_spec) != b.evaluate(v_spec)
            if differ:
                if v_spec is not None:
                    return EqualityVerdict("Distinct", {"method": "hecke-shadow-specialized",
                                                        "v": str(v_spec), "witness": list(x)})
                return EqualityVerdict("Distinct", {"method": "hecke-shadow",
                                                    "witness": list(x)})
        return EqualityVerdict("Unknown", {"method": "hecke-shadow-agrees",
                                           "test_set_size": len(testset)},
                               reason or "no positive-word certificate")

    # Bernstein relations -----------------------------------------------------------

    def bernstein_check(self, s: int, x: Sequence[int], radius: int | None = None) -> BernsteinVerdict:
        """Check the relation between ``T_s`` (finite s) and ``theta_x``.

        Pairing 0: ``T_s theta_x = theta_x T_s``.
        Pairing 1: ``theta_x = T_s theta_{s(x)} T_s``.
        """
        if not 1 <= s <= self.rd.rank:
            raise ValueError("s must be a finite simple reflection")
        x = tuple(int(c) for c in x)
        n = x[s - 1]
        if n == 0:
            lhs = BraidWord((T(s), theta(x)))
            rhs = BraidWord((theta(x), T(s)))
            rel = f"T{s} theta{list(x)} = theta{list(x)} T{s}"
        elif n == 1:
            alpha = self.rd.cartan[s - 1]
            sx = tuple(a - b for a, b in zip(x, alpha))
            lhs = BraidWord((theta(x),))
            rhs = BraidWord((T(s), theta(sx), T(s)))
            rel = f"theta{list(x)} = T{s} theta{list(sx)} T{s}"
        else:
            raise NotApplicable(f"pairing {n} is outside the supported cases 0, 1")
        testset = self.test_set(radius)
        holds = self.shadow.operators_agree(lhs, rhs, testset)
        return BernsteinVerdict(rel, holds, {"method": "hecke-shadow-operator-identity",
                                             "lhs": lhs.to_json(), "rhs": rhs.to_json(),
                                             "test_set_size": len(testset)})
