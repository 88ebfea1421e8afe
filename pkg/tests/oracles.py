"""Independent brute-force oracles.  Nothing here imports the package's
geometry or group code; only plain integer/rational arithmetic and sympy."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import floor

import sympy


# root systems from Cartan matrices -------------------------------------------------

CARTANS = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -2], [-1, 2]],   # alpha_1 long, alpha_2 short
    "G2": [[2, -1], [-3, 2]],   # alpha_1 short, alpha_2 long
}


def roots_by_closure(cartan):
    """All roots (simple-root coordinates) as the orbit of the simple roots
    under simple reflections s_i(b) = b - <b, a_i^vee> a_i."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for b in frontier:
            for i in range(n):
                pair = sum(b[j] * cartan[j][i] for j in range(n))
                r = tuple(b[j] - (pair if j == i else 0) for j in range(n))
                if r not in roots:
                    roots.add(r)
                    new.append(r)
        frontier = new
    return roots


def weyl_order_by_closure(cartan):
    """|W| as the size of the permutation group the simple reflections
    generate on the root set."""
    n = len(cartan)
    roots = sorted(roots_by_closure(cartan))
    index = {r: k for k, r in enumerate(roots)}
    gens = []
    for i in range(n):
        perm = []
        for b in roots:
            pair = sum(b[j] * cartan[j][i] for j in range(n))
            r = tuple(b[j] - (pair if j == i else 0) for j in range(n))
            perm.append(index[r])
        gens.append(tuple(perm))
    ident = tuple(range(len(roots)))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = tuple(g[s[k]] for k in range(len(roots)))
                if h not in seen:
                    seen.add(h)
                    new.append(h)
        frontier = new
    return len(seen)


def positive_coroots_by_closure(cartan):
    """Positive coroots in simple-coroot coordinates (roots of the transpose)."""
    cart_t = [list(r) for r in zip(*cartan)]
    return sorted(r for r in roots_by_closure(cart_t) if all(c >= 0 for c in r))


# sign vectors ----------------------------------------------------------------------

def sign_vector(cartan, J, p, t):
    """floor(<lambda + rho, b^vee> / p) for every positive coroot b^vee that
    does not vanish on the Levi lattice, in a canonical coroot order.

    ``t`` are the coordinates outside J; lambda has zeros at J."""
    n = len(cartan)
    free = [i for i in range(n) if (i + 1) not in set(J)]
    lam = [Fraction(0)] * n
    for i, x in zip(free, t):
        lam[i] = Fraction(x)
    shifted = [x + 1 for x in lam]
    out = {}
    for cor in positive_coroots_by_closure(cartan):
        if not any(cor[i] for i in free):
            continue
        val = sum(c * x for c, x in zip(cor, shifted))
        if (val / p).denominator == 1:
            return None
        out[cor] = floor(val / p)
    return out


def grid_points(dim, radius, den):
    rng = [Fraction(k, den) for k in range(-radius * den, radius * den + 1)]
    return product(rng, repeat=dim)


# Demazure-Lusztig operator via sympy ----------------------------------------------------

def sympy_T(cartan, p, s, x, gradient, affine_value):
    """T_s e^x computed by rational-function division in sympy.

    Returns {exponent: {v-power: coeff}}.  Monomials e^y are X_1^y_1 ... X_n^y_n.
    ``gradient`` and ``affine_value`` describe the affine simple root.
    """
    n = len(cartan)
    X = sympy.symbols(f"X1:{n + 1}")
    v = sympy.Symbol("v")

    def mono(y):
        return sympy.Mul(*[xi ** int(c) for xi, c in zip(X, y)])

    a = affine_value(x)
    sx = tuple(xi - a * gi for xi, gi in zip(x, gradient))
    f, sf = mono(x), mono(sx)
    quotient = sympy.cancel((f - sf) / (1 - mono([-g for g in gradient])))
    expr = sympy.expand(v * sf + (v - 1 / v) * quotient)
    out = {}
    for term in sympy.Add.make_args(expr):
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        exp = tuple(int(powers.get(xi, 0)) for xi in X)
        vp = int(powers.get(v, 0))
        out.setdefault(exp, {})
        out[exp][vp] = out[exp].get(vp, 0) + int(coeff)
    return {e: {k: c for k, c in d.items() if c} for e, d in out.items() if any(d.values())}
