"""Independent reference implementations used only by the tests."""

from fractions import Fraction
from itertools import product
from math import comb


def naive_rank(rows):
    """Textbook Gaussian elimination over Fraction, no tricks."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def monomial_count(d, n=4):
    return sum(1 for e in product(range(d + 1), repeat=n) if sum(e) == d)


def graded_dim_formula(d):
    return comb(d + 3, 3)


def sym3_chern_sympy(c1, c2, c3, nvar="h"):
    """c(S^3 E) through sympy's symmetrize, evaluated at numbers or sympy exprs.

    Returns the sympy expression in elementary symmetric variables substituted.
    """
    import sympy as sp
    from sympy.polys.polyfuncs import symmetrize

    a, b, c = sp.symbols("a b c")
    P = sp.Integer(1)
    for i in range(4):
        for j in range(4 - i):
            P *= 1 + i * a + j * b + (3 - i - j) * c
    expr, rem, defs = symmetrize(sp.expand(P), [a, b, c], formal=True)
    assert rem == 0
    s1, s2, s3 = (d[0] for d in defs)
    return sp.expand(expr.subs({s1: c1, s2: c2, s3: c3}))


def truncate_sympy(expr, var, degree):
    import sympy as sp

    poly = sp.Poly(expr, var)
    return [int(poly.coeff_monomial(var**k)) for k in range(degree + 1)]


def pbundle_betti_by_basis(base_ranks, fiber_dim):
    """Count pairs (base class of dim i, fiber power) directly."""
    n = len(base_ranks) - 1 + fiber_dim
    out = [0] * (n + 1)
    for i, r in enumerate(base_ranks):
        for k in range(fiber_dim + 1):
            out[i + k] += r
    return out
