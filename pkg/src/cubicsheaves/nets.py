"""Nets of quadrics: 2x3 matrices Q of linear forms up to GL2 x GL3.

Includes stability of nets, membership in the locus N1 of nets whose minors
share a linear factor, and the maps rho: pairs -> nets and tau: singular
planar pairs -> N1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .moduli import (
    MINOR_COLUMNS,
    PairBA,
    _poly,
    is_normal,
    normal_form,
    planar_data,
)
from .polyring import (
    ZERO,
    Poly,
    complete_basis,
    kernel,
    mat_inverse,
    normalize_linear,
    solve,
    span_rank,
    transpose,
)


class Inconclusive(ArithmeticError):
    """The question has no answer over Q without an irrational square root.

    ``form`` holds the offending binary form as coefficients (a, b, c) of
    a*s^2 + b*s*t + c*t^2, or a univariate coefficient list.
    """

    def __init__(self, msg: str, form):
        super().__init__(f"{msg}: {form}")
        self.form = form


class NotSingularError(ValueError):
    pass


@dataclass(frozen=True)
class NetQ:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(_poly(e) for e in row) for row in self.entries)
        if len(rows) != 2 or any(len(r) != 3 for r in rows):
            raise ValueError("a net is a 2x3 matrix")
        for e in (e for r in rows for e in r):
            if e and (e.degree != 1 or e.uses_t()):
                raise ValueError(f"{e} is not a linear form")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_json(cls, data) -> "NetQ":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["Q"])

    def to_json(self) -> dict:
        return {"Q": [[str(e) for e in row] for row in self.entries]}

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def minors(self) -> tuple:
        """The three 2x2 minors, columns (1,2), (0,2), (0,1)."""
        y = self.entries
        return tuple(y[0][j] * y[1][k] - y[0][k] * y[1][j] for j, k in MINOR_COLUMNS)

    def coefficients(self) -> list:
        """[row][column] -> coefficient vector (x0..x3)."""
        return [[e.linear_coeffs() if e else [Fraction(0)] * 4 for e in row] for row in self.entries]

    def transform(self, S, R) -> "NetQ":
        """S @ Q @ R for rational S (2x2) and R (3x3)."""
        rows = []
        for i in range(2):
            row = []
            for j in range(3):
                acc = ZERO
                for a in range(2):
                    for b in range(3):
                        c = Fraction(S[i][a]) * Fraction(R[b][j])
                        if c and self.entries[a][b]:
                            acc = acc + self.entries[a][b] * c
                row.append(acc)
            rows.append(row)
        return NetQ(rows)

    def __str__(self):
        return "((" + "), (".join(", ".join(str(e) for e in r) for r in self.entries) + "))"


def rho_map(pair: PairBA) -> NetQ:
    """The linear block of B (columns 1..3)."""
    B = pair.B
    return NetQ([[B[i, j] for j in (1, 2, 3)] for i in (0, 1)])


# ---------------------------------------------------------------------------
# stability of nets

def _binary_minors(Q: NetQ) -> list:
    """2x2 minors of the 3x4 coefficient matrix of (l0*Q[0] + l1*Q[1]).

    Each entry of that matrix is a linear binary form in (l0, l1); the minors
    are binary quadratics returned as (coeff l0^2, coeff l0*l1, coeff l1^2).
    """
    c = Q.coefficients()
    out = []
    for j, k in ((0, 1), (0, 2), (1, 2)):
        for a in range(4):
            for b in range(a + 1, 4):
                # entry (col, var) = (c[0][col][var], c[1][col][var])
                p, q = (c[0][j][a], c[1][j][a]), (c[0][k][b], c[1][k][b])
                r, s = (c[0][j][b], c[1][j][b]), (c[0][k][a], c[1][k][a])
                out.append(_sub(_mul(p, q), _mul(r, s)))
    return out


def _mul(f, g):
    return (f[0] * g[0], f[0] * g[1] + f[1] * g[0], f[1] * g[1])


def _sub(f, g):
    return tuple(x - y for x, y in zip(f, g))


def _poly_gcd(f: list, g: list) -> list:
    """Monic gcd of univariate polynomials (coefficients from the top)."""
    f, g = _strip(f), _strip(g)
    while g:
        f, g = g, _strip(_rem(f, g))
    return [x / f[0] for x in f] if f else []


def _strip(f):
    f = [Fraction(x) for x in f]
    while f and not f[0]:
        f = f[1:]
    return f


def _rem(f, g):
    f = list(f)
    while len(f) >= len(g):
        c = f[0] / g[0]
        f = [x - c * y for x, y in zip(f, g + [0] * (len(f) - len(g)))][1:]
    return f


def _is_square(x: Fraction) -> bool:
    if x < 0:
        return False
    return isqrt(x.numerator) ** 2 == x.numerator and isqrt(x.denominator) ** 2 == x.denominator


def _sqrt(x: Fraction) -> Fraction:
    return Fraction(isqrt(x.numerator), isqrt(x.denominator))


def has_zero_column(Q: NetQ) -> bool:
    """Does some column combination Q @ mu vanish?"""
    c = Q.coefficients()
    rows = [[c[i][j][a] for j in range(3)] for i in range(2) for a in range(4)]
    return bool(kernel(rows, 3))


def row_with_two_zeros(Q: NetQ):
    """A rational row combination whose entries span <= 1 dimension, or None.

    Raises Inconclusive if the only such combinations are irrational.
    """
    forms = [f for f in _binary_minors(Q) if any(f)]
    if not forms:
        return (Fraction(1), Fraction(0))
    if all(f[0] == 0 for f in forms):
        return (Fraction(1), Fraction(0))
    # affine chart l1 = 1, s = l0
    g = []
    for f in forms:
        g = _poly_gcd(g, list(f)) if g else _poly_gcd(list(f), [])
    if len(g) <= 1:
        return None
    if len(g) == 2:
        return (-g[1], Fraction(1))
    b, c = g[1], g[2]
    disc = b * b - 4 * c
    if _is_square(disc):
        return ((-b + _sqrt(disc)) / 2, Fraction(1))
    raise Inconclusive("common root of the row minors is irrational", tuple(g))


def net_is_stable(Q: NetQ) -> bool:
    """A net is stable unless it has, after row and column operations, two
    zeros in a row or a zero column."""
    if has_zero_column(Q):
        return False
    return row_with_two_zeros(Q) is None


# ---------------------------------------------------------------------------
# the locus N1

def gram(q: Poly) -> list:
    """Symmetric matrix G with q(x) = x^T G x."""
    G = [[Fraction(0)] * 4 for _ in range(4)]
    for m, c in q.items():
        idx = [i for i in range(4) for _ in range(m[i])]
        i, j = idx
        if i == j:
            G[i][i] += c
        else:
            G[i][j] += c / 2
            G[j][i] += c / 2
    return G


def _quad_value(G, x, y) -> Fraction:
    return sum(G[i][j] * x[i] * y[j] for i in range(4) for j in range(4))


def linear_factors(q: Poly) -> list:
    """Rational linear factors of a quadric that splits, [] if it does not.

    Rank 1: q = c*l^2.  Rank 2: q restricted to a complement of its kernel is a
    binary form, factored by its discriminant.
    """
    G = gram(q)
    ker = kernel(G, 4)
    r = 4 - len(ker)
    if r == 0 or r >= 3:
        return []
    if r == 1:
        i = next(i for i in range(4) if G[i][i])
        return [normalize_linear(Poly.linear(G[i]))]
    comp = []
    for i in range(4):
        e = [int(i == j) for j in range(4)]
        if span_rank([list(k) for k in ker] + comp + [e]) == len(ker) + len(comp) + 1:
            comp.append(e)
        if len(comp) == 2:
            break
    e, f = comp
    a, b, c = _quad_value(G, e, e), 2 * _quad_value(G, e, f), _quad_value(G, f, f)
    # a s^2 + b s t + c t^2 = (p1 s + r1 t)(p2 s + r2 t)
    if a == 0:
        factors = [(Fraction(0), Fraction(1)), (b, c)]
    else:
        disc = b * b - 4 * a * c
        if not _is_square(disc):
            raise Inconclusive("quadric factors only over a quadratic extension", (a, b, c))
        sq = _sqrt(disc)
        factors = [(Fraction(1), -(-b + sq) / (2 * a)), (Fraction(1), -(-b - sq) / (2 * a))]
    basis = [e, f] + [list(k) for k in ker]
    inv = mat_inverse(transpose(basis))
    out = []
    for le, lf in factors:
        # L(e) = le, L(f) = lf, L(kernel) = 0
        vals = [le, lf, 0, 0]
        coeffs = [sum(vals[k] * inv[k][i] for k in range(4)) for i in range(4)]
        out.append(normalize_linear(Poly.linear(coeffs)))
    return out


def divisible_by_linear(q: Poly, w: Poly) -> bool:
    """Exact test: q vanishes identically on the hyperplane w = 0."""
    if not q:
        return True
    H = kernel([w.linear_coeffs()], 4)
    G = gram(q)
    return all(_quad_value(G, h1, h2) == 0 for h1 in H for h2 in H)


def net_in_N1(Q: NetQ):
    """A common linear factor w of the three minors, or None."""
    minors = Q.minors()
    first = next((m for m in minors if m), None)
    if first is None:
        return None
    try:
        candidates = linear_factors(first)
    except Inconclusive:
        # No rational factor. A common factor over an extension would be
        # shared by its conjugate too, forcing all minors onto one line.
        if span_rank([m.coeff_vector(2) for m in minors if m]) == 1:
            raise
        return None
    for w in candidates:
        if all(divisible_by_linear(m, w) for m in minors):
            return w
    return None


# ---------------------------------------------------------------------------
# the map tau

@dataclass(frozen=True)
class TauResult:
    net: NetQ
    solution_dims: tuple

    def __str__(self):
        return str(self.net)


def split_in_ideal(q: Poly, l1: Poly, l2: Poly, w: Poly):
    """Solve q = a*l1 + b*l2 modulo multiples of w.

    Coordinates are taken in the basis (l1, l2, w, m) of linear forms.  The
    solutions of q = a*l1 + b*l2 + c*w differ by the three Koszul syzygies,
    so three pins make them unique: b has no l1-coordinate, and neither a
    nor b has a w-coordinate.  Returns (a, b, dim) where dim is the dimension
    of the unpinned solution space of the homogeneous system.
    """
    basis = complete_basis([l1, l2, w])
    P = transpose([f.linear_coeffs() for f in basis])
    dual = mat_inverse(P)
    cols = [(Poly.var(i) * f).coeff_vector(2) for f in (l1, l2, w) for i in range(4)]
    M = transpose(cols)
    free_dim = len(kernel(M, 12))
    zero = [Fraction(0)] * 4
    pins = [zero + list(dual[0]) + zero, list(dual[2]) + zero + zero, zero + list(dual[2]) + zero]
    sol = solve(M + pins, q.coeff_vector(2) + [Fraction(0)] * 3)
    if sol is None:
        raise NotSingularError(f"{q} is not in the ideal ({l1}, {l2}, {w})")
    return Poly.linear(sol[:4]), Poly.linear(sol[4:8]), free_dim


def tau_map(pair: PairBA) -> TauResult:
    """The class in N1 of a singular planar pair.

    A pair already in planar normal form is used as given; anything else is
    first reduced with :func:`normal_form`.
    """
    nf = pair if is_normal(pair) else normal_form(pair)[0]
    if nf.lam:
        raise NotSingularError("pair is not planar")
    w, l1, l2, q1, q2 = planar_data(nf)
    a1, b1, d1 = split_in_ideal(q1, l1, l2, w)
    a2, b2, d2 = split_in_ideal(q2, l1, l2, w)
    return TauResult(NetQ([[ZERO, a1, b1], [ZERO, a2, b2]]), (d1, d2))
