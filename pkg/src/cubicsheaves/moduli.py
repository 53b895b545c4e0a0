"""Pairs (B, A), the group acting on them, and the stratification of M.

A pair has the shape

    B = [[c1, y11, y12, y13],        A = [[z,  lam],
         [c2, y21, y22, y23]]             [q1, z1 ],
                                          [q2, z2 ],
                                          [q3, z3 ]]

with cubics c, linear y, z, z_i, quadrics q_i and a scalar lam.  The group
G = GL2 x G2 x G3 acts by (B, A) -> (g1 B g2^-1, g2 A g3^-1).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complexes import (
    A_TARGET,
    B_SOURCE,
    MIDDLE,
    GradedMatrix,
    check_exact_E,
    compose,
    matrix_A,
    matrix_B,
)
from .polyring import (
    ONE,
    ZERO,
    Poly,
    det,
    eval_at,
    kernel,
    mat_inverse,
    monomials,
    multiples,
    rref,
    reduce_modulo,
    solve,
    transpose,
    wedge_rank,
)


class InvalidPair(ValueError):
    """The pair is not exact or not stable."""


class ReductionError(ValueError):
    """Reduction to normal form failed; the input is not a stable exact pair."""


class NotPlanarError(ValueError):
    pass


# ---------------------------------------------------------------------------
# pairs

@dataclass(frozen=True)
class PairBA:
    B: GradedMatrix
    A: GradedMatrix

    def __post_init__(self):
        if self.B.source != B_SOURCE or self.B.target != MIDDLE:
            raise ValueError("B has the wrong twists")
        if self.A.source != MIDDLE or self.A.target != A_TARGET:
            raise ValueError("A has the wrong twists")

    @classmethod
    def from_rows(cls, B, A) -> "PairBA":
        return cls(matrix_B(B), matrix_A(A))

    @classmethod
    def from_json(cls, data) -> "PairBA":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_rows(data["B"], data["A"])

    def to_json(self) -> dict:
        return {"B": self.B.to_strings(), "A": self.A.to_strings()}

    @property
    def lam(self) -> Fraction:
        """The degree-0 entry of A."""
        return self.A[0, 1].coeff((0, 0, 0, 0, 0))

    @property
    def z(self) -> Poly:
        return self.A[0, 0]

    @property
    def zcol(self) -> tuple:
        return tuple(self.A[i, 1] for i in (1, 2, 3))

    @property
    def qcol(self) -> tuple:
        return tuple(self.A[i, 0] for i in (1, 2, 3))

    def is_exact(self, strict: bool = False) -> bool:
        return check_exact_E(self.B, self.A, strict=strict)

    def is_stable(self) -> bool:
        return is_pair_stable(self.A)

    def validate(self) -> "PairBA":
        if not self.is_exact():
            raise InvalidPair("B, A do not give an exact sequence")
        if not self.is_stable():
            raise InvalidPair("pair is not stable")
        return self


def is_pair_stable(A: GradedMatrix) -> bool:
    if A.shape != (4, 2):
        raise ValueError("A must be 4x2")
    if A[0, 1]:
        return True
    return wedge_rank([A[i, 1] for i in (1, 2, 3)]) == 3


def planar_pair(w, l1, l2, q1, q2) -> PairBA:
    """The planar normal form built from (w, l1, l2, q1, q2)."""
    w, l1, l2, q1, q2 = (_poly(f) for f in (w, l1, l2, q1, q2))
    B = [[-q1, -l1, w, ZERO], [-q2, -l2, ZERO, w]]
    A = [[w, ZERO], [ZERO, w], [q1, l1], [q2, l2]]
    return PairBA.from_rows(B, A)


def nonplanar_pair(net) -> PairBA:
    """The non-planar normal form with linear part ``net`` (2x3 linear forms).

    The q-entries are the signed 2x2 minors of the net, which makes B @ A = 0.
    """
    y = [[_poly(f) for f in row] for row in net]
    q = net_q_entries(y)
    B = [[ZERO] + y[0], [ZERO] + y[1]]
    A = [[ZERO, ONE], [q[0], ZERO], [q[1], ZERO], [q[2], ZERO]]
    return PairBA.from_rows(B, A)


# Minors of a 2x3 matrix, by omitted column: m_{jk} uses columns j < k.
MINOR_COLUMNS = ((1, 2), (0, 2), (0, 1))
# q_i = MINOR_SIGNS[i] * (minor omitting column i), solved once on the twisted cubic.
MINOR_SIGNS = (1, -1, 1)


def net_minors(y) -> tuple:
    return tuple(y[0][j] * y[1][k] - y[0][k] * y[1][j] for j, k in MINOR_COLUMNS)


def net_q_entries(y) -> tuple:
    return tuple(s * m for s, m in zip(MINOR_SIGNS, net_minors(y)))


def _poly(f) -> Poly:
    if isinstance(f, Poly):
        return f
    from .polyring import parse_poly

    return parse_poly(str(f)) if isinstance(f, str) else Poly.const(f)


# ---------------------------------------------------------------------------
# the group

def _fr(x) -> Fraction:
    return Fraction(x)


@dataclass(frozen=True)
class GroupElement:
    """(g1, g2, g3) with g2 = [[alpha, 0], [u, g]] and g3 = [[beta, 0], [v, gamma]]."""

    g1: tuple = ((1, 0), (0, 1))
    alpha: Fraction = Fraction(1)
    g: tuple = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    u: tuple = (ZERO, ZERO, ZERO)
    beta: Fraction = Fraction(1)
    gamma: Fraction = Fraction(1)
    v: Poly = ZERO

    def __post_init__(self):
        s = object.__setattr__
        s(self, "g1", tuple(tuple(_fr(x) for x in row) for row in self.g1))
        s(self, "g", tuple(tuple(_fr(x) for x in row) for row in self.g))
        s(self, "u", tuple(_poly(f) for f in self.u))
        s(self, "v", _poly(self.v))
        for name in ("alpha", "beta", "gamma"):
            s(self, name, _fr(getattr(self, name)))
        if not (self.alpha and self.beta and self.gamma):
            raise ValueError("alpha, beta, gamma must be nonzero")
        if det(self.g1) == 0 or det(self.g) == 0:
            raise ValueError("g1 and g must be invertible")
        for f in self.u + (self.v,):
            if f and (f.degree != 1 or f.uses_t()):
                raise ValueError(f"{f} is not a linear form")

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls()

    def matrices(self):
        """(g1, g2, g3) as graded matrices."""
        g1 = GradedMatrix(B_SOURCE, B_SOURCE, self.g1)
        g2 = GradedMatrix(
            MIDDLE,
            MIDDLE,
            [[self.alpha, 0, 0, 0]]
            + [[self.u[i]] + list(self.g[i]) for i in range(3)],
        )
        g3 = GradedMatrix(A_TARGET, A_TARGET, [[self.beta, 0], [self.v, self.gamma]])
        return g1, g2, g3

    def inverse(self) -> "GroupElement":
        ginv = mat_inverse(self.g)
        a = 1 / self.alpha
        u = tuple(-a * _combo(ginv[i], self.u) for i in range(3))
        return GroupElement(
            g1=mat_inverse(self.g1),
            alpha=a,
            g=ginv,
            u=u,
            beta=1 / self.beta,
            gamma=1 / self.gamma,
            v=-self.v / (self.beta * self.gamma),
        )

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        """Composition: (self * other) acts as other first, then self."""
        h, k = self, other
        g = [[sum(h.g[i][l] * k.g[l][j] for l in range(3)) for j in range(3)] for i in range(3)]
        u = tuple(h.u[i] * k.alpha + _combo(h.g[i], k.u) for i in range(3))
        g1 = [[sum(h.g1[i][l] * k.g1[l][j] for l in range(2)) for j in range(2)] for i in range(2)]
        return GroupElement(
            g1=g1,
            alpha=h.alpha * k.alpha,
            g=g,
            u=u,
            beta=h.beta * k.beta,
            gamma=h.gamma * k.gamma,
            v=h.v * k.beta + k.v * h.gamma,
        )

    def act(self, pair: PairBA) -> PairBA:
        g1, g2, _ = self.matrices()
        _, g2i, g3i = self.inverse().matrices()
        return PairBA(compose(compose(g1, pair.B), g2i), compose(compose(g2, pair.A), g3i))

    __call__ = act


def _combo(coeffs: Sequence, forms: Sequence[Poly]) -> Poly:
    acc = ZERO
    for c, f in zip(coeffs, forms):
        if c and f:
            acc = acc + f * c
    return acc


# ---------------------------------------------------------------------------
# classification

class Stratum(str, enum.Enum):
    NON_PLANAR = "NonPlanar"
    PLANAR_NON_SINGULAR = "PlanarNonSingular"
    PLANAR_SINGULAR = "PlanarSingular"

    def __str__(self):
        return self.value

    @property
    def is_planar(self) -> bool:
        return self is not Stratum.NON_PLANAR


@dataclass(frozen=True)
class SheafClass:
    stratum: Stratum
    w: Poly | None = None
    point: tuple | None = None
    l1: Poly | None = None
    l2: Poly | None = None
    q1: Poly | None = None
    q2: Poly | None = None

    @property
    def is_planar(self) -> bool:
        return self.stratum.is_planar

    def __str__(self):
        return str(self.stratum)


def planar_data(pair: PairBA):
    """(w, l1, l2, q1, q2) of a pair already in planar normal form."""
    A = pair.A
    return A[0, 0], A[2, 1], A[3, 1], A[2, 0], A[3, 0]


def point_of(w: Poly, l1: Poly, l2: Poly) -> tuple:
    """The point of P^3 where three independent linear forms vanish."""
    ker = kernel([f.linear_coeffs() for f in (w, l1, l2)], 4)
    if len(ker) != 1:
        raise ValueError("w, l1, l2 are not independent")
    return tuple(ker[0])


def classify(pair: PairBA) -> SheafClass:
    if pair.lam:
        return SheafClass(Stratum.NON_PLANAR)
    nf, _ = normal_form(pair)
    w, l1, l2, q1, q2 = planar_data(nf)
    p = point_of(w, l1, l2)
    singular = eval_at(q1, p) == 0 and eval_at(q2, p) == 0
    stratum = Stratum.PLANAR_SINGULAR if singular else Stratum.PLANAR_NON_SINGULAR
    return SheafClass(stratum, w, p, l1, l2, q1, q2)


def is_singular_planar(pair: PairBA) -> bool:
    if pair.lam:
        raise NotPlanarError("pair is not planar (lambda != 0)")
    return classify(pair).stratum is Stratum.PLANAR_SINGULAR


# ---------------------------------------------------------------------------
# normal forms

def normal_form(pair: PairBA):
    """Return (pair', g) with pair' in normal form and g.act(pair) == pair'."""
    if not is_pair_stable(pair.A):
        raise ReductionError("pair is not stable")
    if not compose(pair.B, pair.A).is_zero():
        raise ReductionError("B @ A != 0")
    if pair.lam:
        g = _reduce_nonplanar(pair)
    else:
        g = _reduce_planar(pair)
    out = g.act(pair)
    if not is_normal(out):
        raise ReductionError("reduction did not reach a normal form")
    return out, g


def is_normal(pair: PairBA) -> bool:
    B, A = pair.B, pair.A
    if pair.lam:
        if A[0, 1] != ONE or A[0, 0] or any(A[i, 1] for i in (1, 2, 3)):
            return False
        if B[0, 0] or B[1, 0]:
            return False
        return True
    w, l1, l2, q1, q2 = planar_data(pair)
    if wedge_rank([w, l1, l2]) != 3:
        return False
    return pair == planar_pair(w, l1, l2, q1, q2)


def _reduce_nonplanar(pair: PairBA) -> GroupElement:
    lam = pair.lam
    g = GroupElement(gamma=lam)
    p = g.act(pair)
    # row ops clear z1..z3, then a column op clears z
    step = GroupElement(u=tuple(-f for f in p.zcol))
    g = step * g
    p = step.act(p)
    step = GroupElement(v=p.z)
    return step * g


def _reduce_planar(pair: PairBA) -> GroupElement:
    z = pair.z
    zs = pair.zcol
    if not z:
        raise ReductionError("lambda = 0 and z = 0")
    c = solve(transpose([f.linear_coeffs() for f in zs]), z.linear_coeffs())
    if c is None:
        raise ReductionError("z is not in the span of z1, z2, z3")
    for a, b in ((1, 2), (0, 2), (0, 1)):
        rows = [c, [int(i == a) for i in range(3)], [int(i == b) for i in range(3)]]
        if det(rows) != 0:
            break
    else:  # pragma: no cover - c is nonzero since z is
        raise ReductionError("no invertible completion")
    g = GroupElement(g=rows)
    p = g.act(pair)
    w, l1, l2 = p.zcol
    if wedge_rank([w, l1, l2]) != 3:
        raise ReductionError("w, l1, l2 are dependent")
    # the degree-2 entry next to w must be a multiple of w
    h = _divide_by_linear(p.qcol[0], w)
    if h is None:
        raise ReductionError("entry below z is not divisible by w")
    step = GroupElement(u=(-h, ZERO, ZERO))
    g = step * g
    p = step.act(p)
    q1, q2 = p.qcol[1], p.qcol[2]
    # q1 = r1 + w*a + l1*v; the column op by v and row ops by u remove w*a and l1*v
    r1, (a, v) = _canonical_split(q1, [w, l1])
    q2v = q2 - v * l2
    r2, (b,) = _canonical_split(q2v, [w])
    step = GroupElement(u=(v, -a, -b), v=v)
    g = step * g
    p = step.act(p)
    target = planar_pair(w, l1, l2, r1, r2)
    g1 = _solve_row_ops(p.B, target.B)
    if g1 is None:
        raise ReductionError("B is not row-equivalent to the normal form")
    return GroupElement(g1=g1) * g


def _divide_by_linear(f: Poly, l: Poly):
    """h with f == l*h for a quadric f, or None."""
    if not f:
        return ZERO
    basis = [l * Poly.var(i) for i in range(4)]
    cols = transpose([b.coeff_vector(2) for b in basis])
    sol = solve(cols, f.coeff_vector(2))
    return None if sol is None else Poly.linear(sol)


def _canonical_split(q: Poly, forms: Sequence[Poly]):
    """Write q = r + sum(forms[k] * h_k) with r the canonical remainder.

    The remainder is the reduction of q modulo the degree-2 part of the ideal
    generated by ``forms``, taken with respect to the graded-lex basis.
    """
    gens = multiples(forms, 2)
    vecs = [m.coeff_vector(2) for m in gens]
    r = Poly.from_vector(reduce_modulo(q.coeff_vector(2), rref(vecs)), 2)
    diff = q - r
    basis = [f * Poly.var(i) for f in forms for i in range(4)]
    sol = solve(transpose([b.coeff_vector(2) for b in basis]), diff.coeff_vector(2))
    assert sol is not None
    hs = tuple(Poly.linear(sol[4 * k:4 * k + 4]) for k in range(len(forms)))
    return r, hs


def _solve_row_ops(B: GradedMatrix, target: GradedMatrix):
    """2x2 matrix X with X @ B == target, or None."""
    def flat(M):
        out = []
        for j, e in enumerate(M.entries):
            vec = []
            for k, f in enumerate(e):
                vec.extend(f.coeff_vector(M.target[k] - M.source[j]))
            out.append(vec)
        return out

    b = flat(B)
    t = flat(target)
    cols = transpose(b)
    X = []
    for row in t:
        sol = solve(cols, row)
        if sol is None:
            return None
        X.append(sol)
    if det(X) == 0:
        return None
    return X


# ---------------------------------------------------------------------------
# Fitting ideals

FITTING_ROWS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class FittingIdeal:
    minors: tuple

    @property
    def generators(self) -> tuple:
        return tuple(m for m in self.minors if m)

    def equals_ideal(self, gens: Sequence[Poly], up_to: int = 3) -> bool:
        from .polyring import ideals_equal

        return ideals_equal(self.generators, [_poly(g) for g in gens], up_to)

    def spans_same(self, gens: Sequence[Poly]) -> bool:
        """Equality of the linear spans of the (homogeneous-by-degree) generators."""
        from .polyring import span_rank

        ours = [g for g in self.generators]
        theirs = [_poly(g) for g in gens if _poly(g)]
        for d in {g.degree for g in ours + theirs}:
            v1 = [g.coeff_vector(d) for g in ours if g.degree == d]
            v2 = [g.coeff_vector(d) for g in theirs if g.degree == d]
            r = span_rank(v1)
            if r != span_rank(v2) or (r and span_rank(v1 + v2) != r):
                return False
        return True


def fitting_ideal(A: GradedMatrix) -> FittingIdeal:
    if A.shape != (4, 2):
        raise ValueError("A must be 4x2")
    minors = tuple(A[i, 0] * A[j, 1] - A[i, 1] * A[j, 0] for i, j in FITTING_ROWS)
    return FittingIdeal(minors)


# ---------------------------------------------------------------------------
# the planar map

def gamma_map(q1, l1, q2, l2):
    """(f, p) with f = q1*l2 - q2*l1 and p the zero of l1, l2 in P^2."""
    q1, l1, q2, l2 = (_poly(f) for f in (q1, l1, q2, l2))
    for f in (q1, l1, q2, l2):
        if any(m[3] or m[4] for m, _ in f.items()):
            raise ValueError("gamma_map works in x0, x1, x2 only")
    if wedge_rank([l1, l2]) != 2:
        raise ValueError("l1 and l2 are dependent")
    f = q1 * l2 - q2 * l1
    if not f:
        raise ValueError("q1*l2 - q2*l1 vanishes")
    ker = kernel([l.linear_coeffs()[:3] for l in (l1, l2)], 3)
    p = ker[0]
    lead = next(x for x in p if x)
    p = tuple(Fraction(x, lead) for x in p)
    return f, p
