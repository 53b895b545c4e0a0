"""A one-parameter family leaving the singular planar locus.

Starting from a singular planar pair with q_i = a_i*l1 + b_i*l2, the family
B_t = B0 + t*B1, A_t = A0 + t*A1 is exact for every t, planar singular at
t = 0 and the structure sheaf of a space cubic for t != 0.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable

from .complexes import GradedMatrix, check_exact_E, compose, hilbert_function, matrix_A, matrix_B
from .moduli import GroupElement, InvalidPair, PairBA, _poly, planar_pair
from .polyring import ONE, T, ZERO, Poly, wedge_rank

DEFAULT_T_SAMPLES = (0, 1, -1, 2, 7)


class DiagramError(ArithmeticError):
    def __init__(self, square: str, detail: str = ""):
        super().__init__(f"{square} square does not commute {detail}".strip())
        self.square = square


@dataclass(frozen=True)
class DeformationFamily:
    w: Poly
    l1: Poly
    l2: Poly
    a1: Poly
    b1: Poly
    a2: Poly
    b2: Poly
    B0: GradedMatrix
    A0: GradedMatrix
    B1: GradedMatrix
    A1: GradedMatrix

    @property
    def q1(self) -> Poly:
        return self.a1 * self.l1 + self.b1 * self.l2

    @property
    def q2(self) -> Poly:
        return self.a2 * self.l1 + self.b2 * self.l2

    @property
    def B_t(self) -> GradedMatrix:
        return _add_t(self.B0, self.B1)

    @property
    def A_t(self) -> GradedMatrix:
        return _add_t(self.A0, self.A1)

    def with_first_order(self, **data) -> "DeformationFamily":
        """Rebuild only B1, A1 from modified a/b data, keeping B0, A0."""
        d = {k: getattr(self, k) for k in ("a1", "b1", "a2", "b2")}
        d.update({k: _poly(v) for k, v in data.items()})
        B1, A1 = first_order(**d)
        return replace(self, B1=B1, A1=A1)

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("w", "l1", "l2", "a1", "b1", "a2", "b2")}


def _add_t(M0: GradedMatrix, M1: GradedMatrix) -> GradedMatrix:
    return M0.with_entries([[x + T * y for x, y in zip(r0, r1)] for r0, r1 in zip(M0.entries, M1.entries)])


def first_order(a1, b1, a2, b2):
    B1 = matrix_B([[ZERO, ZERO, a1, b1], [ZERO, ZERO, a2, b2]])
    A1 = matrix_A([[a1 + b2, ONE], [b1 * a2 - b2 * a1, ZERO], [ZERO, ZERO], [ZERO, ZERO]])
    return B1, A1


def build_family(w, l1, l2, a1, b1, a2, b2) -> DeformationFamily:
    w, l1, l2, a1, b1, a2, b2 = (_poly(f) for f in (w, l1, l2, a1, b1, a2, b2))
    for f in (w, l1, l2):
        if not f or f.degree != 1:
            raise ValueError(f"{f} is not a nonzero linear form")
    for f in (a1, b1, a2, b2):
        if f and f.degree != 1:
            raise ValueError(f"{f} is not a linear form")
    if wedge_rank([w, l1, l2]) != 3:
        raise ValueError("w, l1, l2 are dependent")
    q1, q2 = a1 * l1 + b1 * l2, a2 * l1 + b2 * l2
    p0 = planar_pair(w, l1, l2, q1, q2)
    B1, A1 = first_order(a1, b1, a2, b2)
    return DeformationFamily(w, l1, l2, a1, b1, a2, b2, p0.B, p0.A, B1, A1)


def family_from_json(data: dict) -> DeformationFamily:
    return build_family(*(data[k] for k in ("w", "l1", "l2", "a1", "b1", "a2", "b2")))


def family_defect(fam: DeformationFamily):
    """First nonzero entry (i, j, poly) of B_t @ A_t, or None."""
    P = compose(fam.B_t, fam.A_t)
    for i, row in enumerate(P.entries):
        for j, e in enumerate(row):
            if e:
                return i, j, e
    return None


def fiber_at(fam: DeformationFamily, t0) -> PairBA:
    pair = PairBA(fam.B_t.subs_t(t0), fam.A_t.subs_t(t0))
    try:
        return pair.validate()
    except InvalidPair as exc:
        raise InvalidPair(f"fiber at t={t0}: {exc}") from None


def verify_family_complex(fam: DeformationFamily, samples: Iterable = DEFAULT_T_SAMPLES) -> bool:
    """B_t A_t = 0 in k[x, t], and exactness at the sample values of t."""
    if family_defect(fam) is not None:
        return False
    return all(check_exact_E(fam.B_t.subs_t(t0), fam.A_t.subs_t(t0)) for t0 in samples)


def family_hilbert_check(fam: DeformationFamily, samples: Iterable, degrees=range(6)) -> bool:
    for t0 in samples:
        A = fam.A_t.subs_t(t0)
        if any(hilbert_function(A, m) != 3 * m + 1 for m in degrees):
            return False
    return True


def tangent_direction(fam: DeformationFamily):
    """The first-order deformation (B1, A1)."""
    return fam.B1, fam.A1


# ---------------------------------------------------------------------------
# the change of coordinates for t != 0

def transform_element(fam: DeformationFamily, t0) -> GroupElement:
    """(T2, T1, T0) at t = t0, packaged as a group element (g1, g2, g3)."""
    t0 = Fraction(t0)
    if t0 == 0:
        raise ValueError("the transformation matrices have poles at t = 0")
    return GroupElement(
        g1=((1 / t0, 0), (0, 1 / t0)),
        alpha=-t0,
        g=((t0, 0, 0), (0, t0, 0), (0, 0, t0)),
        u=(-fam.w, -fam.l1, -fam.l2),
        beta=1,
        gamma=-1 / t0**2,
        v=-fam.a1 - fam.b2 - fam.w / t0,
    )


def printed_target(fam: DeformationFamily, t0) -> PairBA:
    """The transformed matrices (B~_t, A~_t) at t = t0."""
    t = Fraction(t0)
    w, l1, l2, a1, b1, a2, b2 = fam.w, fam.l1, fam.l2, fam.a1, fam.b1, fam.a2, fam.b2
    q1, q2 = fam.q1, fam.q2
    s = t * a1 + t * b2 + w
    Bt = [[ZERO, -l1, a1 * t + w, b1 * t], [ZERO, -l2, a2 * t, b2 * t + w]]
    At = [
        [ZERO, ONE],
        [(b1 * a2 - b2 * a1) * t**2 - (a1 + b2) * w * t - w * w, ZERO],
        [q1 * t - s * l1, ZERO],
        [q2 * t - s * l2, ZERO],
    ]
    return PairBA.from_rows(Bt, At)


def fiber_ideal(fam: DeformationFamily, t0) -> tuple:
    """The three quadrics cutting out the curve C_t at t = t0."""
    return printed_target(fam, t0).qcol


def _orientations(fam: DeformationFamily, t0):
    g = transform_element(fam, t0)
    (T2, T1, T0), (T2i, T1i, T0i) = g.matrices(), g.inverse().matrices()
    B, A = fam.B_t.subs_t(t0), fam.A_t.subs_t(t0)
    b_square = {
        (e2, e1): compose(compose(L, B), R)
        for e2, L in ((1, T2), (-1, T2i))
        for e1, R in ((1, T1), (-1, T1i))
    }
    a_square = {
        (e1, e0): compose(compose(L, A), R)
        for e1, L in ((1, T1), (-1, T1i))
        for e0, R in ((1, T0), (-1, T0i))
    }
    return b_square, a_square


def calibrate(fam: DeformationFamily, t0=2) -> tuple:
    """Exponents ((T2, T1), (T1, T0)) under which the printed matrices appear.

    An orientation of the two squares is admissible if each square yields the
    printed matrix and the two uses of T1 cancel, so that B~ A~ = 0 holds for
    every family and not only for the sample.  Raises unless exactly one
    orientation is admissible.  At t = 1 the matrices T1 and T0 are
    involutions and T2 is the identity, so t = 1 cannot tell orientations
    apart; the default sample is t = 2.
    """
    target = printed_target(fam, t0)
    b_sq, a_sq = _orientations(fam, t0)
    b_hits = [k for k, M in b_sq.items() if M == target.B]
    a_hits = [k for k, M in a_sq.items() if M == target.A]
    both = [(b, a) for b in b_hits for a in a_hits if b[1] == -a[0]]
    if len(both) != 1:
        raise DiagramError("calibration", f"(B matches {b_hits}, A matches {a_hits})")
    return both[0]


# Frozen by calibrate() on FIX-PN's family at t = 2:
#   B~ = T2^-1 B_t T1^-1  and  A~ = T1 A_t T0.
ORIENTATION = ((-1, -1), (1, 1))


def verify_transform_diagram(fam: DeformationFamily, t0) -> bool:
    """Both squares commute at t = t0 (t0 != 0) in the frozen orientation."""
    if Fraction(t0) == 0:
        raise ValueError("the transformation matrices have poles at t = 0")
    target = printed_target(fam, t0)
    b_sq, a_sq = _orientations(fam, t0)
    if b_sq[ORIENTATION[0]] != target.B:
        raise DiagramError("B", f"at t={t0}")
    if a_sq[ORIENTATION[1]] != target.A:
        raise DiagramError("A", f"at t={t0}")
    return True
