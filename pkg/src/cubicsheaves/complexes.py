"""Graded matrices between twisted free modules on P^3 and the section-level
linear algebra of the resolution

    0 -> 2O(-3) --B--> O(-1) + 3O(-2) --A--> O + O(-1) -> F -> 0.

Convention: maps act on row vectors from the left, so "B then A" is the
matrix product ``B @ A`` and the complex condition reads ``B @ A == 0``.
Entry (i, j) of a map with source twists ``s`` and target twists ``r`` is a
form of degree ``r[j] - s[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyring import ZERO, Poly, graded_dim, monomials, parse_poly, rank

B_SOURCE = (-3, -3)
MIDDLE = (-1, -2, -2, -2)
A_TARGET = (0, -1)


class ShapeError(ValueError):
    pass


class DegreeError(ValueError):
    pass


class NotLinearError(ValueError):
    """Hilbert function values are not those of a linear polynomial."""


@dataclass(frozen=True)
class GradedMatrix:
    source: tuple
    target: tuple
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "target", tuple(self.target))
        rows = tuple(tuple(_as_poly(e) for e in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if not self.source or not self.target:
            raise ShapeError("twist lists must be non-empty")
        if len(rows) != len(self.source) or any(len(r) != len(self.target) for r in rows):
            raise ShapeError(
                f"entries are not {len(self.source)}x{len(self.target)}"
            )
        for i, s in enumerate(self.source):
            for j, r in enumerate(self.target):
                e = rows[i][j]
                if e.is_zero():
                    continue
                d = r - s
                if d < 0 or not e.is_homogeneous() or e.degree != d:
                    raise DegreeError(f"entry ({i},{j}) = {e} must have degree {d}")

    @property
    def shape(self):
        return len(self.source), len(self.target)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        return compose(self, other)

    def with_entries(self, entries) -> "GradedMatrix":
        return GradedMatrix(self.source, self.target, entries)

    def subs_t(self, t0) -> "GradedMatrix":
        return self.with_entries([[e.subs_t(t0) for e in row] for row in self.entries])

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def to_strings(self) -> list:
        return [[str(e) for e in row] for row in self.entries]


def _as_poly(e) -> Poly:
    if isinstance(e, Poly):
        return e
    if isinstance(e, str):
        return parse_poly(e)
    return Poly.const(e)


def graded(source, target, entries) -> GradedMatrix:
    return GradedMatrix(tuple(source), tuple(target), entries)


def matrix_B(entries) -> GradedMatrix:
    return GradedMatrix(B_SOURCE, MIDDLE, entries)


def matrix_A(entries) -> GradedMatrix:
    return GradedMatrix(MIDDLE, A_TARGET, entries)


def compose(B: GradedMatrix, A: GradedMatrix) -> GradedMatrix:
    """The composite "B then A", i.e. the matrix product ``B @ A``."""
    if B.target != A.source:
        raise ShapeError(f"cannot compose: {B.target} != {A.source}")
    n, k = B.shape
    _, m = A.shape
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for l in range(k):
                b, a = B.entries[i][l], A.entries[l][j]
                if b and a:
                    acc = acc + b * a
            row.append(acc)
        out.append(row)
    return GradedMatrix(B.source, A.target, out)


def sections_matrix(phi: GradedMatrix, m: int) -> list:
    """Rational matrix of ``H^0(phi(m))`` acting on row vectors.

    Rows run over the monomial bases of degree ``m + source[i]``, columns
    over those of degree ``m + target[j]``, summand by summand.
    """
    col_dims = [graded_dim(m + r) for r in phi.target]
    rows = []
    for i, s in enumerate(phi.source):
        for mono in monomials(m + s):
            mono_p = Poly.monomial(mono)
            row = []
            for j, r in enumerate(phi.target):
                if not col_dims[j]:
                    continue
                e = phi.entries[i][j]
                if e.uses_t():
                    raise ValueError("specialize t before taking sections")
                row.extend((mono_p * e).coeff_vector(m + r) if e else [Fraction(0)] * col_dims[j])
            rows.append(row)
    return rows


def sections_shape(phi: GradedMatrix, m: int) -> tuple:
    return (
        sum(graded_dim(m + s) for s in phi.source),
        sum(graded_dim(m + r) for r in phi.target),
    )


def _rank_of(phi: GradedMatrix, m: int) -> int:
    nrows, ncols = sections_shape(phi, m)
    if not nrows or not ncols:
        return 0
    return rank(sections_matrix(phi, m))


def check_shape(B: GradedMatrix, A: GradedMatrix) -> None:
    if B.source != B_SOURCE or B.target != MIDDLE:
        raise ShapeError(f"B must map {B_SOURCE} -> {MIDDLE}")
    if A.source != MIDDLE or A.target != A_TARGET:
        raise ShapeError(f"A must map {MIDDLE} -> {A_TARGET}")


def check_exact_E(B: GradedMatrix, A: GradedMatrix, strict: bool = False) -> bool:
    """Is ``0 -> k^2 -> S^2V* + k^3 V* -> S^3V* + S^2V*`` exact?

    That is: B @ A == 0, rank H^0 B(3) == 2 and rank H^0 A(3) == 20.  With
    ``strict`` the middle exactness is re-checked at twists 4 and 5.
    """
    check_shape(B, A)
    if not compose(B, A).is_zero():
        return False
    if _rank_of(B, 3) != 2 or _rank_of(A, 3) != 20:
        return False
    if strict:
        for m in (4, 5):
            mid = sections_shape(A, m)[0]
            if _rank_of(A, m) != mid - _rank_of(B, m):
                return False
    return True


def hilbert_function(A: GradedMatrix, m: int) -> int:
    """Dimension of the degree-m part of the graded cokernel of A."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return sections_shape(A, m)[1] - _rank_of(A, m)


@dataclass(frozen=True)
class HilbertPoly:
    multiplicity: int
    constant: int

    def __call__(self, m: int) -> int:
        return self.multiplicity * m + self.constant

    @property
    def reduced_constant(self) -> Fraction:
        """Constant term of P(m) / multiplicity."""
        return Fraction(self.constant, self.multiplicity)

    def as_tuple(self):
        return (self.multiplicity, self.constant)

    def __str__(self):
        return f"{self.multiplicity}m+{self.constant}"


def hilbert_polynomial(A: GradedMatrix) -> HilbertPoly:
    """Linear fit of the Hilbert function on m = 1..4, confirmed at m = 5, 6."""
    vals = {m: hilbert_function(A, m) for m in range(1, 7)}
    slope = vals[2] - vals[1]
    const = vals[1] - slope
    bad = [m for m, v in vals.items() if v != slope * m + const]
    if bad:
        raise NotLinearError(f"Hilbert function {vals} is not linear (m={bad})")
    return HilbertPoly(slope, const)


def parse_matrix(rows: Sequence[Sequence[str]]) -> list:
    return [[parse_poly(str(e)) for e in row] for row in rows]
