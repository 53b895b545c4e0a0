"""Tangent spaces of the parameter space X, of G-orbits, and of M.

Ambient coordinates on pairs (B1, A1) are the coefficient vectors of the
entries, read row by row in graded-lex monomial order, B1 first:

    B1: 2 rows x degrees (2, 1, 1, 1)           -> 44 coordinates
    A1: row 0 degrees (1, 0), rows 1-3 (2, 1)   -> 47 coordinates
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import A_TARGET, B_SOURCE, MIDDLE, GradedMatrix, compose, matrix_A, matrix_B
from .moduli import PairBA, Stratum, classify
from .nets import NetQ
from .polyring import ZERO, Poly, graded_dim, monomial_index, monomials, rank, rank_and_kernel, transpose, wedge_rank


@dataclass(frozen=True)
class Block:
    """One entry of B1 or A1 inside the ambient vector."""

    matrix: str
    row: int
    col: int
    degree: int
    offset: int

    @property
    def size(self) -> int:
        return graded_dim(self.degree)


def _layout() -> tuple:
    blocks = []
    off = 0
    for name, src, tgt in (("B", B_SOURCE, MIDDLE), ("A", MIDDLE, A_TARGET)):
        for i, s in enumerate(src):
            for j, r in enumerate(tgt):
                d = r - s
                blocks.append(Block(name, i, j, d, off))
                off += graded_dim(d)
    return tuple(blocks)


class AmbientCoords:
    """Fixed coordinates on the 91-dimensional space of pairs (B1, A1)."""

    blocks = _layout()
    dim = sum(b.size for b in blocks)
    b_dim = sum(b.size for b in blocks if b.matrix == "B")
    a_dim = dim - b_dim

    @classmethod
    def block(cls, matrix: str, row: int, col: int) -> Block:
        return next(b for b in cls.blocks if (b.matrix, b.row, b.col) == (matrix, row, col))

    @classmethod
    def lam_index(cls) -> int:
        """Coordinate of the degree-0 entry of A1."""
        return cls.block("A", 0, 1).offset

    @classmethod
    def encode(cls, B1: GradedMatrix, A1: GradedMatrix) -> list:
        vec = []
        for b in cls.blocks:
            M = B1 if b.matrix == "B" else A1
            vec.extend(M[b.row, b.col].coeff_vector(b.degree))
        return vec

    @classmethod
    def decode(cls, vec) -> tuple:
        rows = {"B": [[ZERO] * 4 for _ in range(2)], "A": [[ZERO] * 2 for _ in range(4)]}
        for b in cls.blocks:
            rows[b.matrix][b.row][b.col] = Poly.from_vector(vec[b.offset:b.offset + b.size], b.degree)
        return matrix_B(rows["B"]), matrix_A(rows["A"])

    @classmethod
    def basis_element(cls, k: int) -> tuple:
        """(matrix, row, col, monomial) of coordinate k."""
        for b in cls.blocks:
            if b.offset <= k < b.offset + b.size:
                return b.matrix, b.row, b.col, monomials(b.degree)[k - b.offset]
        raise IndexError(k)


# target of the linearised complex map: the 2x2 matrix B1 A0 + B0 A1,
# with cubic first column and quadric second column
PRODUCT_DEGREES = (3, 2)
PRODUCT_DIM = 2 * sum(graded_dim(d) for d in PRODUCT_DEGREES)


def _product_offsets() -> dict:
    out, off = {}, 0
    for i in range(2):
        for j, d in enumerate(PRODUCT_DEGREES):
            out[i, j] = (off, monomial_index(d))
            off += graded_dim(d)
    return out


_PRODUCT_OFFSETS = _product_offsets()


def linearized_map(pair: PairBA) -> list:
    """Matrix (60 x 91) of (B1, A1) -> B1 A0 + B0 A1."""
    B0, A0 = pair.B.entries, pair.A.entries
    M = [[0] * AmbientCoords.dim for _ in range(PRODUCT_DIM)]
    for k in range(AmbientCoords.dim):
        name, r, c, mono = AmbientCoords.basis_element(k)
        mu = Poly.monomial(mono)
        if name == "B":
            # contributes mu * A0[c][j] to entry (r, j)
            hits = [((r, j), A0[c][j]) for j in range(2)]
        else:
            # contributes B0[i][r] * mu to entry (i, c)
            hits = [((i, c), B0[i][r]) for i in range(2)]
        for (i, j), f in hits:
            if f:
                off, idx = _PRODUCT_OFFSETS[i, j]
                for m, x in (mu * f).items():
                    M[off + idx[m]][k] = x
    return M


def tangent_space_X(pair: PairBA):
    """(dimension, basis) of {(B1, A1) : B1 A0 + B0 A1 = 0}."""
    r, basis = rank_and_kernel(linearized_map(pair), AmbientCoords.dim)
    return len(basis), basis


# ---------------------------------------------------------------------------
# the Lie algebra of G

@dataclass(frozen=True)
class LieTriple:
    """(R, S, T) with S = [[alpha, 0], [u, g]] and T = [[beta, 0], [v, gamma]]."""

    R: tuple
    alpha: Fraction
    g: tuple
    u: tuple
    beta: Fraction
    gamma: Fraction
    v: Poly

    DIM = 4 + (1 + 9 + 12) + (2 + 4)

    @classmethod
    def from_vector(cls, x) -> "LieTriple":
        x = [Fraction(c) for c in x]
        if len(x) != cls.DIM:
            raise ValueError(f"expected {cls.DIM} coordinates")
        R = (tuple(x[0:2]), tuple(x[2:4]))
        alpha = x[4]
        g = tuple(tuple(x[5 + 3 * i:8 + 3 * i]) for i in range(3))
        u = tuple(Poly.linear(x[14 + 4 * i:18 + 4 * i]) for i in range(3))
        beta, gamma = x[26], x[27]
        v = Poly.linear(x[28:32])
        return cls(R, alpha, g, u, beta, gamma, v)

    def matrices(self):
        R = GradedMatrix(B_SOURCE, B_SOURCE, self.R)
        S = GradedMatrix(MIDDLE, MIDDLE, [[self.alpha, 0, 0, 0]] + [[self.u[i]] + list(self.g[i]) for i in range(3)])
        T = GradedMatrix(A_TARGET, A_TARGET, [[self.beta, 0], [self.v, self.gamma]])
        return R, S, T

    def tangent_vector(self, pair: PairBA) -> list:
        """(R B0 - B0 S, S A0 - A0 T) in ambient coordinates."""
        R, S, T = self.matrices()
        B1 = _sub(compose(R, pair.B), compose(pair.B, S))
        A1 = _sub(compose(S, pair.A), compose(pair.A, T))
        return AmbientCoords.encode(B1, A1)


def _sub(M: GradedMatrix, N: GradedMatrix) -> GradedMatrix:
    return M.with_entries([[a - b for a, b in zip(r, s)] for r, s in zip(M.entries, N.entries)])


def _encode_sparse(entries: dict) -> list:
    """Ambient vector from {(matrix, row, col): Poly}."""
    vec = [0] * AmbientCoords.dim
    for key, f in entries.items():
        b = AmbientCoords.block(*key)
        idx = monomial_index(b.degree)
        for m, x in f.items():
            vec[b.offset + idx[m]] += x
    return vec


def _lie_basis_images(pair: PairBA):
    """Images of the 32 basis vectors of Lie(G), in LieTriple.from_vector order."""
    B0, A0 = pair.B.entries, pair.A.entries
    one = Poly.const(1)

    def s_image(a, b, s):
        # S = s * E_ab on the middle module: B1 = -B0 S, A1 = S A0
        ent = {}
        for i in range(2):
            if B0[i][a]:
                ent["B", i, b] = ent.get(("B", i, b), ZERO) - B0[i][a] * s
        for j in range(2):
            if A0[b][j]:
                ent["A", a, j] = ent.get(("A", a, j), ZERO) + s * A0[b][j]
        return ent

    def t_image(a, b, s):
        # T = s * E_ab on the target: A1 = -A0 T
        return {("A", i, b): -A0[i][a] * s for i in range(4) if A0[i][a]}

    out = []
    for a in range(2):
        for b in range(2):
            out.append({("B", a, j): B0[b][j] for j in range(4) if B0[b][j]})
    out.append(s_image(0, 0, one))
    for i in range(3):
        for j in range(3):
            out.append(s_image(i + 1, j + 1, one))
    for i in range(3):
        for k in range(4):
            out.append(s_image(i + 1, 0, Poly.var(k)))
    out.append(t_image(0, 0, one))
    out.append(t_image(1, 1, one))
    for k in range(4):
        out.append(t_image(1, 0, Poly.var(k)))
    return [_encode_sparse(e) for e in out]


def orbit_map(pair: PairBA) -> list:
    """Matrix (91 x 32) of Lie(G) -> T_p X."""
    return transpose(_lie_basis_images(pair))


def orbit_tangent(pair: PairBA):
    """(dimension, basis) of the tangent space of the orbit G.p."""
    M = orbit_map(pair)
    cols = transpose(M)
    basis = []
    r = 0
    for c in cols:
        if rank(basis + [c]) > r:
            basis.append(c)
            r += 1
    return r, basis


def stabilizer_dim(pair: PairBA) -> int:
    r, _ = rank_and_kernel(orbit_map(pair), LieTriple.DIM)
    return LieTriple.DIM - r


@dataclass
class TangentReport:
    dim_TX: int
    dim_orbit: int
    dim_stab: int
    dim_moduli: int
    stratum: Stratum
    TX_basis: list = field(default_factory=list, repr=False)
    orbit_basis: list = field(default_factory=list, repr=False)
    stab_basis: list = field(default_factory=list, repr=False)

    def verdict(self) -> str:
        return f"moduli tangent dimension = {self.dim_moduli} ({self.stratum})"

    def to_json(self, bases: bool = False) -> dict:
        out = {
            "stratum": str(self.stratum),
            "dim_TX": self.dim_TX,
            "dim_orbit": self.dim_orbit,
            "dim_stab": self.dim_stab,
            "dim_moduli": self.dim_moduli,
            "verdict": self.verdict(),
        }
        if bases:
            enc = lambda vs: [[str(x) for x in v] for v in vs]
            out["TX_basis"] = enc(self.TX_basis)
            out["orbit_basis"] = enc(self.orbit_basis)
            out["stab_basis"] = enc(self.stab_basis)
        return out


def tangent_report(pair: PairBA) -> TangentReport:
    dim_tx, tx_basis = tangent_space_X(pair)
    M = orbit_map(pair)
    r, stab = rank_and_kernel(M, LieTriple.DIM)
    _, orbit_basis = orbit_tangent(pair)
    return TangentReport(
        dim_TX=dim_tx,
        dim_orbit=r,
        dim_stab=len(stab),
        dim_moduli=dim_tx - r,
        stratum=classify(pair).stratum,
        TX_basis=tx_basis,
        orbit_basis=orbit_basis,
        stab_basis=stab,
    )


def tangent_dim_M(pair: PairBA) -> int:
    dim_tx, _ = tangent_space_X(pair)
    return dim_tx - rank(orbit_map(pair))


# ---------------------------------------------------------------------------
# nets

NET_DIM = 24


def _net_vector(rows) -> list:
    return [c for row in rows for e in row for c in (e.linear_coeffs() if e else [0] * 4)]


def net_orbit_span(Q: NetQ) -> list:
    """Spanning vectors of F_Q = {S Q - Q R} in the 24-dim space of nets."""
    out = []
    for a in range(2):
        for b in range(2):
            # S Q with S = E_ab: row a receives Q[b, .]
            out.append(_net_vector([[Q[b, j] if i == a else ZERO for j in range(3)] for i in range(2)]))
    for a in range(3):
        for b in range(3):
            # -(Q R) with R = E_ab: column b receives -Q[., a]
            out.append(_net_vector([[-Q[i, a] if j == b else ZERO for j in range(3)] for i in range(2)]))
    return out


def net_slice_span(l1: Poly, l2: Poly, l3: Poly) -> list:
    """The five matrices spanning the slice T'_Q at ((l1, w, 0), (l2, 0, w))."""
    out = [
        _net_vector([[l3, ZERO, ZERO], [ZERO, ZERO, ZERO]]),
        _net_vector([[ZERO, ZERO, ZERO], [l3, ZERO, ZERO]]),
    ]
    for l in (l1, l2, l3):
        out.append(_net_vector([[ZERO, l, ZERO], [ZERO, ZERO, l]]))
    return out


def net_tangent_check(Q: NetQ, l3) -> tuple:
    """(dim F_Q, dim T'_Q, dim of their intersection)."""
    from .moduli import _poly

    l3 = _poly(l3)
    l1, w, z0 = Q.entries[0]
    l2, z1, w2 = Q.entries[1]
    if z0 or z1 or w != w2:
        raise ValueError("Q is not of the form ((l1, w, 0), (l2, 0, w))")
    if wedge_rank([w, l1, l2, l3]) != 4:
        raise ValueError("w, l1, l2, l3 must be a basis of linear forms")
    F = net_orbit_span(Q)
    T = net_slice_span(l1, l2, l3)
    dF, dT = rank(F), rank(T)
    return dF, dT, dF + dT - rank(F + T)
