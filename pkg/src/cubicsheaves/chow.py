"""Integer intersection arithmetic: rewrite rings, Chern classes, Betti tables.

A :class:`RewriteRing` is Z[x_1..x_n] modulo monic relations whose leading
monomials are pure powers x_i^{e_i} and whose tails involve x_i only below
e_i.  Repeated rewriting then terminates in a unique normal form spanned by
the monomials with exponents below the leading powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .polyring import format_terms, parse_terms


class RewriteRing:
    def __init__(
        self,
        names: Sequence[str],
        relations: Mapping[str, tuple] | None = None,
        truncate: int | None = None,
    ):
        """``relations`` maps a generator to (power, tail): x^power -> tail.

        The tail is a dict {exponent tuple: int}.  ``truncate`` drops every
        term of total degree above it (all generators have degree 1).
        """
        self.names = tuple(names)
        self.truncate = truncate
        self.relations = {}
        for name, (power, tail) in (relations or {}).items():
            i = self.names.index(name)
            tail = {tuple(m): int(c) for m, c in tail.items() if c}
            if any(m[i] >= power for m in tail):
                raise ValueError(f"tail of {name}^{power} is not below the leading power")
            self.relations[i] = (power, tail)
        self._cache: dict = {}

    # -- construction ---------------------------------------------------
    def __call__(self, x) -> "RingElem":
        if isinstance(x, RingElem):
            return self.embed(x)
        if isinstance(x, str):
            terms = parse_terms(x, self.names)
            return RingElem(self, self.reduce({m: int(c) for m, c in terms.items()}))
        if isinstance(x, int):
            return RingElem(self, self.reduce({(0,) * len(self.names): x}))
        if isinstance(x, dict):
            return RingElem(self, self.reduce(x))
        raise TypeError(f"cannot make a ring element from {x!r}")

    def gen(self, name: str) -> "RingElem":
        i = self.names.index(name)
        return self({tuple(int(j == i) for j in range(len(self.names))): 1})

    def gens(self) -> tuple:
        return tuple(self.gen(n) for n in self.names)

    @property
    def one(self) -> "RingElem":
        return self(1)

    @property
    def zero(self) -> "RingElem":
        return self(0)

    def embed(self, x: "RingElem") -> "RingElem":
        """Image of an element of a ring whose generators are a prefix of ours."""
        k = len(x.ring.names)
        if x.ring.names != self.names[:k]:
            raise ValueError("generators do not extend the source ring")
        pad = (0,) * (len(self.names) - k)
        return self({m + pad: c for m, c in x.terms.items()})

    def adjoin(self, name: str, power: int, tail_elem: "RingElem") -> "RewriteRing":
        """The ring self[name] / (name^power - tail)."""
        names = self.names + (name,)
        rels = {}
        for i, (p, tail) in self.relations.items():
            rels[self.names[i]] = (p, {m + (0,): c for m, c in tail.items()})
        rels[name] = (power, dict(tail_elem.terms))
        return RewriteRing(names, rels, self.truncate)

    # -- reduction --------------------------------------------------------
    def _reduce_monomial(self, m: tuple) -> dict:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        out: dict = {}
        if self.truncate is None or sum(m) <= self.truncate:
            for i in sorted(self.relations, reverse=True):
                power, tail = self.relations[i]
                if m[i] >= power:
                    rest = list(m)
                    rest[i] -= power
                    for tm, tc in tail.items():
                        mm = tuple(a + b for a, b in zip(rest, tm))
                        for k, v in self._reduce_monomial(mm).items():
                            out[k] = out.get(k, 0) + tc * v
                    out = {k: v for k, v in out.items() if v}
                    break
            else:
                out = {m: 1}
        self._cache[m] = out
        return out

    def reduce(self, terms: Mapping) -> dict:
        out: dict = {}
        for m, c in terms.items():
            if not c:
                continue
            for k, v in self._reduce_monomial(tuple(m)).items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}

    # -- structure -------------------------------------------------------------
    def is_finite(self) -> bool:
        return len(self.relations) == len(self.names)

    def basis(self) -> list:
        """Normal-form monomials, sorted by degree."""
        if not self.is_finite():
            if self.truncate is None:
                raise ValueError("the ring has an infinite monomial basis")
            ranges = [range(self.truncate + 1)] * len(self.names)
        else:
            ranges = [range(self.relations[i][0]) for i in range(len(self.names))]
        mons = [m for m in product(*ranges) if self.truncate is None or sum(m) <= self.truncate]
        return sorted(mons, key=lambda m: (sum(m), tuple(-e for e in m)))

    def ranks_by_degree(self) -> list:
        counts: dict = {}
        for m in self.basis():
            counts[sum(m)] = counts.get(sum(m), 0) + 1
        top = max(counts)
        return [counts.get(d, 0) for d in range(top + 1)]

    @property
    def top_degree(self) -> int:
        if self.truncate is not None and not self.is_finite():
            return self.truncate
        return len(self.ranks_by_degree()) - 1

    def relation_string(self, name: str) -> str:
        """The relation for ``name`` written as 'x^e - tail'."""
        return format_terms(self.relation_element(name), self.names)

    def relation_element(self, name: str) -> dict:
        """Unreduced terms of 'x^e - tail'."""
        i = self.names.index(name)
        power, tail = self.relations[i]
        lead = tuple(power if j == i else 0 for j in range(len(self.names)))
        terms = {lead: 1}
        for m, c in tail.items():
            terms[m] = terms.get(m, 0) - c
        return terms

    def __repr__(self):
        rels = ", ".join(self.relation_string(self.names[i]) for i in sorted(self.relations))
        return f"Z[{', '.join(self.names)}]/({rels})"


class RingElem:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: RewriteRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, RingElem):
            if other.ring is self.ring:
                return other
            return self.ring.embed(other)
        if isinstance(other, int):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return RingElem(self.ring, {m: c for m, c in out.items() if c})

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return RingElem(self.ring, self.ring.reduce(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def part(self, d: int) -> "RingElem":
        return RingElem(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def parts(self, top: int | None = None) -> list:
        if top is None:
            top = max((sum(m) for m in self.terms), default=0)
        return [self.part(d) for d in range(top + 1)]

    def constant(self) -> int:
        return self.terms.get((0,) * len(self.ring.names), 0)

    def truncated(self, d: int) -> "RingElem":
        return RingElem(self.ring, {m: c for m, c in self.terms.items() if sum(m) <= d})

    def coefficients(self) -> dict:
        """{monomial string: coefficient}."""
        return {format_terms({m: 1}, self.ring.names): c for m, c in self.terms.items()}

    def __str__(self):
        return format_terms(self.terms, self.ring.names)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Chern classes

def chern_inverse(c: RingElem, degree: int | None = None) -> RingElem:
    """Inverse of a total Chern class (constant term 1), truncated.

    The truncation degree defaults to the top degree of the ring.
    """
    if c.constant() != 1:
        raise ValueError("a total Chern class has constant term 1")
    if degree is None:
        degree = c.ring.top_degree
    x = (c - 1).truncated(degree)
    out = c.ring.one
    power = c.ring.one
    for _ in range(degree):
        power = (power * (-x)).truncated(degree)
        out = out + power
    return out.truncated(degree)


def chern_classes(c: RingElem, rank: int) -> list:
    """[c_0, ..., c_rank] of a total Chern class."""
    return [c.part(d) for d in range(rank + 1)]


# symmetric functions in three variables ------------------------------------

def _tmul(f: dict, g: dict) -> dict:
    out: dict = {}
    for a, x in f.items():
        for b, y in g.items():
            m = tuple(i + j for i, j in zip(a, b))
            out[m] = out.get(m, 0) + x * y
    return {m: c for m, c in out.items() if c}


def _elementary3() -> tuple:
    e1 = {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}
    e2 = {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1}
    e3 = {(1, 1, 1): 1}
    return e1, e2, e3


def _tpow(f: dict, n: int, nvars: int = 3) -> dict:
    out = {(0,) * nvars: 1}
    for _ in range(n):
        out = _tmul(out, f)
    return out


def symmetric_reduce(f: dict) -> dict:
    """Write a symmetric polynomial in three variables in e1, e2, e3.

    Returns {(p, q, r): coeff} meaning sum coeff * e1^p e2^q e3^r.  Raises
    ArithmeticError if ``f`` is not symmetric.
    """
    e = _elementary3()
    f = {m: c for m, c in f.items() if c}
    out: dict = {}
    while f:
        lead = max(f)
        a, b, c = lead
        if not a >= b >= c:
            raise ArithmeticError(f"polynomial is not symmetric (leading term {lead})")
        coef = f[lead]
        key = (a - b, b - c, c)
        out[key] = out.get(key, 0) + coef
        term = _tmul(_tmul(_tpow(e[0], a - b), _tpow(e[1], b - c)), _tpow(e[2], c))
        for m, x in term.items():
            f[m] = f.get(m, 0) - coef * x
        f = {m: v for m, v in f.items() if v}
    return out


def sym3_root_sums() -> list:
    """The ten weights i*a + j*b + k*c with i + j + k = 3."""
    return [(i, j, 3 - i - j) for i in range(4) for j in range(4 - i)]


@lru_cache(maxsize=None)
def sym3_formula() -> tuple:
    """c(S^3 E) of a rank-3 bundle as a polynomial in (c1, c2, c3)."""
    total = {(0, 0, 0): 1}
    for w in sym3_root_sums():
        factor = {(0, 0, 0): 1}
        for k in range(3):
            if w[k]:
                factor[tuple(int(j == k) for j in range(3))] = w[k]
        total = _tmul(total, factor)
    return tuple(sorted(symmetric_reduce(total).items()))


def chern_sym3_rank3(c1: RingElem, c2: RingElem, c3: RingElem) -> RingElem:
    """Total Chern class of S^3 E for a rank-3 bundle E with Chern classes c_i."""
    ring = c1.ring
    c2, c3 = ring.embed(c2) if c2.ring is not ring else c2, ring.embed(c3) if c3.ring is not ring else c3
    out = ring.zero
    for (p, q, r), coef in sym3_formula():
        out = out + coef * (c1**p) * (c2**q) * (c3**r)
    return out


# ---------------------------------------------------------------------------
# projective bundles and the ring of M1

def projective_bundle_ring(base: RewriteRing, c: RingElem, rank: int, fiber_var: str) -> RewriteRing:
    """base[x] / (x^r + c1 x^{r-1} + ... + c_r)."""
    if c.ring is not base:
        c = base.embed(c)
    ext = RewriteRing(base.names + (fiber_var,), None, base.truncate)
    x = ext.gen(fiber_var)
    tail = ext.zero
    for i in range(1, rank + 1):
        tail = tail - ext.embed(c.part(i)) * x ** (rank - i)
    return base.adjoin(fiber_var, rank, tail)


def point_ring() -> RewriteRing:
    return RewriteRing(())


def projective_space_ring(n: int, name: str = "h") -> RewriteRing:
    return RewriteRing((name,), {name: (n + 1, {})})


def dual_plane_ring() -> RewriteRing:
    """A*(P^3) = Z[s]/(s^4)."""
    return projective_space_ring(3, "s")


def flag_ring() -> RewriteRing:
    """A*(N1): the P^2-bundle of the tautological quotient Q over P^3."""
    base = dual_plane_ring()
    s = base.gen("s")
    cQ = 1 + s + s**2 + s**3
    return projective_bundle_ring(base, cQ, 3, "t")


def plane_bundle_ring() -> RewriteRing:
    """A*(P(H)) with c(H) = 1 - s + s^2 - s^3."""
    base = dual_plane_ring()
    s = base.gen("s")
    return projective_bundle_ring(base, 1 - s + s**2 - s**3, 3, "t")


def chern_sym3_dual_H() -> RewriteRing:
    base = dual_plane_ring()
    s = base.gen("s")
    return chern_sym3_rank3(s, s**2, s**3)


def chern_K(ring: RewriteRing | None = None) -> RingElem:
    """c(K) = c(S^3 H*) (1 + 3t)^-1 in A*(P(H))."""
    R = ring or plane_bundle_ring()
    s = R.gen("s")
    t = R.gen("t")
    cS3 = chern_sym3_rank3(s, s**2, s**3)
    return cS3 * chern_inverse(1 + 3 * t)


def m1_chow_ideal() -> RewriteRing:
    """A*(M1) = A*(P(H))[u] / (u^9 + c1(K) u^8 + ... + c9(K))."""
    R = plane_bundle_ring()
    return projective_bundle_ring(R, chern_K(R), 9, "u")


# Reference relation for the u-generator of A*(M1), as a fixed polynomial.
REFERENCE_U_RELATION = (
    "u^9 + 10*s*u^8 - 3*t*u^8 + 55*s^2*u^7 - 30*s*t*u^7 + 9*t^2*u^7"
    " + 220*s^3*u^6 - 165*s^2*t*u^6 + 90*s*t^2*u^6"
    " + 495*s^2*t^2*u^5 - 660*s^3*t*u^5 + 1980*s^3*t^2*u^4"
)


@dataclass(frozen=True)
class RelationComparison:
    computed: dict
    reference: dict

    @property
    def equal(self) -> bool:
        return self.computed == self.reference

    def differences(self) -> dict:
        """{monomial: (computed, reference)} where the coefficients differ."""
        keys = set(self.computed) | set(self.reference)
        return {
            k: (self.computed.get(k, 0), self.reference.get(k, 0))
            for k in sorted(keys)
            if self.computed.get(k, 0) != self.reference.get(k, 0)
        }

    def low_u_terms_vanish(self) -> bool:
        """No terms of u-degree 3 or less in the computed relation."""
        return all(_u_degree(k) > 3 for k in self.computed)


def _u_degree(mono: str) -> int:
    for factor in mono.split("*"):
        if factor.startswith("u"):
            return int(factor[2:]) if "^" in factor else 1
    return 0


def _named_terms(terms: dict, names) -> dict:
    return {format_terms({m: 1}, names): c for m, c in terms.items() if c}


def compare_u_relation(ring: RewriteRing | None = None) -> RelationComparison:
    ring = ring or m1_chow_ideal()
    computed = _named_terms(ring.relation_element("u"), ring.names)
    ref = parse_terms(REFERENCE_U_RELATION, ring.names)
    reference = _named_terms({m: int(c) for m, c in ref.items()}, ring.names)
    return RelationComparison(computed, reference)


def truncated_series_relation() -> dict:
    """The u-relation obtained when (1 + 3t)^-1 is cut off after t^2 and the
    product is not reduced by the relation for t.

    Diagnostic only: it shows how the reference relation arises.
    """
    free = RewriteRing(("s", "t", "u"), {"s": (4, {})})
    s, t, u = free.gens()
    cS3 = 1 + 10 * s + 55 * s**2 + 220 * s**3
    cK = cS3 * (1 - 3 * t + 9 * t**2)
    rel = u**9
    for i in range(1, 10):
        rel = rel + cK.part(i) * u ** (9 - i)
    return _named_terms(rel.terms, free.names)


# ---------------------------------------------------------------------------
# Betti tables

@dataclass(frozen=True)
class BettiTable:
    """Ranks b_i of A_i, indexed by dimension i = 0..dim."""

    ranks: tuple

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        if any(r < 0 for r in self.ranks):
            raise ValueError(f"negative rank in {self.ranks}")

    @property
    def dim(self) -> int:
        return len(self.ranks) - 1

    @property
    def euler(self) -> int:
        return sum(self.ranks)

    def __getitem__(self, i: int) -> int:
        return self.ranks[i] if 0 <= i < len(self.ranks) else 0

    def is_palindromic(self) -> bool:
        return self.ranks == self.ranks[::-1]

    def to_json(self) -> dict:
        return {"betti": list(self.ranks), "euler": self.euler}

    def __str__(self):
        return " ".join(str(r) for r in self.ranks) + f" | e = {self.euler}"


def betti_from_ring(ring: RewriteRing, dim: int) -> BettiTable:
    """Ranks of the codimension-graded basis, re-indexed by dimension."""
    by_codim = ring.ranks_by_degree()
    if len(by_codim) > dim + 1:
        raise ValueError("ring has classes beyond the stated dimension")
    return BettiTable([by_codim[dim - i] if dim - i < len(by_codim) else 0 for i in range(dim + 1)])


def pbundle_betti(base: BettiTable, fiber_dim: int) -> BettiTable:
    """Betti table of a P^fiber_dim-bundle over the base."""
    if fiber_dim < 0:
        raise ValueError("fiber dimension must be >= 0")
    n = base.dim + fiber_dim
    return BettiTable([sum(base[i - k] for k in range(fiber_dim + 1)) for i in range(n + 1)])


def _combine(tables, signs) -> BettiTable:
    n = max(t.dim for t in tables)
    ranks = [sum(s * t[i] for t, s in zip(tables, signs)) for i in range(n + 1)]
    while len(ranks) > 1 and ranks[-1] == 0:
        ranks.pop()
    return BettiTable(ranks)


def blowup_betti(bN: BettiTable, bN1: BettiTable, bE: BettiTable) -> BettiTable:
    """b_i(Bl) = b_i(E) + b_i(N) - b_i(N1)."""
    return _combine([bE, bN, bN1], [1, 1, -1])


def mayer_vietoris_betti(b0: BettiTable, b1: BettiTable, b01: BettiTable) -> BettiTable:
    """b_i(X0 u X1) = b_i(X0) + b_i(X1) - b_i(X0 n X1)."""
    return _combine([b0, b1, b01], [1, 1, -1])


# Betti numbers of the space N of nets of quadrics: a stored input.
BETTI_N = BettiTable((1, 1, 3, 4, 7, 8, 10, 8, 7, 4, 3, 1, 1))

SPACES = ("N", "N1", "PH", "E", "M0", "M1", "M0capM1", "M")


def betti_tables() -> dict:
    """All Betti tables, computed from the rings and the bundle formulas."""
    bN1 = betti_from_ring(flag_ring(), 5)
    bE = pbundle_betti(bN1, 6)
    bM0 = blowup_betti(BETTI_N, bN1, bE)
    bPH = betti_from_ring(plane_bundle_ring(), 5)
    bM1 = betti_from_ring(m1_chow_ideal(), 13)
    bM = mayer_vietoris_betti(bM0, bM1, bE)
    return {"N": BETTI_N, "N1": bN1, "PH": bPH, "E": bE, "M0capM1": bE, "M0": bM0, "M1": bM1, "M": bM}


def betti(space: str) -> BettiTable:
    if space not in SPACES:
        raise KeyError(f"unknown space {space!r}; choose from {SPACES}")
    return betti_tables()[space]


def betti_M1_via_bundles() -> BettiTable:
    """Second route to b(M1): a P^8-bundle over a P^2-bundle over P^3."""
    return pbundle_betti(pbundle_betti(BettiTable((1, 1, 1, 1)), 2), 8)
