"""Exact polynomials in x0..x3 (plus an ungraded parameter t) and exact
linear algebra over the rationals.

Coefficients are :class:`fractions.Fraction`.  Monomials are 5-tuples of
exponents ``(x0, x1, x2, x3, t)``; the term order everywhere is graded
lexicographic with ``x0 > x1 > x2 > x3 > t``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations_with_replacement
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

VARS = ("x0", "x1", "x2", "x3", "t")
NVARS = len(VARS)

Monomial = tuple


class ParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the offending character offset."""

    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}" + (f" in {text!r}" if text else ""))


def _key(mono: Monomial):
    # descending graded-lex: larger total degree first, then lex
    return (-sum(mono), tuple(-e for e in mono))


class Poly:
    """Immutable multivariate polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    mono = tuple(mono)
                    if len(mono) != NVARS or min(mono) < 0:
                        raise ValueError(f"bad monomial {mono!r}")
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        """Trusted constructor: valid monomials and Fraction coefficients."""
        p = object.__new__(cls)
        p._terms = {m: c for m, c in terms.items() if c}
        p._hash = None
        return p

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0,) * NVARS: c})

    @classmethod
    def var(cls, name_or_index) -> "Poly":
        i = VARS.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * NVARS
        e[i] = 1
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, mono: Sequence[int], c=1) -> "Poly":
        mono = tuple(mono) + (0,) * (NVARS - len(mono))
        return cls({mono: c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        """The linear form ``sum(coeffs[i] * x_i)``."""
        return cls({_unit(i): c for i, c in enumerate(coeffs)})

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: _key(kv[0]))

    def coeff(self, mono: Sequence[int]) -> Fraction:
        mono = tuple(mono) + (0,) * (NVARS - len(mono))
        return self._terms.get(mono, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def x_degrees(self) -> set:
        return {sum(m[:4]) for m in self._terms}

    def is_homogeneous(self) -> bool:
        """True if every monomial has the same x-degree (t is ungraded)."""
        return len(self.x_degrees()) <= 1

    @property
    def degree(self) -> int:
        """x-degree of a nonzero x-homogeneous polynomial; -1 for zero."""
        degs = self.x_degrees()
        if not degs:
            return -1
        if len(degs) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return degs.pop()

    def t_degree(self) -> int:
        return max((m[4] for m in self._terms), default=-1)

    def uses_t(self) -> bool:
        return any(m[4] for m in self._terms)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3], m1[4] + m2[4])
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return Poly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        return reduce(lambda a, b: a * b, [self] * n, Poly.const(1))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- evaluation -----------------------------------------------------
    def subs_t(self, t0) -> "Poly":
        """Specialize the parameter t at a rational value."""
        t0 = Fraction(t0)
        out: dict = {}
        for m, c in self._terms.items():
            key = m[:4] + (0,)
            out[key] = out.get(key, 0) + c * t0 ** m[4]
        return Poly(out)

    def eval_x(self, point: Sequence) -> "Poly":
        """Substitute values for x0..x3, leaving a polynomial in t."""
        out: dict = {}
        for m, c in self._terms.items():
            v = c
            for e, x in zip(m[:4], point):
                if e:
                    v *= Fraction(x) ** e
            key = (0, 0, 0, 0, m[4])
            out[key] = out.get(key, 0) + v
        return Poly(out)

    def linear_coeffs(self) -> list:
        """Coefficient vector (x0..x3) of a linear form."""
        if any(sum(m[:4]) != 1 or m[4] for m in self._terms):
            raise ValueError(f"{self} is not a linear form")
        return [self._terms.get(_unit(i), Fraction(0)) for i in range(4)]

    def coeff_vector(self, d: int) -> list:
        """Coefficients along :func:`monomials` of degree ``d``."""
        idx = monomial_index(d)
        vec = [Fraction(0)] * len(idx)
        for m, c in self._terms.items():
            try:
                vec[idx[m]] = c
            except KeyError:
                raise ValueError(f"{self} has a term outside degree {d}") from None
        return vec

    @classmethod
    def from_vector(cls, vec: Sequence, d: int) -> "Poly":
        return cls(dict(zip(monomials(d), vec)))


def _unit(i: int) -> Monomial:
    e = [0] * NVARS
    e[i] = 1
    return tuple(e)


X0, X1, X2, X3, T = (Poly.var(i) for i in range(NVARS))
ZERO = Poly()
ONE = Poly.const(1)


# ---------------------------------------------------------------------------
# graded pieces

def graded_dim(d: int) -> int:
    """Dimension of the space of degree-d forms in four variables."""
    if d < 0:
        return 0
    return comb(d + 3, 3)


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple:
    """Degree-d monomials in x0..x3, in descending graded-lex order."""
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(4), d):
        e = [0] * NVARS
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=_key)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict:
    return {m: i for i, m in enumerate(monomials(d))}


def eval_at(p: Poly, point: Sequence) -> Fraction:
    """Exact value of a t-free polynomial at a point of Q^4."""
    if p.uses_t():
        raise ValueError("eval_at needs a polynomial without t")
    if len(point) != 4:
        raise ValueError("point must have four coordinates")
    return p.eval_x(point).coeff((0, 0, 0, 0, 0))


def multiples(forms: Iterable[Poly], d: int) -> list:
    """Spanning set of the degree-d part of the ideal generated by ``forms``."""
    out = []
    for f in forms:
        if f.is_zero():
            continue
        k = d - f.degree
        if k < 0:
            continue
        out.extend(Poly.monomial(m) * f for m in monomials(k))
    return out


# ---------------------------------------------------------------------------
# parsing and printing

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def parse_terms(text: str, names: Sequence[str] = VARS) -> dict:
    """Parse ``text`` into a map exponent-tuple -> Fraction over ``names``.

    Grammar: expr := ['+'|'-'] term (('+'|'-') term)*;
    term := coeff ('*' factor)* | factor ('*' factor)*;
    factor := var ('^' nat)?; coeff := int ('/' posint)?.
    """
    toks = _tokenize(text)
    i = 0
    nv = len(names)

    def peek():
        return toks[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = toks[i]
        if kind and tok[0] != kind or value and tok[1] != value:
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want}, got {got!r}", tok[2], text)
        i += 1
        return tok

    def factor():
        tok = take("name")
        if tok[1] not in names:
            raise ParseError(f"unknown variable {tok[1]!r}", tok[2], text)
        e = [0] * nv
        k = 1
        if peek()[1] == "^":
            take("op", "^")
            k = int(take("int")[1])
        e[names.index(tok[1])] = k
        return e

    def term(sign):
        c = Fraction(sign)
        e = [0] * nv
        if peek()[0] == "int":
            num = int(take("int")[1])
            if peek()[1] == "/":
                take("op", "/")
                den_tok = take("int")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("zero denominator", den_tok[2], text)
                c *= Fraction(num, den)
            else:
                c *= num
        else:
            e = factor()
        while peek()[1] == "*":
            take("op", "*")
            f = factor()
            e = [a + b for a, b in zip(e, f)]
        return tuple(e), c

    out: dict = {}
    sign = 1
    if peek()[1] in "+-" and peek()[0] == "op":
        sign = -1 if take("op")[1] == "-" else 1
    while True:
        mono, c = term(sign)
        out[mono] = out.get(mono, 0) + c
        tok = peek()
        if tok[0] == "end":
            break
        if tok[0] == "op" and tok[1] in "+-":
            take()
            sign = -1 if tok[1] == "-" else 1
            continue
        raise ParseError(f"unexpected {tok[1]!r}", tok[2], text)
    return {m: c for m, c in out.items() if c}


def parse_poly(text: str) -> Poly:
    """Parse a polynomial in x0, x1, x2, x3, t."""
    return Poly(parse_terms(text, VARS))


def format_terms(terms: Mapping, names: Sequence[str] = VARS) -> str:
    items = sorted(((m, c) for m, c in terms.items() if c), key=lambda kv: _key(kv[0]))
    if not items:
        return "0"
    parts = []
    for k, (mono, c) in enumerate(items):
        c = Fraction(c)
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def format_poly(p: Poly) -> str:
    return format_terms(p.terms, VARS)


# ---------------------------------------------------------------------------
# linear algebra

def _integer_rows(rows: Sequence[Sequence]) -> list:
    out = []
    for row in rows:
        den = 1
        for x in row:
            if type(x) is not int:
                d = x.denominator
                if d != 1:
                    den = den * d // gcd(den, d)
        if den == 1:
            out.append([x if type(x) is int else int(x) for x in row])
        else:
            out.append([int(x * den) for x in row])
    return out


def _content_divide(row: dict) -> dict:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    return {k: x // g for k, x in row.items()} if g > 1 else row


def _eliminate(rows: Sequence[Sequence], reduce_above: bool):
    """Fraction-free row reduction on sparse rows, keeping every row primitive.

    Returns (pivot rows as {column: int}, pivot columns).  With
    ``reduce_above`` each pivot column is zero outside its pivot row (a
    scaled reduced echelon form).
    """
    pending = [{k: x for k, x in enumerate(row) if x} for row in _integer_rows(rows)]
    pending = [_content_divide(r) for r in pending if r]
    ncols = len(rows[0]) if rows else 0
    done: list = []
    pivots = []
    for c in range(ncols):
        if not pending:
            break
        cands = [i for i, row in enumerate(pending) if c in row]
        if not cands:
            continue
        p = min(cands, key=lambda i: len(pending[i]))
        prow = pending.pop(p)
        piv = prow[c]
        targets = [pending]
        if reduce_above:
            targets.append(done)
        for rows_ in targets:
            for i, row in enumerate(rows_):
                a = row.get(c)
                if not a:
                    continue
                g = gcd(piv, a)
                pg, ag = piv // g, a // g
                new = {k: pg * x for k, x in row.items()}
                for k, y in prow.items():
                    x = new.get(k, 0) - ag * y
                    if x:
                        new[k] = x
                    else:
                        del new[k]
                rows_[i] = _content_divide(new)
        pending = [r for r in pending if r]
        done.append(prow)
        pivots.append(c)
    return done, pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a rational matrix given as a list of rows."""
    if not rows or not rows[0]:
        return 0
    return len(_eliminate(rows, reduce_above=False)[1])


def _primitive(vec: list) -> tuple:
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        return tuple(vec)
    lead = next(x for x in vec if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in vec)


def rank_and_kernel(rows: Sequence[Sequence], ncols: int | None = None):
    """Exact rank and a kernel basis of the matrix (acting on column vectors).

    Kernel vectors are primitive integer vectors whose first nonzero entry is
    positive.  ``ncols`` is needed only when ``rows`` is empty.
    """
    if not rows:
        n = ncols or 0
        return 0, [tuple(int(i == j) for j in range(n)) for i in range(n)]
    n = len(rows[0])
    m, pivots = _eliminate(rows, reduce_above=True)
    free = [c for c in range(n) if c not in set(pivots)]
    lcm = 1
    for i, pc in enumerate(pivots):
        p = abs(m[i][pc])
        lcm = lcm * p // gcd(lcm, p)
    basis = []
    for f in free:
        v = [0] * n
        v[f] = lcm
        for i, pc in enumerate(pivots):
            v[pc] = -(lcm // m[i][pc]) * m[i].get(f, 0)
        basis.append(_primitive(v))
    return len(pivots), basis


def kernel(rows: Sequence[Sequence], ncols: int | None = None) -> list:
    return rank_and_kernel(rows, ncols)[1]


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> list:
    return [sum(Fraction(a) * b for a, b in zip(row, v)) for row in rows]


def transpose(rows: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*rows)]


def solve(rows: Sequence[Sequence], rhs: Sequence):
    """One rational solution ``x`` of ``rows @ x = rhs``, or None."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    _, ker = rank_and_kernel(aug) if aug else (0, [])
    for v in ker:
        if v[n]:
            return [Fraction(-x, v[n]) for x in v[:n]]
    return None


def span_rank(vectors: Sequence[Sequence]) -> int:
    return rank(list(vectors)) if vectors else 0


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    if not vectors:
        return False
    return span_rank(list(vectors) + [v]) == span_rank(vectors)


def wedge_rank(forms: Sequence[Poly]) -> int:
    """Dimension of the span of a list of linear forms."""
    vecs = []
    for f in forms:
        if f.is_zero():
            continue
        if f.degree != 1 or f.uses_t():
            raise ValueError(f"{f} is not a linear form")
        vecs.append(f.linear_coeffs())
    return span_rank(vecs)


def forms_span_rank(forms: Sequence[Poly], d: int) -> int:
    return span_rank([f.coeff_vector(d) for f in forms if not f.is_zero()])


def rref(rows: Sequence[Sequence]):
    """Reduced row echelon form over Q.  Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def reduce_modulo(vec: Sequence, basis_rref) -> list:
    """Canonical remainder of ``vec`` modulo the row space of an RREF basis."""
    rows, pivots = basis_rref
    out = [Fraction(x) for x in vec]
    for row, c in zip(rows, pivots):
        if out[c]:
            f = out[c]
            out = [x - f * y for x, y in zip(out, row)]
    return out


def mat_inverse(rows: Sequence[Sequence]) -> list:
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    return [[sum(Fraction(x) * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def det(rows: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def ideal_piece_rank(gens: Sequence[Poly], d: int) -> int:
    return forms_span_rank(multiples(gens, d), d)


def ideals_equal(gens1: Sequence[Poly], gens2: Sequence[Poly], up_to: int | None = None) -> bool:
    """Equality of homogeneous ideals, compared degree by degree.

    Comparing every graded piece up to the largest generator degree decides
    equality, since each generator then lies in the other ideal.
    """
    gens1 = [g for g in gens1 if not g.is_zero()]
    gens2 = [g for g in gens2 if not g.is_zero()]
    if up_to is None:
        up_to = max((g.degree for g in gens1 + gens2), default=0)
    for d in range(up_to + 1):
        v1 = [f.coeff_vector(d) for f in multiples(gens1, d)]
        v2 = [f.coeff_vector(d) for f in multiples(gens2, d)]
        r1, r2 = span_rank(v1), span_rank(v2)
        if r1 != r2 or (r1 and span_rank(v1 + v2) != r1):
            return False
    return True


def in_ideal(f: Poly, gens: Sequence[Poly]) -> bool:
    if f.is_zero():
        return True
    d = f.degree
    return in_span([g.coeff_vector(d) for g in multiples(gens, d)], f.coeff_vector(d))


def linear_from_vector(vec: Sequence) -> Poly:
    return Poly.linear(vec)


def complete_basis(forms: Sequence[Poly]) -> list:
    """Extend independent linear forms by standard variables to a basis of V*."""
    out = list(forms)
    for i in range(4):
        if len(out) == 4:
            break
        x = Poly.var(i)
        if wedge_rank(out + [x]) == len(out) + 1:
            out.append(x)
    return out


def normalize_linear(l: Poly) -> Poly:
    """Scale a nonzero form so its leading graded-lex coefficient is 1."""
    lead = l.sorted_terms()[0][1]
    return l / lead
