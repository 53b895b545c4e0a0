"""Shipped fixtures and seeded random pairs and group elements."""

from __future__ import annotations

import random
from functools import lru_cache
from importlib import resources

from .moduli import (
    GroupElement,
    InvalidPair,
    PairBA,
    Stratum,
    nonplanar_pair,
    planar_pair,
    point_of,
)
from .polyring import Poly, eval_at, monomials, wedge_rank

FIXTURES = ("FIX-TC", "FIX-PS", "FIX-PN")
FIXTURE_STRATA = {
    "FIX-TC": Stratum.NON_PLANAR,
    "FIX-PS": Stratum.PLANAR_NON_SINGULAR,
    "FIX-PN": Stratum.PLANAR_SINGULAR,
}
DEFAULT_SEED = 20240


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return resources.files("cubicsheaves").joinpath("data", f"{name}.json").read_text()


@lru_cache(maxsize=None)
def load_fixture(name: str) -> PairBA:
    """A shipped fixture, checked for exactness and stability on load."""
    return PairBA.from_json(fixture_text(name)).validate()


def fixtures() -> dict:
    return {name: load_fixture(name) for name in FIXTURES}


# ---------------------------------------------------------------------------
# random data

COEFFS = (-2, -1, -1, 0, 0, 0, 1, 1, 2)


def random_form(rng: random.Random, d: int, coeffs=COEFFS) -> Poly:
    while True:
        f = Poly({m: rng.choice(coeffs) for m in monomials(d)})
        if f:
            return f


def random_linear(rng: random.Random) -> Poly:
    return random_form(rng, 1)


def random_independent(rng: random.Random, k: int) -> list:
    while True:
        forms = [random_linear(rng) for _ in range(k)]
        if wedge_rank(forms) == k:
            return forms


def random_unimodular(rng: random.Random, n: int, steps: int = 4) -> list:
    """Integer matrix of determinant +-1: a signed permutation times shears."""
    perm = list(range(n))
    rng.shuffle(perm)
    m = [[rng.choice((1, -1)) if perm[i] == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1, 2))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


def random_group_element(rng: random.Random, integral: bool = True) -> GroupElement:
    """A random element of G.

    With ``integral`` the element and its inverse have integer entries, which
    keeps translated pairs small; otherwise scalars may be non-units.
    """
    scalars = (1, -1) if integral else (1, -1, 2, -3, 3)
    return GroupElement(
        g1=random_unimodular(rng, 2),
        alpha=rng.choice(scalars),
        g=random_unimodular(rng, 3),
        u=tuple(random_form(rng, 1, (-1, 0, 0, 1)) for _ in range(3)),
        beta=rng.choice(scalars),
        gamma=rng.choice(scalars),
        v=random_form(rng, 1, (-1, 0, 0, 1)),
    )


def random_normal_form(rng: random.Random, stratum: Stratum) -> PairBA:
    """A random stable exact pair in normal form in the given stratum."""
    stratum = Stratum(stratum)
    for _ in range(1000):
        if stratum is Stratum.NON_PLANAR:
            net = [[random_form(rng, 1, (-1, 0, 0, 1)) for _ in range(3)] for _ in range(2)]
            try:
                pair = nonplanar_pair(net)
            except InvalidPair:
                continue
        else:
            w, l1, l2 = random_independent(rng, 3)
            if stratum is Stratum.PLANAR_SINGULAR:
                a1, b1, a2, b2 = (random_form(rng, 1, (-1, 0, 0, 1)) for _ in range(4))
                q1, q2 = a1 * l1 + b1 * l2, a2 * l1 + b2 * l2
            else:
                q1, q2 = random_form(rng, 2), random_form(rng, 2)
                p = point_of(w, l1, l2)
                if eval_at(q1, p) == 0 and eval_at(q2, p) == 0:
                    continue
            pair = planar_pair(w, l1, l2, q1, q2)
        if pair.is_exact():
            return pair
    raise RuntimeError("could not sample a pair")  # pragma: no cover


def random_pair(rng: random.Random, stratum: Stratum, integral: bool = True) -> PairBA:
    """A random G-translate of a random normal form."""
    return random_group_element(rng, integral).act(random_normal_form(rng, stratum))
