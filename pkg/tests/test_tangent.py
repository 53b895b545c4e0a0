import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubicsheaves.deform import build_family, tangent_direction
from cubicsheaves.moduli import Stratum
from cubicsheaves.nets import NetQ
from cubicsheaves.polyring import X0, X1, X2, X3, mat_vec, rank, transpose
from cubicsheaves.samples import random_group_element, random_pair
from cubicsheaves.tangent import (
    NET_DIM,
    PRODUCT_DIM,
    AmbientCoords,
    LieTriple,
    linearized_map,
    net_tangent_check,
    orbit_map,
    orbit_tangent,
    stabilizer_dim,
    tangent_dim_M,
    tangent_report,
    tangent_space_X,
)
from oracles import naive_rank

EXPECTED = {"FIX-TC": (42, 30, 2, 12), "FIX-PS": (43, 30, 2, 13), "FIX-PN": (44, 30, 2, 14)}
BY_STRATUM = {Stratum.NON_PLANAR: 12, Stratum.PLANAR_NON_SINGULAR: 13, Stratum.PLANAR_SINGULAR: 14}


def test_layout():
    assert AmbientCoords.dim == 91
    assert AmbientCoords.b_dim == 44 and AmbientCoords.a_dim == 47
    assert LieTriple.DIM == 32
    assert PRODUCT_DIM == 60


def test_encode_decode_roundtrip(fix):
    p = fix["FIX-PN"]
    vec = AmbientCoords.encode(p.B, p.A)
    assert AmbientCoords.decode(vec) == (p.B, p.A)
    assert vec[AmbientCoords.lam_index()] == 0


@pytest.mark.parametrize("name", list(EXPECTED))
def test_fixture_dimensions(fix, name):
    rep = tangent_report(fix[name])
    assert (rep.dim_TX, rep.dim_orbit, rep.dim_stab, rep.dim_moduli) == EXPECTED[name]
    assert tangent_dim_M(fix[name]) == EXPECTED[name][3]
    assert stabilizer_dim(fix[name]) == 2
    assert orbit_tangent(fix[name])[0] == 32 - stabilizer_dim(fix[name])


@pytest.mark.parametrize("name", list(EXPECTED))
def test_tangent_rank_oracle(fix, name):
    M = linearized_map(fix[name])
    assert 91 - naive_rank(M) == EXPECTED[name][0]


def test_verdict(fix):
    assert tangent_report(fix["FIX-PN"]).verdict() == "moduli tangent dimension = 14 (PlanarSingular)"


@pytest.mark.parametrize("name", list(EXPECTED))
def test_orbit_map_matches_slow_route(fix, name):
    pair = fix[name]
    M = orbit_map(pair)
    for k in range(LieTriple.DIM):
        e = [0] * LieTriple.DIM
        e[k] = 1
        assert LieTriple.from_vector(e).tangent_vector(pair) == [row[k] for row in M]


@pytest.mark.parametrize("name", list(EXPECTED))
def test_orbit_inside_tangent_space(fix, name):
    L = linearized_map(fix[name])
    for v in transpose(orbit_map(fix[name])):
        assert not any(mat_vec(L, v))


def test_planar_nonsingular_has_no_lambda_direction(fix):
    _, basis = tangent_space_X(fix["FIX-PS"])
    assert all(v[AmbientCoords.lam_index()] == 0 for v in basis)


def test_singular_direction_leaves_planar_locus(fix):
    fam = build_family(X3, X1, X2, 0, X0, X0 + X1, 0)
    v = AmbientCoords.encode(*tangent_direction(fam))
    assert v[AmbientCoords.lam_index()] == 1
    assert not any(mat_vec(linearized_map(fix["FIX-PN"]), v))


@pytest.mark.parametrize("stratum", list(Stratum))
def test_random_pairs_by_stratum(stratum):
    rng = random.Random(17)
    for _ in range(10):
        assert tangent_dim_M(random_pair(rng, stratum)) == BY_STRATUM[stratum]


@given(st.integers(0, 2**32))
def test_dimensions_group_invariant(seed):
    rng = random.Random(seed)
    stratum = rng.choice(list(Stratum))
    pair = random_pair(rng, stratum)
    q = random_group_element(rng, integral=False).act(pair)
    a, b = tangent_report(pair), tangent_report(q)
    assert (a.dim_TX, a.dim_orbit, a.dim_stab) == (b.dim_TX, b.dim_orbit, b.dim_stab)


def test_net_tangent_examples():
    Q = NetQ([["x1", "x3", "0"], ["x2", "0", "x3"]])
    dims = net_tangent_check(Q, "x0")
    assert dims == (12, 5, 0)
    assert NET_DIM - dims[0] == 12
    Q2 = NetQ([["x0", "x2", "0"], ["x3", "0", "x2"]])
    assert net_tangent_check(Q2, "x1") == (12, 5, 0)


def test_net_tangent_rejects_degenerate():
    with pytest.raises(ValueError):
        net_tangent_check(NetQ([["x1", "x3", "0"], ["x1", "0", "x3"]]), "x0")
    with pytest.raises(ValueError):
        net_tangent_check(NetQ([["x1", "x3", "x0"], ["x2", "0", "x3"]]), "x0")
