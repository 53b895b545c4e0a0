import random

import pytest

from cubicsheaves.moduli import Stratum, normal_form, planar_data, planar_pair
from cubicsheaves.nets import (
    Inconclusive,
    NetQ,
    NotSingularError,
    divisible_by_linear,
    linear_factors,
    net_in_N1,
    net_is_stable,
    rho_map,
    row_with_two_zeros,
    tau_map,
)
from cubicsheaves.polyring import X0, X1, X2, X3, parse_poly
from cubicsheaves.samples import random_group_element, random_pair


def Q(rows):
    return NetQ(rows)


def test_rho_examples(fix):
    assert rho_map(fix["FIX-TC"]) == Q([["x2", "-x1", "x0"], ["x3", "-x2", "x1"]])
    assert rho_map(fix["FIX-PN"]) == Q([["-x1", "x3", "0"], ["-x2", "0", "x3"]])


def test_rho_equivariance(fix):
    rng = random.Random(3)
    for _ in range(5):
        g = random_group_element(rng, integral=False)
        got = rho_map(g.act(fix["FIX-TC"]))
        ginv = g.inverse()
        expected = rho_map(fix["FIX-TC"]).transform(g.g1, ginv.g)
        assert got == expected


@pytest.mark.parametrize(
    "rows,stable",
    [
        ([["x0", "x1", "x2"], ["x1", "x2", "x3"]], True),
        ([["x0", "0", "0"], ["x1", "x2", "x3"]], False),
        ([["x1", "x3", "0"], ["x2", "0", "x3"]], True),
    ],
)
def test_net_stability(rows, stable):
    assert net_is_stable(Q(rows)) is stable


def test_zero_column_hidden():
    # third column = first + second
    assert not net_is_stable(Q([["x0", "x1", "x0 + x1"], ["x2", "x3", "x2 + x3"]]))


def test_two_zeros_after_row_operation():
    # row0 - row1 = (0, 0, x2 - x3)
    assert not net_is_stable(Q([["x0", "x1", "x2"], ["x0", "x1", "x3"]]))


def test_irrational_row_is_inconclusive():
    net = Q([["x1", "2*x0", "x1 + 2*x0"], ["x0", "x1", "x0 + x1"]])
    with pytest.raises(Inconclusive) as info:
        row_with_two_zeros(net)
    assert info.value.form is not None


@pytest.mark.parametrize(
    "rows,w",
    [
        ([["x1", "x3", "0"], ["x2", "0", "x3"]], "x3"),
        ([["x0", "x3", "0"], ["x1", "0", "x3"]], "x3"),
    ],
)
def test_net_in_N1(rows, w):
    assert net_in_N1(Q(rows)) == parse_poly(w)


def test_minors_n1_normal_form():
    assert Q([["x1", "x3", "0"], ["x2", "0", "x3"]]).minors() == (X3 * X3, X1 * X3, -X3 * X2)


def test_tc_not_in_N1(fix):
    assert net_in_N1(rho_map(fix["FIX-TC"])) is None


def test_linear_factors():
    assert set(linear_factors(X0 * X1)) == {X0, X1}
    assert linear_factors((X0 + X2) * (X0 + X2)) == [X0 + X2]
    assert linear_factors(X0 * X0 + X1 * X1 + X2 * X2) == []
    with pytest.raises(Inconclusive):
        linear_factors(X0 * X0 - 2 * X1 * X1)


@pytest.mark.parametrize("stratum", list(Stratum))
def test_rho_in_N1_iff_planar(stratum):
    rng = random.Random(5)
    for _ in range(50):
        pair = random_pair(rng, stratum)
        net = rho_map(pair)
        assert net_is_stable(net)
        assert (net_in_N1(net) is not None) == stratum.is_planar


def test_tau_examples(fix):
    assert tau_map(fix["FIX-PN"]).net == Q([["0", "0", "x0"], ["0", "x0 + x1", "0"]])
    pair = planar_pair(X3, X1, X2, X1 * X2, X2 * X2)
    assert tau_map(pair).net == Q([["0", "x2", "0"], ["0", "0", "x2"]])
    with pytest.raises(NotSingularError):
        tau_map(fix["FIX-PS"])
    with pytest.raises(NotSingularError):
        tau_map(fix["FIX-TC"])


def test_tau_recovers_q_on_the_plane():
    rng = random.Random(9)
    for _ in range(10):
        pair = random_pair(rng, Stratum.PLANAR_SINGULAR)
        w, l1, l2, q1, q2 = planar_data(normal_form(pair)[0])
        net = tau_map(pair).net
        assert divisible_by_linear(q1 - net[0, 1] * l1 - net[0, 2] * l2, w)
        assert divisible_by_linear(q2 - net[1, 1] * l1 - net[1, 2] * l2, w)


def test_tau_drops_w_multiples(fix):
    shifted = planar_pair(X3, X1, X2, X0 * X2 + X3 * X0, X1 * X1 + X0 * X1 - X3 * X3)
    assert tau_map(shifted).net == tau_map(fix["FIX-PN"]).net


def test_net_json_roundtrip():
    net = Q([["x1", "x3", "0"], ["x2", "0", "x3"]])
    assert NetQ.from_json(net.to_json()) == net
    with pytest.raises(ValueError):
        Q([["x1*x2", "0", "0"], ["0", "0", "0"]])
