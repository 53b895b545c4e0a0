import random
from dataclasses import replace

import pytest

from cubicsheaves.complexes import hilbert_function, hilbert_polynomial
from cubicsheaves.deform import (
    ORIENTATION,
    DiagramError,
    build_family,
    calibrate,
    family_defect,
    family_hilbert_check,
    fiber_at,
    fiber_ideal,
    transform_element,
    verify_family_complex,
    verify_transform_diagram,
)
from cubicsheaves.moduli import InvalidPair, Stratum, classify, fitting_ideal, net_minors, normal_form
from cubicsheaves.polyring import T, X0, X1, X2, X3, ZERO, ideals_equal, parse_poly
from cubicsheaves.samples import random_form, random_independent

P = parse_poly


@pytest.fixture(scope="module")
def fam():
    return build_family(X3, X1, X2, 0, X0, X0 + X1, 0)


def test_family_first_order(fam):
    assert [list(r) for r in fam.A1.entries] == [[ZERO, 1], [X0 * X0 + X0 * X1, ZERO], [ZERO, ZERO], [ZERO, ZERO]]
    zero = build_family(X3, X1, X2, 0, 0, 0, 0)
    assert [list(r) for r in zero.A1.entries] == [[ZERO, 1]] + [[ZERO, ZERO]] * 3
    other = build_family(X3, X1, X2, X0, 0, 0, X0)
    assert other.A1[0, 0] == 2 * X0


def test_family_rejects_dependent():
    with pytest.raises(ValueError):
        build_family(X3, X1, X1 + X3, 0, X0, X0, 0)


def test_family_is_complex(fam):
    assert family_defect(fam) is None
    assert verify_family_complex(fam)


def test_broken_family_reports_residual(fam):
    broken = fam.with_first_order(b1=X0 + X3)
    i, j, e = family_defect(broken)
    assert (i, j) == (0, 1) and e == X2 * X3 * T
    assert not verify_family_complex(broken)


def test_zero_data_family_is_not_exact():
    # the product vanishes, but q1 = q2 = 0 makes the planar pair degenerate
    zero = build_family(X3, X1, X2, 0, 0, 0, 0)
    assert family_defect(zero) is None
    assert not verify_family_complex(zero)
    assert [hilbert_function(zero.A_t.subs_t(0), m) for m in range(5)] == [1, 4, 7, 11, 16]


def test_fibers(fam):
    assert classify(fiber_at(fam, 0)).stratum is Stratum.PLANAR_SINGULAR
    for t0 in (1, -1, 2, 7):
        pair = fiber_at(fam, t0)
        assert classify(pair).stratum is Stratum.NON_PLANAR
        assert hilbert_polynomial(pair.A).as_tuple() == (3, 1)


def test_fiber_ideal_at_one(fam):
    expected = [P("x0^2 + x0*x1 - x3^2"), P("x0*x2 - x1*x3"), P("x1^2 + x0*x1 - x2*x3")]
    assert list(fiber_ideal(fam, 1)) == expected
    assert ideals_equal(fitting_ideal(fiber_at(fam, 1).A).generators, expected, up_to=3)


def test_fiber_ideal_hilbert_burch(fam):
    # the quadrics of the Fitting ideal are the minors of the linear block of B
    for t0 in (1, 2, -3):
        nf, _ = normal_form(fiber_at(fam, t0))
        quadrics = [g for g in fitting_ideal(nf.A).generators if g.degree == 2]
        assert len(quadrics) == 3
        y = [[nf.B[i, j] for j in (1, 2, 3)] for i in (0, 1)]
        assert ideals_equal(net_minors(y), quadrics, up_to=3)
        assert ideals_equal(fitting_ideal(nf.A).generators, quadrics, up_to=4)


def test_hilbert_check(fam):
    assert family_hilbert_check(fam, (0, 1, -1, 3))
    A0 = fam.A0.with_entries([fam.A0.entries[0], [X0 * X0 + X3 * X3, X1], *fam.A0.entries[2:]])
    corrupted = replace(fam, A0=A0)
    assert not family_hilbert_check(corrupted, (0, 1))


def test_fiber_at_rejects_bad_family():
    zero = build_family(X3, X1, X2, 0, 0, 0, 0)
    with pytest.raises(InvalidPair):
        fiber_at(zero, 0)


def test_calibration(fam):
    assert calibrate(fam, 2) == ORIENTATION


def test_diagram(fam):
    for t0 in (1, -1, 5, "1/2"):
        assert verify_transform_diagram(fam, t0)
    with pytest.raises(ValueError):
        verify_transform_diagram(fam, 0)
    with pytest.raises(ValueError):
        transform_element(fam, 0)


def test_diagram_detects_wrong_target(fam):
    # first-order data no longer matching the stored a, b data
    with pytest.raises(DiagramError):
        verify_transform_diagram(fam.with_first_order(a2=X0), 2)


def test_random_families():
    rng = random.Random(23)
    for k in range(100):
        w, l1, l2 = random_independent(rng, 3)
        data = [random_form(rng, 1, (-1, 0, 0, 1)) for _ in range(4)]
        f = build_family(w, l1, l2, *data)
        assert family_defect(f) is None
        if k < 20 and verify_family_complex(f, (0, 1, 2)):
            assert verify_transform_diagram(f, 2)
