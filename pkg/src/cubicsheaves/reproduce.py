"""The ``reproduce`` harness: every numerically checkable claim in one run."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import chow
from .complexes import check_exact_E, hilbert_function, hilbert_polynomial
from .deform import (
    build_family,
    family_hilbert_check,
    fiber_at,
    fiber_ideal,
    verify_family_complex,
    verify_transform_diagram,
)
from .moduli import PairBA, Stratum, classify, fitting_ideal, is_normal, normal_form
from .nets import NetQ, net_in_N1, net_is_stable, rho_map, tau_map
from .polyring import format_terms, parse_poly, parse_terms
from .samples import DEFAULT_SEED, FIXTURE_STRATA, FIXTURES, fixture_text, random_group_element, random_pair
from .tangent import NET_DIM, net_tangent_check, stabilizer_dim, tangent_dim_M

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class Report:
    check: str
    status: str
    expected: str
    actual: str
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self, timings: bool = False) -> dict:
        out = {"check": self.check, "status": self.status, "expected": self.expected, "actual": self.actual}
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 1)
        return out


@dataclass(frozen=True)
class ReproduceConfig:
    seed: int = DEFAULT_SEED
    samples: int = 50
    fixture_dir: Path | None = None
    deform_t: tuple = (1, -1, 2, 7)
    diagram_t: tuple = (1, -1)


# Defining data of the fixtures, kept independently of the JSON files so that
# a corrupted file is caught by the comparisons below.
TC_QUADRICS = ("x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2")
PN_DATA = {"w": "x3", "l1": "x1", "l2": "x2", "q1": "x0*x2", "q2": "x0*x1 + x1^2"}
PN_FAMILY = {"w": "x3", "l1": "x1", "l2": "x2", "a1": "0", "b1": "x0", "a2": "x0 + x1", "b2": "0"}
PN_FIBER_T1 = ("x0^2 + x0*x1 - x3^2", "x0*x2 - x1*x3", "x0*x1 + x1^2 - x2*x3")
EXPECTED_TANGENT = {"FIX-TC": 12, "FIX-PS": 13, "FIX-PN": 14}
STRATUM_TANGENT = {Stratum.NON_PLANAR: 12, Stratum.PLANAR_NON_SINGULAR: 13, Stratum.PLANAR_SINGULAR: 14}
EXPECTED_BETTI = {
    "N1": ((1, 2, 3, 3, 2, 1), 12),
    "M0capM1": ((1, 3, 6, 9, 11, 12, 12, 11, 9, 6, 3, 1), 84),
    "M0": ((1, 2, 6, 10, 16, 19, 22, 19, 16, 10, 6, 2, 1), 130),
    "M1": ((1, 3, 6, 9, 11, 12, 12, 12, 12, 11, 9, 6, 3, 1), 108),
    "M": ((1, 2, 6, 10, 16, 19, 22, 20, 19, 15, 12, 7, 4, 1), 154),
}


def load_pair(name: str, fixture_dir: Path | None = None) -> PairBA:
    """A fixture as stored, without validation."""
    if fixture_dir is None:
        text = fixture_text(name)
    else:
        text = (Path(fixture_dir) / f"{name}.json").read_text()
    return PairBA.from_json(text)


def _polys(texts) -> list:
    return [parse_poly(s) for s in texts]


def _fmt(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


class _Runner:
    def __init__(self):
        self.reports: list[Report] = []

    def check(self, name: str, expected, fn: Callable[[], object], equal=None):
        """Run ``fn``; pass if its result equals ``expected`` (or ``equal`` says so)."""
        t0 = time.perf_counter()
        try:
            actual = fn()
            ok = equal(actual) if equal else actual == expected
            status = PASS if ok else FAIL
        except Exception as exc:  # every failure becomes a report
            actual, status = f"{type(exc).__name__}: {exc}", FAIL
        ms = (time.perf_counter() - t0) * 1000
        self.reports.append(Report(name, status, str(expected), str(actual), ms))


def reproduce(config: ReproduceConfig = ReproduceConfig()) -> list:
    run = _Runner()
    pairs = {}
    for name in FIXTURES:
        try:
            pairs[name] = load_pair(name, config.fixture_dir)
        except Exception as exc:
            run.reports.append(Report(f"load/{name}", FAIL, "valid pair file", f"{type(exc).__name__}: {exc}"))

    def fixture(name):
        if name not in pairs:
            raise FileNotFoundError(f"{name} did not load")
        return pairs[name]

    for name in FIXTURES:
        run.check(f"exact/{name}", True, lambda n=name: check_exact_E(fixture(n).B, fixture(n).A, strict=True))
        run.check(
            f"hilbert/{name}",
            "(3, 1); h0 = 1",
            lambda n=name: f"{hilbert_polynomial(fixture(n).A).as_tuple()}; h0 = {hilbert_function(fixture(n).A, 0)}",
        )
    for name in FIXTURES:
        run.check(f"classify/{name}", str(FIXTURE_STRATA[name]), lambda n=name: str(classify(fixture(n)).stratum))
    for name in FIXTURES:
        run.check(f"normal-form/{name}", "fixed point", lambda n=name: _fixed_point(fixture(n)))
    run.check("normal-form/random", f"{3 * config.samples} round trips", lambda: _round_trips(config))

    run.check("fitting/FIX-TC", "minors generate (q1, q2, q3)", lambda: _fitting_tc(fixture("FIX-TC")), _is_span_msg)
    run.check(
        "fitting/FIX-PN", "minors generate (w^2, w*l1, w*l2, l1*q2 - l2*q1)", lambda: _fitting_pn(fixture("FIX-PN")), _is_span_msg
    )

    for name in FIXTURES:
        run.check(f"tangent/{name}", EXPECTED_TANGENT[name], lambda n=name: tangent_dim_M(fixture(n)))
    for name in FIXTURES:
        run.check(f"stabilizer/{name}", 2, lambda n=name: stabilizer_dim(fixture(n)))
    run.check("tangent/random", "12 / 13 / 14 by stratum, stabilizer 2", lambda: _random_tangent(config))

    fam = build_family(**PN_FAMILY)
    run.check("deform/complex", True, lambda: verify_family_complex(fam))
    run.check("deform/fiber-0", str(Stratum.PLANAR_SINGULAR), lambda: str(classify(fiber_at(fam, 0)).stratum))
    for t0 in config.deform_t:
        run.check(
            f"deform/fiber-{t0}",
            f"{Stratum.NON_PLANAR} (3, 1)",
            lambda t0=t0: f"{classify(fiber_at(fam, t0)).stratum} {hilbert_polynomial(fiber_at(fam, t0).A).as_tuple()}",
        )
    run.check("deform/hilbert", True, lambda: family_hilbert_check(fam, (0,) + tuple(config.deform_t)))
    run.check("deform/ideal-t1", _fmt(PN_FIBER_T1), lambda: _fmt(fiber_ideal(fam, 1)))
    for t0 in config.diagram_t:
        run.check(f"deform/diagram-{t0}", True, lambda t0=t0: verify_transform_diagram(fam, t0))

    nq = NetQ([["x1", "x3", "0"], ["x2", "0", "x3"]])
    run.check("net/stable-N1", "stable, w = x3", lambda: f"{'stable' if net_is_stable(nq) else 'unstable'}, w = {net_in_N1(nq)}")
    run.check("net/rho-FIX-TC", "None", lambda: str(net_in_N1(rho_map(fixture("FIX-TC")))))
    run.check("net/rho-FIX-PN", "x3", lambda: str(net_in_N1(rho_map(fixture("FIX-PN")))))
    run.check("net/tau-FIX-PN", "((0, 0, x0), (0, x0 + x1, 0))", lambda: str(tau_map(fixture("FIX-PN"))))
    run.check("net/tangent", (12, 5, 0), lambda: net_tangent_check(nq, "x0"))
    run.check("net/dim-N", 12, lambda: NET_DIM - net_tangent_check(nq, "x0")[0])

    run.check("chow/sym3-H*", _canon("1 + 10*s + 55*s^2 + 220*s^3", ("s",)), _sym3)
    run.check("chow/P(H)-relation", _canon("t^3 - s*t^2 + s^2*t - s^3"), lambda: chow.plane_bundle_ring().relation_string("t"))
    run.check("chow/N1-relation", _canon("t^3 + s*t^2 + s^2*t + s^3"), lambda: chow.flag_ring().relation_string("t"))
    run.check("chow/euler-N", 58, lambda: chow.BETTI_N.euler)
    for space, (ranks, e) in EXPECTED_BETTI.items():
        run.check(f"chow/betti-{space}", f"{_fmt(ranks)} e={e}", lambda s=space: _betti_str(chow.betti(s)))
    run.check(
        "chow/M1-two-routes",
        "equal",
        lambda: "equal" if chow.betti("M1") == chow.betti_M1_via_bundles() else "differ",
    )
    run.check("chow/M1-basis", 108, lambda: len(chow.m1_chow_ideal().basis()))
    run.check("chow/u-relation", _canon(chow.REFERENCE_U_RELATION, ("s", "t", "u")), _u_relation)
    return run.reports


# ---------------------------------------------------------------------------
# individual checks

def _fixed_point(pair: PairBA) -> str:
    out, g = normal_form(pair)
    if out != pair:
        return f"moved to {out.to_json()}"
    if g.act(pair) != out:
        return "witness does not map the pair"
    return "fixed point"


def _round_trips(config: ReproduceConfig) -> str:
    rng = random.Random(config.seed)
    n = 0
    for stratum in Stratum:
        for _ in range(config.samples):
            pair = random_pair(rng, stratum)
            nf, g = normal_form(pair)
            if g.act(pair) != nf or not is_normal(nf) or normal_form(nf)[0] != nf:
                return f"round trip failed for {pair.to_json()}"
            if classify(nf).stratum is not stratum:
                return f"stratum changed for {pair.to_json()}"
            h = random_group_element(rng)
            if classify(h.act(pair)).stratum is not stratum:
                return f"classification not invariant for {pair.to_json()}"
            n += 1
    return f"{n} round trips"


def _span_report(fit, gens) -> str:
    if fit.equals_ideal(gens):
        return "minors generate " + _fmt(gens)
    return f"ideal differs: minors {_fmt(fit.minors)} vs expected {_fmt(gens)}"


def _is_span_msg(msg: str) -> bool:
    return msg.startswith("minors generate")


def _fitting_tc(pair: PairBA) -> str:
    return _span_report(fitting_ideal(pair.A), _polys(TC_QUADRICS))


def _fitting_pn(pair: PairBA) -> str:
    w, l1, l2, q1, q2 = (parse_poly(PN_DATA[k]) for k in ("w", "l1", "l2", "q1", "q2"))
    return _span_report(fitting_ideal(pair.A), [w * w, w * l1, w * l2, l1 * q2 - l2 * q1])


def _random_tangent(config: ReproduceConfig) -> str:
    rng = random.Random(config.seed + 1)
    for stratum, expected in STRATUM_TANGENT.items():
        for _ in range(config.samples):
            pair = random_pair(rng, stratum)
            d, s = tangent_dim_M(pair), stabilizer_dim(pair)
            if d != expected or s != 2:
                return f"{stratum}: tangent {d}, stabilizer {s} for {pair.to_json()}"
    return "12 / 13 / 14 by stratum, stabilizer 2"


def _sym3() -> str:
    base = chow.dual_plane_ring()
    s = base.gen("s")
    return str(chow.chern_sym3_rank3(s, s**2, s**3))


def _canon(text: str, names=("s", "t")) -> str:
    return format_terms(parse_terms(text, names), names)


def _betti_str(b) -> str:
    return f"{_fmt(b.ranks)} e={b.euler}"


def _u_relation() -> str:
    cmp = chow.compare_u_relation()
    if cmp.equal:
        return _canon(chow.REFERENCE_U_RELATION, ("s", "t", "u"))
    diffs = "; ".join(f"{k}: {a} (reference {b})" for k, (a, b) in cmp.differences().items())
    return f"{chow.m1_chow_ideal().relation_string('u')} [differs at {diffs}]"
