"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 I/O or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import chow
from .complexes import hilbert_polynomial
from .deform import (
    DEFAULT_T_SAMPLES,
    family_from_json,
    family_hilbert_check,
    fiber_at,
    verify_family_complex,
    verify_transform_diagram,
)
from .moduli import PairBA, Stratum, classify, fitting_ideal, normal_form, planar_data
from .nets import Inconclusive, NetQ, net_in_N1, net_is_stable, tau_map
from .polyring import ParseError
from .reproduce import PN_FAMILY, Report, ReproduceConfig, reproduce
from .samples import DEFAULT_SEED, FIXTURES, fixture_text
from .tangent import NET_DIM, net_tangent_check, tangent_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input

def _read_json(source: str) -> dict:
    """A JSON file path, or the name of a shipped fixture."""
    try:
        if source in FIXTURES:
            return json.loads(fixture_text(source))
        return json.loads(Path(source).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {source}: {exc}") from None


def _read_pair(source: str) -> PairBA:
    try:
        return PairBA.from_json(_read_json(source))
    except (KeyError, ValueError, ParseError) as exc:
        raise InputError(f"{source}: not a valid pair file: {exc}") from None


# ---------------------------------------------------------------------------
# output

def _emit(fmt: str, data: dict, text: str, md: str | None = None) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    elif fmt == "md":
        print(md if md is not None else text)
    else:
        print(text)


def _md_table(header, rows) -> str:
    lines = ["| " + " | ".join(str(h) for h in header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines)


def _pair_text(pair: PairBA) -> str:
    d = pair.to_json()
    return "B = " + json.dumps(d["B"]) + "\nA = " + json.dumps(d["A"])


# ---------------------------------------------------------------------------
# subcommands

def cmd_verify(args) -> int:
    pair = _read_pair(args.input)
    exact, stable = pair.is_exact(), pair.is_stable()
    parts = ["exact" if exact else "not exact", "stable" if stable else "not stable"]
    data = {"exact": exact, "stable": stable}
    if exact and stable:
        stratum = classify(pair).stratum
        hp = hilbert_polynomial(pair.A)
        parts += [str(stratum), f"Hilbert {hp}"]
        data.update(stratum=str(stratum), hilbert=list(hp.as_tuple()))
    ok = exact and stable
    status = "pass" if ok else "fail"
    data["status"] = status
    _emit(args.format, data, f"{status}: " + ", ".join(parts))
    return EXIT_OK if ok else EXIT_FAIL


def _valid_pair(args) -> PairBA:
    pair = _read_pair(args.input)
    if not (pair.is_exact() and pair.is_stable()):
        raise InputError(f"{args.input}: pair is not exact and stable")
    return pair


def cmd_classify(args) -> int:
    c = classify(_valid_pair(args))
    data = {"stratum": str(c.stratum)}
    if c.is_planar:
        data.update(
            w=str(c.w), l1=str(c.l1), l2=str(c.l2), q1=str(c.q1), q2=str(c.q2), point=[str(x) for x in c.point]
        )
    text = str(c.stratum)
    if c.is_planar:
        text += f"\nplane w = {c.w}, point p = ({', '.join(str(x) for x in c.point)})"
    _emit(args.format, data, text)
    return EXIT_OK


def cmd_normal_form(args) -> int:
    pair = _valid_pair(args)
    nf, g = normal_form(pair)
    data = {"pair": nf.to_json(), "stratum": str(classify(nf).stratum)}
    _emit(args.format, data, _pair_text(nf))
    return EXIT_OK


def cmd_fitting(args) -> int:
    pair = _valid_pair(args)
    fit = fitting_ideal(pair.A)
    nf, _ = normal_form(pair)
    stratum = classify(nf).stratum
    if stratum is Stratum.NON_PLANAR:
        expected = list(nf.qcol)
    elif stratum is Stratum.PLANAR_SINGULAR:
        w, l1, l2, q1, q2 = planar_data(nf)
        expected = [w * w, w * l1, w * l2, l1 * q2 - l2 * q1]
    else:
        expected = None
    ok = True if expected is None else fit.equals_ideal(expected)
    data = {"minors": [str(m) for m in fit.minors], "stratum": str(stratum)}
    lines = [f"minor {i}{j}: {m}" for (i, j), m in zip(((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)), fit.minors)]
    if expected is not None:
        data["expected"] = [str(e) for e in expected]
        data["match"] = ok
        lines.append(f"ideal equals ({', '.join(str(e) for e in expected)}): {ok}")
    _emit(args.format, data, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_tangent(args) -> int:
    rep = tangent_report(_valid_pair(args))
    data = rep.to_json()
    text = (
        f"dim T_X = {rep.dim_TX}, orbit = {rep.dim_orbit}, stabilizer = {rep.dim_stab}\n{rep.verdict()}"
    )
    md = _md_table(
        ("stratum", "dim T_X", "orbit", "stabilizer", "moduli"),
        [(rep.stratum, rep.dim_TX, rep.dim_orbit, rep.dim_stab, rep.dim_moduli)],
    )
    _emit(args.format, data, text, md)
    return EXIT_OK


def _parse_samples(text: str) -> tuple:
    try:
        return tuple(Fraction(s.strip()) for s in text.split(",") if s.strip())
    except ValueError:
        raise UsageError(f"bad sample list {text!r}") from None


def cmd_deform(args) -> int:
    data = _read_json(args.data) if args.data else dict(PN_FAMILY)
    try:
        fam = family_from_json(data)
    except (KeyError, ValueError) as exc:
        raise InputError(f"not a valid family: {exc}") from None
    samples = _parse_samples(args.samples) if args.samples else DEFAULT_T_SAMPLES
    complex_ok = verify_family_complex(fam, samples)
    fibers = []
    for t0 in samples:
        try:
            pair = fiber_at(fam, t0)
            fibers.append({"t": str(t0), "stratum": str(classify(pair).stratum), "hilbert": str(hilbert_polynomial(pair.A))})
        except ValueError as exc:
            fibers.append({"t": str(t0), "error": str(exc)})
    hilbert_ok = complex_ok and family_hilbert_check(fam, samples)
    diagram = {}
    for t0 in samples:
        if t0:
            try:
                diagram[str(t0)] = verify_transform_diagram(fam, t0)
            except ArithmeticError as exc:
                diagram[str(t0)] = f"fails: {exc}"
    ok = complex_ok and hilbert_ok and all(v is True for v in diagram.values())
    out = {"family": fam.to_json(), "complex": complex_ok, "hilbert": hilbert_ok, "fibers": fibers, "diagram": diagram}
    lines = [f"B_t A_t = 0 and exact at samples: {complex_ok}", f"Hilbert 3m+1 at samples: {hilbert_ok}"]
    for f in fibers:
        lines.append(f"t = {f['t']}: " + (f"{f['stratum']}, {f['hilbert']}" if "stratum" in f else f["error"]))
    for t0, v in diagram.items():
        lines.append(f"diagram at t = {t0}: {v}")
    _emit(args.format, out, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_net(args) -> int:
    raw = _read_json(args.input)
    try:
        if "Q" in raw:
            Q = NetQ.from_json(raw)
            tau = None
        else:
            pair = PairBA.from_json(raw)
            Q, tau = None, tau_map(pair)
    except (KeyError, ValueError, ParseError) as exc:
        raise InputError(f"{args.input}: {exc}") from None
    if tau is not None:
        _emit(args.format, {"tau": tau.net.to_json()["Q"], "solution_dims": list(tau.solution_dims)}, f"tau = {tau}")
        return EXIT_OK
    data = {"Q": Q.to_json()["Q"]}
    lines = [f"Q = {Q}"]
    try:
        stable = net_is_stable(Q)
        data["stable"] = stable
        lines.append(f"stable: {stable}")
        w = net_in_N1(Q)
        data["N1"] = None if w is None else str(w)
        lines.append(f"in N1: {'no' if w is None else f'yes, w = {w}'}")
    except Inconclusive as exc:
        data["inconclusive"] = str(exc)
        lines.append(f"inconclusive over the rationals: {exc}")
        _emit(args.format, data, "\n".join(lines))
        return EXIT_OK
    if args.l3:
        try:
            dims = net_tangent_check(Q, args.l3)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        data["tangent"] = {"F_Q": dims[0], "T_Q": dims[1], "intersection": dims[2], "dim_N": NET_DIM - dims[0]}
        lines.append(f"dim F_Q = {dims[0]}, dim T'_Q = {dims[1]}, intersection = {dims[2]}, dim N = {NET_DIM - dims[0]}")
    _emit(args.format, data, "\n".join(lines))
    return EXIT_OK


def _betti_md(space: str, b) -> str:
    header = ["i"] + list(range(len(b.ranks))) + ["e"]
    return _md_table(header, [[f"b_i({space})"] + list(b.ranks) + [b.euler]])


def cmd_chow(args) -> int:
    space = args.space
    if args.what == "ring":
        if space != "M1":
            raise UsageError("ring is available for --space M1 only")
        ring = chow.m1_chow_ideal()
        cmp = chow.compare_u_relation(ring)
        b = chow.betti("M1")
        data = {"relation": ring.relation_string("u"), "betti": list(b.ranks), "euler": b.euler}
        data["matches_reference"] = cmp.equal
        if not cmp.equal:
            data["differences"] = {k: list(v) for k, v in cmp.differences().items()}
        text = f"A*(M1) = Z[s,t,u] / (s^4, {ring.relation_string('t')}, f)\nf = {data['relation']}\n{b}"
        if not cmp.equal:
            text += "\ndiffers from the reference relation at: " + ", ".join(
                f"{k} ({a} vs {r})" for k, (a, r) in cmp.differences().items()
            )
        _emit(args.format, data, text, f"f = `{data['relation']}`\n\n{_betti_md(space, b)}")
        return EXIT_OK if cmp.equal else EXIT_FAIL
    b = chow.betti(space)
    data = {"space": space, "betti": list(b.ranks), "euler": b.euler}
    _emit(args.format, data, f"b_i({space}): {b}", _betti_md(space, b))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    config = ReproduceConfig(
        seed=args.seed,
        samples=args.samples,
        fixture_dir=Path(args.fixtures) if args.fixtures else None,
    )
    reports = reproduce(config)
    print_reports(reports, args.format, args.timings)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def print_reports(reports: list[Report], fmt: str, timings: bool = False) -> None:
    if fmt == "json":
        print(json.dumps([r.to_json(timings) for r in reports], indent=2))
        return
    if fmt == "md":
        rows = [(r.check, r.status, r.expected, r.actual) + ((f"{r.elapsed_ms:.0f}",) if timings else ()) for r in reports]
        print(_md_table(("check", "status", "expected", "actual") + (("ms",) if timings else ()), rows))
        return
    for r in reports:
        line = f"[{r.status.upper():4}] {r.check}"
        if timings:
            line += f" ({r.elapsed_ms:.0f} ms)"
        if r.status != "pass":
            line += f"\n       expected: {r.expected}\n       actual:   {r.actual}"
        print(line)
    failed = sum(r.status == "fail" for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} checks passed")


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "md"), default="text")

    p = _Parser(prog="cubicsheaves", description="Sheaves on cubic space curves via matrix pairs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, help_ in (
        ("verify", cmd_verify, "exactness, stability, stratum and Hilbert polynomial"),
        ("classify", cmd_classify, "stratum of a pair"),
        ("normal-form", cmd_normal_form, "normal form under the group action"),
        ("fitting", cmd_fitting, "Fitting ideal of A"),
        ("tangent", cmd_tangent, "tangent space dimensions"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--input", required=True, help="pair JSON file or fixture name")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("deform", parents=[common], help="check a deformation family")
    sp.add_argument("--data", help="family JSON (default: the family of FIX-PN)")
    sp.add_argument("--samples", help="comma-separated values of t")
    sp.set_defaults(func=cmd_deform)

    sp = sub.add_parser("net", parents=[common], help="stability and N1 membership of a net, or tau of a pair")
    sp.add_argument("--input", required=True, help="net JSON {'Q': ...} or pair JSON")
    sp.add_argument("--l3", help="linear form completing w, l1, l2 (runs the tangent check)")
    sp.set_defaults(func=cmd_net)

    sp = sub.add_parser("chow", parents=[common], help="Betti tables and the ring of M1")
    sp.add_argument("what", choices=("betti", "ring"))
    sp.add_argument("--space", required=True, choices=chow.SPACES)
    sp.set_defaults(func=cmd_chow)

    sp = sub.add_parser("reproduce", parents=[common], help="run every check")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--samples", type=int, default=50, help="random pairs per stratum")
    sp.add_argument("--fixtures", help="directory with FIX-*.json to use instead of the shipped ones")
    sp.add_argument("--timings", action="store_true", help="include elapsed times")
    sp.set_defaults(func=cmd_reproduce)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
