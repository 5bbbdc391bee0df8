"""Command-line interface.

Subcommands:

* ``dq field eval <expr> [--order N]``       canonicalize a series literal
* ``dq star <obs> <obs> [--d D]``            star product of two observables
* ``dq check --state S --obs E ...``         run the relation checks
* ``dq intelligent --state S --obs E ...``   saturation / witness detection
* ``dq proptest <suite> [--trials] [--seed] [--dims]``  randomized suites

Exit codes: 0 all good, 1 usage/parse errors, 2 a relation was violated
(a falsified inequality), 3 a decision was indeterminate at the working
truncation (raise ``--order``).  ``DQ_DEFAULT_ORDER`` presets the order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import DQError, ExprSyntaxError, IndeterminateAtTruncation
from .parsing import infer_dof, parse_observable, parse_series
from .proptests import SUITES, run_suite
from .series import ComplexSeries, set_default_order
from .states import GaussianState, correlated, ground, load_state, squeezed
from .uncertainty import (
    Status,
    check_hr,
    check_rs,
    check_trace,
    check_two_obs,
    find_ideal_direction,
    moment_matrices,
    two_observable_ideal_witness,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATED = 2
EXIT_INDETERMINATE = 3


def _apply_order(args) -> None:
    order = getattr(args, "order", None)
    if order is None:
        env = os.environ.get("DQ_DEFAULT_ORDER")
        if env:
            order = env
    if order is not None:
        set_default_order(Fraction(order))


def _resolve_state(spec: str, d: int) -> GaussianState:
    if spec == "ground":
        return ground(d)
    if spec.startswith("squeezed:"):
        return squeezed(Fraction(spec.split(":", 1)[1]))
    if spec.startswith("correlated:"):
        return correlated(parse_series(spec.split(":", 1)[1]))
    if os.path.exists(spec):
        return load_state(spec)
    raise DQError(
        f"unknown state {spec!r}: use ground, squeezed:<s>, correlated:<series>,"
        " or a JSON file path"
    )


def _witness_json(witness):
    if witness is None:
        return None
    out = []
    for entry in witness:
        if isinstance(entry, ComplexSeries):
            out.append({"re": entry.re.literal(), "im": entry.im.literal()})
        else:
            out.append({"re": entry.literal(), "im": "0"})
    return out


def _verdict_json(v, hr_flag: bool, rs_flag: bool, witness=None) -> dict:
    return {
        "relation": v.relation_name,
        "lhs": v.lhs.literal(),
        "rhs": v.rhs.literal(),
        "status": v.status.value,
        "intelligent": {"hr": hr_flag, "rs": rs_flag},
        "witness": _witness_json(witness),
    }


def _run_relation_checks(state: GaussianState, xs):
    mm = moment_matrices(state, xs)
    n = len(xs)
    rs = check_rs(state, xs, mm)
    hr = check_hr(state, xs, mm)
    verdicts = [rs, hr]
    if n >= 2:
        general, pairing = check_trace(state, xs, mm)
        verdicts.append(general)
        if pairing is not None:
            verdicts.append(pairing)
    witness = None
    if n == 2:
        two = check_two_obs(state, xs[0], xs[1])
        verdicts.append(two)
        saturated, witness = two_observable_ideal_witness(state, xs[0], xs[1])
    direction = find_ideal_direction(state, xs, mm)
    return verdicts, witness, direction, hr, rs


def _exit_from(verdicts) -> int:
    statuses = {v.status for v in verdicts}
    if Status.VIOLATED in statuses:
        return EXIT_VIOLATED
    if Status.INDETERMINATE in statuses:
        return EXIT_INDETERMINATE
    return EXIT_OK


def _cmd_field_eval(args) -> int:
    value = parse_series(args.expr)
    if args.order is not None:
        value = value.truncate(Fraction(args.order))
    if args.json:
        print(json.dumps({"series": value.literal()}, sort_keys=True))
    else:
        print(value.literal())
    return EXIT_OK


def _cmd_star(args) -> int:
    from .observables import star

    d = args.d or max(infer_dof(args.left), infer_dof(args.right))
    f = parse_observable(args.left, d)
    g = parse_observable(args.right, d)
    result = star(f, g)
    if args.json:
        print(json.dumps({"d": d, "star": result.literal()}, sort_keys=True))
    else:
        print(result.literal())
    return EXIT_OK


def _parse_check_inputs(args):
    d = max(infer_dof(expr) for expr in args.obs)
    xs = [parse_observable(expr, d) for expr in args.obs]
    state = _resolve_state(args.state, d)
    if state.d != d:
        raise DQError(f"state has d={state.d} but observables need d={d}")
    return state, xs


def _cmd_check(args) -> int:
    state, xs = _parse_check_inputs(args)
    verdicts, witness, direction, hr, rs = _run_relation_checks(state, xs)
    hr_flag = bool(hr.hr_intelligent)
    rs_flag = bool(rs.rs_intelligent)
    if args.json:
        payload = {
            "state": args.state,
            "observables": list(args.obs),
            "reports": [
                _verdict_json(
                    v, hr_flag, rs_flag, witness if v.relation_name == "TwoObs" else None
                )
                for v in verdicts
            ],
            "ideal_direction": _witness_json(direction),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for v in verdicts:
            print(f"{v.relation_name}: {v.status.value}  lhs={v.lhs}  rhs={v.rhs}")
        print(f"intelligent: hr={hr_flag} rs={rs_flag}")
        if witness is not None:
            pretty = ", ".join(f"({c.re})+i*({c.im})" for c in witness)
            print(f"ideal witness: [{pretty}]")
        if direction is not None:
            print(f"ideal direction: [{', '.join(str(x) for x in direction)}]")
    return _exit_from(verdicts)


def _cmd_intelligent(args) -> int:
    state, xs = _parse_check_inputs(args)
    verdicts, witness, direction, hr, rs = _run_relation_checks(state, xs)
    hr_flag = bool(hr.hr_intelligent)
    rs_flag = bool(rs.rs_intelligent)
    if args.json:
        payload = {
            "state": args.state,
            "observables": list(args.obs),
            "intelligent": {"hr": hr_flag, "rs": rs_flag},
            "witness": _witness_json(witness),
            "ideal_direction": _witness_json(direction),
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"hr-intelligent: {hr_flag}")
        print(f"rs-intelligent: {rs_flag}")
        if witness is not None:
            pretty = ", ".join(f"({c.re})+i*({c.im})" for c in witness)
            print(f"witness: [{pretty}]")
        if direction is not None:
            print(f"ideal direction: [{', '.join(str(x) for x in direction)}]")
    return _exit_from(verdicts)


def _cmd_proptest(args) -> int:
    dims = None
    if args.dims:
        dims = tuple(int(x) for x in args.dims.split(","))
    report = run_suite(args.suite, args.trials, args.seed, dims)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_VIOLATED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dq",
        description="Exact series arithmetic and uncertainty-relation checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_field = sub.add_parser("field", help="series field utilities")
    fsub = p_field.add_subparsers(dest="field_cmd", required=True)
    p_eval = fsub.add_parser("eval", help="parse and canonicalize a series literal")
    p_eval.add_argument("expr")
    p_eval.add_argument("--order", default=None, help="truncate to this order")
    p_eval.add_argument("--json", action="store_true")
    p_eval.set_defaults(func=_cmd_field_eval)

    p_star = sub.add_parser("star", help="star product of two observables")
    p_star.add_argument("left")
    p_star.add_argument("right")
    p_star.add_argument("--d", type=int, default=None, help="degrees of freedom")
    p_star.add_argument("--json", action="store_true")
    p_star.set_defaults(func=_cmd_star)

    for name, func, doc in (
        ("check", _cmd_check, "run the uncertainty-relation checks"),
        ("intelligent", _cmd_intelligent, "detect saturation and witnesses"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--state", required=True, help="ground | squeezed:<s> | correlated:<series> | file.json")
        p.add_argument("--obs", action="append", required=True, help="observable expression (repeatable)")
        p.add_argument("--order", default=None, help="working truncation order")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p_prop = sub.add_parser("proptest", help="randomized law suites")
    p_prop.add_argument("suite", choices=SUITES)
    p_prop.add_argument("--trials", type=int, default=200)
    p_prop.add_argument("--seed", type=int, default=0)
    p_prop.add_argument("--dims", default=None, help="comma-separated dimensions")
    p_prop.set_defaults(func=_cmd_proptest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_order(args)
        return args.func(args)
    except ExprSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IndeterminateAtTruncation as exc:
        print(f"indeterminate at truncation: {exc} (raise --order)", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (DQError, OSError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
