"""Command-line interface.

All verbs read a framework from a file path (or ``-`` for stdin) except
``random``, which writes one.  Output is JSON apart from ``check``,
``random`` and ``encode --format text``.  Exit codes: 0 success, 1 domain
failure (failed verification, exceeded enumeration bound, unmet theorem
precondition, no converged solve), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bridge, equations, extensions, framework, labellings, logic
from .errors import (EvaluationError, HafsError, InfeasibleParametersError,
                     ParseError, PreconditionError, SizeBoundError, ValidationError)

_USAGE_ERRORS = (ParseError, ValidationError, InfeasibleParametersError, EvaluationError)
_DOMAIN_ERRORS = (SizeBoundError, PreconditionError)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); raise instead
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="hafs", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_input(p):
        p.add_argument("input", help="framework file path, or - for stdin")

    p = sub.add_parser("check", help="validate a framework and echo its canonical form")
    add_input(p)

    p = sub.add_parser("labellings", help="enumerate three-valued labellings")
    add_input(p)
    p.add_argument("--semantics", default="complete",
                   choices=["complete", "grounded", "preferred", "stable"])

    p = sub.add_parser("extensions", help="enumerate extensions")
    add_input(p)
    p.add_argument("--semantics", default="complete",
                   choices=["complete", "grounded", "preferred", "stable"])

    p = sub.add_parser("encode", help="emit the encoded formula")
    add_input(p)
    p.add_argument("--logic", default="l3", choices=sorted(logic.BUILTIN_LOGICS))
    p.add_argument("--format", default="text", choices=["text", "json"])

    p = sub.add_parser("eval", help="evaluate the encoded formula under an assignment")
    add_input(p)
    p.add_argument("--assignment", required=True,
                   help='JSON object like {"arg:a": "1/2", "att:r1": 0.25}')
    p.add_argument("--logic", default="l3", choices=sorted(logic.BUILTIN_LOGICS))

    p = sub.add_parser("solve", help="solve the equation system")
    add_input(p)
    p.add_argument("--logic", default="godel", choices=sorted(logic.BUILTIN_LOGICS))
    p.add_argument("--damping", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-iter", type=int, default=100_000)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true",
                   help="enumerate exact {0,1/2,1} solutions instead of iterating")

    p = sub.add_parser("verify", help="check semantic correspondences empirically")
    add_input(p)
    p.add_argument("--theorem", action="append", required=True,
                   choices=list(bridge.THEOREM_IDS),
                   help="may be given multiple times")
    p.add_argument("--logic", default=None, choices=sorted(logic.BUILTIN_LOGICS),
                   help="fuzzy system for T16/IDEM (default godel)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=8,
                   help="universe cap for the exhaustive checks")
    p.add_argument("--grid-cap", type=int, default=100_000)
    p.add_argument("--float-samples", type=int, default=200)

    p = sub.add_parser("random", help="generate a pseudo-random framework")
    p.add_argument("--args", type=int, required=True, dest="nargs")
    p.add_argument("--atts", type=int, default=0, dest="natts")
    p.add_argument("--supps", type=int, default=0, dest="nsupps")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--acyclic-supports", action="store_true")
    p.add_argument("--higher-order-prob", type=float, default=0.0)
    return parser


def _read_framework(path: str, stdin) -> framework.HAFS:
    if path == "-":
        text = stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _UsageError(f"cannot read {path}: {exc}") from None
    return framework.parse(text)


def _emit_json(stdout, obj) -> None:
    stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _parse_assignment(raw: str, h: framework.HAFS) -> logic.Assignment:
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise _UsageError(f"--assignment is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise _UsageError("--assignment must be a JSON object")
    values = {}
    for key, value in data.items():
        element = framework.ElementId.from_qualified(key)
        if isinstance(value, str):
            try:
                values[element] = Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise _UsageError(f"cannot read {value!r} as a rational") from None
        elif isinstance(value, bool):
            raise _UsageError(f"boolean value for {key!r}")
        elif isinstance(value, int):
            values[element] = Fraction(value)
        elif isinstance(value, float):
            values[element] = value
        else:
            raise _UsageError(f"unsupported value {value!r} for {key!r}")
    del h  # totality is checked by the evaluation itself
    return logic.Assignment(values)


def _format_value(value) -> object:
    if isinstance(value, float):
        return float(f"{value:.12g}")
    return str(Fraction(value))


def _cmd_check(opts, stdin, stdout) -> int:
    h = _read_framework(opts.input, stdin)
    stdout.write(framework.serialize(h))
    return 0


def _cmd_labellings(opts, stdin, stdout) -> int:
    h = _read_framework(opts.input, stdin)
    family = labellings.enumerate_adjacent_complete(h)
    if opts.semantics != "complete":
        family = labellings.select_labellings(h, family, opts.semantics)
    payload = labellings.labellings_to_json_obj(family)
    if opts.semantics == "grounded" and not family:
        payload["diagnostic"] = "no least core exists"
    _emit_json(stdout, payload)
    return 0


def _cmd_extensions(opts, stdin, stdout) -> int:
    h = _read_framework(opts.input, stdin)
    family = extensions.enumerate_extensions(h, opts.semantics)
    payload = extensions.extensions_to_json_obj(family)
    if opts.semantics == "grounded" and not family:
        payload["diagnostic"] = "no least complete extension exists"
    _emit_json(stdout, payload)
    return 0


def _cmd_encode(opts, stdin, stdout) -> int:
    h = _read_framework(opts.input, stdin)
    logic.get_logic(opts.logic)  # validate the selector
    formula = logic.encode_normal(h)
    if opts.format == "text":
        stdout.write(logic.formula_to_text(formula) + "\n")
    else:
        _emit_json(stdout, {"formula": logic.formula_to_json_obj(formula)})
    return 0


def _cmd_eval(opts, stdin, stdout) -> int:
    h = _read_framework(opts.input, stdin)
    system = logic.get_logic(opts.logic)
    assignment = _parse_assignment(opts.assignment, h)
    value = logic.evaluate(logic.encode_normal(h), assignment, system)
    _emit_json(stdout, {
        "logic": system.name,
        "mode": "exact" if assignment.exact else "float",
        "value": _format_value(value),
        "is_model": bool(value == 1),
    })
    return 0


def _cmd_solve(opts, stdin, stdout) -> int:
    h = _read_framework(opts.input, stdin)
    system = equations.build_equations(h, logic.get_logic(opts.logic))
    if opts.exact:
        solutions = equations.enumerate_ternary_solutions(system)
        _emit_json(stdout, {
            "logic": system.logic.name,
            "ternary_solutions": [s.to_json_obj() for s in solutions],
        })
        return 0
    reports = equations.solve_fixed_point(
        system, damping=opts.damping, tolerance=opts.tol,
        max_iter=opts.max_iter, restarts=opts.restarts, seed=opts.seed,
    )
    _emit_json(stdout, {
        "logic": system.logic.name,
        "reports": [r.to_json_obj() for r in reports],
    })
    return 0 if any(r.converged for r in reports) else 1


def _cmd_verify(opts, stdin, stdout) -> int:
    h = _read_framework(opts.input, stdin)
    reports = [
        bridge.verify(h, theorem_id, logic=opts.logic, seed=opts.seed,
                      bound=opts.bound, grid_cap=opts.grid_cap,
                      float_samples=opts.float_samples)
        for theorem_id in opts.theorem
    ]
    _emit_json(stdout, {"reports": [r.to_json_obj() for r in reports]})
    return 0 if all(r.passed for r in reports) else 1


def _cmd_random(opts, stdin, stdout) -> int:
    h = framework.generate_random(
        opts.nargs, opts.natts, opts.nsupps, opts.seed,
        support_acyclic=opts.acyclic_supports,
        higher_order_prob=opts.higher_order_prob,
    )
    stdout.write(framework.serialize(h))
    return 0


_COMMANDS = {
    "check": _cmd_check,
    "labellings": _cmd_labellings,
    "extensions": _cmd_extensions,
    "encode": _cmd_encode,
    "eval": _cmd_eval,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "random": _cmd_random,
}


def run(argv: list[str], stdin=None, stdout=None, stderr=None) -> int:
    """Execute one CLI invocation; returns the exit code."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        opts = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(f"hafs: error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[opts.verb](opts, stdin, stdout)
    except _UsageError as exc:
        stderr.write(f"hafs: error: {exc}\n")
        return 2
    except _USAGE_ERRORS as exc:
        stderr.write(f"hafs: error: {exc}\n")
        return 2
    except _DOMAIN_ERRORS as exc:
        stderr.write(f"hafs: error: {exc}\n")
        return 1
    except HafsError as exc:
        stderr.write(f"hafs: error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
