"""Command-line front end.

Subcommands: build, run, verify, sensitivity, classical, equal, check.
Exit codes: 0 success/pass, 1 verification failure (or unequal strings),
2 usage or input errors. Human output rounds amplitudes to 6 decimals;
--json emits one machine-readable line at full precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .boolfunc import BooleanFunction, bit_oracle, classical_verify, sensitivity
from .builder import build_algorithm
from .model import check_exact, measure, run
from .serialize import dumps_algorithm, load_algorithm, load_function
from .strings import StringPair, interleave, strings_equal
from .words import parse_word

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit(payload: dict) -> None:
    print(json.dumps(payload))


def _fmt_state(state) -> str:
    return "  ".join(f"{x: .6f}" for x in state)


def _step_names(t_queries: int) -> list[str]:
    names = ["start"]
    for i in range(1, t_queries + 1):
        names += [f"U{i}", f"Q{i}"]
    names.append("final")
    return names


def _cmd_build(args) -> int:
    alg = build_algorithm(args.n)
    if args.format == "json":
        text = dumps_algorithm(alg) + "\n"
    else:
        lines = [f"n_vars: {alg.n_vars}", f"t_queries: {alg.t_queries}", f"dim: {alg.dim}", ""]
        for i, stage in enumerate(alg.stages, start=1):
            lines.append(f"U{i} =")
            lines += ["  " + _fmt_state(row) for row in stage.unitary]
            diag = ", ".join("1" if v == 0 else f"(-1)^x{v}" for v in stage.query.var_map)
            lines.append(f"Q{i} = diag({diag})")
            lines.append("")
        lines.append("final =")
        lines += ["  " + _fmt_state(row) for row in alg.final_unitary]
        lines.append("")
        lines.append(f"start: {_fmt_state(alg.start)}")
        lines.append(f"labels: {' '.join(str(b) for b in alg.labels)}")
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_run(args) -> int:
    parse_word(args.input)
    alg = build_algorithm(args.n)
    trace = run(alg, args.input)
    p0, p1 = measure(trace.final, alg.labels)
    output = 1 if p1 > p0 else 0
    probability = max(p0, p1)
    exact = probability >= 1.0 - 1e-9
    if args.json:
        payload = {
            "command": "run",
            "n_vars": alg.n_vars,
            "input": args.input,
            "output": output,
            "probability": probability,
            "exact": exact,
            "p0": p0,
            "p1": p1,
            "final_state": trace.final.tolist(),
        }
        if args.trace:
            payload["trace"] = [
                {"step": name, "state": state.tolist()}
                for name, state in zip(_step_names(alg.t_queries), trace.states)
            ]
        _emit(payload)
        return EXIT_OK
    print(f"input: {args.input}")
    if args.trace:
        width = max(len(n) for n in _step_names(alg.t_queries)) + 6
        for name, state in zip(_step_names(alg.t_queries), trace.states):
            label = name if name in ("start", "final") else f"after {name}"
            print(f"{label:<{width}}{_fmt_state(state)}")
    else:
        print(f"final:  {_fmt_state(trace.final)}")
    print(f"output: {output}  probability: {probability:.6f}  exact: {'yes' if exact else 'no'}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    alg = build_algorithm(args.n)
    workers = os.cpu_count() if args.parallel else None
    report = check_exact(alg, BooleanFunction.verify(args.n), workers=workers)
    if args.json:
        _emit({
            "command": "verify",
            "n_vars": args.n,
            "t_queries": alg.t_queries,
            "inputs_checked": report.inputs_checked,
            "exact": report.exact,
            "counterexample": report.counterexample,
            "min_probability": report.min_probability,
        })
    else:
        print(f"inputs tested: {report.inputs_checked}")
        print(f"queries per run: {alg.t_queries}")
        print(f"min correct-output probability: {report.min_probability!r}")
        if report.exact:
            print("result: exact")
        else:
            print(f"result: FAILED, first counterexample: {report.counterexample}")
    return EXIT_OK if report.exact else EXIT_FAIL


def _cmd_sensitivity(args) -> int:
    value, witness = sensitivity(BooleanFunction.verify(args.n))
    if args.json:
        _emit({"command": "sensitivity", "n_vars": args.n, "sensitivity": value,
               "witness": witness})
    else:
        print(f"sensitivity: {value}")
        print(f"witness: {witness}")
    return EXIT_OK


def _cmd_classical(args) -> int:
    parse_word(args.input, args.n)
    report = classical_verify(bit_oracle(args.input), args.n)
    if args.json:
        _emit({
            "command": "classical",
            "n_vars": args.n,
            "input": args.input,
            "output": report.output,
            "queries_used": report.queries_used,
            "query_sequence": list(report.query_sequence),
        })
    else:
        print(f"output: {report.output}")
        print(f"queries used: {report.queries_used}")
        print(f"query order: {' '.join('x%d' % k for k in report.query_sequence)}")
    return EXIT_OK


def _cmd_equal(args) -> int:
    pair = StringPair(y=args.y, z=args.z)
    equal = strings_equal(pair)
    if args.json:
        _emit({"command": "equal", "y": pair.y, "z": pair.z, "word": interleave(pair),
               "n_vars": 2 * pair.length, "equal": equal})
    else:
        print("equal" if equal else "not equal")
    return EXIT_OK if equal else EXIT_FAIL


def _cmd_check(args) -> int:
    alg = load_algorithm(args.algorithm)
    if args.function == "verify":
        f = BooleanFunction.verify(alg.n_vars)
    else:
        f = load_function(args.function)
    unitary = alg.unitary_within()
    report = check_exact(alg, f)
    if args.json:
        _emit({
            "command": "check",
            "algorithm": args.algorithm,
            "function": args.function,
            "n_vars": alg.n_vars,
            "t_queries": alg.t_queries,
            "unitary": unitary,
            "inputs_checked": report.inputs_checked,
            "exact": report.exact,
            "counterexample": report.counterexample,
            "min_probability": report.min_probability,
        })
    else:
        print(f"matrices unitary: {'yes' if unitary else 'NO'}")
        print(f"inputs tested: {report.inputs_checked}")
        if report.exact:
            print("result: exact")
        else:
            print(f"result: FAILED, first counterexample: {report.counterexample}")
    return EXIT_OK if report.exact else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qverify",
        description="Simulate exact quantum query verification of duplicated-bit codewords.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct an algorithm and write its JSON document")
    p.add_argument("--n", type=int, required=True, help="number of word bits (even)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("run", help="run the built algorithm on one word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input", required=True, help="input word, e.g. 1100")
    p.add_argument("--trace", action="store_true", help="print the state after every step")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("verify", help="exhaustively check exactness over all words")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--parallel", action="store_true", help="sweep with one worker per CPU")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sensitivity", help="sensitivity of the n-bit verifier function")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sensitivity)

    p = sub.add_parser("classical", help="run the classical decision-tree verifier")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classical)

    p = sub.add_parser("equal", help="test two binary strings for equality")
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_equal)

    p = sub.add_parser("check", help="check a stored algorithm against a function")
    p.add_argument("--algorithm", required=True, help="path to an algorithm document")
    p.add_argument("--function", default="verify",
                   help="'verify' or a path to a truth-table document")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
