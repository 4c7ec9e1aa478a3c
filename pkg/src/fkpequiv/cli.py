"""Command line front end.

Exit codes: 0 ok, 1 inequivalent, 2 usage or parse error, 3 capacity error,
4 brute-force oracle disagreed with the classifier.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import classifier, exact, witness
from .errors import CapacityError, FkpError, InequivalentError, ParseError

DEFAULT_MAX_N = 1024

OK, INEQUIVALENT, USAGE, CAPACITY = 0, 1, 2, 3
_STATUS_CODES = {"ok": OK, "inequivalent": INEQUIVALENT}


@dataclass
class CommandResult:
    status: str  # "ok" | "inequivalent" | "error"
    payload: dict = field(default_factory=dict)
    exit_code: int = OK
    text: str = ""

    def to_json(self) -> str:
        return json.dumps({"status": self.status, **self.payload}, sort_keys=False)


def _ok(payload, text):
    return CommandResult("ok", payload, OK, text)


def _error(exc: Exception, code: int) -> CommandResult:
    return CommandResult("error", {"error": type(exc).__name__, "message": str(exc)}, code,
                         f"error: {exc}")


def census_to_json(census: dict) -> dict:
    return {str(k): v for k, v in sorted(census.items())}


def _census_text(census: dict) -> str:
    return "{" + ", ".join(f"{k}: {v}" for k, v in sorted(census.items())) + "}"


def _entries(max_n: int) -> int:
    return max_n * max_n


def cmd_canon(spec_text: str) -> CommandResult:
    try:
        spec = classifier.parse_spec(spec_text)
    except ParseError as exc:
        return _error(exc, USAGE)
    form = classifier.canonicalize(spec)
    rendered = str(form)
    payload = {
        "spec": str(spec),
        "canonical": rendered,
        "groups": [[p, list(ks)] for p, ks in form.groups],
    }
    return _ok(payload, rendered)


def cmd_equiv(spec_a: str, spec_b: str, mode: str = "p") -> CommandResult:
    try:
        a, b = classifier.parse_spec(spec_a), classifier.parse_spec(spec_b)
    except ParseError as exc:
        return _error(exc, USAGE)
    mode = mode.lower()
    decide = classifier.pd_equivalent if mode == "pd" else classifier.p_equivalent
    same = decide(a, b)
    ca, cb = classifier.census_formula(a), classifier.census_formula(b)
    payload = {
        "mode": mode,
        "a": str(a),
        "b": str(b),
        "equivalent": same,
        "census_a": census_to_json(ca),
        "census_b": census_to_json(cb),
    }
    rel = "~P" if mode == "p" else "~PD"
    if same:
        return CommandResult("ok", payload, OK, f"{a} {rel} {b}: equivalent")
    text = (f"{a} {rel} {b}: inequivalent\n"
            f"  census {a}: {_census_text(ca)}\n  census {b}: {_census_text(cb)}")
    return CommandResult("inequivalent", payload, INEQUIVALENT, text)


def cmd_census(spec_text: str, check_oracle: bool = False, max_n: int = DEFAULT_MAX_N) -> CommandResult:
    try:
        spec = classifier.parse_spec(spec_text)
    except ParseError as exc:
        return _error(exc, USAGE)
    census = classifier.census_formula(spec)
    payload = {"spec": str(spec), "size": spec.size, "census": census_to_json(census)}
    lines = [f"{spec} (N={spec.size})", f"  formula: {_census_text(census)}"]
    if check_oracle:
        try:
            oracle = exact.census_oracle(spec.build(_entries(max_n)))
        except CapacityError as exc:
            return _error(exc, CAPACITY)
        payload["oracle"] = census_to_json(oracle)
        payload["agree"] = oracle == census
        lines.append(f"  oracle:  {_census_text(oracle)}")
        lines.append(f"  agree:   {oracle == census}")
    return _ok(payload, "\n".join(lines))


def cmd_witness(spec_a: str, spec_b: str, verify: bool = True, max_n: int = DEFAULT_MAX_N) -> CommandResult:
    try:
        a, b = classifier.parse_spec(spec_a), classifier.parse_spec(spec_b)
    except ParseError as exc:
        return _error(exc, USAGE)
    try:
        w = witness.witness_equivalence(a, b)
    except InequivalentError as exc:
        payload = {
            "a": str(a),
            "b": str(b),
            "equivalent": False,
            "census_a": census_to_json(exc.census_a),
            "census_b": census_to_json(exc.census_b),
        }
        text = (f"{a} and {b} are inequivalent\n"
                f"  census {a}: {_census_text(exc.census_a)}\n  census {b}: {_census_text(exc.census_b)}")
        return CommandResult("inequivalent", payload, INEQUIVALENT, text)

    code = OK
    verified = None
    if verify:
        if a.size > max_n:
            code = CAPACITY
            verified = False
        else:
            verified = w.verify(_entries(max_n))
    payload = w.to_dict(verified)
    if code == CAPACITY:
        payload["note"] = f"N={a.size} exceeds --max-n={max_n}; witness not checked"
    status = "ok" if code == OK else "error"
    lines = [f"witness {w.lhs} -> {w.rhs}"]
    lines.extend(f"  step: {s}" for s in w.steps)
    lines.append(f"  rows: {w.p_row.tolist()}")
    lines.append(f"  cols: {w.p_col.tolist()}")
    lines.append(f"  verified: {verified if verify else 'skipped'}")
    if code == CAPACITY:
        lines.append(f"  {payload['note']}")
    return CommandResult(status, payload, code, "\n".join(lines))


def cmd_classes(n: int, members: bool = False, max_n: int = DEFAULT_MAX_N) -> CommandResult:
    if n < 1:
        return _error(ValueError("N must be positive"), USAGE)
    if n > max_n:
        return _error(CapacityError(f"N={n} exceeds --max-n={max_n}"), CAPACITY)
    count = classifier.class_count(n)
    payload = {"n": n, "count": count}
    lines = [f"N={n}: {count} class{'es' if count != 1 else ''}"]
    if members:
        classes = classifier.enumerate_classes(n, max_n)
        payload["classes"] = [
            {"representative": str(c.representative),
             "groups": [[p, list(ks)] for p, ks in c.representative.groups],
             "members": [list(m) for m in c.members]}
            for c in classes
        ]
        for c in classes:
            mem = ", ".join("*".join(f"F{f}" for f in m) for m in c.members)
            lines.append(f"  [{c.representative}]: {mem}")
    return _ok(payload, "\n".join(lines))


def cmd_oracle(spec_a: str, spec_b: str, oracle_cap: int = exact.ORACLE_CAP) -> CommandResult:
    try:
        a, b = classifier.parse_spec(spec_a), classifier.parse_spec(spec_b)
    except ParseError as exc:
        return _error(exc, USAGE)
    if a.size > oracle_cap or b.size > oracle_cap:
        return _error(CapacityError(f"oracle is capped at N={oracle_cap}"), CAPACITY)
    found = exact.brute_force_equiv(a.build(), b.build(), cap=oracle_cap)
    decided = classifier.p_equivalent(a, b)
    agree = (found is not None) == decided
    payload = {"a": str(a), "b": str(b), "oracle_equivalent": found is not None,
               "classifier_equivalent": decided, "agree": agree}
    lines = [f"{a} vs {b}",
             f"  brute force: {'equivalent' if found else 'inequivalent'}",
             f"  classifier:  {'equivalent' if decided else 'inequivalent'}",
             f"  agree: {agree}"]
    if found is not None:
        pr, pc = found
        ok = exact.equal(exact.apply(pr, a.build(), pc), b.build())
        payload.update(rows=pr.tolist(), cols=pc.tolist(), verified=ok)
        lines.append(f"  rows: {pr.tolist()}")
        lines.append(f"  cols: {pc.tolist()}")
        lines.append(f"  verified: {ok}")
    if not agree:
        return CommandResult("error", payload, 4, "\n".join(lines + ["  DISAGREEMENT"]))
    status = "ok" if decided else "inequivalent"
    return CommandResult(status, payload, _STATUS_CODES[status], "\n".join(lines))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON instead of text")
    common.add_argument("--max-n", type=int, default=argparse.SUPPRESS,
                        help=f"largest matrix size to build (default {DEFAULT_MAX_N})")
    common.add_argument("--oracle-cap", type=int, default=argparse.SUPPRESS,
                        help=f"largest size for brute-force search (default {exact.ORACLE_CAP})")

    parser = _Parser(prog="fkp", description="Equivalence classes of Kronecker products of Fourier matrices.")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    parser.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    parser.add_argument("--oracle-cap", type=int, default=exact.ORACLE_CAP)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("canon", parents=[common], help="canonical representative of a spec")
    p.add_argument("spec")

    p = sub.add_parser("equiv", parents=[common], help="decide equivalence of two specs")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--mode", choices=["p", "pd", "P", "PD"], default="p")

    p = sub.add_parser("census", parents=[common], help="row census by closed formula")
    p.add_argument("spec")
    p.add_argument("--oracle", action="store_true", help="also classify rows of the built matrix")

    p = sub.add_parser("witness", parents=[common], help="explicit permutation witness")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--no-verify", action="store_true")

    p = sub.add_parser("classes", parents=[common], help="equivalence classes of size N")
    p.add_argument("n", type=int)
    p.add_argument("--members", action="store_true")

    p = sub.add_parser("oracle", parents=[common], help="brute-force cross-check")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    return parser


def run(argv=None) -> CommandResult:
    return dispatch(build_parser().parse_args(argv))


def dispatch(args: argparse.Namespace) -> CommandResult:
    try:
        if args.command == "canon":
            return cmd_canon(args.spec)
        if args.command == "equiv":
            return cmd_equiv(args.spec_a, args.spec_b, args.mode)
        if args.command == "census":
            return cmd_census(args.spec, args.oracle, args.max_n)
        if args.command == "witness":
            return cmd_witness(args.spec_a, args.spec_b, not args.no_verify, args.max_n)
        if args.command == "classes":
            return cmd_classes(args.n, args.members, args.max_n)
        if args.command == "oracle":
            return cmd_oracle(args.spec_a, args.spec_b, args.oracle_cap)
    except CapacityError as exc:
        return _error(exc, CAPACITY)
    except FkpError as exc:
        return _error(exc, USAGE)
    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    result = dispatch(args)
    if args.json:
        print(result.to_json())
    else:
        stream = sys.stderr if result.status == "error" and not result.payload.get("rows") else sys.stdout
        print(result.text, file=stream)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
