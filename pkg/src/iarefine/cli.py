"""Command-line front end: ``ia check``, ``ia transform``, ``ia traces``, ``ia oracle``, ``ia info``.

Exit codes: 0 the relation holds, 1 it fails, 2 usage or input error,
3 the bounded search was inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import games, oracle, relations
from .automaton import is_acyclic, is_deterministic, is_input_enabled
from .errors import IaError, InternalError
from .formats import export_dot, load, serialize
from .semantics import enumerate_ftraces, enumerate_traces, format_trace
from .transforms import DEFAULT_DELTA, delta_closure, determinize, determinize_iu

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2, 3

RELATIONS = ("if", "iuoe", "equiv-if", "uioco", "ioco", "as", "atc", "tb", "all")

NARRATIVE_HELP = """\
For atc and tb a failing check prints the strategy that wins against the
right-hand side. atc prints a play tree: one line per move, indented by
depth, written 'label? -> state' for inputs and 'label! -> state' for
outputs. '(may stop)' marks a point where the environment may end the play
and '...' marks the depth cut-off. tb prints a numbered play ending in the
move the right-hand side cannot answer. With --json the tree is mirrored
under "strategy".
"""


class _Disagreement(Exception):
    pass


def _exit_for(status: str) -> int:
    if status in (relations.HOLDS, games.HOLDS_EXACT):
        return EXIT_HOLDS
    if status in (relations.FAILS, games.REFUTED):
        return EXIT_FAILS
    return EXIT_INCONCLUSIVE


def _run_relation(rel, s1, s2, args):
    delta = args.delta_label
    if rel == "if":
        return relations.check_if(s1, s2)
    if rel == "iuoe":
        return relations.check_iuoe(s1, s2)
    if rel == "equiv-if":
        return relations.check_equiv_if(s1, s2)
    if rel == "uioco":
        return relations.check_uioco(s1, s2, delta, verify=args.verify)
    if rel == "ioco":
        return relations.check_ioco(s1, s2, delta)
    if rel == "as":
        return relations.check_as(s1, s2)
    if rel == "tb":
        verdict = relations.check_tb(s1, s2)
        if verdict.fails:
            verdict.extra["narrative"] = games.refute_tb(s1, s2, max(args.depth, len(verdict.witness))).narrative
        return verdict
    if rel == "atc":
        return games.refute_atc(s1, s2, args.depth, budget=args.budget)
    raise ValueError(rel)


def _verify(rel, s1, s2, verdict, args):
    """Cross-check against the brute-force oracle at --depth."""
    k, delta = args.depth, args.delta_label
    if rel in ("if", "as", "atc", "equiv-if"):
        checks = [(oracle.oracle_if(s1, s2, k), relations.check_if(s1, s2))]
        if rel == "equiv-if":
            checks.append((oracle.oracle_if(s2, s1, k), relations.check_if(s2, s1)))
    elif rel in ("iuoe", "tb"):
        checks = [(oracle.oracle_iuoe(s1, s2, k), verdict)]
    elif rel == "uioco":
        checks = [(oracle.oracle_uioco(s1, s2, k, delta), verdict)]
    elif rel == "ioco":
        checks = [(oracle.oracle_ioco(s1, s2, k, delta), verdict)]
    else:
        return
    for ref, exact in checks:
        if ref.fails != exact.fails:
            # an inconclusive oracle only disagrees if the witness was within reach
            if ref.fails or len(exact.witness) <= k:
                raise _Disagreement(f"oracle says {ref.status}, checker says {exact.status}")
        elif ref.fails and len(ref.witness) != len(exact.witness):
            raise _Disagreement(f"witness lengths differ: oracle {len(ref.witness)}, checker {len(exact.witness)}")
    if rel == "as" and verdict.holds and checks[0][0].fails:
        raise _Disagreement("simulation holds but the oracle refutes refinement")


def _witness_line(w) -> str:
    return f"witness: {w.kind} after {format_trace(w.trace)}: {w.action}"


def _render_text(v) -> list[str]:
    lines = [f"relation: {v.relation}", f"status: {v.status}", f"method: {v.method}"]
    if isinstance(v, games.AtcVerdict):
        lines.append(f"depth: {v.depth}")
        if v.refuted_at is not None:
            lines.append(f"refuted at depth: {v.refuted_at}")
        if "reason" in v.diagnostics:
            lines.append(f"stopped: {v.diagnostics['reason']}")
        lines.extend(v.narrative)
        return lines
    if v.witness is not None:
        lines.append(_witness_line(v.witness))
    if v.side is not None:
        lines.append(f"side: {v.side}")
    if v.simulation is not None:
        lines.append("simulation: " + " ".join(f"({a},{b})" for a, b in sorted(v.simulation)))
    if v.note is not None:
        lines.append(f"note: {v.note}")
    lines.extend(v.extra.get("narrative", []))
    return lines


def _json_of(v) -> dict:
    d = v.to_dict()
    if "narrative" in getattr(v, "extra", {}):
        d["narrative"] = v.extra["narrative"]
    return d


def cmd_check(args) -> int:
    s1, s2 = load(args.impl), load(args.specification)
    if args.relation == "all":
        report = relations.check_all(s1, s2, args.delta_label, args.depth, args.budget)
        if args.verify:
            for rel in ("if", "iuoe", "uioco", "ioco"):
                if report[rel].status != relations.SKIPPED:
                    _verify(rel, s1, s2, report[rel], args)
        if args.json:
            print(json.dumps({"relations": [_json_of(v) for v in report.values()], "lattice": "consistent"},
                             ensure_ascii=False, separators=(",", ":")))
        else:
            width = max(len(r) for r in report)
            for rel, v in report.items():
                print(f"{rel:<{width}}  {v.status:<12}  {v.method}")
            print("lattice: consistent")
        statuses = [v.status for v in report.values() if v.status != relations.SKIPPED]
        if any(_exit_for(s) == EXIT_FAILS for s in statuses):
            return EXIT_FAILS
        if any(_exit_for(s) == EXIT_INCONCLUSIVE for s in statuses):
            return EXIT_INCONCLUSIVE
        return EXIT_HOLDS

    verdict = _run_relation(args.relation, s1, s2, args)
    if args.verify:
        _verify(args.relation, s1, s2, verdict, args)
    if args.json:
        print(json.dumps(_json_of(verdict), ensure_ascii=False, separators=(",", ":")))
    else:
        print("\n".join(_render_text(verdict)))
    return _exit_for(verdict.status)


def cmd_transform(args) -> int:
    s = load(args.input)
    if args.kind == "delta":
        result = delta_closure(s, args.delta_label)
    elif args.kind == "det":
        result = determinize(s)
    else:
        result = determinize_iu(s)
    text = export_dot(result, args.delta_label) if args.dot else serialize(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_HOLDS


def cmd_traces(args) -> int:
    s = load(args.input)
    if args.failures:
        for ft in sorted(enumerate_ftraces(s, args.depth)):
            print(ft.render())
    else:
        for t in sorted(enumerate_traces(s, args.depth), key=lambda t: (len(t), t)):
            print(format_trace(t))
    return EXIT_HOLDS


def cmd_oracle(args) -> int:
    s1, s2 = load(args.impl), load(args.specification)
    fn = oracle.ORACLES[args.relation]
    if args.relation in ("uioco", "ioco"):
        verdict = fn(s1, s2, args.depth, args.delta_label)
    else:
        verdict = fn(s1, s2, args.depth)
    if args.json:
        print(json.dumps(verdict.to_dict(), ensure_ascii=False, separators=(",", ":")))
    else:
        lines = _render_text(verdict)
        lines.insert(3, f"depth: {verdict.depth} (exact from {oracle.exhaustive_depth(s1, s2)})")
        print("\n".join(lines))
    return _exit_for(verdict.status)


def cmd_info(args) -> int:
    s = load(args.input)
    print(f"states: {len(s.states)} ({len(s.reachable_states)} reachable)")
    print(f"inputs: {' '.join(sorted(s.inputs))}")
    print(f"outputs: {' '.join(sorted(s.outputs))}")
    print(f"transitions: {len(s.transitions)}")
    print(f"deterministic: {'yes' if is_deterministic(s) else 'no'}")
    print(f"input-enabled (reachable states): {'yes' if is_input_enabled(s) else 'no'}")
    print(f"input-enabled (all states): {'yes' if is_input_enabled(s, reachable_only=False) else 'no'}")
    print(f"acyclic: {'yes' if is_acyclic(s) else 'no'}")
    return EXIT_HOLDS


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must not be negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ia", description="Refinement and conformance checks for interface automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, depth=None):
        if depth is not None:
            p.add_argument("--depth", type=depth, default=6, help="search depth for bounded checks (default 6)")
        p.add_argument("--delta-label", default=DEFAULT_DELTA, help="name of the quiescence output (default delta)")

    p = sub.add_parser("check", help="decide a relation between two automata",
                       epilog=NARRATIVE_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("relation", choices=RELATIONS)
    p.add_argument("impl")
    p.add_argument("specification")
    common(p, _positive)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true", help="cross-check against the brute-force oracle at --depth")
    p.add_argument("--budget", type=_positive, default=games.DEFAULT_BUDGET, help="strategy budget for atc")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("transform", help="apply quiescence closure or a determinization")
    p.add_argument("kind", choices=("delta", "det", "detiu"))
    p.add_argument("input")
    p.add_argument("output", nargs="?")
    p.add_argument("--dot", action="store_true", help="write Graphviz instead of .ia text")
    common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("traces", help="list traces or failure traces up to a depth")
    p.add_argument("input")
    p.add_argument("--depth", type=_natural, default=6)
    p.add_argument("--failures", action="store_true", help="include refusals, printed as !a")
    p.set_defaults(func=cmd_traces)

    p = sub.add_parser("oracle", help="brute-force check at --depth, for debugging")
    p.add_argument("relation", choices=tuple(oracle.ORACLES))
    p.add_argument("impl")
    p.add_argument("specification")
    common(p, _natural)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("info", help="structural facts about one automaton")
    p.add_argument("input")
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_HOLDS if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except _Disagreement as exc:
        print(f"error: verification failed: {exc}", file=sys.stderr)
    except InternalError as exc:
        print(f"error: internal consistency check failed: {exc}", file=sys.stderr)
    except IaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
