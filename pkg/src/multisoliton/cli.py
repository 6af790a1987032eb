"""Command-line surface.

Exit codes: 0 for success or a true verdict, 1 for a false verdict or a
failed validation, 2 for usage, parse or I/O errors, so shell harnesses can
assert analysis outcomes directly.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import automaton as automaton_mod
from . import classify as classify_mod
from . import engine, families
from .bursts import BurstBindError, BurstParseError, parse_burst, parse_burst_set
from .graphs import (
    GraphParseError,
    SolitonGraph,
    export_dot,
    format_graph,
    parse_graph,
    validate,
)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc.strerror}"))


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise SystemExit(_fail(f"cannot write {path}: {exc.strerror}"))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _load_soliton_graph(path: str) -> SolitonGraph:
    g = parse_graph(_read(path))
    return SolitonGraph.from_weighted(g)


def _positions(pm) -> str:
    return "(" + ",".join(str(p) for p in pm) + ")"


def _print_trail(trail: engine.Trail, index: int, trace: bool) -> None:
    configs = trail.configurations
    print(f"trail {index}: length {len(configs) - 1}, end state {configs[-1].graph.state_key()}")
    for i in range(1, len(configs[0].positions) + 1):
        path = engine.soliton_path(trail, i)
        shown = ",".join(path.nodes) if path.entered else "(never entered)"
        print(f"  soliton {i}: {shown}")
    if trace:
        for j, config in enumerate(configs):
            if j == 0:
                flips = ""
            else:
                before, after = configs[j - 1], config
                flipped = [
                    f"{u}-{v}"
                    for (u, v), w0, w1 in zip(
                        before.graph.edges, before.graph.weights, after.graph.weights
                    )
                    if w0 != w1
                ]
                flips = ",".join(flipped)
            print(f"  t={j} pos={_positions(config.positions)} flips={flips}")


def cmd_validate(args) -> int:
    try:
        g = parse_graph(_read(args.graph))
    except GraphParseError as exc:
        return _fail(str(exc))
    report = validate(g)
    if report.ok:
        print(f"ok: soliton graph with {len(g.nodes)} nodes, {len(g.edges)} edges")
        return 0
    for rule, subject, message in report.violations:
        print(f"violation[{rule}] {subject}: {message}")
    return 1


def cmd_trails(args) -> int:
    try:
        g = _load_soliton_graph(args.graph)
        burst = parse_burst(args.burst)
        if args.perfect_only:
            trails = engine.enumerate_perfect_trails(g, burst, cap=args.limit or 0)
            exhausted = not args.limit or len(trails) < args.limit
        else:
            if not args.limit:
                return _fail("--limit is required unless --perfect-only is given")
            trails, exhausted = engine.list_total_trails(g, burst, args.limit)
    except (GraphParseError, BurstParseError, BurstBindError, ValueError) as exc:
        return _fail(str(exc))
    for i, trail in enumerate(trails, start=1):
        _print_trail(trail, i, args.trace)
    if not trails:
        print("no total legal trails")
    if not exhausted:
        if args.perfect_only:
            print(f"(stopped at {args.limit} trails; more may exist)")
        else:
            print(f"(truncated at {args.limit} trails; more exist)")
    return 0


def _load_automaton(graph_path: str, bursts_path: str) -> automaton_mod.SolitonAutomaton:
    g = _load_soliton_graph(graph_path)
    bursts = parse_burst_set(_read(bursts_path))
    if not bursts:
        raise BurstParseError(f"no bursts in {bursts_path}")
    return automaton_mod.build(g, bursts)


def cmd_automaton(args) -> int:
    try:
        auto = _load_automaton(args.graph, args.bursts)
    except (GraphParseError, BurstParseError, BurstBindError, ValueError) as exc:
        return _fail(str(exc))
    if args.dot:
        _write(args.dot, automaton_mod.export_dot(auto))
    if args.json:
        payload = {
            "initial": auto.initial_key,
            "states": auto.state_keys(),
            "alphabet": [b.text() for b in auto.alphabet],
            "transitions": [
                {"from": skey, "burst": b.text(), "to": sorted(auto.transition(skey, b))}
                for skey in auto.state_keys()
                for b in auto.alphabet
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"states: {len(auto.states)}  alphabet: {len(auto.alphabet)}")
        for skey in auto.state_keys():
            for b in auto.alphabet:
                print(f"  {skey} --{b.text()}--> {','.join(sorted(auto.transition(skey, b)))}")
    return 0


def cmd_analyze(args) -> int:
    try:
        auto = _load_automaton(args.graph, args.bursts)
    except (GraphParseError, BurstParseError, BurstBindError, ValueError) as exc:
        return _fail(str(exc))
    if args.check == "degree":
        degree = automaton_mod.degree_of_nondeterminism(auto)
        if args.json:
            print(json.dumps({"degree": degree}))
        else:
            print(degree)
        return 0
    checks = {
        "det": automaton_mod.is_deterministic,
        "strong": automaton_mod.is_strongly_deterministic,
        "perfect": automaton_mod.is_perfectly_deterministic,
    }
    verdict, witnesses = checks[args.check](auto)
    if args.json:
        report = automaton_mod.analyze(auto)
        print(report.to_json())
    else:
        print(f"{args.check}: {'true' if verdict else 'false'}")
        for w in witnesses:
            print(f"  witness: state {w.state}, burst {w.burst}: {w.evidence}")
    return 0 if verdict else 1


def cmd_classify(args) -> int:
    try:
        g = _load_soliton_graph(args.graph)
    except (GraphParseError, ValueError) as exc:
        return _fail(str(exc))
    bounds = classify_mod.Bounds(args.max_burst_length, args.max_gap)
    report = classify_mod.classify_report(g, bounds)
    if args.dot:
        _write(args.dot, export_dot(g))
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"tree: {report.is_tree}")
        print(f"chestnut: {report.is_chestnut}")
        ok, _ = report.indecomposable_bounded
        print(f"indecomposable within bounds: {ok}")
        for path in report.impervious_paths:
            print(f"  unused path: {'-'.join(path)}")
        print(f"note: {report.caveat}")
    return 0


def cmd_gen(args) -> int:
    header: list[str] = []
    try:
        if args.family == "gg":
            g = families.gen_gg(args.g)
        elif args.family == "chestnut":
            attachments = []
            for spec_arg in args.attachments:
                pos, _, length = spec_arg.partition(":")
                attachments.append((int(pos), int(length or "1")))
            g = families.gen_chestnut(args.cycle, attachments)
        else:
            g = families.gen_tree(args.n, args.seed)
            header.append(f"seed {args.seed}")
    except ValueError as exc:
        return _fail(str(exc))
    text = format_graph(g, header)
    if args.output:
        _write(args.output, text)
    else:
        print(text, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multisoliton",
        description="soliton graphs, bursts, configuration trails and determinism analyses",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a graph file")
    p.add_argument("graph")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("trails", help="list total legal trails for one burst")
    p.add_argument("graph")
    p.add_argument("burst")
    p.add_argument("--perfect-only", action="store_true")
    p.add_argument("--limit", type=int, default=0)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_trails)

    p = sub.add_parser("automaton", help="build the induced automaton")
    p.add_argument("graph")
    p.add_argument("bursts")
    p.add_argument("--dot")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("analyze", help="run a determinism analysis")
    p.add_argument("graph")
    p.add_argument("bursts")
    p.add_argument("--check", choices=["det", "strong", "perfect", "degree"], required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="structural and bounded behavioural classification")
    p.add_argument("graph")
    p.add_argument("--max-burst-length", type=int, default=2)
    p.add_argument("--max-gap", type=int, default=2)
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gen", help="generate family graphs")
    gen_sub = p.add_subparsers(dest="family", required=True)
    q = gen_sub.add_parser("gg")
    q.add_argument("g", type=int)
    q.add_argument("-o", "--output")
    q = gen_sub.add_parser("chestnut")
    q.add_argument("cycle", type=int)
    q.add_argument("attachments", nargs="+", metavar="POS:LEN")
    q.add_argument("-o", "--output")
    q = gen_sub.add_parser("tree")
    q.add_argument("n", type=int)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except engine.ResourceCapError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
