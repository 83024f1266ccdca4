"""Command-line interface: extract, generate, evaluate.

Exit codes: 0 ok, 2 input problem, 3 grammar problem, 4 generation or
evaluation problem.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from .errors import EvaluationError, GenerationError, GrammarError, InputFormatError
from .extraction import POLICIES, extract, grammar_from_json, grammar_to_json
from .generation import generate
from .mdl import grammar_dl, graph_dl
from .metrics import CENSUS_KEYS, compare_report
from .multigraph import Multigraph, read_edgelist, write_edgelist
from .rng import substream

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_GRAMMAR = 3
EXIT_EVALUATION = 4

CLUSTERINGS = ("louvain", "random", "fiedler")


def _load_input(path: str) -> Multigraph:
    g = read_edgelist(path)
    if g.number_of_nodes() == 0:
        raise InputFormatError(f"input {path} contains no edges")
    return g


def cmd_extract(args: argparse.Namespace) -> int:
    g = _load_input(args.input)
    t0 = time.perf_counter()
    grammar = extract(g, strategy=args.clustering, policy=args.policy, mu=args.mu, seed=args.seed)
    seconds = time.perf_counter() - t0
    os.makedirs(args.out, exist_ok=True)
    doc = grammar_to_json(grammar)
    with open(os.path.join(args.out, "grammar.json"), "w", encoding="utf-8") as fh:
        fh.write(doc)
    derivation_doc = json.loads(doc)["derivation"]
    with open(os.path.join(args.out, "derivation.json"), "w", encoding="utf-8") as fh:
        json.dump(derivation_doc, fh, sort_keys=True, indent=2)
        fh.write("\n")
    dlh = graph_dl(g)
    dlg = grammar_dl(grammar)
    print(
        f"{g.number_of_nodes()} {g.distinct_edge_count()} {len(grammar.rules)} "
        f"{dlh:.3f} {dlg:.3f} {dlg / dlh:.4f} {seconds:.3f}"
    )
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        with open(args.grammar, encoding="utf-8") as fh:
            grammar = grammar_from_json(fh.read())
    except OSError as exc:
        raise InputFormatError(f"cannot read grammar {args.grammar}: {exc}") from exc
    os.makedirs(args.out, exist_ok=True)
    max_size = max(1, round(args.max_size_mult * grammar.source_nodes))
    collapse = args.collapse_multiedges == "on"
    entries = []
    if args.count == 0:
        print("warning: --count 0 requested; writing manifest only", file=sys.stderr)
    for i in range(args.count):
        graph_seed = substream(args.seed, "batch", i).randrange(10**9)
        g = generate(grammar, seed=graph_seed, max_size=max_size)
        fname = f"gen_{graph_seed}.txt"
        write_edgelist(g, os.path.join(args.out, fname), collapse=collapse)
        entries.append(
            {
                "file": fname,
                "seed": graph_seed,
                "nodes": g.number_of_nodes(),
                "edges": g.distinct_edge_count(),
            }
        )
    manifest = {
        "root_seed": args.seed,
        "count": args.count,
        "max_size": max_size,
        "collapse_multiedges": collapse,
        "graphs": entries,
    }
    with open(os.path.join(args.out, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    original = _load_input(args.input)
    try:
        names = sorted(f for f in os.listdir(args.generated) if f.endswith(".txt"))
    except OSError as exc:
        raise EvaluationError(f"cannot list {args.generated}: {exc}") from exc
    generated = [(name, read_edgelist(os.path.join(args.generated, name))) for name in names]
    generated = [(name, g) for name, g in generated if g.number_of_nodes() > 0]
    if not generated:
        raise EvaluationError(f"no generated graphs found in {args.generated}")
    dl_ratio = None
    if args.grammar:
        try:
            with open(args.grammar, encoding="utf-8") as fh:
                grammar = grammar_from_json(fh.read())
        except OSError as exc:
            raise InputFormatError(f"cannot read grammar {args.grammar}: {exc}") from exc
        dl_ratio = grammar_dl(grammar) / graph_dl(original)
    report = compare_report(original, generated, dl_ratio=dl_ratio)
    columns = ["name", "nodes", "edges", "lambda_distance", *CENSUS_KEYS]
    os.makedirs(args.out, exist_ok=True)
    out_path = os.path.join(args.out, "report.csv")
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        if report["dl_ratio"] is not None:
            fh.write(f"# dl_ratio={report['dl_ratio']:.6f}\n")
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        for row in [*report["rows"], report["mean"]]:
            writer.writerow({k: (f"{v:.6f}" if isinstance(v, float) else v) for k, v in row.items()})
    print(f"wrote {out_path} ({len(report['rows'])} graphs + mean)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cnrg", description="Clustering-based node replacement grammars")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ex = sub.add_parser("extract", help="extract a grammar from an edge list")
    p_ex.add_argument("--input", required=True)
    p_ex.add_argument("--clustering", choices=CLUSTERINGS, default="louvain")
    p_ex.add_argument("--policy", choices=POLICIES, default="greedy-level-dl")
    p_ex.add_argument("--mu", type=int, default=4)
    p_ex.add_argument("--seed", type=int, default=0)
    p_ex.add_argument("--out", required=True)
    p_ex.set_defaults(func=cmd_extract)

    p_gen = sub.add_parser("generate", help="generate graphs from a grammar file")
    p_gen.add_argument("--grammar", required=True)
    p_gen.add_argument("--count", type=int, default=5)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--max-size-mult", type=float, default=10.0)
    p_gen.add_argument("--collapse-multiedges", choices=("on", "off"), default="on")
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_generate)

    p_ev = sub.add_parser("evaluate", help="compare generated graphs against the original")
    p_ev.add_argument("--input", required=True)
    p_ev.add_argument("--generated", required=True)
    p_ev.add_argument("--grammar", default=None)
    p_ev.add_argument("--out", required=True)
    p_ev.set_defaults(func=cmd_evaluate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "mu", None) is not None and not 2 <= args.mu <= 10:
        print(f"error: --mu must be in [2, 10], got {args.mu}", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "count", None) is not None and args.count < 0:
        print(f"error: --count must be >= 0, got {args.count}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GrammarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GRAMMAR
    except (GenerationError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVALUATION


def run() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    run()
