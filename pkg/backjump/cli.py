"""
Command line: solve a model file, generate instances, or benchmark engines.

Exit codes: 0 once a command ran to completion (whatever the solve status),
1 for usage errors, 2 when a model cannot be read.
"""
import argparse
import csv
import json
import logging
import sys
from typing import Optional, Sequence

from backjump.bench.runner import collect_instances, pairwise_speedups, run_bench, summarize, write_csv
from backjump.config import settings
from backjump.frontend.generators import generate
from backjump.frontend.parser import ModelParseError, load_model
from backjump.frontend.printer import print_model
from backjump.models.model import InvalidModelError, SolveGoal
from backjump.models.report import (
    CSV_FIELDS, Branching, Engine, EschemaMode, Goal, OutputFormat, RunReport, SearchResult,
)
from backjump.search.solver import SearchLimits, Solver

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2

ENGINE_CHOICES = [e.value for e in Engine]


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="backjump", description="Explanation-based backjumping CSP solver")
    parser.add_argument("--log-level", default=settings.log_level,
                        help="logging level for diagnostics on stderr")
    parser.add_argument("-v", "--verbose", action="store_true", help="shorthand for --log-level DEBUG")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p_solve = sub.add_parser("solve", help="solve one model file")
    p_solve.add_argument("file")
    p_solve.add_argument("--engine", choices=ENGINE_CHOICES, default=settings.default_engine.value)
    p_solve.add_argument("--all", action="store_true", help="enumerate every solution (std only)")
    p_solve.add_argument("--timeout", type=int, default=settings.default_timeout_ms, metavar="MS")
    p_solve.add_argument("--max-nodes", type=int, default=None)
    p_solve.add_argument("--branching", choices=[b.value for b in Branching],
                         default=settings.default_branching.value)
    p_solve.add_argument("--format", choices=[f.value for f in OutputFormat], default=settings.default_format.value)
    p_solve.add_argument("--eschema", choices=[m.value for m in EschemaMode], default=settings.eschema_mode.value)

    p_gen = sub.add_parser("gen", help="generate an instance")
    p_gen.add_argument("spec", help="queens:N | pigeon:P,H,K | randcsp:N,D,P1,P2[,SEED] | coloring:FILE,K")
    p_gen.add_argument("-o", "--output", default=None)

    p_bench = sub.add_parser("bench", help="run engines over a set of instances")
    p_bench.add_argument("sources", nargs="+", help="directories, model files or generator specs")
    p_bench.add_argument("--engines", default=",".join(ENGINE_CHOICES))
    p_bench.add_argument("--timeout", type=int, default=settings.default_timeout_ms, metavar="MS")
    p_bench.add_argument("--out", default=None, help="CSV report path (default: stdout)")
    p_bench.add_argument("--workers", type=int, default=settings.bench_workers)
    p_bench.add_argument("--branching", choices=[b.value for b in Branching],
                         default=settings.default_branching.value)
    p_bench.add_argument("--eschema", choices=[m.value for m in EschemaMode], default=settings.eschema_mode.value)
    return parser


def _configure_logging(args):
    level = "DEBUG" if args.verbose else str(args.log_level).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _write_human(result: SearchResult, report: RunReport, out):
    out.write(f"status: {report.status.value}\n")
    for solution in result.solutions or ([result.solution] if result.solution else []):
        out.write("  " + " ".join(f"{k}={v}" for k, v in solution.items()) + "\n")
    stats = result.stats
    out.write(f"engine: {report.engine.value}  nodes: {stats.nodes}  fails: {stats.fails}  "
              f"backjumps: {stats.backjumps}  max_jump: {stats.max_jump}  "
              f"peak_depth: {stats.peak_depth}\n")
    out.write(f"solutions: {stats.solutions}  explanations: {stats.explanations}  "
              f"events_visited: {stats.events_visited}  elapsed_ms: {stats.elapsed_ms}"
              f"{'  (limit reached)' if stats.timed_out else ''}\n")


def cmd_solve(args, out) -> int:
    try:
        model = load_model(args.file)
    except OSError as exc:
        raise _UsageError(f"cannot read {args.file}: {exc.strerror or exc}")
    # `--all` and a model ending in `solve all;` both ask for every solution
    goal = Goal.all if args.all or model.goal == SolveGoal.all else Goal.first
    engine = Engine(args.engine)
    if goal == Goal.all and engine != Engine.std:
        raise _UsageError("enumerating all solutions requires --engine std")
    solver = Solver(model, engine=engine, branching=Branching(args.branching), goal=goal,
                    limits=SearchLimits(timeout_ms=args.timeout, max_nodes=args.max_nodes),
                    eschema_mode=EschemaMode(args.eschema))
    result = solver.solve()
    report = RunReport.from_result(model.name or args.file, engine, result)
    if args.format == "json":
        data = report.json_dict()
        if goal == Goal.all:
            data["all_solutions"] = result.solutions
        out.write(json.dumps(data) + "\n")
    elif args.format == "csv":
        writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerow(report.csv_row())
    else:
        _write_human(result, report, out)
    return EXIT_OK


def cmd_gen(args, out) -> int:
    try:
        model = generate(args.spec)
    except (InvalidModelError, OSError) as exc:
        raise _UsageError(str(exc))
    text = print_model(model)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info("wrote %s", args.output)
    else:
        out.write(text)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    try:
        engines = [Engine(name.strip()) for name in args.engines.split(",") if name.strip()]
    except ValueError as exc:
        raise _UsageError(str(exc))
    if not engines:
        raise _UsageError("--engines is empty")
    try:
        models = collect_instances(args.sources)
    except (InvalidModelError, OSError) as exc:
        raise _UsageError(str(exc))
    df = run_bench(models, engines, args.timeout, Branching(args.branching),
                   EschemaMode(args.eschema), max(1, args.workers))
    if args.out:
        write_csv(df, args.out)
        summary_out = out
    else:
        df.to_csv(out, index=False, columns=CSV_FIELDS, lineterminator="\n")
        summary_out = sys.stderr
    summary_out.write("\n" + summarize(df).to_string(index=False) + "\n")
    speedups = pairwise_speedups(df)
    if not speedups.empty:
        summary_out.write("\n" + speedups.to_string(index=False) + "\n")
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "gen": cmd_gen, "bench": cmd_bench}


def run_cli(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args)
    try:
        return COMMANDS[args.command](args, out)
    except _UsageError as exc:
        sys.stderr.write(f"backjump: error: {exc}\n")
        return EXIT_USAGE
    except ModelParseError as exc:
        sys.stderr.write(f"backjump: parse error at {exc}\n")
        return EXIT_PARSE
    except InvalidModelError as exc:
        sys.stderr.write(f"backjump: invalid model: {exc}\n")
        return EXIT_PARSE


def main():
    sys.exit(run_cli())
