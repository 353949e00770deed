"""Command-line front end.

Subcommands: gen, run, stats-exit, stats-earlystop, theory, verify, bench.
Exit codes: 0 success, 1 validation error, 2 verification failure, 3 I/O
error.
"""

from __future__ import annotations

import argparse
import sys

from .batch import BatchConfig, batch_topk
from .bench import run_bench
from .datagen import DataGenSpec, Distribution, generate_matrix
from .errors import BadMagicError, RowTopKError, TruncatedFileError
from .experiments import early_stop_grid, exit_iteration_grid
from .io import load_matrix, save_matrix, save_result
from .manifest import emit_csv, write_manifest
from .metrics import exit_statistics
from .select import DEFAULT_HARD_CAP, SearchConfig
from .theory import TheoryParams, theory_report
from .verify import verify_grid

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFY_FAILED = 2
EXIT_IO = 3


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; 2 is reserved for
    # verification failures, so route parse errors through CliError instead.
    def error(self, message):
        raise CliError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError as exc:
        raise CliError(f"expected a comma-separated integer list, got {text!r}") from exc


def _workers(text: str):
    return text if text == "auto" else int(text)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rowtopk", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded matrix file")
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--cols", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--dist", choices=[d.value for d in Distribution], default="std-normal")
    g.add_argument("--out", required=True)

    r = sub.add_parser("run", help="run batch top-k over a matrix file")
    r.add_argument("--matrix", required=True)
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--mode", choices=["exact", "early-stop"], default="exact")
    r.add_argument("--epsilon-rel", type=float, default=0.0)
    r.add_argument("--max-iter", type=int, default=4)
    r.add_argument("--hard-cap", type=int, default=DEFAULT_HARD_CAP)
    r.add_argument("--workers", type=_workers, default="auto")
    r.add_argument("--out", required=True)

    se = sub.add_parser("stats-exit", help="exit-iteration statistics of the exact search")
    se.add_argument("--cols", type=int, required=True)
    se.add_argument("--k", type=_int_list, required=True, help="comma-separated k values")
    se.add_argument("--epsilon-rel", type=float, default=0.0)
    se.add_argument("--hard-cap", type=int, default=DEFAULT_HARD_CAP)
    se.add_argument("--trials", type=int, default=100_000)
    se.add_argument("--seed", type=int, default=0)
    se.add_argument("--workers", type=_workers, default=1)
    se.add_argument("--out", default=None)
    se.add_argument("--csv", action="store_true", help="echo CSV to stdout even with --out")

    ses = sub.add_parser("stats-earlystop", help="early-stop quality statistics")
    ses.add_argument("--cols", type=int, required=True)
    ses.add_argument("--k", type=_int_list, required=True)
    ses.add_argument("--max-iter", type=_int_list, required=True)
    ses.add_argument("--trials", type=int, default=100_000)
    ses.add_argument("--seed", type=int, default=0)
    ses.add_argument("--workers", type=_workers, default=1)
    ses.add_argument("--out", default=None)
    ses.add_argument("--csv", action="store_true")

    t = sub.add_parser("theory", help="closed-form iteration model")
    t.add_argument("--cols", type=_int_list, required=True)
    t.add_argument("--k", type=_int_list, required=True)
    t.add_argument("--mu", type=float, default=0.0)
    t.add_argument("--sigma", type=float, default=1.0)
    t.add_argument("--out", default=None)
    t.add_argument("--csv", action="store_true")

    v = sub.add_parser("verify", help="exact mode vs sort oracle over a grid")
    v.add_argument("--cols", type=_int_list, default=[1, 2, 7, 256, 1024])
    v.add_argument("--k", type=_int_list, default=None, help="override the per-M k grid")
    v.add_argument("--trials", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=_workers, default="auto")

    b = sub.add_parser("bench", help="wall-clock benchmark vs the sort baseline")
    b.add_argument("--rows", type=_int_list, required=True)
    b.add_argument("--cols", type=_int_list, required=True)
    b.add_argument("--k", type=_int_list, required=True)
    b.add_argument("--modes", default="exact,sort", help="comma list: exact,early-stop,sort")
    b.add_argument("--workers", type=_int_list, default=[1])
    b.add_argument("--repeats", type=int, default=5)
    b.add_argument("--max-iter", type=int, default=4)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", default=None)
    b.add_argument("--csv", action="store_true")
    return p


def _params(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "command"}


def _cmd_gen(args) -> int:
    spec = DataGenSpec(args.rows, args.cols, Distribution(args.dist), args.seed)
    save_matrix(generate_matrix(spec), args.out)
    write_manifest(args.out, "gen", _params(args))
    print(f"wrote {args.rows}x{args.cols} matrix to {args.out}")
    return EXIT_OK


def _cmd_run(args) -> int:
    matrix = load_matrix(args.matrix)
    if args.mode == "exact":
        search = SearchConfig.exact(epsilon_rel=args.epsilon_rel, hard_cap=args.hard_cap)
    else:
        search = SearchConfig.early_stop(max_iter=args.max_iter)
    res = batch_topk(matrix, BatchConfig(k=args.k, search=search, workers=args.workers))
    save_result(res, args.out)
    write_manifest(args.out, "run", _params(args))
    print(f"selected top-{args.k} of {matrix.shape[0]}x{matrix.shape[1]} -> {args.out}")
    return EXIT_OK


def _cmd_stats_exit(args) -> int:
    spec = DataGenSpec(n_rows=1, n_cols=args.cols, seed=args.seed)
    workers = 1 if args.workers == "auto" else args.workers
    grid = exit_iteration_grid(
        spec, args.k, args.epsilon_rel, args.trials,
        hard_cap=args.hard_cap, workers=workers,
    )
    hists = {k: exit_statistics(grid[k]) for k in args.k}
    top = max(max(h.counts) for h in hists.values())
    header = ["iteration"] + [f"cum_pct_k{k}" for k in args.k]
    rows = []
    for it in range(1, top + 1):
        row = [it]
        for k in args.k:
            h = hists[k]
            pct = max((p for i, p in h.cumulative_pct.items() if i <= it), default=0.0)
            row.append(f"{pct:.4f}")
        rows.append(row)
    rows.append(["mean"] + [f"{hists[k].mean_exit:.4f}" for k in args.k])
    emit_csv("exit-stats", header, rows, args.out, "stats-exit", _params(args), echo=args.csv)
    return EXIT_OK


def _cmd_stats_earlystop(args) -> int:
    spec = DataGenSpec(n_rows=1, n_cols=args.cols, seed=args.seed)
    workers = 1 if args.workers == "auto" else args.workers
    stats = early_stop_grid(spec, args.k, args.max_iter, args.trials, workers=workers)
    header = ["k", "max_iter", "e1_pct", "e2_pct", "hit_pct", "skipped"]
    rows = [
        [k, mi, f"{s.e1_pct:.4f}", f"{s.e2_pct:.4f}", f"{s.hit_pct:.4f}", s.skipped]
        for (k, mi), s in sorted(stats.items())
    ]
    emit_csv("earlystop-stats", header, rows, args.out, "stats-earlystop", _params(args), echo=args.csv)
    return EXIT_OK


def _cmd_theory(args) -> int:
    header = ["M", "k", "expected_thres", "borderline_delta", "initial_interval", "expected_iterations"]
    rows = []
    for m in args.cols:
        for k in args.k:
            if not 1 <= k < m:
                continue
            rep = theory_report(TheoryParams(M=m, k=k, mu=args.mu, sigma=args.sigma))
            rows.append([
                m, k, f"{rep.expected_thres:.10g}", f"{rep.borderline_delta:.10g}",
                f"{rep.initial_interval:.10g}", f"{rep.expected_iterations:.10g}",
            ])
    if not rows:
        raise CliError("no valid (M, k) pairs (need 1 <= k < M)")
    emit_csv("theory", header, rows, args.out, "theory", _params(args), echo=args.csv)
    return EXIT_OK


def _cmd_verify(args) -> int:
    k_lists = {m: [k for k in args.k if 1 <= k <= m] for m in args.cols} if args.k else None
    report = verify_grid(
        args.cols, args.trials, args.seed, k_lists=k_lists, workers=args.workers
    )
    print(f"verify: {len(report.cases)} cases x {report.trials_per_case} trials, seed={report.seed}, {report.elapsed_s:.1f}s")
    if report.ok:
        print("verify: PASS (no multiset mismatches)")
        return EXIT_OK
    for mm in report.mismatches:
        print(f"verify: MISMATCH M={mm.n_cols} k={mm.k} style={mm.style} row={mm.row} seed={mm.seed}")
    print(f"verify: FAIL ({len(report.mismatches)} mismatches shown)")
    return EXIT_VERIFY_FAILED


def _cmd_bench(args) -> int:
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    points = run_bench(
        args.rows, args.cols, args.k, modes, args.workers,
        repeats=args.repeats, seed=args.seed, max_iter=args.max_iter,
    )
    header = ["N", "M", "k", "mode", "workers", "median_ms", "min_ms"]
    rows = [
        [p.n_rows, p.n_cols, p.k, p.mode, p.workers, f"{p.median_ms:.3f}", f"{p.min_ms:.3f}"]
        for p in points
    ]
    emit_csv("bench", header, rows, args.out, "bench", _params(args), echo=args.csv)
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "run": _cmd_run,
    "stats-exit": _cmd_stats_exit,
    "stats-earlystop": _cmd_stats_earlystop,
    "theory": _cmd_theory,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (BadMagicError, TruncatedFileError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (RowTopKError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
