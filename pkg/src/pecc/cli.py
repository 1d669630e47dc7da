"""Command line: ``pecc solve | bench | render``."""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bench import BenchSpec, run_bench
from .container import AdjustConfig
from .framework import NoFeasibleSolution, SolveConfig, solve
from .gbo import GboConfig
from .energy import total_energy
from .instance import (DEFAULT_TOL, KNOWN_OPTIMA, BestKnownRegistry, check_feasibility, estimate_radius,
                       read_solution, write_solution)
from .partition import PartitionStrategy
from .render import render_svg
from .sed import SedConfig, sed_run

log = logging.getLogger("pecc")

SUMMARY_COLUMNS = ("run", "seed", "radius", "energy", "time_to_best_s", "feasible")
HIT_TOL = 1e-8


def default_k(n: int) -> int:
    return 3 if n <= 320 else 5


def run_seeds(seed: int, runs: int) -> list[int]:
    """Independent per-run seeds split off the base seed by run index."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(runs)]


@dataclass
class RunRecord:
    run: int
    seed: int
    radius: float
    energy: float
    time_to_best: float | None
    feasible: bool


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text}")
    return vals


def _strategy_list(text: str) -> list[PartitionStrategy]:
    try:
        return [PartitionStrategy(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"strategies are {', '.join(s.value for s in PartitionStrategy)}; got {text}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pecc", description="Pack equal unit circles into the smallest circle.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run independent seeded solves and summarize them")
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--radius", type=_positive_float, help="baseline radius (overrides the registry)")
    s.add_argument("--registry", type=Path, help="CSV of best-known radii (n,radius)")
    s.add_argument("--reference", type=_positive_float,
                   help="reference radius for the RR column (default: registry value)")
    cut = s.add_mutually_exclusive_group()
    cut.add_argument("--cutoff-s", type=_positive_float, default=None)
    cut.add_argument("--cutoff-cycles", type=int, default=None)
    s.add_argument("--runs", type=_positive_int, default=1)
    s.add_argument("--jobs", type=_positive_int, default=1)
    s.add_argument("--k", type=_positive_int, help="batch count (default 3 up to n=320, else 5)")
    s.add_argument("--partition", choices=[x.value for x in PartitionStrategy], default="sector")
    s.add_argument("--max-iter", type=_positive_int, default=5000)
    s.add_argument("--s-iter", type=_positive_int, default=500)
    s.add_argument("--l-cut", type=float, default=4.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out-dir", type=Path, default=Path("pecc_out"))
    s.add_argument("--decision", action="store_true",
                   help="only decide whether n circles fit at --radius (no container shrinking)")
    s.add_argument("--stop-at-reference", action="store_true",
                   help="end a run once it reaches the reference radius")

    b = sub.add_parser("bench", help="time GBO per (n, k, partition) cell and emit CSV")
    b.add_argument("--n", type=_int_list, required=True, help="comma-separated n values")
    b.add_argument("--k", type=_int_list, default=[1, 3, 5])
    b.add_argument("--partition", type=_strategy_list, default=[PartitionStrategy.SECTOR])
    b.add_argument("--runs", type=_positive_int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--max-iter", type=_positive_int, default=5000)
    b.add_argument("--l-cut", type=float, default=4.0)
    b.add_argument("--registry", type=Path)
    b.add_argument("--out", type=Path, help="CSV path (default: stdout)")

    r = sub.add_parser("render", help="draw a solution file as SVG")
    r.add_argument("solution", type=Path)
    r.add_argument("output", type=Path)
    r.add_argument("--eps", type=float, default=1e-10, help="contact slack")
    return p


def _load_registry(path: Path | None) -> BestKnownRegistry:
    if path is None:
        return KNOWN_OPTIMA
    return BestKnownRegistry.load(path)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _solve_one(n, R_b, cfg: SolveConfig, args, run: int, seed: int) -> RunRecord:
    rng = np.random.default_rng(seed)
    path = args.out_dir / f"run_{run:03d}.txt"
    if args.decision:
        res = sed_run(n, R_b, cfg.sed, rng)
        layout, R, t = res.layout, R_b, None
        write_solution(path, layout, R)
        log.info("run %d: energy %.3g", run, res.energy)
    else:
        try:
            rep = solve(n, R_b, cfg, rng)
        except NoFeasibleSolution as exc:
            log.warning("run %d: %s", run, exc)
            return RunRecord(run, seed, math.nan, math.nan, None, False)
        layout, R = rep.best.layout, rep.best.radius
        t = None if args.cutoff_cycles is not None else rep.time_to_best
        write_solution(path, layout, R)
    # everything reported comes from the file as written
    x, R = read_solution(path)
    return RunRecord(run, seed, R, total_energy(x, R), t, check_feasibility(x, R, DEFAULT_TOL).feasible)


def summarize(records: list[RunRecord], reference: float | None) -> dict:
    ok = [r for r in records if r.feasible]
    out = {"runs": len(records), "feasible": len(ok)}
    if not ok:
        return out
    radii = [r.radius for r in ok]
    best = min(radii)
    out["best"] = best
    out["mean"] = math.fsum(radii) / len(radii)
    out["hr"] = sum(abs(r - best) <= HIT_TOL for r in radii)
    if reference is not None:
        out["rr"] = sum(r <= reference + HIT_TOL for r in radii)
    times = [r.time_to_best for r in ok if r.time_to_best is not None]
    if times:
        out["time"] = math.fsum(times) / len(times)
    return out


def format_summary(n: int, stats: dict, reference: float | None, decision: bool) -> str:
    runs = stats["runs"]
    lines = [f"n                 {n}", f"runs              {runs}", f"feasible          {stats['feasible']}/{runs}"]
    if decision:
        return "\n".join(lines) + "\n"
    if "best" in stats:
        lines += [f"R_best            {stats['best']:.12f}", f"R_avg             {stats['mean']:.12f}"]
        if reference is not None:
            lines += [f"R_best - R*       {stats['best'] - reference:+.3e}", f"RR                {stats['rr']}/{runs}"]
        lines.append(f"HR                {stats['hr']}/{runs}")
        lines.append(f"time to best (s)  {stats['time']:.3f}" if "time" in stats else "time to best (s)  NA")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    n = args.n
    try:
        registry = _load_registry(args.registry)
    except (OSError, ValueError) as exc:
        print(f"pecc: cannot read registry: {exc}", file=sys.stderr)
        return 2
    known = registry.get(n)
    R_b = args.radius or known or estimate_radius(n)
    reference = args.reference or known
    if args.decision and args.radius is None:
        print("pecc: --decision needs --radius", file=sys.stderr)
        return 2
    k = min(args.k or default_k(n), n)
    try:
        gbo = GboConfig(k=k, strategy=args.partition, max_iter=args.max_iter, l_cut=args.l_cut)
        cutoff_s = args.cutoff_s if args.cutoff_s is not None or args.cutoff_cycles is not None else 60.0
        cfg = SolveConfig(
            cutoff_seconds=cutoff_s,
            cutoff_cycles=args.cutoff_cycles,
            sed=SedConfig(s_iter=args.s_iter, gbo=gbo),
            adjust=AdjustConfig(l_cut=args.l_cut),
            seed=args.seed,
            target_radius=reference if args.stop_at_reference else None,
        )
    except ValueError as exc:
        print(f"pecc: {exc}", file=sys.stderr)
        return 2
    args.out_dir.mkdir(parents=True, exist_ok=True)
    seeds = run_seeds(args.seed, args.runs)
    log.info("n=%d R_b=%.12f k=%d runs=%d", n, R_b, k, args.runs)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            futs = [pool.submit(_solve_one, n, R_b, cfg, args, i, s) for i, s in enumerate(seeds)]
            records = [f.result() for f in futs]
    else:
        records = [_solve_one(n, R_b, cfg, args, i, s) for i, s in enumerate(seeds)]

    with open(args.out_dir / "summary.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS)
        for r in records:
            t = "NA" if r.time_to_best is None else f"{r.time_to_best:.6f}"
            w.writerow([r.run, r.seed, _fmt(r.radius), _fmt(r.energy), t, int(r.feasible)])
    stats = summarize(records, None if args.decision else reference)
    text = format_summary(n, stats, None if args.decision else reference, args.decision)
    (args.out_dir / "summary.txt").write_text(text)
    sys.stdout.write(text)
    if args.decision:
        print("feasible" if stats["feasible"] else "infeasible")
    if not stats["feasible"]:
        print("pecc: no feasible solution found", file=sys.stderr)
        return 1
    return 0


def cmd_bench(args) -> int:
    try:
        registry = _load_registry(args.registry)
        spec = BenchSpec(args.n, args.k, args.partition, args.runs, args.seed, args.max_iter, args.l_cut)
    except (OSError, ValueError) as exc:
        print(f"pecc: {exc}", file=sys.stderr)
        return 2
    report = run_bench(spec, registry)
    for n, k, s in report.skipped:
        print(f"pecc: skipped n={n} k={k} {s} (k > n)", file=sys.stderr)
    text = report.to_csv()
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
    return 0


def cmd_render(args) -> int:
    try:
        x, R = read_solution(args.solution)
    except (OSError, ValueError) as exc:
        print(f"pecc: cannot read {args.solution}: {exc}", file=sys.stderr)
        return 2
    args.output.write_text(render_svg(x, R, args.eps))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    return {"solve": cmd_solve, "bench": cmd_bench, "render": cmd_render}[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
