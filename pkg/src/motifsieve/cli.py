"""Command-line front end: ``motifsieve solve|oracle|gen-setcover|reduce|bench``.

Exit codes: 0 for YES, 1 for NO, 2 for usage, parse or parameter errors.
Every decision also prints a single ``RESULT key=value ...`` line.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import motif, oracle
from .bench import median_ratio, time_sweep
from .errors import MotifError
from .gf2 import params_for_k
from .graph import CostSpec, MotifInstance, parse_instance, random_connected_graph, serialize_instance
from .reductions import parse_setcover, random_set_cover, reduce, serialize_setcover
from .sieve import default_threads

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2
VARIANTS = ("max", "exact", "closest", "min-add", "min-sub", "list")


@dataclass(frozen=True)
class RunReport:
    decision: bool
    achieved_cost: int | None
    trials: int
    seed: int | None
    field_bits: int | None
    wall: float
    threads: int
    digest: str

    def record(self) -> str:
        fields = {
            "decision": "YES" if self.decision else "NO",
            "cost": "NA" if self.achieved_cost is None else self.achieved_cost,
            "trials": self.trials,
            "seed": "NA" if self.seed is None else self.seed,
            "field_bits": "NA" if self.field_bits is None else self.field_bits,
            "wall": f"{self.wall:.6f}",
            "threads": self.threads,
            "digest": self.digest,
        }
        return "RESULT " + " ".join(f"{k}={v}" for k, v in fields.items())

    def human(self) -> str:
        lines = [f"decision: {'YES' if self.decision else 'NO'}"]
        if self.achieved_cost is not None:
            lines.append(f"achieved cost: {self.achieved_cost}")
        if self.seed is not None:
            lines.append(f"trials run: {self.trials} (seed {self.seed}, GF(2^{self.field_bits}))")
        lines.append(f"wall time: {self.wall:.3f} s on {self.threads} thread(s)")
        return "\n".join(lines)

    @property
    def exit_code(self) -> int:
        return EXIT_YES if self.decision else EXIT_NO


class UsageError(MotifError):
    pass


def _read_instance(path: str) -> MotifInstance:
    if path == "-":
        return parse_instance(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh)


def _edit_costs(inst: MotifInstance, variant: str, d: int | None) -> CostSpec:
    if variant == "closest":
        if inst.costs is None:
            raise UsageError("the closest variant needs 'costs' and 'tau' lines in the instance")
        return inst.costs
    if d is None:
        raise UsageError(f"--variant {variant} needs --d")
    return motif.min_add_spec(d, inst) if variant == "min-add" else motif.min_substitute_spec(d, inst)


def _check_variant(inst: MotifInstance, variant: str) -> MotifInstance:
    if variant == "list" and not inst.list_coloring:
        raise UsageError("--variant list needs an instance with 'colors' lines")
    if variant != "list" and inst.list_coloring:
        raise UsageError("list-colored instance: use --variant list")
    if variant == "exact":
        motif.exact_match_mode(inst)
    return inst


def cmd_solve(args: argparse.Namespace) -> RunReport:
    inst = _check_variant(_read_instance(args.file), args.variant)
    threads = args.threads or default_threads()
    kw = dict(trials=args.trials, field=args.field_bits, seed=args.seed, threads=threads)
    t0 = time.perf_counter()
    if args.variant in ("max", "exact", "list"):
        dec = motif.decide_max_motif(inst, **kw)
        answer, cost = dec.answer, None
    else:
        costs = _edit_costs(inst, args.variant, args.d)
        if args.report_cost:
            dec = motif.min_edit_cost(inst, costs, **kw)
            answer = dec.achieved_cost is not None and dec.achieved_cost <= costs.tau
            cost = dec.achieved_cost
        else:
            dec = motif.decide_closest_motif(inst, costs, **kw)
            answer, cost = dec.answer, dec.achieved_cost if dec.answer else None
    wall = time.perf_counter() - t0
    return RunReport(answer, cost, dec.trials_run, dec.seed, args.field_bits, wall, threads, inst.digest())


def cmd_oracle(args: argparse.Namespace) -> RunReport:
    inst = _check_variant(_read_instance(args.file), args.variant)
    t0 = time.perf_counter()
    if args.variant in ("max", "exact", "list"):
        answer, cost = oracle.brute_decide_max_motif(inst), None
    else:
        res = oracle.brute_decide_closest(inst, _edit_costs(inst, args.variant, args.d))
        answer, cost = res.answer, res.min_cost
    return RunReport(answer, cost, 0, None, None, time.perf_counter() - t0, 1, inst.digest())


def cmd_gen_setcover(args: argparse.Namespace) -> str:
    rng = np.random.default_rng(args.seed)
    sc = random_set_cover(args.universe, args.sets, args.t, rng, args.density)
    inst = reduce(sc, args.variant)
    header = (
        f"# set cover reduction: variant={args.variant} universe={sc.n} sets={sc.m} t={sc.t} "
        f"seed={args.seed} density={args.density}\n"
        f"# k = n + t + 1 = {inst.k}\n"
    )
    body = "".join(f"# {line}\n" for line in serialize_setcover(sc).splitlines())
    return header + body + serialize_instance(inst)


def cmd_reduce(args: argparse.Namespace) -> str:
    with open(args.file, encoding="utf-8") as fh:
        sc = parse_setcover(fh)
    inst = reduce(sc, args.variant)
    return f"# k = n + t + 1 = {inst.k}\n" + serialize_instance(inst)


def _bench_graph(source: str):
    """``random:N:E[:SEED]`` or a path to an instance file whose graph is used."""
    if source.startswith("random:"):
        parts = source.split(":")[1:]
        if len(parts) not in (2, 3):
            raise UsageError("random graph argument is random:N:E[:SEED]")
        try:
            n, e, *rest = (int(p) for p in parts)
        except ValueError:
            raise UsageError("random graph fields must be integers") from None
        return random_connected_graph(n, e, np.random.default_rng(rest[0] if rest else 0))
    return _read_instance(source).graph


def cmd_bench(args: argparse.Namespace, out) -> int:
    if not 1 <= args.kmin <= args.kmax:
        raise UsageError("need 1 <= kmin <= kmax")
    graph = _bench_graph(args.graph)
    threads = args.threads or default_threads()
    field = params_for_k(args.kmax, args.field_bits)
    rows = []
    print(f"graph: n={graph.n} e={graph.e}  field: GF(2^{field.b})  threads: {threads}", file=out)
    print(f"{'k':>4} {'seconds':>12}", file=out)
    for k in range(args.kmin, args.kmax + 1):
        row = time_sweep(graph, k, field, threads, seed=args.seed, repeats=args.repeats)
        rows.append(row)
        print(f"{k:>4} {row.seconds:>12.4f}", file=out, flush=True)
    ratio = median_ratio(rows)
    fields = {"kmin": args.kmin, "kmax": args.kmax, "threads": threads,
              "median_ratio": "NA" if ratio is None else f"{ratio:.4f}"}
    if ratio is not None:
        print(f"median T(k+1)/T(k): {ratio:.3f}", file=out)
    if threads > 1:
        base = time_sweep(graph, args.kmax, field, 1, seed=args.seed, repeats=args.repeats)
        speedup = base.seconds / rows[-1].seconds
        print(f"speedup at k={args.kmax} vs 1 thread: {speedup:.2f}x", file=out)
        fields["speedup"] = f"{speedup:.4f}"
        fields["identical"] = int(base.value == rows[-1].value)
    print("RESULT " + " ".join(f"{k}={v}" for k, v in fields.items()), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="motifsieve", description="Graph motif solver by algebraic sieving over GF(2^b).")
    sub = p.add_subparsers(dest="command", required=True)

    def decision_flags(sp):
        sp.add_argument("file", help="instance file ('-' for stdin)")
        sp.add_argument("--variant", choices=VARIANTS, default="max")
        sp.add_argument("--d", type=int, default=None, help="edit budget for min-add / min-sub")

    s = sub.add_parser("solve", help="randomized sieve decision")
    decision_flags(s)
    s.add_argument("--trials", type=int, default=motif.DEFAULT_TRIALS)
    s.add_argument("--field-bits", type=int, default=64)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--threads", type=int, default=None, help="default: all cores")
    s.add_argument("--report-cost", action="store_true", help="run every trial and report the minimum certified cost")

    o = sub.add_parser("oracle", help="brute-force decision on small instances")
    decision_flags(o)

    g = sub.add_parser("gen-setcover", help="random Set Cover instance, reduced to a motif instance")
    g.add_argument("--universe", type=int, required=True)
    g.add_argument("--sets", type=int, required=True)
    g.add_argument("--t", type=int, required=True)
    g.add_argument("--variant", choices=("unique", "twocolor"), default="unique")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--density", type=float, default=0.5)

    r = sub.add_parser("reduce", help="reduce a 'setcover v1' file to a motif instance")
    r.add_argument("file")
    r.add_argument("--variant", choices=("unique", "twocolor"), default="unique")

    b = sub.add_parser("bench", help="time one full subset sweep per k")
    b.add_argument("--kmin", type=int, required=True)
    b.add_argument("--kmax", type=int, required=True)
    b.add_argument("--graph", required=True, help="instance file or random:N:E[:SEED]")
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--field-bits", type=int, default=64)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=int, default=1)
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    if getattr(args, "threads", None) is not None and args.threads < 1:
        print("motifsieve: error: --threads must be positive", file=err)
        return EXIT_ERROR
    try:
        if args.command in ("solve", "oracle"):
            report = (cmd_solve if args.command == "solve" else cmd_oracle)(args)
            print(report.human(), file=out)
            print(report.record(), file=out)
            return report.exit_code
        if args.command == "gen-setcover":
            out.write(cmd_gen_setcover(args))
            return 0
        if args.command == "reduce":
            out.write(cmd_reduce(args))
            return 0
        return cmd_bench(args, out)
    except (MotifError, ValueError, OSError) as exc:
        print(f"motifsieve: error: {exc}", file=err)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
