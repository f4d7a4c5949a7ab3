"""Acceptance gate: one test per criterion, each recording a pass/fail line.

The lines are printed as each test finishes and again in the terminal
summary at the end of the run.
"""
import itertools
import os
import time
from collections import Counter

import numpy as np
import pytest
from scipy import stats

from conftest import record_criterion
from motifsieve.bench import median_ratio, time_sweep
from motifsieve.gf2 import FieldParams, minimal_bits
from motifsieve.graph import CostSpec, make_instance, random_connected_graph, random_instance
from motifsieve.motif import decide_max_motif, min_edit_cost
from motifsieve.oracle import (
    MODES,
    brute_decide_closest,
    brute_decide_max_motif,
    edit_distance,
    edit_distance_bfs,
    symbolic_sieve_check,
    witness_predicate,
)
from motifsieve.reductions import brute_set_cover, random_set_cover, reduce_two_colors, reduce_unique_colors


def report(capsys, number, passed, detail, elapsed, budget):
    ok = passed and elapsed < budget
    line = f"{detail}; {elapsed:.1f} s (budget {budget} s)"
    record_criterion(number, ok, line)
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {line}")
    assert passed, detail
    assert elapsed < budget, f"took {elapsed:.1f} s, budget {budget} s"


# -- 1 ----------------------------------------------------------------------


def _mul_table(f):
    q = f.order
    a, b = np.meshgrid(np.arange(q, dtype=np.uint64), np.arange(q, dtype=np.uint64), indexing="ij")
    return f.mul_array(a, b).astype(np.int64)


def _vector_pow(f, x, e):
    result = np.ones_like(x)
    while e:
        if e & 1:
            result = f.mul_array(result, x)
        x = f.mul_array(x, x)
        e >>= 1
    return result


def test_criterion_1_field_axioms(capsys):
    t0 = time.perf_counter()
    failures = []
    for b in range(1, 9):
        f = FieldParams.of_bits(b)
        q = f.order
        T = _mul_table(f)
        ref = np.array([[f.mul(x, y) for y in range(q)] for x in range(q)])
        el = np.arange(q)
        checks = {
            "kernel=reference": np.array_equal(T, ref),
            "commutative": np.array_equal(T, T.T),
            "identity": np.array_equal(T[:, 1], el) and not T[:, 0].any(),
            "a+a=0": not (el ^ el).any(),
            "inverse": all(T[x, f.inv(x)] == 1 for x in range(1, q)),
            # all q^3 triples
            "associative": np.array_equal(T[T[:, :, None], el[None, None, :]], T[el[:, None, None], T[None, :, :]]),
            "distributive": np.array_equal(
                T[el[:, None, None], el[None, :, None] ^ el[None, None, :]],
                T[:, :, None] ^ T[:, None, :],
            ),
        }
        failures += [f"b={b}:{name}" for name, ok in checks.items() if not ok]
    for b in (16, 32, 64):
        f = FieldParams.of_bits(b)
        rng = np.random.default_rng([1, b])
        x, y, z = (f.random_array(rng, 100_000) for _ in range(3))
        m = f.mul_array
        nz = x[x != 0]
        one = np.ones_like(x)
        checks = {
            "commutative": np.array_equal(m(x, y), m(y, x)),
            "associative": np.array_equal(m(m(x, y), z), m(x, m(y, z))),
            "distributive": np.array_equal(m(x, y ^ z), m(x, y) ^ m(x, z)),
            "identity": np.array_equal(m(x, one), x) and not m(x, np.zeros_like(x)).any(),
            "a+a=0": not (x ^ x).any(),
            "inverse": bool((m(nz, _vector_pow(f, nz.copy(), f.order - 2)) == 1).all()),
            "reference": all(int(m(x[:200], y[:200])[i]) == f.mul(int(x[i]), int(y[i])) for i in range(200)),
        }
        failures += [f"b={b}:{name}" for name, ok in checks.items() if not ok]
    elapsed = time.perf_counter() - t0
    report(capsys, 1, not failures, f"exhaustive b=1..8, 1e5 random triples b=16/32/64, failures={failures}", elapsed, 10)


# -- 2 ----------------------------------------------------------------------

# one labelled representative per isomorphism class of connected graphs
SMALL_GRAPHS = {
    1: [[]],
    2: [[(1, 2)]],
    3: [[(1, 2), (2, 3)], [(1, 2), (2, 3), (1, 3)]],
    4: [
        [(1, 2), (2, 3), (3, 4)],
        [(1, 2), (1, 3), (1, 4)],
        [(1, 2), (2, 3), (3, 4), (1, 4)],
        [(1, 2), (2, 3), (1, 3), (3, 4)],
        [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)],
        [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (2, 4)],
    ],
}


def _in_guard(inst, mode):
    shades = sum(inst.motif) + (inst.k if mode == "cost" else 0)
    return shades <= 4


def _enumerated_cases():
    for n, graphs in SMALL_GRAPHS.items():
        for edges in graphs:
            for coloring in itertools.product("ab", repeat=n):
                for k in range(1, min(n, 3) + 1):
                    for ma in range(5):
                        for mb in range(5 - ma):
                            inst = make_instance(n, edges, list(coloring), {"a": ma, "b": mb}, k)
                            for mode in MODES:
                                if mode == "unconstrained" and (ma, mb) != (0, 0):
                                    continue  # the motif plays no part
                                if _in_guard(inst, mode):
                                    yield inst, mode


def _random_cases(count, rng):
    made = 0
    while made < count:
        n = int(rng.integers(1, 5))
        k = int(rng.integers(1, min(n, 3) + 1))
        mode = MODES[made % len(MODES)]
        list_size = 2 if mode == "constrained" and made % 8 == 1 else 0
        inst = random_instance(rng, n, int(rng.integers(n - 1, n * (n - 1) // 2 + 1)), k, 3,
                               motif_size=int(rng.integers(0, 5)), list_size=list_size)
        if _in_guard(inst, mode):
            made += 1
            yield inst, mode


def test_criterion_2_symbolic_equivalence(capsys):
    t0 = time.perf_counter()
    total = mismatches = 0
    cases = itertools.chain(_enumerated_cases(), _random_cases(500, np.random.default_rng(2)))
    for inst, mode in cases:
        total += 1
        mismatches += symbolic_sieve_check(inst, mode) != witness_predicate(inst, mode)
    elapsed = time.perf_counter() - t0
    report(capsys, 2, mismatches == 0 and total > 500, f"{total} instance/mode checks, {mismatches} mismatches", elapsed, 120)


# -- 3 ----------------------------------------------------------------------


def _max_motif_instances(count, rng):
    for _ in range(count):
        k = int(rng.integers(1, 6))
        n = int(rng.integers(max(k, 2), 11))
        e = int(rng.integers(n - 1, min(20, n * (n - 1) // 2) + 1))
        yield random_instance(rng, n, e, k, int(rng.integers(1, 5)), motif_size=k + int(rng.integers(0, 2)))


def test_criterion_3_max_motif_oracle(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    mismatches = false_yes = n_no = 0
    for i, inst in enumerate(_max_motif_instances(500, rng)):
        truth = brute_decide_max_motif(inst)
        mismatches += decide_max_motif(inst, trials=20, field=64, seed=i).answer != truth
        if not truth:
            n_no += 1
            false_yes += sum(decide_max_motif(inst, trials=20, field=64, seed=10_000 + s).answer for s in range(50))
    elapsed = time.perf_counter() - t0
    report(capsys, 3, mismatches == 0 and false_yes == 0,
           f"500 instances ({n_no} NO), {mismatches} mismatches, {false_yes} YES among {n_no}x50 NO runs", elapsed, 300)


# -- 4 ----------------------------------------------------------------------


def test_criterion_4_one_sided_error(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    yes_instances = []
    while len(yes_instances) < 250:
        k = int(rng.integers(2, 6))
        n = int(rng.integers(k, 10))
        inst = random_instance(rng, n, int(rng.integers(n - 1, min(16, n * (n - 1) // 2) + 1)), k, 3)
        if brute_decide_max_motif(inst):
            yes_instances.append(inst)
    hits = pairs = 0
    for i, inst in enumerate(yes_instances):
        b = minimal_bits(inst.k)
        for s in range(5):
            hits += decide_max_motif(inst, trials=1, field=b, seed=1000 * i + s).answer
            pairs += 1
    rate = hits / pairs
    p = stats.binomtest(hits, pairs, 0.5, alternative="less").pvalue
    elapsed = time.perf_counter() - t0
    report(capsys, 4, pairs >= 1000 and rate >= 0.5 and p > 0.001,
           f"{hits}/{pairs} YES at minimal b, rate {rate:.3f}, H0 p>=1/2 not rejected (p={p:.3g})", elapsed, 300)


# -- 5 ----------------------------------------------------------------------


def test_criterion_5_closest_costs(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    mismatches = below = 0
    for i in range(300):
        k = int(rng.integers(1, 5))
        n = int(rng.integers(max(k, 2), 10))
        size = max(0, k + int(rng.integers(-2, 3)))
        costs = CostSpec(*map(int, rng.integers(0, 4, size=3)), tau=int(rng.integers(0, 6)))
        inst = random_instance(rng, n, int(rng.integers(n - 1, min(16, n * (n - 1) // 2) + 1)), k,
                               int(rng.integers(1, 5)), motif_size=size, costs=costs)
        truth = brute_decide_closest(inst).min_cost
        d = min_edit_cost(inst, trials=20, field=64, seed=i)
        mismatches += d.achieved_cost != truth
        below += sum(c is not None and c < truth for c in d.trial_costs)
    elapsed = time.perf_counter() - t0
    report(capsys, 5, mismatches == 0 and below == 0,
           f"300 instances, {mismatches} cost mismatches, {below} trials below the optimum", elapsed, 600)


# -- 6 ----------------------------------------------------------------------


def test_criterion_6_edit_distance(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    mismatches = 0
    for _ in range(10_000):
        sm = int(rng.integers(0, 9))
        sn = int(rng.integers(0, 9 - sm))
        M = Counter(str(c) for c in rng.choice(list("abc"), size=sm))
        N = Counter(str(c) for c in rng.choice(list("abc"), size=sn))
        costs = CostSpec(*map(int, rng.integers(0, 6, size=3)))
        mismatches += edit_distance(M, N, costs) != edit_distance_bfs(M, N, costs)
    elapsed = time.perf_counter() - t0
    report(capsys, 6, mismatches == 0, f"10000 multiset pairs, {mismatches} mismatches", elapsed, 120)


# -- 7 ----------------------------------------------------------------------


def test_criterion_7_reduction(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    bad = 0
    for _ in range(100):
        n, m, t = int(rng.integers(1, 7)), int(rng.integers(1, 6)), int(rng.integers(1, 4))
        sc = random_set_cover(n, m, t, rng)
        truth = brute_set_cover(sc)
        for inst in (reduce_unique_colors(sc), reduce_two_colors(sc)):
            bad += inst.k != n + t + 1 or brute_decide_max_motif(inst) != truth
    elapsed = time.perf_counter() - t0
    report(capsys, 7, bad == 0, f"100 set cover instances x 2 variants, {bad} disagreements", elapsed, 120)


# -- 8 / 9 ------------------------------------------------------------------

BENCH_GRAPH = random_connected_graph(50, 75, np.random.default_rng(8))
FIELD64 = FieldParams.of_bits(64)


def test_criterion_8_scaling(capsys):
    t0 = time.perf_counter()
    rows = [time_sweep(BENCH_GRAPH, k, FIELD64, threads=1, seed=8) for k in range(14, 21)]
    ratio = median_ratio(rows)
    elapsed = time.perf_counter() - t0
    times = ", ".join(f"{r.k}:{r.seconds:.2f}" for r in rows)
    report(capsys, 8, 1.7 <= ratio <= 2.4, f"median T(k+1)/T(k) = {ratio:.3f} over k=14..20 [{times}]", elapsed, 900)


def test_criterion_9_parallel(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    identical = True
    for i in range(5):
        inst = random_instance(rng, 10, 16, 5, 3, motif_size=6, costs=CostSpec(1, 2, 1, tau=2))
        runs = [(decide_max_motif(inst, seed=i, threads=t), min_edit_cost(inst, trials=3, seed=i, threads=t))
                for t in (1, 2, 8)]
        identical &= all(r == runs[0] for r in runs)
    rows = {t: time_sweep(BENCH_GRAPH, 20, FIELD64, threads=t, seed=9) for t in (1, 2, 8)}
    identical &= len({r.value for r in rows.values()}) == 1
    speedup = rows[1].seconds / rows[8].seconds
    elapsed = time.perf_counter() - t0
    report(capsys, 9, identical and speedup >= 4.8,
           f"results identical across 1/2/8 threads: {identical}; speedup at 8 threads, k=20: {speedup:.2f}x "
           f"(need >= 4.8; {os.cpu_count()} CPU(s) visible)", elapsed, 600)
