"""Monte Carlo decision and optimisation algorithms for graph motif problems.

* :func:`decide_max_motif` -- is there a connected ``k``-set whose colors
  form a sub-multiset of the motif (single or list coloring)?
* :func:`decide_closest_motif` / :func:`min_edit_cost` -- weighted edit
  distance between the motif and the colors of a connected ``k``-set.

A NO answer is always correct.  A YES-instance is detected with
probability at least 1/2 per trial when ``2^b >= 6k``; at the default
``b = 64`` one trial fails with probability below ``3k / 2^64``.
"""
from __future__ import annotations

import secrets
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InstanceError, ParameterError
from .gf2 import FieldParams, params_for_k
from .graph import CostSpec, MotifInstance, preprocess
from .sieve import (
    CostTables,
    ShadeTable,
    SieveAssignment,
    build_u_table_constrained,
    build_u_table_cost,
    build_u_table_list,
    inner_sums,
    walk_sieve,
)

DEFAULT_TRIALS = 20


@dataclass(frozen=True)
class Decision:
    answer: bool
    trials_run: int
    seed: int
    achieved_cost: int | None = None
    trial_costs: tuple[int | None, ...] = ()

    @property
    def label(self) -> str:
        return "YES" if self.answer else "NO"


@dataclass(frozen=True)
class EditParameters:
    """Untouched / substituted / insert-delete-paired counts of an edit sequence."""

    k_u: int
    k_s: int
    k_id: int

    @classmethod
    def from_degrees(cls, k: int, k_s: int, k_id: int) -> EditParameters:
        return cls(k - k_s - k_id, k_s, k_id)


@dataclass(frozen=True)
class BivariateCostPoly:
    """``coeff[a][b]`` is the coefficient of ``eta_S^a eta_ID^b``."""

    coeff: tuple[tuple[int, ...], ...]

    def present(self) -> list[tuple[int, int]]:
        return [(a, b) for a, row in enumerate(self.coeff) for b, c in enumerate(row) if c]

    def evaluate(self, field: FieldParams, eta_s: int, eta_id: int) -> int:
        acc = 0
        for a, row in enumerate(self.coeff):
            for b, c in enumerate(row):
                if c:
                    acc ^= field.mul(c, field.mul(field.pow(eta_s, a), field.pow(eta_id, b)))
        return acc


def _seed(seed: int | None) -> int:
    return secrets.randbits(63) if seed is None else int(seed)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial, derived from ``(seed, trial)``."""
    return np.random.default_rng([seed, trial])


def _field(inst: MotifInstance, field: FieldParams | int | None) -> FieldParams:
    if field is None or isinstance(field, int):
        return params_for_k(inst.k, field)
    if field.order < 6 * inst.k:
        raise ParameterError(f"2^{field.b} < 6k = {6 * inst.k}: field too small for k={inst.k}")
    return field


# ---------------------------------------------------------------------------
# maximum / exact / list motif


def decide_max_motif(
    inst: MotifInstance,
    trials: int = DEFAULT_TRIALS,
    field: FieldParams | int | None = None,
    seed: int | None = None,
    threads: int = 1,
) -> Decision:
    """Maximum Graph Motif; list-colored instances use the list ``u`` table."""
    if trials < 1:
        raise ParameterError("trials must be positive")
    inst = preprocess(inst)
    field = _field(inst, field)
    seed = _seed(seed)
    if sum(inst.motif) < inst.k:
        return Decision(False, 0, seed)
    shades = ShadeTable.build(inst)
    build = build_u_table_list if inst.list_coloring else build_u_table_constrained
    for t in range(trials):
        assign = SieveAssignment.draw(inst, shades, field, trial_rng(seed, t))
        u = build(inst, shades, assign, field)
        if walk_sieve(inst.graph, inst.k, u, assign.y, field, threads):
            return Decision(True, t + 1, seed)
    return Decision(False, trials, seed)


def exact_match_mode(inst: MotifInstance) -> MotifInstance:
    """Validate ``|M| = k``, under which a sub-multiset match is an exact match."""
    if inst.motif_size != inst.k:
        raise InstanceError(f"exact matching needs |M| = k, got |M| = {inst.motif_size}, k = {inst.k}")
    return inst


def decide_exact_motif(inst: MotifInstance, **kwargs) -> Decision:
    return decide_max_motif(exact_match_mode(inst), **kwargs)


# ---------------------------------------------------------------------------
# closest motif


def interpolation_points(k: int) -> list[int]:
    """Field elements with bit patterns 0, 1, ..., k."""
    return list(range(k + 1))


def lagrange_basis(points: Sequence[int], field: FieldParams) -> list[list[int]]:
    """``basis[a][r]``: coefficient of ``x^r`` in the Lagrange polynomial of ``points[a]``."""
    if len(set(points)) != len(points):
        raise ParameterError("interpolation points must be pairwise distinct")
    basis = []
    for a, pa in enumerate(points):
        num = [1]
        denom = 1
        for c, pc in enumerate(points):
            if c == a:
                continue
            # num *= (x + pc); subtraction is addition in characteristic 2
            num = [0] + num
            for r in range(len(num) - 1):
                num[r] ^= field.mul(num[r + 1], pc)
            denom = field.mul(denom, pa ^ pc)
        scale = field.inv(denom)
        basis.append([field.mul(c, scale) for c in num])
    return basis


def lagrange_interpolate_2d(
    points_s: Sequence[int],
    points_id: Sequence[int],
    values: Sequence[Sequence[int]],
    field: FieldParams,
) -> BivariateCostPoly:
    """Recover the polynomial with ``values[a][b] = Q(points_s[a], points_id[b])``.

    Exact when ``Q`` has degree below ``len(points_s)`` in the first and
    below ``len(points_id)`` in the second indeterminate.
    """
    bs = lagrange_basis(points_s, field)
    bi = lagrange_basis(points_id, field)
    ns, ni = len(points_s), len(points_id)
    # contract the second axis first: half[a][s] = sum_b bi[b][s] values[a][b]
    half = [[0] * ni for _ in range(ns)]
    for a in range(ns):
        for b in range(ni):
            val = values[a][b]
            if val:
                for s in range(ni):
                    half[a][s] ^= field.mul(bi[b][s], val)
    coeff = [[0] * ni for _ in range(ns)]
    for a in range(ns):
        for r in range(ns):
            w = bs[a][r]
            if w:
                for s in range(ni):
                    coeff[r][s] ^= field.mul(w, half[a][s])
    return BivariateCostPoly(tuple(tuple(row) for row in coeff))


def cost_polynomial(
    inst: MotifInstance,
    shades: ShadeTable,
    assign: SieveAssignment,
    costs: CostTables,
    field: FieldParams,
    points_s: Sequence[int],
    points_id: Sequence[int],
    threads: int = 1,
) -> BivariateCostPoly:
    """Sieve at every grid point and interpolate the result in ``(eta_S, eta_ID)``."""
    inner = inner_sums(shades, assign, field)
    values = []
    for es in points_s:
        row = []
        for eid in points_id:
            u = build_u_table_cost(inst, shades, assign, costs.at(es, eid), field, inner=inner)
            row.append(walk_sieve(inst.graph, inst.k, u, assign.y, field, threads))
        values.append(row)
    return lagrange_interpolate_2d(points_s, points_id, values, field)


def _closest_trials(inst, costs, trials, field, seed, threads, stop_at):
    if trials < 1:
        raise ParameterError("trials must be positive")
    if inst.list_coloring:
        raise InstanceError("the closest variant needs a single coloring")
    raw_size = inst.motif_size
    inst = preprocess(inst)
    field = _field(inst, field)
    if field.order < inst.k + 1:
        raise ParameterError("field has fewer than k + 1 interpolation points")
    seed = _seed(seed)
    shades = ShadeTable.build(inst, star=True)
    base = CostTables.closest(inst)
    pts = interpolation_points(inst.k)
    best = None
    per_trial = []
    for t in range(trials):
        assign = SieveAssignment.draw(inst, shades, field, trial_rng(seed, t))
        poly = cost_polynomial(inst, shades, assign, base, field, pts, pts, threads)
        cost = min((costs.parameterized_cost(ks, kid, raw_size, inst.k) for ks, kid in poly.present()), default=None)
        per_trial.append(cost)
        if cost is not None and (best is None or cost < best):
            best = cost
        if stop_at is not None and best is not None and best <= stop_at:
            break
    return best, len(per_trial), seed, tuple(per_trial)


def decide_closest_motif(
    inst: MotifInstance,
    costs: CostSpec | None = None,
    trials: int = DEFAULT_TRIALS,
    field: FieldParams | int | None = None,
    seed: int | None = None,
    threads: int = 1,
) -> Decision:
    """Closest Graph Motif: is some connected ``k``-set within edit cost ``tau``?

    ``achieved_cost`` is the smallest certified cost seen before stopping.
    """
    costs = costs or inst.costs
    if costs is None:
        raise InstanceError("closest variant needs a CostSpec")
    best, run, seed, per_trial = _closest_trials(inst, costs, trials, field, seed, threads, stop_at=costs.tau)
    return Decision(best is not None and best <= costs.tau, run, seed, best, per_trial)


def min_edit_cost(
    inst: MotifInstance,
    costs: CostSpec | None = None,
    trials: int = DEFAULT_TRIALS,
    field: FieldParams | int | None = None,
    seed: int | None = None,
    threads: int = 1,
) -> Decision:
    """Minimum certified edit cost over all trials (``tau`` is ignored).

    Every reported cost is achieved by some connected ``k``-set; it is the
    true minimum with probability at least 1/2 per trial.
    """
    costs = costs or inst.costs
    if costs is None:
        raise InstanceError("closest variant needs a CostSpec")
    best, run, seed, per_trial = _closest_trials(inst, costs, trials, field, seed, threads, stop_at=None)
    return Decision(best is not None, run, seed, best, per_trial)


def min_add_spec(d: int, inst: MotifInstance) -> CostSpec:
    """Costs under which the closest variant answers Min-Add with budget ``d``."""
    if d < 0:
        raise ParameterError("d must be nonnegative")
    if inst.motif_size > inst.k:
        raise InstanceError(f"Min-Add needs |M| <= k, got |M| = {inst.motif_size}, k = {inst.k}")
    return CostSpec(sigma_s=d + 1, sigma_i=1, sigma_d=d + 1, tau=d)


def min_substitute_spec(d: int, inst: MotifInstance) -> CostSpec:
    """Costs under which the closest variant answers Min-Substitute with budget ``d``."""
    if d < 0:
        raise ParameterError("d must be nonnegative")
    if inst.motif_size != inst.k:
        raise InstanceError(f"Min-Substitute needs |M| = k, got |M| = {inst.motif_size}, k = {inst.k}")
    return CostSpec(sigma_s=1, sigma_i=d + 1, sigma_d=d + 1, tau=d)


def decide_min_add(inst: MotifInstance, d: int, **kwargs) -> Decision:
    return decide_closest_motif(inst, min_add_spec(d, inst), **kwargs)


def decide_min_substitute(inst: MotifInstance, d: int, **kwargs) -> Decision:
    return decide_closest_motif(inst, min_substitute_spec(d, inst), **kwargs)


def subsumption_detects(
    inst: MotifInstance,
    field: FieldParams | int | None = None,
    seed: int | None = None,
    trial: int = 0,
) -> bool:
    """One trial of the single-indeterminate cost sieve with own-color cost 0, others 1.

    Returns whether the ``eta^0`` coefficient is nonzero, which detects
    the same instances as :func:`decide_max_motif`.
    """
    inst = preprocess(inst)
    field = _field(inst, field)
    seed = _seed(seed)
    shades = ShadeTable.build(inst)
    assign = SieveAssignment.draw(inst, shades, field, trial_rng(seed, trial))
    poly = cost_polynomial(inst, shades, assign, CostTables.subsumption(inst), field, interpolation_points(inst.k), [0])
    return poly.coeff[0][0] != 0
