# %% closest motif: how many edits separate the best connected group from the motif?
from motifsieve import (
    CostSpec,
    brute_decide_closest,
    decide_min_add,
    decide_min_substitute,
    make_instance,
    min_edit_cost,
)

edges = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (3, 6)]
colors = ["a", "b", "a", "c", "c", "b"]
motif = {"a": 3, "b": 1}          # no connected 4-set has three a's
costs = CostSpec(sigma_s=2, sigma_i=1, sigma_d=2)
inst = make_instance(6, edges, colors, motif, 4, costs=costs)

d = min_edit_cost(inst, seed=3)
print("sieve minimum edit cost:", d.achieved_cost)
print("oracle:", brute_decide_closest(inst).min_cost)
print("best cost per trial:", d.trial_costs[:5], "...")

# %% costs change the answer: cheap substitutions vs cheap insert/delete
for s in (1, 2, 5):
    c = CostSpec(sigma_s=s, sigma_i=2, sigma_d=2)
    print(f"sigma_S={s}:", min_edit_cost(inst, c, seed=0).achieved_cost, brute_decide_closest(inst, c).min_cost)

# %% Min-Substitute: |M| = k, only substitutions allowed
for budget in range(3):
    print("substitutions <=", budget, decide_min_substitute(inst, budget, seed=1).label)

# %% Min-Add: a partial motif, grow it by insertions only
partial = make_instance(6, edges, colors, {"a": 2}, 4)
for budget in range(3):
    print("insertions <=", budget, decide_min_add(partial, budget, seed=1).label)
