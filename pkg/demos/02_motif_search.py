# %% a small colored network: which connected groups of 4 proteins match a motif?
from motifsieve import (
    brute_decide_max_motif,
    decide_max_motif,
    enumerate_connected_k_subsets,
    make_instance,
)

edges = [(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (6, 7), (3, 7), (5, 8)]
colors = ["kinase", "ligase", "kinase", "receptor", "ligase", "receptor", "kinase", "ligase"]
inst = make_instance(8, edges, colors, {"kinase": 2, "ligase": 1, "receptor": 1}, 4)

d = decide_max_motif(inst, seed=7)
print("sieve:", d.label, "after", d.trials_run, "trial(s), seed", d.seed)
print("oracle:", brute_decide_max_motif(inst))

# %% the witnesses the oracle sees
from collections import Counter

for K in enumerate_connected_k_subsets(inst.graph, 4):
    found = Counter(colors[u - 1] for u in K)
    if found == Counter({"kinase": 2, "ligase": 1, "receptor": 1}):
        print(sorted(K), dict(found))

# %% a motif nobody matches: the sieve never says YES, whatever the seed
strict = make_instance(8, edges, colors, {"kinase": 3, "receptor": 1}, 4)
print(brute_decide_max_motif(strict), {decide_max_motif(strict, seed=s).answer for s in range(20)})

# %% list colorings: each vertex may play one of several roles
lists = [["kinase"], ["ligase", "kinase"], ["receptor"], ["kinase", "receptor"]]
flexible = make_instance(4, [(1, 2), (2, 3), (3, 4)], lists, {"kinase": 2, "receptor": 2}, 4)
print("list variant:", decide_max_motif(flexible, seed=1).label, brute_decide_max_motif(flexible))

# %% at the smallest admissible field a single trial still succeeds at least half the time
from motifsieve import minimal_bits

b = minimal_bits(inst.k)
hits = sum(decide_max_motif(inst, trials=1, field=b, seed=s).answer for s in range(400))
print(f"GF(2^{b}), one trial: {hits}/400 YES")
