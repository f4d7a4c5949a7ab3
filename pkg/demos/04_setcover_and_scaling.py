# %% Set Cover as a motif problem: k = n + t + 1 forces one set per budget slot
import numpy as np

from motifsieve import (
    SetCoverInstance,
    brute_decide_max_motif,
    brute_set_cover,
    decide_max_motif,
    reduce_two_colors,
    reduce_unique_colors,
)

sc = SetCoverInstance(("a", "b", "c", "d"), ((0, 1), (1, 2), (2, 3), (0, 3)), 2)
for reduce in (reduce_unique_colors, reduce_two_colors):
    inst = reduce(sc)
    print(reduce.__name__, "n =", inst.n, "e =", inst.graph.e, "k =", inst.k,
          decide_max_motif(inst, seed=0).label, brute_decide_max_motif(inst))
print("set cover:", brute_set_cover(sc))

tight = SetCoverInstance(sc.elements, sc.sets, 1)
print("t = 1:", brute_set_cover(tight), decide_max_motif(reduce_two_colors(tight), seed=0).label)

# %% one sieve costs about 2^k k^2 e field operations: time doubles (a bit more) per k
from motifsieve import FieldParams, random_connected_graph
from motifsieve.bench import median_ratio, time_sweep

g = random_connected_graph(50, 75, np.random.default_rng(8))
field = FieldParams.of_bits(64)
rows = [time_sweep(g, k, field) for k in range(8, 15)]
for r in rows:
    print(f"k={r.k:2d}  {r.seconds * 1e3:8.1f} ms")
print("median T(k+1)/T(k):", round(median_ratio(rows), 2))
