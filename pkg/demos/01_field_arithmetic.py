# %% GF(2^b) arithmetic: elements are ints, addition is XOR
import numpy as np

from motifsieve import FieldParams, minimal_bits

gf16 = FieldParams.of_bits(4)
print("GF(16) modulus:", bin(gf16.modulus))         # x^4 + x + 1
print("0x8 * 0x2 =", hex(gf16.mul(0x8, 0x2)))        # x^3 * x = x + 1
print("inverse of 0x2 =", hex(gf16.inv(0x2)))
print("0x2 ** 15 =", gf16.pow(0x2, 15))               # group of order 15

# %% the full multiplication table of GF(16)
el = np.arange(16, dtype=np.uint64)
table = gf16.mul_array(el[:, None], el[None, :])
print(table)

# %% 64-bit field: vectorised products go through a carry-less multiply kernel
gf64 = FieldParams.of_bits(64)
rng = np.random.default_rng(0)
a, b = gf64.random_array(rng, 5), gf64.random_array(rng, 5)
prod = gf64.mul_array(a, b)
for x, y, z in zip(a, b, prod):
    assert int(z) == gf64.mul(int(x), int(y))
    print(f"{int(x):016x} * {int(y):016x} = {int(z):016x}")

# %% smallest usable field for a search of size k (2^b >= 6k)
for k in (1, 3, 10, 20, 100):
    print(k, minimal_bits(k))
