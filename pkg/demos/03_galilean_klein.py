"""The discrete part of the Galilean group and the product-tower cross-check."""
import numpy as np

from chiralkit import galilean
from chiralkit.classify import square_closure

K = galilean.klein_group(exact=True)
names = ["I", "P", "T", "PT"]
closure = square_closure(K, galilean.compose, lambda a, b: a.equals(b, 0))
print("squares of {I, P, T, PT} generate:",
      [n for n, k in zip(names, K) if any(k is c for c in closure)])
for n, k in zip(names, K):
    print(f"  {n:<3}{galilean.classify(k).value}")

rng = np.random.default_rng(0)
tower = galilean.tower()
agree = 0
for _ in range(200):
    g = galilean.GalileanIsometry(int(rng.choice([1, -1])),
                                  galilean.rotation_matrix(rng.normal(size=3), rng.uniform(0, 3))
                                  * rng.choice([1, -1]),
                                  rng.normal(size=3), float(rng.normal()), rng.normal(size=3))
    agree += tower.classify(galilean.to_tower(g)) is galilean.classify(g)
print(f"\nT x| (B x| (K x R)) classification agrees with the direct rule on {agree}/200 samples")

b = galilean.boost([1, 0, 0])
print("boost v=(1,0,0) square root:", galilean.direct_witness(b)[0].v)
