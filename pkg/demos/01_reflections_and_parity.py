"""Factor a Lorentz transformation into reflections and read off its class.

A boost composed with a rotation is split into reflections; counting all
supports and the negative-square ones gives the parity pair. Direct elements
also get an explicit list of square roots.
"""
import numpy as np

from chiralkit import orthogonal, poincare

boost = poincare.generator("boost", axis="x", beta="3/5", exact=True)
turn = poincare.generator("rotation", axis="z", cos_sin=("3/5", "4/5"), exact=True)
m = (boost @ turn).linear
print("matrix (exact):")
print(np.vectorize(str)(m.matrix))

f = orthogonal.decompose(m)
print(f"\n{len(f)} reflections:")
for u, sign in zip(f.supports, f.signs):
    print(f"  support {[str(x) for x in u]}  square {sign.value}")
print("parity pair:", f.parity.as_tuple(), "->", f.parity.classification.value)

witness = orthogonal.direct_witness(m)
prod = np.eye(4)
for w in witness:
    prod = prod @ w.matrix @ w.matrix
print(f"\n{len(witness)} square roots; max reconstruction error "
      f"{np.max(np.abs(prod - m.matrix.astype(float))):.1e}")

pt = poincare.generator("PT", exact=True).linear
print("\nPT = -I: parity pair", orthogonal.parity_pair(pt).as_tuple(),
      "->", orthogonal.classify(pt).value, "(det is +1, yet not a product of squares)")
