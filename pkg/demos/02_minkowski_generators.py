"""Classify the named Poincare generators in both signature conventions."""
from chiralkit import poincare

specs = [
    ("P", {}), ("T", {}), ("PT", {}),
    ("boost", {"axis": "y", "beta": "5/13"}),
    ("rotation", {"axis": "x", "cos_sin": ("0", "1")}),
    ("translation", {"translation": ["1/2", 0, 3, -1]}),
]
print(f"{'generator':<12}{'(1,3)':<10}{'(3,1)':<10}")
for name, kw in specs:
    row = [poincare.classify(poincare.generator(name, conv, exact=True, **kw)).value
           for conv in poincare.CONVENTIONS]
    print(f"{name:<12}{row[0]:<10}{row[1]:<10}")

g = poincare.word([("boost", {"axis": "x", "rapidity": 0.7}),
                   ("boost", {"axis": "y", "rapidity": 0.5})])
print("\ntwo boosts along different axes:", poincare.classify(g).value,
      "| proper orthochronous:", g.is_proper_orthochronous())
