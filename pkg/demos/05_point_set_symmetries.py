"""Brute-force symmetry groups of small labelled point sets."""
import numpy as np

from chiralkit.objects import LabeledEventSet, classify_isometry, point_set_symmetries
from chiralkit.quadspace import QuadraticSpace

square = LabeledEventSet(np.array([[1.0, 0], [0, 1], [-1, 0], [0, -1]]), [0] * 4)
found = point_set_symmetries(square, QuadraticSpace.of(2, 0))
kinds = [classify_isometry(g).value for g in found]
print(f"square: {len(found)} symmetries, {kinds.count('indirect')} indirect")

pair = LabeledEventSet(np.array([[1.0, 0, 0, 0], [-1.0, 0, 0, 0]]), ["e", "e"])
for g in point_set_symmetries(pair, "galilean"):
    print(f"event pair: sigma={g.sigma:+d} -> {classify_isometry(g).value}")

hyperbola = LabeledEventSet(np.array([[1.0, 0], [5 / 4, 3 / 4], [5 / 4, -3 / 4]]), ["a", "b", "b"])
found = point_set_symmetries(hyperbola, QuadraticSpace.of(1, 1))
print(f"three events on a hyperbola in (1,1): {[classify_isometry(g).value for g in found]}")
