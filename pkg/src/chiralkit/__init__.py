"""Direct/indirect classification of isometries of quadratic spaces and spacetimes,
with chirality verdicts for spacetime objects."""
from . import affine, classify, galilean, objects, orthogonal, poincare, quadspace
from .affine import AffineIsometry
from .classify import (DIRECT, INDIRECT, Classification, ClassifiedGroup, Expectation,
                       direct_product, expected_class, finite_group, parity_invariant_check,
                       semidirect_product, square_closure)
from .errors import (ChiralkitError, DimensionMismatch, EmptyFamily, InternalInconsistency,
                     NotClosed, NotOrthogonal, NullSupportingVector, NumericalBreakdown,
                     SpaceMismatch, TooLarge, UnclassifiableElement, ValidationError,
                     WitnessUnavailable)
from .galilean import Event, GalileanIsometry
from .objects import (CandidateFamily, ChiralityVerdict, LabeledEventSet, RigidBodySummary,
                      VerdictKind, chirality_verdict, point_set_symmetries, spinning_cone)
from .orthogonal import OrthogonalMap, ParityPair, ReflectionFactorization
from .poincare import PoincareElement
from .quadspace import QuadraticSpace, Signature, VectorSign, reflection

__all__ = [
    "affine", "classify", "galilean", "objects", "orthogonal", "poincare", "quadspace",
    "AffineIsometry", "DIRECT", "INDIRECT", "Classification", "ClassifiedGroup", "Expectation",
    "direct_product", "expected_class", "finite_group", "parity_invariant_check",
    "semidirect_product", "square_closure", "ChiralkitError", "DimensionMismatch",
    "EmptyFamily", "InternalInconsistency", "NotClosed", "NotOrthogonal",
    "NullSupportingVector", "NumericalBreakdown", "SpaceMismatch", "TooLarge",
    "UnclassifiableElement", "ValidationError", "WitnessUnavailable", "Event",
    "GalileanIsometry", "CandidateFamily", "ChiralityVerdict", "LabeledEventSet",
    "RigidBodySummary", "VerdictKind", "chirality_verdict", "point_set_symmetries",
    "spinning_cone", "OrthogonalMap", "ParityPair", "ReflectionFactorization",
    "PoincareElement", "QuadraticSpace", "Signature", "VectorSign", "reflection",
]

__version__ = "0.1.0"
