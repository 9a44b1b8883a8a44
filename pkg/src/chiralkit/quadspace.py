"""Real quadratic spaces of signature (p, q) with the canonical diagonal metric."""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _scalar
from .errors import DimensionMismatch, NullSupportingVector, ValidationError

DEFAULT_TOL = 1e-9


class VectorSign(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NULL = "null"


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise ValidationError(f"invalid signature ({self.p},{self.q})")

    @property
    def n(self) -> int:
        return self.p + self.q


@dataclass(frozen=True)
class QuadraticSpace:
    """The space R^{p,q} with ``G = diag(+1 x p, -1 x q)``.

    In exact mode vectors and matrices are Fraction arrays and the tolerance
    is forced to 0.
    """

    signature: Signature
    tolerance: float = DEFAULT_TOL
    exact: bool = False
    _diag: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.signature, tuple):
            object.__setattr__(self, "signature", Signature(*self.signature))
        if self.exact:
            object.__setattr__(self, "tolerance", 0)
        elif self.tolerance < 0:
            raise ValidationError("tolerance must be nonnegative")
        object.__setattr__(self, "_diag", (1,) * self.signature.p + (-1,) * self.signature.q)

    @classmethod
    def of(cls, p, q, tolerance=DEFAULT_TOL, exact=False):
        return cls(Signature(p, q), tolerance, exact)

    @property
    def n(self) -> int:
        return self.signature.n

    @property
    def diag(self):
        return _scalar.asarray(self._diag, exact=self.exact)

    @property
    def metric(self):
        return _scalar.asarray(np.diag(self._diag), exact=self.exact)

    def vector(self, data):
        v = _scalar.asarray(data, exact=self.exact)
        if v.shape != (self.n,):
            raise DimensionMismatch(f"expected a vector of length {self.n}, got shape {v.shape}")
        return v

    def matrix(self, data):
        m = _scalar.asarray(data, exact=self.exact)
        if m.shape != (self.n, self.n):
            raise DimensionMismatch(f"expected a {self.n}x{self.n} matrix, got shape {m.shape}")
        return m

    def identity(self):
        return _scalar.eye(self.n, exact=self.exact)

    def float_space(self):
        """The same signature in float mode (default tolerance if coming from exact)."""
        if not self.exact:
            return self
        return QuadraticSpace(self.signature)

    def bilinear(self, x, y):
        x = self.vector(x)
        y = self.vector(y)
        return (self.diag * x * y).sum()


def eval_q(space: QuadraticSpace, w):
    """Q(w) = sum_i G_ii w_i^2."""
    w = space.vector(w)
    return (space.diag * w * w).sum()


def interval(space: QuadraticSpace, x, y):
    """Squared interval Q(x - y); can be positive, negative or zero."""
    return eval_q(space, space.vector(x) - space.vector(y))


def vector_sign(space: QuadraticSpace, w) -> VectorSign:
    w = space.vector(w)
    qw = eval_q(space, w)
    scale = space.tolerance * (w * w).sum()
    if qw > scale:
        return VectorSign.POSITIVE
    if qw < -scale:
        return VectorSign.NEGATIVE
    return VectorSign.NULL


def reflection_matrix(space: QuadraticSpace, u):
    """Matrix of x -> x - 2 B(x,u)/Q(u) u, without the isotropy check."""
    u = space.vector(u)
    qu = eval_q(space, u)
    return space.identity() - np.outer(u, space.diag * u) * (2 / qu)


def reflection(space: QuadraticSpace, u):
    """The reflection supported by the anisotropic vector ``u`` as an OrthogonalMap."""
    from .orthogonal import OrthogonalMap

    if vector_sign(space, u) is VectorSign.NULL:
        shown = ", ".join(str(x) for x in u)
        raise NullSupportingVector(f"supporting vector [{shown}] has null square")
    return OrthogonalMap(space, reflection_matrix(space, u), check=False)
