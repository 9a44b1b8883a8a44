"""Affine isometries x -> A x + t of the affine space over R^{p,q}."""
from __future__ import annotations

import numpy as np

from . import _scalar
from . import orthogonal
from .classify import DIRECT, Classification, ClassifiedGroup
from .errors import DimensionMismatch, SpaceMismatch, ValidationError, WitnessUnavailable
from .orthogonal import OrthogonalMap
from .quadspace import QuadraticSpace


class AffineIsometry:
    """Pair (linear part, translation) acting as ``x -> linear @ x + translation``."""

    __slots__ = ("space", "linear", "translation")

    def __init__(self, space: QuadraticSpace, linear, translation=None, check=True):
        if not isinstance(linear, OrthogonalMap):
            linear = OrthogonalMap(space, linear, check=check)
        elif linear.space.signature != space.signature:
            raise SpaceMismatch("linear part lives in another signature")
        self.space = space if linear.space.exact == space.exact else linear.space
        self.linear = linear
        if translation is None:
            translation = _scalar.zeros(space.n, self.space.exact)
        self.translation = self.space.vector(translation)

    @classmethod
    def translation_only(cls, space, t):
        return cls(space, OrthogonalMap(space, space.identity(), check=False), t)

    @classmethod
    def from_homogeneous(cls, space, h, check=True):
        """Build from an (n+1)x(n+1) matrix ``[[A, t], [0, 1]]``."""
        h = _scalar.asarray(h, exact=space.exact)
        n = space.n
        if h.shape != (n + 1, n + 1):
            raise DimensionMismatch(f"expected a {n + 1}x{n + 1} homogeneous matrix")
        if not (_scalar.allclose(h[n, :n], _scalar.zeros(n, space.exact), space.tolerance)
                and _scalar.allclose(h[n, n], 1, space.tolerance)):
            raise ValidationError("last row of a homogeneous matrix must be (0, ..., 0, 1)")
        return cls(space, h[:n, :n], h[:n, n], check=check)

    def to_homogeneous(self):
        n = self.space.n
        h = _scalar.zeros((n + 1, n + 1), self.space.exact)
        h[:n, :n] = self.linear.matrix
        h[:n, n] = self.translation
        h[n, n] = 1
        return h

    def __call__(self, x):
        return self.linear.matrix @ self.space.vector(x) + self.translation

    def __matmul__(self, other):
        return compose(self, other)

    def inverse(self) -> "AffineIsometry":
        inv = self.linear.inverse()
        return AffineIsometry(self.space, inv, -(inv.matrix @ self.translation))

    def equals(self, other, tol=None) -> bool:
        tol = self.space.tolerance if tol is None else tol
        return (self.linear.equals(other.linear, tol)
                and _scalar.allclose(self.translation, other.translation, tol))

    def is_translation(self) -> bool:
        return _scalar.allclose(self.linear.matrix, self.space.identity(), self.space.tolerance)

    def __repr__(self):
        return (f"AffineIsometry(linear={self.linear.matrix.tolist()}, "
                f"translation={self.translation.tolist()})")


def compose(g1: AffineIsometry, g2: AffineIsometry) -> AffineIsometry:
    """``g1 o g2``: linear ``A1 A2``, translation ``A1 t2 + t1``."""
    if g1.space.signature != g2.space.signature:
        raise SpaceMismatch("cannot compose isometries of different signatures")
    lin = g1.linear @ g2.linear
    t1, t2 = g1.translation, g2.translation
    a1 = g1.linear.matrix
    if not lin.space.exact:
        t1, t2, a1 = _scalar.to_float(t1), _scalar.to_float(t2), _scalar.to_float(a1)
    return AffineIsometry(lin.space, lin, a1 @ t2 + t1)


def classify(g: AffineIsometry) -> Classification:
    """Translations are direct; otherwise the linear part decides."""
    if g.is_translation():
        return DIRECT
    return orthogonal.classify(g.linear)


def parity_pair(g: AffineIsometry):
    return orthogonal.parity_pair(g.linear)


def direct_witness(g: AffineIsometry) -> list[AffineIsometry]:
    """Affine maps whose squares, composed in order, give ``g``.

    The first linear witness ``W`` absorbs the translation when ``W + I`` is
    invertible, since ``(W, c)^2 = (W^2, (W + I) c)``; otherwise a half
    translation is prepended.
    """
    space = g.space
    if classify(g) is not DIRECT:
        raise WitnessUnavailable("indirect isometries are not products of squares")
    t = g.translation
    zero_t = _scalar.allclose(t, _scalar.zeros(space.n, space.exact), space.tolerance)
    if g.is_translation():
        return [] if zero_t else [AffineIsometry.translation_only(space, t / 2)]
    lin = orthogonal.direct_witness(g.linear)
    out = [AffineIsometry(w.space, w) for w in lin]
    if zero_t or not out:
        return out
    w0 = out[0].linear
    a = w0.matrix + w0.space.identity()
    rhs = t if w0.space.exact else _scalar.to_float(t)
    try:
        c = _scalar.solve(a, rhs)
        ok = _scalar.is_exact(c) or np.linalg.cond(a) < 1e8
    except np.linalg.LinAlgError:
        ok = False
    if ok:
        out[0] = AffineIsometry(w0.space, w0, c)
        return out
    return [AffineIsometry.translation_only(space, t / 2)] + out


def affine_group(space: QuadraticSpace) -> ClassifiedGroup:
    return ClassifiedGroup(
        name=f"R^{{{space.signature.p},{space.signature.q}}} x| O({space.signature.p},{space.signature.q})",
        compose=compose,
        inverse=lambda a: a.inverse(),
        identity=lambda: AffineIsometry.translation_only(space, _scalar.zeros(space.n, space.exact)),
        equal=lambda a, b, tol: a.equals(b, tol),
        classify=classify,
        witness=direct_witness,
        invariant=lambda a: orthogonal.parity_pair(a.linear).as_tuple(),
        euclidean_mode=space.signature.q == 0 or space.signature.p == 0,
    )
