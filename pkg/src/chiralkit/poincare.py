"""Lorentz-Minkowski spacetime: named generators of the Poincare group in either
signature convention.

In the (1,3) convention coordinates are ``(t, x, y, z)``; in (3,1) they are
``(x, y, z, t)`` so the metric stays ``diag(+..., -...)``.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import _scalar, affine
from .affine import AffineIsometry
from .classify import Classification
from .errors import ValidationError
from .orthogonal import OrthogonalMap
from .quadspace import DEFAULT_TOL, QuadraticSpace

AXES = {"x": 0, "y": 1, "z": 2}
CONVENTIONS = ("1,3", "3,1")


def minkowski_space(convention="1,3", exact=False, tolerance=DEFAULT_TOL) -> QuadraticSpace:
    if convention not in CONVENTIONS:
        raise ValidationError(f"unknown convention {convention!r}")
    p, q = (1, 3) if convention == "1,3" else (3, 1)
    return QuadraticSpace.of(p, q, tolerance=tolerance, exact=exact)


def time_index(convention):
    return 0 if convention == "1,3" else 3


def space_index(convention, axis):
    if axis not in AXES:
        raise ValidationError(f"unknown axis {axis!r}")
    return AXES[axis] + (1 if convention == "1,3" else 0)


class PoincareElement(AffineIsometry):
    """An affine isometry of Minkowski spacetime tagged with its convention."""

    __slots__ = ("convention",)

    def __init__(self, convention, linear, translation=None, exact=False,
                 tolerance=DEFAULT_TOL, check=True):
        space = minkowski_space(convention, exact, tolerance)
        super().__init__(space, linear, translation, check=check)
        self.convention = convention

    @classmethod
    def wrap(cls, g: AffineIsometry, convention):
        out = cls.__new__(cls)
        out.space, out.linear, out.translation = g.space, g.linear, g.translation
        out.convention = convention
        return out

    def __matmul__(self, other):
        if getattr(other, "convention", self.convention) != self.convention:
            raise ValidationError("cannot compose elements written in different conventions")
        return PoincareElement.wrap(affine.compose(self, other), self.convention)

    def inverse(self):
        return PoincareElement.wrap(super().inverse(), self.convention)

    def time_time(self):
        i = time_index(self.convention)
        return self.linear.matrix[i, i]

    def is_proper_orthochronous(self) -> bool:
        return bool(self.linear.det() > 0 and self.time_time() >= 1)


def _cosh_sinh(rapidity=None, beta=None, exact=False):
    if beta is not None:
        b = _scalar.to_fraction(beta) if exact else float(beta)
        if not abs(b) < 1:
            raise ValidationError("boost speed must satisfy |beta| < 1")
        gamma = 1 / _scalar.sqrt(1 - b * b) if exact else 1 / math.sqrt(1 - b * b)
        if exact and not isinstance(gamma, Fraction):
            raise ValidationError(f"beta={b} gives an irrational Lorentz factor")
        return gamma, gamma * b
    if rapidity is None:
        raise ValidationError("boost needs a rapidity or a beta")
    if exact:
        if rapidity != 0:
            raise ValidationError("exact boosts are specified by a rational beta")
        return Fraction(1), Fraction(0)
    if not math.isfinite(rapidity):
        raise ValidationError("rapidity must be finite")
    return math.cosh(rapidity), math.sinh(rapidity)


def _cos_sin(angle=None, cos_sin=None, exact=False):
    if cos_sin is not None:
        c, s = (_scalar.to_fraction(v) if exact else float(v) for v in cos_sin)
        if (c * c + s * s != 1) if exact else abs(c * c + s * s - 1) > 1e-12:
            raise ValidationError("cos^2 + sin^2 must equal 1")
        return c, s
    if angle is None:
        raise ValidationError("rotation needs an angle or a (cos, sin) pair")
    if exact:
        if angle != 0:
            raise ValidationError("exact rotations are specified by a rational (cos, sin) pair")
        return Fraction(1), Fraction(0)
    if not math.isfinite(angle):
        raise ValidationError("angle must be finite")
    return math.cos(angle), math.sin(angle)


def generator(name, convention="1,3", *, axis="x", rapidity=None, beta=None, angle=None,
              cos_sin=None, translation=None, exact=False, tolerance=DEFAULT_TOL) -> PoincareElement:
    """Named generator: ``P``, ``T``, ``PT``, ``I``, ``boost``, ``rotation`` or ``translation``.

    Rotations about ``axis`` act on the spatial plane orthogonal to it with
    the right-hand orientation; boosts mix time with ``axis``.
    """
    space = minkowski_space(convention, exact, tolerance)
    n = 4
    m = _scalar.eye(n, exact)
    ti = time_index(convention)
    spatial = [i for i in range(n) if i != ti]
    if name == "I" or name == "translation":
        pass
    elif name == "P":
        for i in spatial:
            m[i, i] = -m[i, i]
    elif name == "T":
        m[ti, ti] = -m[ti, ti]
    elif name == "PT":
        m = -m
    elif name == "boost":
        ch, sh = _cosh_sinh(rapidity, beta, exact)
        k = space_index(convention, axis)
        m[ti, ti] = ch
        m[k, k] = ch
        m[ti, k] = sh
        m[k, ti] = sh
    elif name == "rotation":
        c, s = _cos_sin(angle, cos_sin, exact)
        a = AXES.get(axis)
        if a is None:
            raise ValidationError(f"unknown axis {axis!r}")
        i = space_index(convention, "xyz"[(a + 1) % 3])
        j = space_index(convention, "xyz"[(a + 2) % 3])
        m[i, i] = c
        m[j, j] = c
        m[i, j] = -s
        m[j, i] = s
    else:
        raise ValidationError(f"unknown generator {name!r}")
    if name != "translation":
        translation = None
    elif translation is None:
        raise ValidationError("translation generator needs a vector")
    linear = OrthogonalMap(space, m, check=False)
    return PoincareElement(convention, linear, translation, exact=exact, tolerance=tolerance,
                           check=False)


def convert(g: PoincareElement, convention) -> PoincareElement:
    """Rewrite ``g`` in the other convention by moving the time axis."""
    if g.convention == convention:
        return g
    perm = [1, 2, 3, 0] if convention == "3,1" else [3, 0, 1, 2]
    lin = g.linear.matrix[np.ix_(perm, perm)]
    t = g.translation[perm]
    space = minkowski_space(convention, g.space.exact, g.space.tolerance)
    return PoincareElement.wrap(
        AffineIsometry(space, OrthogonalMap(space, lin, check=False), t), convention)


def classify(g: PoincareElement) -> Classification:
    return affine.classify(g)


def word(names, convention="1,3", **kw) -> PoincareElement:
    """Compose a list of generator specs, each a name or ``(name, kwargs)``."""
    out = generator("I", convention, **kw)
    for item in names:
        name, params = (item, {}) if isinstance(item, str) else item
        out = out @ generator(name, convention, **{**kw, **params})
    return out
