"""The full isometry group of Newton-Cartan spacetime.

An element is the record ``(sigma, omega, v, s, z)`` acting on events by

    (t, x) -> (sigma t + s, omega x + sigma t v + z)

i.e. the normal form ``translation o boost o q`` with ``q = (sigma, omega)``
in the time-sign x O(3) factor.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from . import _scalar
from .classify import (DIRECT, INDIRECT, Classification, ClassifiedGroup, SemidirectElement,
                       direct_product, finite_group, semidirect_product)
from .errors import ValidationError, WitnessUnavailable

DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Event:
    t: object
    x: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x)
        if x.shape != (3,):
            raise ValidationError("an event has a 3-vector spatial part")
        object.__setattr__(self, "x", x)

    def as_array(self):
        return np.concatenate([[self.t], self.x])

    def close_to(self, other, tol):
        return abs(self.t - other.t) <= tol and _scalar.allclose(self.x, other.x, tol)


class GalileanIsometry:
    __slots__ = ("sigma", "omega", "v", "s", "z", "exact", "tolerance")

    def __init__(self, sigma=1, omega=None, v=None, s=0, z=None, *, exact=False,
                 tolerance=DEFAULT_TOL, check=True):
        if sigma not in (1, -1):
            raise ValidationError("sigma must be +1 or -1")
        self.exact = exact
        self.tolerance = 0 if exact else tolerance
        self.sigma = int(sigma)
        self.omega = _scalar.asarray(np.eye(3, dtype=int) if omega is None else omega, exact)
        self.v = _scalar.asarray([0, 0, 0] if v is None else v, exact)
        self.z = _scalar.asarray([0, 0, 0] if z is None else z, exact)
        self.s = _scalar.to_fraction(s) if exact else float(s)
        if self.omega.shape != (3, 3) or self.v.shape != (3,) or self.z.shape != (3,):
            raise ValidationError("omega must be 3x3, v and z 3-vectors")
        if check and not _scalar.allclose(self.omega.T @ self.omega, _scalar.eye(3, exact),
                                          self.tolerance):
            raise ValidationError("omega is not orthogonal within tolerance")

    def _new(self, sigma, omega, v, s, z):
        return GalileanIsometry(sigma, omega, v, s, z, exact=self.exact,
                                tolerance=self.tolerance, check=False)

    def __call__(self, e: Event) -> Event:
        return act(self, e)

    def __matmul__(self, other):
        return compose(self, other)

    def inverse(self) -> "GalileanIsometry":
        ot = self.omega.T
        sg = self.sigma
        return self._new(sg, ot, -sg * (ot @ self.v), -sg * self.s, -(ot @ (self.z - self.s * self.v)))

    def det_omega(self):
        return _scalar.det(self.omega)

    def equals(self, other, tol=None) -> bool:
        tol = self.tolerance if tol is None else tol
        return (self.sigma == other.sigma
                and _scalar.allclose(self.omega, other.omega, tol)
                and _scalar.allclose(self.v, other.v, tol)
                and abs(self.s - other.s) <= tol
                and _scalar.allclose(self.z, other.z, tol))

    def params(self):
        return {"sigma": self.sigma, "omega": self.omega, "v": self.v, "s": self.s, "z": self.z}

    def __repr__(self):
        return (f"GalileanIsometry(sigma={self.sigma}, omega={self.omega.tolist()}, "
                f"v={self.v.tolist()}, s={self.s}, z={self.z.tolist()})")


def act(g: GalileanIsometry, e: Event) -> Event:
    return Event(g.sigma * e.t + g.s, g.omega @ e.x + (g.sigma * e.t) * g.v + g.z)


def compose(g1: GalileanIsometry, g2: GalileanIsometry) -> GalileanIsometry:
    """Parameters of ``g1 o g2``."""
    s1 = g1.sigma
    return g1._new(
        s1 * g2.sigma,
        g1.omega @ g2.omega,
        g1.v + s1 * (g1.omega @ g2.v),
        g1.s + s1 * g2.s,
        g1.z + g1.omega @ g2.z + (s1 * g2.s) * g1.v,
    )


def conjugate(g: GalileanIsometry, h: GalileanIsometry) -> GalileanIsometry:
    """``h o g o h^-1``."""
    return compose(compose(h, g), h.inverse())


def invariant(g: GalileanIsometry) -> tuple:
    """(time-sign parity, spatial det parity), a homomorphism to (Z/2)^2."""
    return (int(g.sigma < 0), int(g.det_omega() < 0))


def classify(g: GalileanIsometry) -> Classification:
    """Direct iff the element preserves time sign and spatial orientation.

    Boosts, rotations and translations are direct and stay direct through the
    tower T x| (B x| (K x R)); the non-identity Klein elements are indirect and
    stay indirect; mixed elements follow from the product rules because every
    factor other than K is direct.
    """
    return DIRECT if invariant(g) == (0, 0) else INDIRECT


# ------------------------------------------------------------------ named elements

def identity(exact=False):
    return GalileanIsometry(exact=exact)


def boost(v, exact=False):
    return GalileanIsometry(v=v, exact=exact)


def translation(s, z, exact=False):
    return GalileanIsometry(s=s, z=z, exact=exact)


def spatial(omega, sigma=1, exact=False, check=True):
    return GalileanIsometry(sigma, omega, exact=exact, check=check)


def parity(exact=False):
    return GalileanIsometry(1, -np.eye(3, dtype=int), exact=exact)


def time_reversal(exact=False):
    return GalileanIsometry(-1, exact=exact)


def parity_time(exact=False):
    return GalileanIsometry(-1, -np.eye(3, dtype=int), exact=exact)


def klein_group(exact=False):
    """``[I, P, T, PT]``."""
    return [identity(exact), parity(exact), time_reversal(exact), parity_time(exact)]


def rotation_matrix(axis, angle):
    return Rotation.from_rotvec(np.asarray(axis, float) / np.linalg.norm(axis) * angle).as_matrix()


def normal_form(g: GalileanIsometry):
    """``(tau, b, q)`` with ``g = tau o b o q``."""
    tau = g._new(1, np.eye(3, dtype=int), [0, 0, 0], g.s, g.z)
    b = g._new(1, np.eye(3, dtype=int), g.v, 0, [0, 0, 0])
    q = g._new(g.sigma, g.omega, [0, 0, 0], 0, [0, 0, 0])
    return tau, b, q


def _is_zero(a, tol):
    return _scalar.allclose(a, np.zeros_like(np.asarray(a, dtype=float)), tol)


def direct_witness(g: GalileanIsometry) -> list[GalileanIsometry]:
    """Elements whose squares compose (in order) to ``g``.

    Translation and boost parts are halved exactly; the rotation part uses the
    half rotation vector and is float even in exact mode.
    """
    if classify(g) is not DIRECT:
        raise WitnessUnavailable("indirect isometries are not products of squares")
    tol = g.tolerance
    out = []
    if not (abs(g.s) <= tol and _is_zero(g.z, tol)):
        out.append(g._new(1, _scalar.eye(3, g.exact), _scalar.zeros(3, g.exact), g.s / 2, g.z / 2))
    if not _is_zero(g.v, tol):
        out.append(g._new(1, _scalar.eye(3, g.exact), g.v / 2, 0, _scalar.zeros(3, g.exact)))
    if not _scalar.allclose(g.omega, _scalar.eye(3, g.exact), tol):
        rv = Rotation.from_matrix(_scalar.to_float(g.omega)).as_rotvec()
        half = Rotation.from_rotvec(rv / 2).as_matrix()
        out.append(GalileanIsometry(1, half, tolerance=g.tolerance or DEFAULT_TOL, check=False))
    return out


# ------------------------------------------------------------------ tower construction

def _vec_group(name, dim, exact):
    zero = lambda: _scalar.zeros(dim, exact)  # noqa: E731
    return ClassifiedGroup(
        name=name,
        compose=lambda a, b: a + b,
        inverse=lambda a: -a,
        identity=zero,
        equal=lambda a, b, tol: _scalar.allclose(a, b, tol),
        classify=lambda a: DIRECT,
        witness=lambda a: [] if _scalar.allclose(a, zero(), 0) else [a / 2],
        invariant=lambda a: (0, 0),
    )


def tower(exact=False):
    """GAL(1,3) assembled as ``T x| (B x| (K x R))`` from the generic combinators.

    Elements of the result are nested :class:`SemidirectElement` values;
    ``to_tower`` / ``from_tower`` convert from and to :class:`GalileanIsometry`.
    The classification of the result comes only from the factor
    classifications and the lifting rules, which makes it an independent check
    of :func:`classify`.
    """
    K = finite_group(
        "K", [(1, 1), (1, -1), (-1, 1), (-1, -1)],  # (time sign, spatial sign)
        lambda a, b: (a[0] * b[0], a[1] * b[1]),
        lambda a, b, tol: a == b)
    K.invariant = lambda a: (int(a[0] < 0), int(a[1] < 0))
    R = ClassifiedGroup(
        name="SO(3)",
        compose=lambda a, b: a @ b,
        inverse=lambda a: a.T,
        identity=lambda: _scalar.eye(3, exact),
        equal=lambda a, b, tol: _scalar.allclose(a, b, tol),
        classify=lambda a: DIRECT,
        witness=lambda a: [Rotation.from_rotvec(
            Rotation.from_matrix(_scalar.to_float(a)).as_rotvec() / 2).as_matrix()],
        invariant=lambda a: (0, 0),
    )
    Q = direct_product(K, R, name="Q")
    B = _vec_group("B", 3, exact)

    def q_act(q, v):
        sigma, eps = q.n
        return sigma * eps * (q.h @ v)

    L = semidirect_product(B, Q, q_act, name="L")
    T = _vec_group("T", 4, exact)

    def l_act(l, tz):
        g = from_tower(SemidirectElement(_scalar.zeros(4, exact), l), exact)
        tau = GalileanIsometry(1, None, None, tz[0], tz[1:], exact=exact, check=False)
        c = conjugate(tau, g)
        return np.concatenate([[c.s], c.z]).astype(object if exact else float)

    return semidirect_product(T, L, l_act, name="GAL(1,3) tower")


def to_tower(g: GalileanIsometry):
    """Split ``g`` into tower coordinates; ``omega = eps * r`` with ``r`` in SO(3)."""
    eps = 1 if g.det_omega() > 0 else -1
    r = g.omega * eps
    q = SemidirectElement((g.sigma, eps), r)
    l = SemidirectElement(g.v, q)  # noqa: E741
    tz = np.concatenate([[g.s], g.z]).astype(object if g.exact else float)
    return SemidirectElement(tz, l)


def from_tower(e, exact=False) -> GalileanIsometry:
    tz, l = e.n, e.h
    v, q = l.n, l.h
    sigma, eps = q.n
    return GalileanIsometry(sigma, eps * q.h, v, tz[0], tz[1:], exact=exact, check=False)


def galilean_group(exact=False) -> ClassifiedGroup:
    return ClassifiedGroup(
        name="GAL(1,3)",
        compose=compose,
        inverse=lambda a: a.inverse(),
        identity=lambda: identity(exact),
        equal=lambda a, b, tol: a.equals(b, tol),
        classify=classify,
        witness=direct_witness,
        invariant=invariant,
    )

