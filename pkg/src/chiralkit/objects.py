"""Spacetime objects, their transformation under isometries, symmetry search
and chirality verdicts.

Two kinds of object are supported: a rigid axially symmetric body summarised
by its axis, mass center, velocity and spin (:class:`RigidBodySummary`), and a
finite set of labelled points or events (:class:`LabeledEventSet`).

Transformation conventions for the rigid body under ``(sigma, omega, v, s, z)``:
density is a scalar, velocity a time-odd polar vector shifted by the boost,
spin a time-odd axial vector::

    axis' = omega a
    x_c'  = omega x_c + z - s nu'          (mass center at t = 0)
    nu'   = sigma omega nu + v
    eta'  = sigma det(omega) omega eta
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np
from scipy.stats import qmc

from . import _scalar
from . import affine as affine_mod
from . import galilean as gal
from .affine import AffineIsometry
from .classify import DIRECT, INDIRECT
from .errors import EmptyFamily, InternalInconsistency, TooLarge, ValidationError
from .galilean import Event, GalileanIsometry
from .orthogonal import OrthogonalMap, is_member
from .quadspace import QuadraticSpace, interval

GRID_SIZE = 512
GRID_SEED = 0


@dataclass(frozen=True)
class ConeShape:
    """Homogeneous solid cone, described relative to its mass center.

    The apex sits at ``3/4 height`` along the axis and the base disk at
    ``-1/4 height``.
    """

    half_angle: float
    height: float

    def __post_init__(self):
        if not (0 < self.half_angle < math.pi / 2) or self.height <= 0:
            raise ValidationError("cone needs 0 < half_angle < pi/2 and height > 0")

    @property
    def bounding_radius(self):
        h = self.height
        return max(0.75 * h, math.hypot(0.25 * h, h * math.tan(self.half_angle)))

    def contains(self, y, axis, tol=0.0) -> bool:
        along = float(y @ axis)
        h = self.height
        if along < -0.25 * h - tol or along > 0.75 * h + tol:
            return False
        radial = np.linalg.norm(y - along * axis)
        return radial <= max(0.75 * h - along, 0.0) * math.tan(self.half_angle) + tol


@dataclass(frozen=True, eq=False)
class RigidBodySummary:
    axis: np.ndarray
    base_point: np.ndarray
    shape: ConeShape
    nu: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.axis, float)
        norm = np.linalg.norm(a)
        if a.shape != (3,) or norm == 0:
            raise ValidationError("axis must be a nonzero 3-vector")
        object.__setattr__(self, "axis", a / norm)
        for name in ("base_point", "nu", "eta"):
            v = np.asarray(getattr(self, name), float)
            if v.shape != (3,):
                raise ValidationError(f"{name} must be a 3-vector")
            object.__setattr__(self, name, v)

    def equals(self, other: "RigidBodySummary", tol=1e-9) -> bool:
        return (self.shape == other.shape
                and np.allclose(self.axis, other.axis, rtol=0, atol=tol)
                and np.allclose(self.base_point, other.base_point, rtol=0, atol=tol)
                and np.allclose(self.nu, other.nu, rtol=0, atol=tol)
                and np.allclose(self.eta, other.eta, rtol=0, atol=tol))


def spinning_cone(axis=(1.0, -1.0, 0.0), base_point=(0.0, 0.0, 0.0), speed=0.0, spin=1.0,
                  half_angle=math.pi / 6, height=1.0) -> RigidBodySummary:
    """Cone spinning about its axis at rate ``spin`` and moving along it at ``speed``.

    The default axis is orthogonal to (1, 1, 1), so the plane orthogonal to
    (1, 1, 1) contains it.
    """
    a = np.asarray(axis, float)
    a = a / np.linalg.norm(a)
    return RigidBodySummary(a, base_point, ConeShape(half_angle, height), speed * a, spin * a)


def transform_summary(g: GalileanIsometry, obj: RigidBodySummary) -> RigidBodySummary:
    omega = _scalar.to_float(g.omega)
    v = _scalar.to_float(g.v)
    z = _scalar.to_float(g.z)
    s = float(g.s)
    det = np.linalg.det(omega)
    nu = g.sigma * (omega @ obj.nu) + v
    return replace(
        obj,
        axis=omega @ obj.axis,
        base_point=omega @ obj.base_point + z - s * nu,
        nu=nu,
        eta=g.sigma * np.sign(det) * (omega @ obj.eta),
    )


def world_tube_member(obj: RigidBodySummary, e: Event, tol=1e-9) -> bool:
    """Whether the body occupies the event: ``x - x_c - t nu`` lies in the shape."""
    y = np.asarray(e.x, float) - obj.base_point - float(e.t) * obj.nu
    return obj.shape.contains(y, obj.axis, tol)


def sample_grid(obj: RigidBodySummary, n=GRID_SIZE, seed=GRID_SEED) -> list[Event]:
    """Low-discrepancy events around the world tube, about half of them inside it."""
    pts = qmc.Sobol(d=4, scramble=True, seed=seed).random(n)
    r = obj.shape.bounding_radius
    t = (pts[:, 0] * 2 - 1) * 2.0
    offsets = (pts[:, 1:] * 2 - 1) * (1.25 * r)
    return [Event(float(ti), obj.base_point + ti * obj.nu + off) for ti, off in zip(t, offsets)]


def _tube_agrees(g: GalileanIsometry, obj, tol, grid=None) -> bool:
    grid = sample_grid(obj) if grid is None else grid
    fg = _float_gal(g)
    return all(world_tube_member(obj, fg(e), tol) == world_tube_member(obj, e, tol) for e in grid)


def _float_gal(g: GalileanIsometry) -> GalileanIsometry:
    if not g.exact:
        return g
    return GalileanIsometry(g.sigma, _scalar.to_float(g.omega), _scalar.to_float(g.v),
                            float(g.s), _scalar.to_float(g.z), check=False)


@dataclass(frozen=True, eq=False)
class LabeledEventSet:
    """Finite object: points of R^n (or events ``(t, x, y, z)``) carrying labels."""

    points: np.ndarray
    labels: tuple

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, float))
        if len(self.labels) != len(pts):
            raise ValidationError("one label per point is required")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", tuple(self.labels))

    def __len__(self):
        return len(self.points)


def _apply(g, point):
    if isinstance(g, GalileanIsometry):
        e = _float_gal(g)(Event(point[0], point[1:]))
        return np.concatenate([[e.t], e.x])
    return _scalar.to_float(g.linear.matrix) @ point + _scalar.to_float(g.translation)


def _maps_onto_itself(g, S: LabeledEventSet, tol) -> bool:
    used = set()
    for p, lab in zip(S.points, S.labels):
        img = _apply(g, p)
        match = None
        for j, (q, lab2) in enumerate(zip(S.points, S.labels)):
            if j not in used and lab2 == lab and np.allclose(img, q, rtol=0, atol=tol):
                match = j
                break
        if match is None:
            return False
        used.add(match)
    return True


def is_invariant(g, obj, tol=1e-9) -> bool:
    """Whether ``g`` leaves ``obj`` unchanged.

    Rigid bodies are checked twice: the transformed summary must match and the
    world-tube membership must agree on the sample grid.
    """
    if isinstance(obj, RigidBodySummary):
        if not isinstance(g, GalileanIsometry):
            raise ValidationError("rigid bodies transform under Galilean isometries")
        return transform_summary(g, obj).equals(obj, tol) and _tube_agrees(g, obj, tol)
    if isinstance(obj, LabeledEventSet):
        return _maps_onto_itself(g, obj, tol)
    raise ValidationError(f"unsupported object type {type(obj).__name__}")


# ------------------------------------------------------------------ chirality

class VerdictKind(Enum):
    ACHIRAL = "achiral"
    CHIRAL_WITHIN_FAMILY = "chiral_within_family"
    DIRECT_SYMMETRIC_ONLY = "direct_symmetric_only"


@dataclass(frozen=True)
class CandidateFamily:
    """Finite family of candidate symmetries for an axially symmetric body.

    Spatial parts are rotations about the body axis by multiples of
    ``2 pi / resolution`` and reflections in planes containing the axis, the
    first of which is the one orthogonal to ``reference`` when possible; each
    optionally composed with ``-I``. Every spatial part is tried with every
    time sign. With ``allow_boosts`` the boost and translation parameters are
    solved for; otherwise they are zero.
    """

    resolution: int = 8
    rotations: bool = True
    reflections: bool = True
    with_inversion: bool = True
    time_signs: tuple = (1, -1)
    allow_boosts: bool = False
    reference: tuple = (1.0, 1.0, 1.0)

    def spatial_parts(self, axis) -> list[tuple[str, np.ndarray]]:
        a = np.asarray(axis, float)
        n0 = _perpendicular(a, np.asarray(self.reference, float))
        n1 = np.cross(a, n0)
        parts = []
        m = self.resolution
        if self.rotations:
            for k in range(m):
                parts.append((f"rotation[{k}/{m}]", gal.rotation_matrix(a, 2 * math.pi * k / m)))
        if self.reflections:
            for k in range(m):
                phi = math.pi * k / m
                nk = math.cos(phi) * n0 + math.sin(phi) * n1
                parts.append((f"reflection[{k}/{m}]", np.eye(3) - 2 * np.outer(nk, nk)))
        if self.with_inversion:
            parts += [(f"-{name}", -om) for name, om in list(parts)]
        return parts


def _perpendicular(a, ref):
    p = ref - (ref @ a) * a
    if np.linalg.norm(p) < 1e-9:
        ref = np.eye(3)[int(np.argmin(np.abs(a)))]
        p = ref - (ref @ a) * a
    return p / np.linalg.norm(p)


@dataclass(frozen=True)
class ChiralityVerdict:
    kind: VerdictKind
    witness: Optional[GalileanIsometry] = None
    witness_label: Optional[str] = None
    family: CandidateFamily = field(default_factory=CandidateFamily)
    candidates_checked: int = 0

    @property
    def achiral(self):
        return self.kind is VerdictKind.ACHIRAL


def _solve_candidate(obj, sigma, omega, allow_boosts) -> GalileanIsometry:
    if not allow_boosts:
        return GalileanIsometry(sigma, omega, check=False)
    # nu' = nu and x_c' = x_c with s = 0
    v = obj.nu - sigma * (omega @ obj.nu)
    z = obj.base_point - omega @ obj.base_point
    return GalileanIsometry(sigma, omega, v, 0.0, z, check=False)


def chirality_verdict(obj: RigidBodySummary, family: CandidateFamily = CandidateFamily(),
                      tol=1e-9, grid_seed=GRID_SEED) -> ChiralityVerdict:
    """Scan ``family`` for symmetries of ``obj``.

    Returns the first indirect symmetry found (candidate order) as an achiral
    verdict. Otherwise the verdict only says the object is chiral relative to
    this family, noting whether some non-identity direct symmetry was seen.
    """
    parts = family.spatial_parts(obj.axis)
    if not parts or not family.time_signs:
        raise EmptyFamily("candidate family is empty")
    grid = sample_grid(obj, seed=grid_seed)
    direct_witness = None
    checked = 0
    identity = gal.identity()
    for name, omega in parts:
        for sigma in family.time_signs:
            g = _solve_candidate(obj, sigma, omega, family.allow_boosts)
            checked += 1
            if not (transform_summary(g, obj).equals(obj, tol) and _tube_agrees(g, obj, tol, grid)):
                continue
            label = f"{name}, sigma={sigma:+d}"
            if gal.classify(g) is INDIRECT:
                if not is_invariant(g, obj, tol):
                    raise InternalInconsistency("achiral witness failed re-check")
                return ChiralityVerdict(VerdictKind.ACHIRAL, g, label, family, checked)
            if direct_witness is None and not g.equals(identity, tol):
                direct_witness = (g, label)
    if direct_witness is not None:
        g, label = direct_witness
        assert gal.classify(g) is DIRECT
        return ChiralityVerdict(VerdictKind.DIRECT_SYMMETRIC_ONLY, g, label, family, checked)
    return ChiralityVerdict(VerdictKind.CHIRAL_WITHIN_FAMILY, None, None, family, checked)


# ------------------------------------------------------------------ finite point sets

def _correspondences(S: LabeledEventSet, pair_ok):
    """Label-preserving permutations consistent with ``pair_ok(i, j, pi, pj)``."""
    m = len(S)
    perm = [None] * m
    used = [False] * m

    def rec(i):
        if i == m:
            yield tuple(perm)
            return
        for j in range(m):
            if used[j] or S.labels[j] != S.labels[i]:
                continue
            if all(pair_ok(k, i, perm[k], j) for k in range(i)) and pair_ok(i, i, j, j):
                perm[i] = j
                used[j] = True
                yield from rec(i + 1)
                used[j] = False
        perm[i] = None

    yield from rec(0)


def _affine_candidates(S, space: QuadraticSpace, tol):
    pts = S.points
    if pts.shape[1] != space.n:
        raise ValidationError(f"points must live in dimension {space.n}")
    fspace = space.float_space() if space.exact else space
    ivals = [[float(interval(fspace, a, b)) for b in pts] for a in pts]
    scale = max(1.0, float(np.max(np.abs(ivals))))

    def pair_ok(i, j, pi, pj):
        return abs(ivals[i][j] - ivals[pi][pj]) <= tol * scale

    c = pts.mean(axis=0)
    d = pts - c
    for perm in _correspondences(S, pair_ok):
        rhs = d[list(perm)] - d
        x = np.linalg.lstsq(d, rhs, rcond=None)[0].T
        a = np.eye(space.n) + x
        if not is_member(fspace, a):
            continue
        g = AffineIsometry(fspace, OrthogonalMap(fspace, a, check=False), c - a @ c)
        yield g


def _galilean_candidates(S, tol):
    pts = S.points
    if pts.shape[1] != 4:
        raise ValidationError("events must be (t, x, y, z)")
    t, x = pts[:, 0], pts[:, 1:]
    tbar, xbar = t.mean(), x.mean(axis=0)
    tau, xi = t - tbar, x - xbar
    for sigma in (1, -1):
        def pair_ok(i, j, pi, pj, sigma=sigma):
            if abs(sigma * (t[i] - t[j]) - (t[pi] - t[pj])) > tol:
                return False
            if abs(t[i] - t[j]) <= tol:
                return abs(np.linalg.norm(x[i] - x[j]) - np.linalg.norm(x[pi] - x[pj])) <= tol
            return True

        design = np.column_stack([xi, sigma * tau])
        for perm in _correspondences(S, pair_ok):
            rhs = xi[list(perm)] - xi
            u = np.linalg.lstsq(design, rhs, rcond=None)[0]
            omega = np.eye(3) + u[:3].T
            v = u[3]
            if not np.allclose(omega.T @ omega, np.eye(3), rtol=0, atol=tol):
                continue
            s = (1 - sigma) * tbar
            z = xbar - omega @ xbar - sigma * tbar * v
            yield GalileanIsometry(sigma, omega, v, s, z, check=False)


def point_set_symmetries(S: LabeledEventSet, group, max_points=8, tol=1e-9) -> list:
    """Symmetries of a finite labelled set, one per admissible correspondence.

    ``group`` is a :class:`QuadraticSpace` (affine isometries of that space) or
    the string ``"galilean"``. Each label-preserving correspondence that keeps
    the pairwise invariants is turned into an isometry by a least-norm linear
    solve, so off the span of the points the solution acts as the identity;
    solutions that are not group members or do not map the set onto itself are
    dropped. The identity is always included.
    """
    if len(S) > max_points:
        raise TooLarge(f"{len(S)} points exceed the limit of {max_points}")
    if isinstance(group, str):
        if group != "galilean":
            raise ValidationError(f"unknown group {group!r}")
        candidates = _galilean_candidates(S, tol)
        identity = gal.identity()
    else:
        candidates = _affine_candidates(S, group, tol)
        fspace = group.float_space()
        identity = AffineIsometry.translation_only(fspace, np.zeros(fspace.n))
    found = [identity]
    for g in candidates:
        if not _maps_onto_itself(g, S, tol * 100):
            continue
        if any(g.equals(h, tol * 100) for h in found):
            continue
        found.append(g)
    return found


def classify_isometry(g):
    if isinstance(g, GalileanIsometry):
        return gal.classify(g)
    return affine_mod.classify(g)


__all__ = [
    "ConeShape", "RigidBodySummary", "LabeledEventSet", "CandidateFamily", "ChiralityVerdict",
    "VerdictKind", "spinning_cone", "transform_summary", "world_tube_member", "sample_grid",
    "is_invariant", "chirality_verdict", "point_set_symmetries", "classify_isometry",
]
