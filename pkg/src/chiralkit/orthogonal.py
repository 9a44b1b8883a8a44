"""Elements of O(p,q): membership, reflection factorization, parity pair,
classification and square-root witnesses for direct elements.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _scalar
from .classify import DIRECT, INDIRECT, Classification, ClassifiedGroup
from .errors import (InternalInconsistency, NotOrthogonal, NumericalBreakdown,
                     SpaceMismatch, WitnessUnavailable)
from .quadspace import QuadraticSpace, VectorSign, reflection_matrix, vector_sign

RECONSTRUCTION_TOL = 1e-8
# relative Gram determinant below which a pairing plane counts as degenerate
PLANE_TOL = 1e-2
# trace + 2 below which an elliptic pair is split into a quarter turn and a remainder
HALF_TURN_TOL = 1e-6


class OrthogonalMap:
    """A matrix ``M`` with ``M^T G M = G`` in a given quadratic space."""

    __slots__ = ("space", "matrix")

    def __init__(self, space: QuadraticSpace, matrix, check=True):
        self.space = space
        self.matrix = space.matrix(matrix)
        if check and not is_member(space, self.matrix):
            raise NotOrthogonal(
                f"matrix violates M^T G M = G beyond tolerance {space.tolerance}")

    def __matmul__(self, other: "OrthogonalMap") -> "OrthogonalMap":
        if other.space.signature != self.space.signature:
            raise SpaceMismatch("cannot compose maps of different signatures")
        space = self.space if self.space.exact and other.space.exact else self.space.float_space()
        a, b = self.matrix, other.matrix
        if space.exact is False:
            a, b = _scalar.to_float(a), _scalar.to_float(b)
        return OrthogonalMap(space, a @ b, check=False)

    def inverse(self) -> "OrthogonalMap":
        g = self.space.diag
        return OrthogonalMap(self.space, (g[:, None] * self.matrix.T) * g[None, :], check=False)

    def apply(self, x):
        return self.matrix @ self.space.vector(x)

    def det(self):
        return _scalar.det(self.matrix)

    def equals(self, other: "OrthogonalMap", tol=None) -> bool:
        tol = self.space.tolerance if tol is None else tol
        return _scalar.allclose(self.matrix, other.matrix, tol)

    def __repr__(self):
        return f"OrthogonalMap({self.space.signature.p},{self.space.signature.q}, {self.matrix.tolist()})"


@dataclass(frozen=True)
class ParityPair:
    total_parity: int
    negative_parity: int

    def __add__(self, other: "ParityPair") -> "ParityPair":
        return ParityPair((self.total_parity + other.total_parity) % 2,
                          (self.negative_parity + other.negative_parity) % 2)

    def as_tuple(self):
        return (self.total_parity, self.negative_parity)

    @property
    def classification(self) -> Classification:
        return DIRECT if self.as_tuple() == (0, 0) else INDIRECT


@dataclass(frozen=True)
class ReflectionFactorization:
    """``M = reflection(u_1) @ ... @ reflection(u_k)``."""

    space: QuadraticSpace
    supports: tuple
    signs: tuple

    def __len__(self):
        return len(self.supports)

    @property
    def parity(self) -> ParityPair:
        neg = sum(s is VectorSign.NEGATIVE for s in self.signs)
        return ParityPair(len(self.supports) % 2, neg % 2)

    def reconstruct(self):
        out = self.space.identity()
        for u in self.supports:
            out = out @ reflection_matrix(self.space, u)
        return out


def is_member(space: QuadraticSpace, m) -> bool:
    """``M^T G M = G`` within ``tol * max(1, max|M|^2)``; rounding in the Gram
    matrix grows with the square of the entries."""
    m = np.asarray(m)
    if m.shape != (space.n, space.n):
        return False
    g = space.diag
    gram = (m.T * g) @ m
    tol = space.tolerance
    if tol:
        tol = tol * max(1.0, float(_scalar.max_abs(m)) ** 2)
    return _scalar.allclose(gram, space.metric, tol)


def _as_map(m, space=None) -> OrthogonalMap:
    if isinstance(m, OrthogonalMap):
        return m
    return OrthogonalMap(space, m)


def decompose(m: OrthogonalMap, pivot_order=None) -> ReflectionFactorization:
    """Factor ``m`` into at most ``2n`` reflections by pivot elimination.

    For each pivot basis vector ``e`` with current image ``x != e`` the
    reflection in ``x - e`` sends ``x`` to ``e``; when ``x - e`` is null (or the
    smaller of the two candidates) the pair ``x + e`` then ``e`` is used.
    """
    m = _as_map(m)
    space = m.space
    if not is_member(space, m.matrix):
        raise NotOrthogonal(f"matrix violates M^T G M = G beyond tolerance {space.tolerance}")
    n = space.n
    g = space.diag
    tol = space.tolerance
    exact = space.exact
    order = range(n) if pivot_order is None else list(pivot_order)
    if sorted(order) != list(range(n)):
        raise ValueError("pivot_order must be a permutation of range(n)")

    cur = m.matrix.copy()
    supports, signs = [], []
    for i in order:
        e = _scalar.zeros(n, exact)
        e[i] = Fraction(1) if exact else 1.0
        x = cur[:, i]
        if _scalar.allclose(x, e, tol * max(1.0, float(_scalar.max_abs(x)))):
            continue
        d = x - e
        s = x + e
        qd = (g * d * d).sum()
        qs = (g * s * s).sum()
        ok_d = abs(qd) > tol * (d * d).sum()
        ok_s = abs(qs) > tol * (s * s).sum()
        if ok_d and (not ok_s or abs(qd) >= abs(qs)):
            step = [(d, qd)]
        elif ok_s:
            step = [(s, qs), (e, g[i])]
        else:
            raise NumericalBreakdown(
                f"both candidate supports at pivot {i} are isotropic within tolerance {tol}",
                tolerance=tol)
        for u, qu in step:
            if not exact:
                scale = np.sqrt(abs(qu))
                u = u / scale
                qu = qu / (scale * scale)
            cur = cur - np.outer(u, (g * u) @ cur) * (2 / qu)
            supports.append(u)
            signs.append(VectorSign.POSITIVE if qu > 0 else VectorSign.NEGATIVE)
    # the residual map must be the identity, otherwise the tolerance hid a pivot
    bound = max(RECONSTRUCTION_TOL * max(1.0, float(_scalar.max_abs(m.matrix)) ** 2), tol)
    if not _scalar.allclose(cur, _scalar.eye(n, exact), 0 if exact else bound):
        raise NumericalBreakdown(
            f"reflections leave a residual above {bound:.3g}; tolerance {tol} is too loose",
            tolerance=tol)
    return ReflectionFactorization(space, tuple(supports), tuple(signs))


def parity_pair(m: OrthogonalMap, pivot_order=None) -> ParityPair:
    fac = decompose(m, pivot_order)
    pp = fac.parity
    d = _as_map(m).det()
    if (d > 0) != (pp.total_parity == 0):
        raise InternalInconsistency(
            f"reflection count parity {pp.total_parity} disagrees with det {d}")
    return pp


def classify(m: OrthogonalMap) -> Classification:
    return parity_pair(m).classification


# ---------------------------------------------------------------- witnesses

def _reflect_vector(space, v, u):
    g = space.diag
    return v - u * (2 * (g * v * u).sum() / (g * u * u).sum())


def _group_by_sign(space, supports, signs):
    """Move negative supports behind positive ones with r_u r_v = r_v r_{r_v(u)}."""
    supports = list(supports)
    signs = list(signs)
    changed = True
    while changed:
        changed = False
        for i in range(len(supports) - 1):
            if signs[i] is VectorSign.NEGATIVE and signs[i + 1] is VectorSign.POSITIVE:
                u, v = supports[i], supports[i + 1]
                supports[i], supports[i + 1] = v, _reflect_vector(space, u, v)
                signs[i], signs[i + 1] = signs[i + 1], signs[i]
                changed = True
    return supports, signs


def _plane_conditioning(space, a, b):
    """|det Gram(a,b)| / |Q(a) Q(b)|; zero for parallel or degenerate planes."""
    g = space.diag
    qa, qb, bab = (g * a * a).sum(), (g * b * b).sum(), (g * a * b).sum()
    return abs(qa * qb - bab * bab) / abs(qa * qb)


def _plane_ok(space, a, b):
    c = _plane_conditioning(space, a, b)
    return c > 0 if space.exact else c > PLANE_TOL


def _bridge_vector(space, a, b, sign):
    """A support ``c`` of the given sign with well-conditioned planes (a,c), (c,b)."""
    n = space.n
    g = space.diag
    candidates = []
    for i in range(n):
        e = _scalar.zeros(n, space.exact)
        e[i] = Fraction(1) if space.exact else 1.0
        candidates.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            for k in (2, 3):
                c = _scalar.zeros(n, space.exact)
                c[i] = k
                c[j] = 1
                candidates.append(c)
    rng = np.random.default_rng(0)
    for _ in range(64):
        v = rng.integers(-4, 5, size=n)
        candidates.append(_scalar.asarray(v, exact=space.exact))
    for c in candidates:
        qc = (g * c * c).sum()
        if qc == 0 or (qc > 0) != (sign is VectorSign.POSITIVE):
            continue
        if vector_sign(space, c) is VectorSign.NULL:
            continue
        if _plane_ok(space, a, c) and _plane_ok(space, c, b):
            return c
    raise NumericalBreakdown(
        "no bridging support found for a degenerate pairing plane", tolerance=PLANE_TOL)


def _plane_square_roots(space, a, b):
    """Matrices W with prod(W_i^2) = r_a r_b, acting as identity off span(a, b)."""
    n = space.n
    g = space.diag
    exact = space.exact
    A = np.column_stack([a, b])
    AtG = A.T * g
    gram = AtG @ A
    prod = reflection_matrix(space, a) @ reflection_matrix(space, b)
    m = _scalar.solve(gram, AtG @ prod @ A)
    back = _scalar.solve(gram, AtG)  # coordinates in (a, b) of a vector's projection
    eye_n = _scalar.eye(n, exact)
    eye_2 = _scalar.eye(2, exact)

    def extend(w):
        return eye_n - A @ back + A @ w @ back

    tr = m[0, 0] + m[1, 1]
    half_turn = tr + 2 == 0 if exact else tr + 2 < HALF_TURN_TOL
    if not half_turn:
        root = _scalar.sqrt(tr + 2)
        if exact and not isinstance(root, _scalar.Fraction):
            A, back, m = (_scalar.to_float(x) for x in (A, back, m))
            eye_n, eye_2 = np.eye(n), np.eye(2)
        return [extend((m + eye_2) / root)]

    # elliptic plane rotated by (about) pi: a quarter turn J plus the root of -m
    fA, fgram, fm = (_scalar.to_float(x) for x in (A, gram, m))
    fback = _scalar.to_float(back)
    if np.linalg.det(fgram) <= 0:
        raise NumericalBreakdown("half turn in a non-definite plane", tolerance=HALF_TURN_TOL)
    sgn = 1.0 if fgram[0, 0] > 0 else -1.0
    L = np.linalg.cholesky(sgn * fgram)
    J = np.linalg.solve(L.T, np.array([[0.0, -1.0], [1.0, 0.0]]) @ L.T)
    rest = (np.eye(2) - fm) / np.sqrt(2 - np.trace(fm))
    fextend = lambda w: np.eye(n) - fA @ fback + fA @ w @ fback  # noqa: E731
    out = [fextend(J)]
    if not np.allclose(rest, np.eye(2), rtol=0, atol=1e-15):
        out.append(fextend(rest))
    return out


def direct_witness(m: OrthogonalMap) -> list[OrthogonalMap]:
    """Maps ``W_1..W_m`` with ``W_1^2 @ ... @ W_m^2 == m``.

    Supports are grouped by sign, paired, and each pair's product (a rotation
    or a boost in the plane it spans) is replaced by its in-plane square root.
    Roots that are irrational in exact mode come back as float maps.
    """
    m = _as_map(m)
    space = m.space
    fac = decompose(m)
    if fac.parity.classification is not DIRECT:
        raise WitnessUnavailable("indirect isometries are not products of squares")
    supports, signs = _group_by_sign(space, fac.supports, fac.signs)
    pairs = []
    for i in range(0, len(supports), 2):
        a, b = supports[i], supports[i + 1]
        prod = reflection_matrix(space, a) @ reflection_matrix(space, b)
        if _scalar.allclose(prod, space.identity(), space.tolerance):
            continue
        if _plane_ok(space, a, b):
            pairs.append((a, b))
        else:
            c = _bridge_vector(space, a, b, signs[i])
            pairs.extend([(a, c), (c, b)])
    witnesses = []
    for a, b in pairs:
        for w in _plane_square_roots(space, a, b):
            if _scalar.is_exact(w):
                witnesses.append(OrthogonalMap(space, w, check=False))
            else:
                witnesses.append(OrthogonalMap(space.float_space(), w, check=False))
    recon = _scalar.eye(space.n)
    for w in witnesses:
        fw = _scalar.to_float(w.matrix)
        recon = recon @ fw @ fw
    target = _scalar.to_float(m.matrix)
    err = float(_scalar.max_abs(recon - target))
    bound = max(RECONSTRUCTION_TOL * max(1.0, float(_scalar.max_abs(target)) ** 2),
                space.tolerance)
    if err > bound:
        raise NumericalBreakdown(f"witness reconstruction error {err:.3e} exceeds {bound:.3g}",
                                 tolerance=bound)
    return witnesses


def orthogonal_group(space: QuadraticSpace) -> ClassifiedGroup:
    """O(p,q) as a :class:`ClassifiedGroup` over :class:`OrthogonalMap`."""
    return ClassifiedGroup(
        name=f"O({space.signature.p},{space.signature.q})",
        compose=lambda a, b: a @ b,
        inverse=lambda a: a.inverse(),
        identity=lambda: OrthogonalMap(space, space.identity(), check=False),
        equal=lambda a, b, tol: a.equals(b, tol),
        classify=classify,
        witness=direct_witness,
        invariant=lambda a: parity_pair(a).as_tuple(),
        euclidean_mode=space.signature.q == 0 or space.signature.p == 0,
    )
