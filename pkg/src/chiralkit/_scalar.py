"""Helpers that let the same linear algebra run on float64 or on Fractions.

Exact arrays are numpy ``object`` arrays holding :class:`fractions.Fraction`.
"""
from fractions import Fraction  # noqa: F401 (re-exported)
from math import isqrt

import numpy as np


def is_exact(a):
    return isinstance(a, np.ndarray) and a.dtype == object


def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    # floats go through their exact binary value; callers wanting 1/10 pass "1/10"
    return Fraction(float(x))


def asarray(data, exact=False):
    if exact:
        arr = np.asarray(data, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx in np.ndindex(arr.shape):
            out[idx] = to_fraction(arr[idx])
        return out
    arr = np.asarray(data, dtype=object) if _has_str(data) else np.asarray(data)
    if arr.dtype == object:
        arr = np.vectorize(lambda v: float(Fraction(v)) if isinstance(v, str) else float(v),
                           otypes=[float])(arr)
    return arr.astype(float)


def _has_str(data):
    if isinstance(data, str):
        return True
    if isinstance(data, (list, tuple)):
        return any(_has_str(d) for d in data)
    return False


def to_float(a):
    return np.asarray(a, dtype=float) if is_exact(a) else a


def eye(n, exact=False):
    if exact:
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                out[i, j] = Fraction(int(i == j))
        return out
    return np.eye(n)


def zeros(shape, exact=False):
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape)


def max_abs(a):
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return np.max(np.abs(a))


def allclose(a, b, tol):
    """``max|a - b| <= tol``; exact arrays compare exactly when tol is 0."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        return False
    return bool(max_abs(a - b) <= tol)


def det(a):
    """Determinant; Gaussian elimination over Fractions for exact input."""
    if not is_exact(a):
        return float(np.linalg.det(a))
    m = [list(row) for row in a]
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        result *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return result


def solve(a, b):
    """Solve ``a x = b`` for square nonsingular ``a``; raises LinAlgError if singular."""
    if not (is_exact(a) or is_exact(b)):
        return np.linalg.solve(a, b)
    a = asarray(a, exact=True)
    b = asarray(b, exact=True)
    n = a.shape[0]
    vec = b.ndim == 1
    rhs = b.reshape(n, -1)
    m = np.concatenate([a, rhs], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r, col] != 0), None)
        if pivot is None:
            raise np.linalg.LinAlgError("singular matrix")
        if pivot != col:
            m[[col, pivot]] = m[[pivot, col]]
        m[col] = m[col] / m[col, col]
        for r in range(n):
            if r != col and m[r, col] != 0:
                m[r] = m[r] - m[r, col] * m[col]
    x = m[:, n:]
    return x.reshape(n) if vec else x


def exact_sqrt(x):
    """Square root of a nonnegative Fraction when it is rational, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def sqrt(x):
    """Exact square root when possible, float otherwise."""
    if isinstance(x, Fraction):
        r = exact_sqrt(x)
        if r is not None:
            return r
        return float(x) ** 0.5
    return float(np.sqrt(x))
