from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chiralkit.errors import DimensionMismatch, NullSupportingVector, ValidationError
from chiralkit.quadspace import (QuadraticSpace, Signature, VectorSign, eval_q, interval,
                                 reflection, vector_sign)

from conftest import random_support


def test_eval_q_examples():
    s11 = QuadraticSpace.of(1, 1)
    assert eval_q(s11, [1, 0]) == 1
    assert eval_q(s11, [1, 1]) == 0
    assert eval_q(QuadraticSpace.of(1, 3), [2, 1, 1, 1]) == 1


def test_interval_examples():
    s11 = QuadraticSpace.of(1, 1)
    assert interval(s11, [1, 0], [0, 0]) == 1
    assert interval(s11, [0.3, 0.7], [0.3, 0.7]) == 0
    assert interval(QuadraticSpace.of(1, 3), [1, 1, 0, 0], [0, 0, 0, 0]) == 0


def test_reflection_examples():
    s11 = QuadraticSpace.of(1, 1, exact=True)
    assert (reflection(s11, [1, 0]).matrix == np.diag([-1, 1])).all()
    assert (reflection(s11, [0, 1]).matrix == np.diag([1, -1])).all()
    s03 = QuadraticSpace.of(0, 3)
    r = reflection(s03, [0, 0, 1]).matrix
    np.testing.assert_allclose(r, np.diag([1, 1, -1]))
    np.testing.assert_allclose(r @ r, np.eye(3))
    np.testing.assert_allclose(r.T @ s03.metric @ r, s03.metric)


def test_vector_sign_examples():
    s11 = QuadraticSpace.of(1, 1)
    assert vector_sign(s11, [1, 0]) is VectorSign.POSITIVE
    assert vector_sign(s11, [1, 1]) is VectorSign.NULL
    assert vector_sign(QuadraticSpace.of(1, 3), [0, 1, 0, 0]) is VectorSign.NEGATIVE


def test_errors():
    s11 = QuadraticSpace.of(1, 1)
    with pytest.raises(DimensionMismatch):
        eval_q(s11, [1, 2, 3])
    with pytest.raises(DimensionMismatch):
        interval(s11, [1, 2], [1, 2, 3])
    with pytest.raises(NullSupportingVector):
        reflection(s11, [1, 1])
    with pytest.raises(ValidationError):
        Signature(-1, 2)


def test_exact_mode_uses_fractions():
    s = QuadraticSpace.of(1, 1, exact=True)
    assert s.tolerance == 0
    assert eval_q(s, ["1/2", "1/3"]) == Fraction(1, 4) - Fraction(1, 9)


def test_reflection_preserves_q_and_is_involution(rng):
    for p, q in [(1, 1), (1, 3), (2, 2), (3, 0)]:
        space = QuadraticSpace.of(p, q)
        for _ in range(50):
            r = reflection(space, random_support(space, rng)).matrix
            x = rng.normal(size=space.n)
            assert abs(eval_q(space, r @ x) - eval_q(space, x)) <= 1e-9 * max(1, x @ x)
            np.testing.assert_allclose(r @ r, np.eye(space.n), atol=1e-9)


ints = st.integers(-20, 20)


@settings(max_examples=200, deadline=None)
@given(st.lists(ints, min_size=8, max_size=8), st.lists(ints, min_size=4, max_size=4))
def test_interval_translation_invariance_exact(xy, t):
    s = QuadraticSpace.of(1, 3, exact=True)
    x, y, t = np.array(xy[:4]), np.array(xy[4:]), np.array(t)
    assert interval(s, x + t, y + t) == interval(s, x, y)


@settings(max_examples=200, deadline=None)
@given(st.lists(ints, min_size=4, max_size=4),
       st.fractions(min_value=-10, max_value=10).filter(lambda f: f != 0))
def test_vector_sign_scale_invariance_exact(w, lam):
    s = QuadraticSpace.of(2, 2, exact=True)
    w = s.vector(w)
    assert vector_sign(s, w * lam) is vector_sign(s, w)
