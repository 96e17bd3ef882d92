from fractions import Fraction

import numpy as np
import pytest

from quasihopf.fields import GF, QQ
from quasihopf.linalg import LinearMap
from quasihopf.validation import (check_matrix, check_samples, check_scalar, check_vector,
                                  to_object_array)


@pytest.mark.parametrize("x, expected", [(3, Fraction(3)), ("2/6", Fraction(1, 3)),
                                         (np.int64(5), Fraction(5)), (Fraction(1, 2), Fraction(1, 2))])
def test_check_scalar_accepts_exact_values(x, expected):
    assert check_scalar(x, QQ) == expected


@pytest.mark.parametrize("x", [0.5, np.float64(1.0), True, None, object()])
def test_check_scalar_rejects(x):
    with pytest.raises(TypeError):
        check_scalar(x, QQ)


def test_check_scalar_reduces_mod_p():
    assert check_scalar(Fraction(1, 2), GF(7)) == GF(7)(4)


def test_check_vector_length():
    assert check_vector([1, 2], QQ, 2) == (1, 2)
    with pytest.raises(ValueError):
        check_vector([1, 2], QQ, 3)
    with pytest.raises(ValueError):
        check_vector(np.zeros((2, 2), dtype=int), QQ)
    with pytest.raises(TypeError):
        check_vector(5, QQ)


def test_check_samples_requires_2d():
    assert check_samples([[1, 2]], QQ, 2) == [(1, 2)]
    with pytest.raises(ValueError):
        check_samples([1, 2], QQ, 2)


def test_check_matrix():
    m = check_matrix([[1, 0], [0, "1/2"]], QQ, (2, 2))
    assert isinstance(m, LinearMap) and m.rows[1][1] == Fraction(1, 2)
    assert check_matrix(m, QQ) is m
    with pytest.raises(ValueError):
        check_matrix(m, QQ, (2, 3))
    with pytest.raises(ValueError):
        check_matrix(m, GF(7))
    with pytest.raises(ValueError):
        check_matrix(np.zeros(3, dtype=int), QQ)


def test_to_object_array_keeps_fractions():
    a = to_object_array([(Fraction(1, 3), 2)])
    assert a.dtype == object and a[0, 0] == Fraction(1, 3)
