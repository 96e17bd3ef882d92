from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from cached import smash
from quasihopf.estimator import SmashDecomposer
from quasihopf.fields import QQ
from quasihopf.linalg import LinearMap
from quasihopf.report import PreconditionError


@pytest.fixture(scope="module")
def fitted():
    CA, j = smash("h2", "id")
    return SmashDecomposer().fit(CA, j), CA, j


def test_fitted_attributes(fitted):
    est, CA, _ = fitted
    assert est.dim_A_ == 2
    assert est.n_features_in_ == CA.B.dim
    assert est.report_.ok
    assert list(est.get_feature_names_out()) == list(est.decomposition_.smash.B.labels)


def test_transform_inverts(fitted):
    est, CA, _ = fitted
    X = [[1, 2, 3, 4], [Fraction(1, 2), 0, "-1/3", 7]]
    Y = est.transform(X)
    assert Y.dtype == object and Y.shape == (2, 4)
    back = est.inverse_transform(Y)
    assert [[QQ(x) for x in row] for row in X] == back.tolist()


def test_fit_transform_is_psi_inverse_on_basis():
    CA, j = smash("z2", "id")
    est = SmashDecomposer()
    Y = est.fit_transform(CA, j)
    assert Y.tolist() == [list(r) for r in est.psi_inv_.T.rows]


def test_params_and_clone():
    est = SmashDecomposer(verify=False)
    assert est.get_params() == {"verify": False}
    assert clone(est).get_params() == {"verify": False}


def test_not_fitted():
    with pytest.raises(NotFittedError):
        SmashDecomposer().transform([[1, 0]])


def test_input_validation(fitted):
    est, CA, j = fitted
    with pytest.raises(ValueError):
        est.transform([[1, 2, 3]])
    with pytest.raises(TypeError):
        est.transform([[1.5, 0, 0, 0]])
    with pytest.raises(ValueError):
        est.transform([1, 2, 3, 4])
    with pytest.raises(ValueError):
        SmashDecomposer().fit(CA)
    with pytest.raises(TypeError):
        SmashDecomposer().fit(CA.B, j)
    with pytest.raises(ValueError):
        SmashDecomposer().fit(CA, np.eye(4, dtype=int))


def test_precondition_surfaces(fitted):
    CA, _ = smash("h2", "triv")
    with pytest.raises(PreconditionError):
        SmashDecomposer().fit(CA, LinearMap([[1, 0], [0, -1]], QQ))


def test_numpy_integer_input():
    CA, j = smash("z2", "triv")
    est = SmashDecomposer().fit(CA, np.array(j.rows, dtype=object))
    assert est.transform(np.array([[3, 4]])).tolist() == [[3, 4]]
