"""scikit-learn style front end to the smash-product decomposition."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .representations import ComoduleAlgebra
from .structure_theorem import decompose
from .validation import check_matrix, check_samples, to_object_array


class SmashDecomposer(TransformerMixin, BaseEstimator):
    """Split a comodule algebra ``B`` as ``A # H`` along ``v: H -> B``.

    ``fit(B, v)`` runs the decomposition.  Afterwards ``transform`` maps
    coordinate rows of ``B`` to rows of ``A (x) H`` (that is ``Psi^-1``) and
    ``inverse_transform`` goes back (``Psi``).  Scalars stay exact; outputs
    are numpy object arrays.

    Parameters
    ----------
    verify : bool
        Run every check while decomposing; a failure raises
        :class:`~quasihopf.report.VerificationError`.
    """

    def __init__(self, verify: bool = True):
        self.verify = verify

    def fit(self, B: ComoduleAlgebra, v=None):
        if not isinstance(B, ComoduleAlgebra):
            raise TypeError(f"B must be a ComoduleAlgebra, got {type(B).__name__}")
        if v is None:
            raise ValueError("v (a comodule-algebra map H -> B) is required")
        field = B.B.field
        v = check_matrix(v, field, (B.B.dim, B.H.dim), name="v")
        D = decompose(B, v, verify=self.verify)
        self.decomposition_ = D
        self.module_algebra_ = D.A
        self.dim_A_ = D.A.A.dim
        self.psi_ = D.Psi
        self.psi_inv_ = D.Psi_inv
        self.theta_ = D.theta
        self.projection_ = D.E
        self.report_ = D.report
        self.field_ = field
        self.n_features_in_ = B.B.dim
        self.feature_names_out_ = np.array(D.smash.B.labels, dtype=object)
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self)
        rows = check_samples(X, self.field_, self.n_features_in_)
        return to_object_array(self.psi_inv_.apply(r) for r in rows)

    def inverse_transform(self, X) -> np.ndarray:
        check_is_fitted(self)
        rows = check_samples(X, self.field_, self.psi_.src_dim)
        return to_object_array(self.psi_.apply(r) for r in rows)

    def fit_transform(self, B, v=None, **fit_params) -> np.ndarray:
        """Fit, then return ``Psi^-1`` applied to every basis vector of ``B``."""
        self.fit(B, v)
        return to_object_array(self.psi_inv_.T.rows)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self)
        return self.feature_names_out_
