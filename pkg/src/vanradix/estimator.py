"""scikit-learn compatible wrapper around the fast transforms.

Each row of ``X`` is one input vector; the number of columns fixes ``N``::

    >>> import numpy as np
    >>> from vanradix import VandermondeTransformer
    >>> VandermondeTransformer(kind="vanc").fit_transform(np.ones((1, 4))).round(12)
    array([[4.+0.j, 0.+0.j, 0.+0.j, 0.+0.j]])
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_power_of_two, check_vectors
from .core import build_factors, make_spec
from .exceptions import LengthMismatch
from .transform import TransformKind, check_compatible, direct_matvec, transform


class VandermondeTransformer(TransformerMixin, BaseEstimator):
    """Multiply every sample by the Vandermonde matrix of equally spaced circular nodes.

    Parameters
    ----------
    kind : {"vanc", "vancc", "vancr", "vanccr"}
        Kernel; it also fixes the node direction (``vanc*``: clockwise
        unless the name has ``cc``).
    theta : float
        Rotation of the first node, reduced modulo 2 pi.
    radius : float
        Circle radius, >= 1. Only the ``r`` kinds accept values other than 1.
    method : {"fast", "direct"}
        ``"direct"`` uses the O(N^2) reference product.
    """

    def __init__(self, kind="vanc", theta=0.0, radius=1.0, method="fast"):
        self.kind = kind
        self.theta = theta
        self.radius = radius
        self.method = method

    def _as_2d(self, X):
        X = np.asarray(X)
        if X.ndim != 2:
            raise ValueError(f"expected 2-D input of shape (n_samples, N), got ndim={X.ndim}")
        return X

    def fit(self, X, y=None):
        X = self._as_2d(X)
        if self.method not in ("fast", "direct"):
            raise ValueError(f"method must be 'fast' or 'direct', got {self.method!r}")
        kind = TransformKind.parse(self.kind)
        check_power_of_two(X.shape[1])
        self.spec_ = make_spec(X.shape[1], self.theta, self.radius, kind.direction)
        self.kind_ = check_compatible(kind, self.spec_)
        self.factors_ = build_factors(self.spec_)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "spec_")
        X = self._as_2d(X)
        if X.shape[1] != self.n_features_in_:
            raise LengthMismatch(f"fitted for N={self.n_features_in_}, got {X.shape[1]} features")
        X = check_vectors(X, self.n_features_in_)
        if self.method == "direct":
            return direct_matvec(X, self.spec_)
        return transform(self.kind_, X, self.spec_)
