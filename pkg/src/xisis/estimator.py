"""scikit-learn adapter: marginal screening as a feature selector.

Wraps the scoring and selection routines in the standard
fit/transform/get_support surface so screening drops into pipelines next
to any downstream estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.feature_selection import SelectorMixin
from sklearn.utils.validation import check_is_fitted, check_X_y

from .screening import DataMatrix, default_d, score_all, threshold_select, top_d

__all__ = ["XiSisScreener"]


class XiSisScreener(SelectorMixin, BaseEstimator):
    """Select predictor columns by a marginal dependence score.

    Parameters
    ----------
    method : {"xi", "pearson", "dcor", "xi_binary"}, default "xi"
        Marginal score applied to every column. "xi" handles continuous
        and binary responses alike; "xi_binary" requires a 0/1 response.
    d : int or "auto", default "auto"
        Number of columns to keep. "auto" uses floor(n / log n).
        Ignored when ``threshold`` is given.
    threshold : tuple (c, kappa), optional
        Keep columns scoring at least ``c * n**(-kappa)`` instead of a
        fixed count. ``kappa`` must lie in (0, 1/2).
    tie_seed : int, default 0
        Seed for the random tie-breaking used by the "xi" score.

    Attributes
    ----------
    scores_ : ndarray of shape (n_features,)
        Marginal score of each column.
    ranking_ : ndarray of shape (n_features,)
        Column indices ordered by descending score.
    support_ : ndarray of bool, shape (n_features,)
        Mask of selected columns.

    Examples
    --------
    >>> import numpy as np
    >>> rng = np.random.default_rng(0)
    >>> X = rng.normal(size=(100, 8))
    >>> y = np.sin(3 * X[:, 2]) + 0.1 * rng.normal(size=100)
    >>> XiSisScreener(d=1).fit(X, y).get_support(indices=True)
    array([2])
    """

    def __init__(self, method="xi", d="auto", threshold=None, tie_seed=0):
        self.method = method
        self.d = d
        self.threshold = threshold
        self.tie_seed = tie_seed

    def fit(self, X, y):
        """Score all columns of X against y and fix the selected set."""
        X, y = check_X_y(X, y, dtype=np.float64, y_numeric=True)
        vals = np.unique(y)
        kind = "binary" if len(vals) == 2 and vals[0] == 0.0 and vals[1] == 1.0 else "continuous"
        data = DataMatrix(X, y, response_kind=kind)
        sv = score_all(data, method=self.method, tie_seed=self.tie_seed)
        if self.threshold is not None:
            c, kappa = self.threshold
            result = threshold_select(sv, c, kappa, data.n)
        else:
            d = default_d(data.n) if self.d == "auto" else int(self.d)
            result = top_d(sv, d)
        self.n_features_in_ = data.p
        self.scores_ = sv.scores
        self.score_warnings_ = sv.warnings
        self.ranking_ = result.ranking
        self.selector_ = result.selector
        self.support_ = result.support_mask
        return self

    def _get_support_mask(self):
        check_is_fitted(self, "support_")
        return self.support_
