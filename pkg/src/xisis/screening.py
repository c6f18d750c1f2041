"""Marginal screening: score every predictor column, rank, select.

Selection comes in two flavors: keep the top d columns (with
``d = floor(n / log n)`` as the conventional default), or keep every
column whose score clears the threshold ``c * n**(-kappa)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import baselines, rankcorr
from .errors import DegenerateResponse, InvalidInput
from .validation import as_matrix, as_vector, check_binary, is_constant

__all__ = [
    "METHODS",
    "SENTINEL_SCORE",
    "DataMatrix",
    "ScoreVector",
    "ScreeningResult",
    "score_all",
    "top_d",
    "threshold_select",
    "default_d",
]

METHODS = ("xi", "pearson", "dcor", "xi_binary")

# Finite stand-in for "minus infinity": strictly below any attainable score,
# so degenerate columns always rank last and never pass a threshold.
SENTINEL_SCORE = -2.0


@dataclass(eq=False)
class DataMatrix:
    """An n x p predictor matrix with its response column.

    ``response_kind`` is "continuous" or "binary"; binary responses must
    take exactly the values 0 and 1 with both classes present. Column
    ``names`` default to x1..xp.
    """

    X: np.ndarray
    y: np.ndarray
    response_kind: str = "continuous"
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        self.X = as_matrix(self.X)
        self.y = as_vector(self.y, "y")
        n, p = self.X.shape
        if n < 2 or p < 1:
            raise InvalidInput(f"need n >= 2 and p >= 1, got n={n}, p={p}")
        if len(self.y) != n:
            raise InvalidInput(f"y has length {len(self.y)}, X has {n} rows")
        if self.response_kind not in ("continuous", "binary"):
            raise InvalidInput(f"unknown response_kind {self.response_kind!r}")
        if self.response_kind == "binary":
            check_binary(self.y)
        if self.names is None:
            self.names = tuple(f"x{j + 1}" for j in range(p))
        else:
            self.names = tuple(str(s) for s in self.names)
            if len(self.names) != p:
                raise InvalidInput(f"{len(self.names)} names for {p} columns")

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]


@dataclass(eq=False)
class ScoreVector:
    """Per-column marginal scores plus the method and tie seed that made them.

    ``warnings`` lists columns that could not be scored (constant columns);
    their entries hold :data:`SENTINEL_SCORE`.
    """

    scores: np.ndarray
    method: str
    tie_seed: int = 0
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def p(self) -> int:
        return len(self.scores)


@dataclass(eq=False)
class ScreeningResult:
    """Ranked columns and the selected subset.

    ``ranking`` is a permutation of 0..p-1 by descending score, ties broken
    toward the lower index. ``selected`` holds the chosen column indices in
    ascending order. ``selector`` echoes the selection rule parameters.
    """

    ranking: np.ndarray
    selected: np.ndarray
    selector: dict

    @property
    def support_mask(self) -> np.ndarray:
        mask = np.zeros(len(self.ranking), dtype=bool)
        mask[self.selected] = True
        return mask


def _pearson_batch(X: np.ndarray, y: np.ndarray, columns) -> np.ndarray:
    cx = X[:, columns] - X[:, columns].mean(axis=0)
    cy = y - y.mean()
    num = np.abs(cy @ cx)
    den = np.sqrt((cx * cx).sum(axis=0) * float(cy @ cy))
    return np.minimum(num / den, 1.0)


def _xi_binary_batch(X: np.ndarray, y: np.ndarray, columns) -> np.ndarray:
    n = X.shape[0]
    n1 = int(y.sum())
    n0 = n - n1
    cx = X[:, columns] - X[:, columns].mean(axis=0)
    return ((cx * cx).sum(axis=0) / n) / (n1 * n0 / n**2)


def score_all(data: DataMatrix, method: str = "xi", tie_seed: int = 0) -> ScoreVector:
    """Score every predictor column of ``data`` against its response.

    Only the "xi" method consumes randomness (to break ties in x); its
    per-column streams are keyed by ``(tie_seed, column index)``, so scores
    are bit-identical however the columns are scheduled. Constant columns
    get :data:`SENTINEL_SCORE` plus a warning instead of failing the run.

    Raises
    ------
    DegenerateResponse
        If the response is constant.
    InvalidInput
        If the method does not apply to the response kind ("xi_binary"
        needs a binary response).
    """
    if method not in METHODS:
        raise InvalidInput(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "xi_binary" and data.response_kind != "binary":
        raise InvalidInput("method 'xi_binary' requires a binary response")
    if is_constant(data.y):
        raise DegenerateResponse("response is constant; nothing to screen")

    n, p = data.X.shape
    const = np.array([is_constant(data.X[:, k]) for k in range(p)])
    live = np.flatnonzero(~const)
    scores = np.full(p, SENTINEL_SCORE)
    warnings = tuple(
        f"column {k} ({data.names[k]}) is constant; assigned sentinel score"
        for k in np.flatnonzero(const)
    )
    if len(live):
        if method == "xi":
            vals = rankcorr.batch_xi_scores(data.X, data.y, tie_seed, columns=live)
        elif method == "pearson":
            vals = _pearson_batch(data.X, data.y, live)
        elif method == "dcor":
            vals = baselines.batch_dcor_scores(data.X, data.y, columns=live)
        else:
            vals = _xi_binary_batch(data.X, data.y, live)
        scores[live] = vals
    return ScoreVector(scores=scores, method=method, tie_seed=tie_seed, warnings=warnings)


def _ranking(scores: np.ndarray) -> np.ndarray:
    # Stable sort on negated scores: descending, ties keep index order.
    return np.argsort(-scores, kind="stable")


def top_d(scores: ScoreVector, d: int) -> ScreeningResult:
    """Keep the d highest-scoring columns (all of them if d >= p)."""
    if d < 1:
        raise InvalidInput(f"d must be at least 1, got {d}")
    ranking = _ranking(scores.scores)
    selected = np.sort(ranking[: min(d, scores.p)])
    return ScreeningResult(
        ranking=ranking,
        selected=selected,
        selector={"kind": "top_d", "d": int(d)},
    )


def threshold_select(scores: ScoreVector, c: float, kappa: float, n: int) -> ScreeningResult:
    """Keep every column whose score is at least ``c * n**(-kappa)``.

    The selection may be empty. ``kappa`` must lie in (0, 1/2).
    """
    if not 0.0 < kappa < 0.5:
        raise InvalidInput(f"kappa must lie in (0, 1/2), got {kappa}")
    if c <= 0.0:
        raise InvalidInput(f"c must be positive, got {c}")
    if n < 2:
        raise InvalidInput(f"n must be at least 2, got {n}")
    cutoff = c * float(n) ** (-kappa)
    ranking = _ranking(scores.scores)
    selected = np.flatnonzero(scores.scores >= cutoff)
    return ScreeningResult(
        ranking=ranking,
        selected=selected,
        selector={
            "kind": "threshold",
            "c": float(c),
            "kappa": float(kappa),
            "n": int(n),
            "cutoff": cutoff,
        },
    )


def default_d(n: int) -> int:
    """Conventional selection size floor(n / log n), natural log, at least 1."""
    if n < 2:
        raise InvalidInput(f"n must be at least 2, got {n}")
    return max(1, math.floor(n / math.log(n)))
