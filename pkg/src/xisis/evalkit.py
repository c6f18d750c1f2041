"""Evaluation utilities: CV fold assignment, prediction-error aggregation,
and binary classification metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, UndefinedMetric
from .validation import as_vector

__all__ = [
    "FoldPlan",
    "ConfusionCounts",
    "cv_folds",
    "cv_rmse",
    "confusion_counts",
    "precision_recall_f",
    "f_measure",
]


@dataclass(eq=False)
class FoldPlan:
    """Fold label (0..K-1) for each of n observations; sizes differ by <= 1."""

    assignments: np.ndarray

    @property
    def n_folds(self) -> int:
        return int(self.assignments.max()) + 1

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments != fold)


def cv_folds(n: int, k: int, seed: int = 0) -> FoldPlan:
    """Random balanced partition of n observations into k folds."""
    if not 2 <= k <= n:
        raise InvalidInput(f"need 2 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    assignments = np.empty(n, dtype=np.int64)
    assignments[rng.permutation(n)] = np.arange(n) % k
    return FoldPlan(assignments=assignments)


def cv_rmse(y_true, y_pred) -> float:
    """Root mean squared error of pooled held-out predictions."""
    yt = as_vector(y_true, "y_true")
    yp = as_vector(y_pred, "y_pred")
    if len(yt) != len(yp):
        raise InvalidInput(f"length mismatch: {len(yt)} vs {len(yp)}")
    return math.sqrt(float(((yt - yp) ** 2).mean()))


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion_counts(y_true, y_pred) -> ConfusionCounts:
    """Confusion counts for 0/1 vectors (positive class is 1)."""
    yt = as_vector(y_true, "y_true")
    yp = as_vector(y_pred, "y_pred")
    if len(yt) != len(yp):
        raise InvalidInput(f"length mismatch: {len(yt)} vs {len(yp)}")
    for name, v in (("y_true", yt), ("y_pred", yp)):
        if not np.all((v == 0.0) | (v == 1.0)):
            raise InvalidInput(f"{name} must contain only 0 and 1")
    tp = int(np.sum((yt == 1.0) & (yp == 1.0)))
    fp = int(np.sum((yt == 0.0) & (yp == 1.0)))
    fn = int(np.sum((yt == 1.0) & (yp == 0.0)))
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=len(yt) - tp - fp - fn)


def f_measure(precision: float, recall: float) -> float:
    """Harmonic mean 2pr/(p+r); zero when both rates are zero."""
    if precision == 0.0 and recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def precision_recall_f(counts: ConfusionCounts) -> tuple[float, float, float]:
    """(precision, recall, F-measure) from confusion counts.

    With tp = 0 but positives both predicted and present, all three
    metrics are 0 by convention. A zero denominator (no predicted
    positives, or no actual positives) raises UndefinedMetric naming the
    ratio.
    """
    if counts.tp + counts.fp == 0:
        raise UndefinedMetric("precision is undefined: no predicted positives")
    if counts.tp + counts.fn == 0:
        raise UndefinedMetric("recall is undefined: no actual positives")
    precision = counts.tp / (counts.tp + counts.fp)
    recall = counts.tp / (counts.tp + counts.fn)
    return precision, recall, f_measure(precision, recall)
