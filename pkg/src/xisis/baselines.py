"""Competing marginal utility scores: Pearson, distance correlation,
point-biserial.

These are the classical screeners the rank-based coefficient is compared
against: absolute marginal Pearson correlation (Fan and Lv 2008) and the
empirical distance correlation (Szekely, Rizzo and Bakirov 2007; Li, Zhong
and Zhu 2012).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateInput
from .validation import as_sample, check_binary, is_constant

__all__ = ["pearson_score", "dcor_score", "point_biserial"]


def pearson_score(x, y) -> float:
    """Absolute sample Pearson correlation, in [0, 1].

    Screening only cares about the magnitude of the linear association, so
    the sign is dropped.
    """
    xa, ya = as_sample(x, y)
    if is_constant(xa):
        raise DegenerateInput("x is constant; Pearson correlation is undefined")
    if is_constant(ya):
        raise DegenerateInput("y is constant; Pearson correlation is undefined")
    cx = xa - xa.mean()
    cy = ya - ya.mean()
    r = float(cx @ cy) / math.sqrt(float(cx @ cx) * float(cy @ cy))
    return min(abs(r), 1.0)


def _centered_distances(v: np.ndarray) -> np.ndarray:
    d = np.abs(v[:, None] - v[None, :])
    row = d.mean(axis=1, keepdims=True)
    return d - row - row.T + d.mean()


def dcor_score(x, y) -> float:
    """Empirical distance correlation between two scalar samples, in [0, 1].

    Uses the biased V-statistic with double-centered distance matrices,
    the estimator behind the original distance-correlation screening
    results. Symmetric in (x, y). Time and memory are O(n^2).
    """
    xa, ya = as_sample(x, y)
    if is_constant(xa) or is_constant(ya):
        raise DegenerateInput("constant input; distance correlation is undefined")
    A = _centered_distances(xa)
    B = _centered_distances(ya)
    dcov2 = max(float((A * B).mean()), 0.0)
    dvar_x = float((A * A).mean())
    dvar_y = float((B * B).mean())
    return min(math.sqrt(dcov2 / math.sqrt(dvar_x * dvar_y)), 1.0)


def batch_dcor_scores(X, y, columns=None, block: int = 32) -> np.ndarray:
    """Distance correlation of y against each requested column of X.

    Same estimator as :func:`dcor_score`; the response's centered distance
    matrix is built once and predictor columns are processed in blocks to
    bound the O(block * n^2) working memory.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if columns is None:
        columns = range(X.shape[1])
    columns = np.asarray(list(columns), dtype=np.intp)
    n = len(y)
    B = _centered_distances(y)
    dvar_y = float((B * B).mean())
    if dvar_y <= 0.0:
        raise DegenerateInput("constant input; distance correlation is undefined")
    b_flat = np.ascontiguousarray(B.ravel())
    out = np.empty(len(columns))
    for start in range(0, len(columns), block):
        cols = columns[start : start + block]
        V = np.ascontiguousarray(X[:, cols].T)
        D = np.abs(V[:, :, None] - V[:, None, :])
        row = D.mean(axis=2, keepdims=True)
        grand = row.mean(axis=1, keepdims=True)
        D -= row
        D -= row.transpose(0, 2, 1)
        D += grand
        flat = D.reshape(len(cols), -1)
        dcov2 = np.maximum(flat @ b_flat, 0.0) / (n * n)
        dvar_x = np.einsum("ij,ij->i", flat, flat) / (n * n)
        out[start : start + len(cols)] = np.sqrt(dcov2 / np.sqrt(dvar_x * dvar_y))
    return np.minimum(out, 1.0)


def point_biserial(x, y) -> float:
    """Point-biserial correlation of a numeric x with a 0/1 response y.

    r_pb = ((mean1 - mean0) / s_x) * sqrt(n * p0 * p1 / (n - 1)) with s_x
    the n-1 sample standard deviation and p0, p1 the class proportions.
    Equals the Pearson correlation of x with the 0/1 labels.
    """
    xa, ya = as_sample(x, y)
    check_binary(ya)
    if is_constant(xa):
        raise DegenerateInput("x is constant; point-biserial is undefined")
    n = len(xa)
    n1 = int(ya.sum())
    n0 = n - n1
    mean1 = float(xa[ya == 1.0].mean())
    mean0 = float(xa[ya == 0.0].mean())
    s_x = math.sqrt(float(((xa - xa.mean()) ** 2).sum()) / (n - 1))
    return ((mean1 - mean0) / s_x) * math.sqrt(n * (n0 / n) * (n1 / n) / (n - 1))
