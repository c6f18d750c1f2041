"""Rank-based xi correlation coefficient.

The xi coefficient (Chatterjee 2020, JASA) measures how close y is to being
a measurable function of x: it is 0 when the variables are independent and
1 when y is determined by x, with no model assumptions. The sample
estimator needs one sort plus rank counting, so a column scores in
O(n log n) time.

Given observations sorted by ascending x (ties in x broken uniformly at
random), let r_i count how many y values are <= y_(i) and l_i how many are
>= y_(i). The estimator is

    xi = 1 - n * sum_i |r_{i+1} - r_i| / (2 * sum_i l_i (n - l_i))

which handles ties in y exactly; the tie-free simplification with
denominator n^2 - 1 is deliberately not used. Both sums are accumulated in
integer arithmetic and converted to float only for the final division, so
tie-free monotone data yields exactly 1 - 3/(n + 1).

The coefficient is not symmetric in (x, y): it asks whether y is a
function of x, not the reverse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateResponse, InvalidInput
from .seeding import column_tie_seed
from .validation import as_sample, as_vector, check_binary

__all__ = [
    "RankCounts",
    "DiscreteJoint",
    "rank_counts",
    "xi_score",
    "xi_binary_score",
    "xi_population_discrete",
]


@dataclass(frozen=True, eq=False)
class RankCounts:
    """Tie-aware rank counts of y after reordering by ascending x.

    r[i] counts indices j with y_(j) <= y_(i); l[i] counts j with
    y_(j) >= y_(i). When y has no ties, r[i] + l[i] == n + 1.
    """

    r: np.ndarray
    l: np.ndarray

    @property
    def n(self) -> int:
        return len(self.r)


def _tie_broken_order(x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Sort order of x with ties in uniformly random relative order.

    A random permutation is applied first and undone through a stable sort,
    so equal x values end up in a uniformly random order while distinct
    values sort deterministically.
    """
    perm = rng.permutation(len(x))
    return perm[np.argsort(x[perm], kind="stable")]


def _max_min_rank_counts(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-observation counts (#{y_j <= y_i}, #{y_j >= y_i}) in input order."""
    ys = np.sort(y)
    below_or_eq = np.searchsorted(ys, y, side="right").astype(np.int64)
    strictly_below = np.searchsorted(ys, y, side="left").astype(np.int64)
    return below_or_eq, len(y) - strictly_below


def rank_counts(x, y, tie_seed: int = 0) -> RankCounts:
    """Rank counts of y along the x-sorted order.

    Ties in x are broken uniformly at random, reproducibly for a fixed
    ``tie_seed``. Ties in y need no randomization; the counting
    definitions handle them exactly.
    """
    xa, ya = as_sample(x, y)
    order = _tie_broken_order(xa, np.random.default_rng(tie_seed))
    r, l = _max_min_rank_counts(ya)
    return RankCounts(r=r[order], l=l[order])


def _xi_from_counts(counts: RankCounts) -> float:
    n = counts.n
    num = int(np.abs(np.diff(counts.r)).sum())
    den = int((counts.l * (n - counts.l)).sum())
    if den == 0:
        raise DegenerateResponse("y is constant; xi is undefined")
    return 1.0 - (n * num) / (2.0 * den)


def xi_score(x, y, tie_seed: int = 0) -> float:
    """Sample xi coefficient of y against x.

    Invariant under strictly increasing transforms of x alone or of y
    alone, and deterministic for a fixed ``tie_seed``.

    Raises
    ------
    DegenerateResponse
        If y is constant.
    InvalidInput
        On length mismatch, n < 2, or non-finite entries.
    """
    return _xi_from_counts(rank_counts(x, y, tie_seed))


def batch_xi_scores(X, y, tie_seed: int = 0, columns=None) -> np.ndarray:
    """xi score of y against each requested column of X.

    The per-column tie-break stream is keyed by ``(tie_seed, column
    index)``, so every column's score is independent of which other
    columns are evaluated and in what order; column k reproduces in
    isolation as ``xi_score(X[:, k], y, seeding.column_tie_seed(tie_seed,
    k))``. The rank counts of y and the denominator are shared across
    columns, leaving one sort of each column as the per-column cost.
    """
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if columns is None:
        columns = range(X.shape[1])
    columns = list(columns)
    r, l = _max_min_rank_counts(np.asarray(y, dtype=np.float64))
    den = int((l * (n - l)).sum())
    if den == 0:
        raise DegenerateResponse("y is constant; xi is undefined")
    orders = np.empty((n, len(columns)), dtype=np.intp)
    for j, k in enumerate(columns):
        rng = np.random.default_rng(column_tie_seed(tie_seed, k))
        perm = rng.permutation(n)
        orders[:, j] = perm[np.argsort(X[perm, k], kind="stable")]
    nums = np.abs(np.diff(r[orders], axis=0)).sum(axis=0, dtype=np.int64)
    return 1.0 - (n * nums) / (2.0 * den)


def xi_binary_score(x, y) -> float:
    """Variance-ratio form of the coefficient for a 0/1 response.

    Computes ``(sum (x_i - mean(x))^2 / n) / (n1 * n0 / n^2)`` where n1
    and n0 are the class sizes. Equals ``(mean1 - mean0)^2 / r_pb^2``
    whenever the point-biserial correlation r_pb is nonzero. The value is
    not scaled to [0, 1] (it can exceed 1); only the relative ranking
    across predictors is meaningful, which is all screening uses.
    """
    xa, ya = as_sample(x, y)
    check_binary(ya)
    n = len(xa)
    n1 = int(ya.sum())
    n0 = n - n1
    num = float(((xa - xa.mean()) ** 2).sum()) / n
    return num / (n1 * n0 / n**2)


@dataclass(eq=False)
class DiscreteJoint:
    """Finite-support joint law of (X, Y), used as a ground-truth oracle.

    ``probs[a, b]`` is P(X = x_values[a], Y = y_values[b]). Support points
    must be strictly increasing; probabilities must be nonnegative and sum
    to 1 within 1e-12.
    """

    x_values: np.ndarray
    y_values: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        self.x_values = as_vector(self.x_values, "x_values")
        self.y_values = as_vector(self.y_values, "y_values")
        self.probs = np.asarray(self.probs, dtype=np.float64)
        if self.probs.shape != (len(self.x_values), len(self.y_values)):
            raise InvalidInput(
                f"probs shape {self.probs.shape} does not match supports "
                f"({len(self.x_values)}, {len(self.y_values)})"
            )
        if np.any(np.diff(self.x_values) <= 0) or np.any(np.diff(self.y_values) <= 0):
            raise InvalidInput("support points must be strictly increasing")
        if np.any(self.probs < 0) or not np.all(np.isfinite(self.probs)):
            raise InvalidInput("probabilities must be finite and nonnegative")
        if abs(float(self.probs.sum()) - 1.0) > 1e-12:
            raise InvalidInput(f"probabilities sum to {self.probs.sum()}, not 1")

    def sample(self, n: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
        """Draw n iid pairs from the joint."""
        if n < 1:
            raise InvalidInput(f"n must be positive, got {n}")
        rng = np.random.default_rng(seed)
        flat = rng.choice(self.probs.size, size=n, p=self.probs.ravel())
        a, b = np.unravel_index(flat, self.probs.shape)
        return self.x_values[a], self.y_values[b]


def xi_population_discrete(joint: DiscreteJoint) -> float:
    """Population xi evaluated exactly on a finite-support joint.

    The defining ratio of integrated variances reduces to finite sums: for
    each support point t of Y (weighted by its marginal probability), the
    numerator accumulates var over X of P(Y >= t | X) and the denominator
    var of the indicator I(Y >= t). Returns a value in [0, 1]: 0 under
    independence, 1 when Y is a function of X on the support.
    """
    q = joint.probs.sum(axis=0)
    m = joint.probs.sum(axis=1)
    surv = np.cumsum(q[::-1])[::-1]
    den = float((q * surv * (1.0 - surv)).sum())
    if den <= 0.0:
        raise DegenerateResponse("Y marginal is degenerate; xi is undefined")
    keep = m > 0
    cond = joint.probs[keep] / m[keep, None]
    cond_surv = np.cumsum(cond[:, ::-1], axis=1)[:, ::-1]
    var_over_x = (m[keep, None] * (cond_surv - surv[None, :]) ** 2).sum(axis=0)
    num = float((q * var_over_x).sum())
    return num / den
