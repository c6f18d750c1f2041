"""Simulation harness: correlated Gaussian designs, benchmark response
models, replicated screening runs, and a tail-probability probe.

The benchmark models M1-M4 couple a handful of active predictors to the
response through linear, polynomial, oscillatory, and exponential pieces;
M4 produces a binary response through a logistic link. M0 is the null
design where the response is independent of every column, used to probe
how fast the maximal score error decays with n.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, XisisError
from .screening import METHODS, DataMatrix, default_d, score_all, top_d
from .seeding import derived_seed

__all__ = [
    "ModelSpec",
    "MODELS",
    "SimulationConfig",
    "SimulationReport",
    "ConcentrationResult",
    "gen_ar1_mvn",
    "model_signal",
    "apply_model",
    "run_simulation",
    "concentration_experiment",
]


@dataclass(frozen=True)
class ModelSpec:
    """A benchmark response model: its id, active columns, response kind."""

    id: str
    active_set: tuple[int, ...]
    response_kind: str


MODELS = {
    "M0": ModelSpec("M0", (), "continuous"),
    "M1": ModelSpec("M1", (0, 1, 2, 3), "continuous"),
    "M2": ModelSpec("M2", (0, 1, 2), "continuous"),
    "M3": ModelSpec("M3", (0, 1, 2, 3), "continuous"),
    "M4": ModelSpec("M4", (0, 1, 2), "binary"),
}


def _canonical_model(model) -> ModelSpec:
    """Resolve a model id or spec, rejecting specs that disagree with the
    registry (the active set and response kind are fixed per id)."""
    if isinstance(model, str):
        if model not in MODELS:
            raise InvalidInput(f"unknown model {model!r}")
        return MODELS[model]
    if MODELS.get(model.id) != model:
        raise InvalidInput(f"model spec {model} does not match the {model.id!r} definition")
    return model


def gen_ar1_mvn(n: int, p: int, rho: float, seed: int = 0) -> np.ndarray:
    """n rows of a p-variate Gaussian with corr(X_i, X_j) = rho^|i-j|.

    Built by the AR(1) recursion ``X_j = rho X_{j-1} + sqrt(1-rho^2) Z_j``
    column by column, so the cost is O(np) with no p x p factorization.
    Every marginal is standard normal. Deterministic per seed.
    """
    if not 0.0 <= rho < 1.0:
        raise InvalidInput(f"rho must lie in [0, 1), got {rho}")
    if n < 1 or p < 1:
        raise InvalidInput(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((n, p))
    if rho == 0.0:
        return Z
    X = np.empty_like(Z)
    X[:, 0] = Z[:, 0]
    s = np.sqrt(1.0 - rho * rho)
    for j in range(1, p):
        X[:, j] = rho * X[:, j - 1] + s * Z[:, j]
    return X


def _oscillating_vee(x: np.ndarray) -> np.ndarray:
    # |x + 0.5| on the negative side, |x - 0.5| on the nonnegative side: a
    # W-shaped ridge with minima at -0.5 and +0.5.
    return np.where(x < 0.0, np.abs(x + 0.5), np.abs(x - 0.5))


def _safe_log_abs(x: np.ndarray) -> np.ndarray:
    return np.log(np.maximum(np.abs(x), 1e-300))


def model_signal(spec: ModelSpec, X: np.ndarray) -> np.ndarray:
    """Deterministic part of the response given the design.

    For the continuous models this is the regression surface; for M4 it is
    the success probability. M0 has no signal and returns zeros.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] < (max(spec.active_set) + 1 if spec.active_set else 1):
        raise InvalidInput(
            f"design with {X.shape[1] if X.ndim == 2 else '?'} columns cannot host "
            f"model {spec.id} (active set {spec.active_set})"
        )
    if spec.id == "M0":
        return np.zeros(X.shape[0])
    if spec.id == "M1":
        return 2.0 * X[:, 0] + X[:, 1] ** 3 + 3.0 * np.sin(8.0 * X[:, 2]) + np.exp(X[:, 3])
    if spec.id == "M2":
        # The log term is taken on |X_1|: the design is symmetric about 0,
        # so a one-sided log would be undefined half the time.
        return 2.0 * _safe_log_abs(X[:, 0]) + X[:, 1] ** 3 + np.cos(8.0 * X[:, 2] ** 2)
    if spec.id == "M3":
        return (
            _oscillating_vee(X[:, 0])
            + 2.0 * X[:, 1] ** 3
            + 3.0 * np.cos(8.0 * X[:, 2] ** 2)
            + np.exp(-X[:, 3])
        )
    if spec.id == "M4":
        eta = X[:, 0] ** 3 + 3.0 * np.sin(8.0 * X[:, 1]) + np.exp(X[:, 2])
        return 1.0 / (1.0 + np.exp(-eta))
    raise InvalidInput(f"unknown model id {spec.id!r}")


def apply_model(spec: ModelSpec, X: np.ndarray, seed: int = 0) -> np.ndarray:
    """Draw the response for a design matrix under the given model.

    M1: signal plus N(0, 1) noise. M2: signal plus sqrt(|X_1 + X_2|)-scaled
    N(0, 1) noise. M3: replaces column 0 of ``X`` in place with
    Uniform(-1, 1) draws before evaluating, then adds standard Cauchy noise
    (ratio of two independent normals). M4: Bernoulli draws with the
    logistic probability. M0: N(0, 1) independent of the design.

    Noise, the uniform column, and the Bernoulli draws use separate
    sub-streams derived from ``seed``.
    """
    if spec.id == "M3":
        uniform_rng = np.random.default_rng(derived_seed(seed, "uniform"))
        X[:, 0] = uniform_rng.uniform(-1.0, 1.0, size=X.shape[0])
    signal = model_signal(spec, X)
    noise_rng = np.random.default_rng(derived_seed(seed, "noise"))
    n = X.shape[0]
    if spec.id == "M0":
        return noise_rng.standard_normal(n)
    if spec.id == "M1":
        return signal + noise_rng.standard_normal(n)
    if spec.id == "M2":
        scale = np.sqrt(np.abs(X[:, 0] + X[:, 1]))
        return signal + scale * noise_rng.standard_normal(n)
    if spec.id == "M3":
        z = noise_rng.standard_normal((2, n))
        denom = np.where(z[1] == 0.0, np.finfo(np.float64).tiny, z[1])
        return signal + z[0] / denom
    return (noise_rng.random(n) < signal).astype(np.float64)


@dataclass
class SimulationConfig:
    """One replicated screening experiment.

    ``d`` defaults to floor(n / log n). ``methods`` must all apply to the
    model's response kind.
    """

    model: ModelSpec
    n: int
    p: int
    replications: int
    rho: float = 0.5
    d: int | None = None
    base_seed: int = 0
    methods: tuple[str, ...] = ("xi", "pearson", "dcor")

    def __post_init__(self):
        self.model = _canonical_model(self.model)
        if self.n < 2:
            raise InvalidInput(f"n must be at least 2, got {self.n}")
        need = max(self.model.active_set) + 1 if self.model.active_set else 1
        if self.p < need:
            raise InvalidInput(f"p={self.p} too small for model {self.model.id}")
        if self.replications < 1:
            raise InvalidInput(f"replications must be positive, got {self.replications}")
        if not 0.0 <= self.rho < 1.0:
            raise InvalidInput(f"rho must lie in [0, 1), got {self.rho}")
        if self.d is None:
            self.d = default_d(self.n)
        if self.d < 1:
            raise InvalidInput(f"d must be at least 1, got {self.d}")
        self.methods = tuple(self.methods)
        for m in self.methods:
            if m not in METHODS:
                raise InvalidInput(f"unknown method {m!r}")
            if m == "xi_binary" and self.model.response_kind != "binary":
                raise InvalidInput("method 'xi_binary' requires a binary-response model")

    def replication_seeds(self, r: int) -> dict[str, int]:
        """The three derived seeds consumed by replication ``r``."""
        return {
            "design": derived_seed(self.base_seed, "design", r),
            "response": derived_seed(self.base_seed, "response", r),
            "ties": derived_seed(self.base_seed, "ties", r),
        }


@dataclass(eq=False)
class SimulationReport:
    """Selection proportions of the active predictors, per method."""

    config: SimulationConfig
    selection_counts: dict[str, np.ndarray]
    timings: dict[str, float]

    @property
    def active_labels(self) -> tuple[str, ...]:
        return tuple(f"X{k + 1}" for k in self.config.model.active_set)

    @property
    def proportions(self) -> dict[str, np.ndarray]:
        R = self.config.replications
        return {m: counts / R for m, counts in self.selection_counts.items()}

    def to_dict(self) -> dict:
        cfg = self.config
        return {
            "model": cfg.model.id,
            "active_set": list(cfg.model.active_set),
            "response_kind": cfg.model.response_kind,
            "n": cfg.n,
            "p": cfg.p,
            "rho": cfg.rho,
            "replications": cfg.replications,
            "d": cfg.d,
            "base_seed": cfg.base_seed,
            "methods": list(cfg.methods),
            "replication_seeds": [cfg.replication_seeds(r) for r in range(cfg.replications)],
            "selection_proportions": {
                m: {lab: float(v) for lab, v in zip(self.active_labels, props)}
                for m, props in self.proportions.items()
            },
            "timings_seconds": {m: float(t) for m, t in self.timings.items()},
        }

    def write_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    def write_csv(self, path) -> None:
        """Rows are active predictors, columns are methods."""
        props = self.proportions
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["predictor", "index"] + list(self.config.methods))
            for i, k in enumerate(self.config.model.active_set):
                writer.writerow(
                    [f"X{k + 1}", k] + [repr(float(props[m][i])) for m in self.config.methods]
                )


def _run_tasks(fn, n_tasks: int, threads: int):
    """Run fn(i) for i in range(n_tasks), optionally on a thread pool.

    Results are returned indexed by i, so aggregation order never depends
    on scheduling.
    """
    if threads <= 1:
        return [fn(i) for i in range(n_tasks)]
    results = [None] * n_tasks
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for i, res in zip(range(n_tasks), pool.map(fn, range(n_tasks))):
            results[i] = res
    return results


def run_simulation(config: SimulationConfig, threads: int = 1) -> SimulationReport:
    """Replicate design generation, response draws, and screening.

    Each replication draws its seeds from (base_seed, replication), so all
    methods within a replication score the identical (X, y) and the report
    is bit-identical for any thread count. Timings are cumulative seconds
    per method across replications.
    """
    cfg = config
    active = np.asarray(cfg.model.active_set, dtype=np.intp)

    def one_rep(r: int):
        seeds = cfg.replication_seeds(r)
        try:
            X = gen_ar1_mvn(cfg.n, cfg.p, cfg.rho, seeds["design"])
            y = apply_model(cfg.model, X, seeds["response"])
            data = DataMatrix(X, y, response_kind=cfg.model.response_kind)
            hits = {}
            times = {}
            for m in cfg.methods:
                t0 = time.perf_counter()
                sv = score_all(data, method=m, tie_seed=seeds["ties"])
                result = top_d(sv, cfg.d)
                times[m] = time.perf_counter() - t0
                hits[m] = result.support_mask[active]
            return hits, times
        except XisisError as exc:
            raise type(exc)(f"replication {r}: {exc}") from exc

    counts = {m: np.zeros(len(active), dtype=np.int64) for m in cfg.methods}
    timings = {m: 0.0 for m in cfg.methods}
    for hits, times in _run_tasks(one_rep, cfg.replications, threads):
        for m in cfg.methods:
            counts[m] += hits[m]
            timings[m] += times[m]
    return SimulationReport(config=cfg, selection_counts=counts, timings=timings)


@dataclass(eq=False)
class ConcentrationResult:
    """Estimated tail frequencies pr(max_k |score_k - reference_k| > delta)."""

    model_id: str
    n_grid: tuple[int, ...]
    frequencies: tuple[float, ...]
    delta: float
    p: int
    rho: float
    replications: int
    base_seed: int
    reference_n: int | None

    def to_dict(self) -> dict:
        return {
            "model": self.model_id,
            "n_grid": list(self.n_grid),
            "tail_frequencies": list(self.frequencies),
            "delta": self.delta,
            "p": self.p,
            "rho": self.rho,
            "replications": self.replications,
            "base_seed": self.base_seed,
            "reference_n": self.reference_n,
        }

    def write_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "tail_frequency"])
            for n, f in zip(self.n_grid, self.frequencies):
                writer.writerow([n, repr(float(f))])


def concentration_experiment(
    model: ModelSpec | str,
    n_grid,
    p: int,
    replications: int,
    delta: float,
    seed: int = 0,
    rho: float = 0.5,
    threads: int = 1,
) -> ConcentrationResult:
    """Estimate pr(max_k |score_k - reference_k| > delta) for each n.

    Reference scores stand in for the population coefficients: exactly zero
    for the null model M0 (every column independent of the response), and
    otherwise a single surrogate scoring run at n_ref = 50 * max(n_grid).
    Under the scoring consistency the frequencies should fall as n grows.
    """
    model = _canonical_model(model)
    n_grid = tuple(int(n) for n in n_grid)
    if not n_grid or any(n < 2 for n in n_grid):
        raise InvalidInput(f"n_grid must hold sizes >= 2, got {n_grid}")
    if replications < 1:
        raise InvalidInput(f"replications must be positive, got {replications}")
    if delta <= 0:
        raise InvalidInput(f"delta must be positive, got {delta}")

    if model.active_set:
        n_ref = 50 * max(n_grid)
        X = gen_ar1_mvn(n_ref, p, rho, derived_seed(seed, "reference", "design"))
        y = apply_model(model, X, derived_seed(seed, "reference", "response"))
        data = DataMatrix(X, y, response_kind=model.response_kind)
        reference = score_all(data, "xi", derived_seed(seed, "reference", "ties")).scores
    else:
        n_ref = None
        reference = np.zeros(p)

    freqs = []
    for n in n_grid:

        def one_rep(r: int, n: int = n) -> bool:
            X = gen_ar1_mvn(n, p, rho, derived_seed(seed, "design", n, r))
            y = apply_model(model, X, derived_seed(seed, "response", n, r))
            data = DataMatrix(X, y, response_kind=model.response_kind)
            sv = score_all(data, "xi", tie_seed=derived_seed(seed, "ties", n, r))
            return bool(np.max(np.abs(sv.scores - reference)) > delta)

        exceeded = _run_tasks(one_rep, replications, threads)
        freqs.append(sum(exceeded) / replications)

    return ConcentrationResult(
        model_id=model.id,
        n_grid=n_grid,
        frequencies=tuple(freqs),
        delta=float(delta),
        p=int(p),
        rho=float(rho),
        replications=int(replications),
        base_seed=int(seed),
        reference_n=n_ref,
    )
