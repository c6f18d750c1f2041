"""Rank-based marginal dependence screening for high-dimensional data.

The package scores each predictor column against a response with the
rank-based xi correlation coefficient (plus Pearson, distance-correlation,
and point-biserial baselines), ranks the columns, and keeps a top set.
It ships a scikit-learn selector (:class:`XiSisScreener`), a simulation
benchmark harness, CV and classification metric utilities, and a CSV
command-line interface (``xisis``).
"""

from .baselines import dcor_score, pearson_score, point_biserial
from .errors import (
    DegenerateInput,
    DegenerateResponse,
    InvalidInput,
    UndefinedMetric,
    XisisError,
)
from .estimator import XiSisScreener
from .evalkit import (
    ConfusionCounts,
    FoldPlan,
    confusion_counts,
    cv_folds,
    cv_rmse,
    f_measure,
    precision_recall_f,
)
from .dataio import TableFile, ingest_csv, standardize
from .rankcorr import (
    DiscreteJoint,
    RankCounts,
    rank_counts,
    xi_binary_score,
    xi_population_discrete,
    xi_score,
)
from .screening import (
    METHODS,
    SENTINEL_SCORE,
    DataMatrix,
    ScoreVector,
    ScreeningResult,
    default_d,
    score_all,
    threshold_select,
    top_d,
)
from .simgen import (
    MODELS,
    ConcentrationResult,
    ModelSpec,
    SimulationConfig,
    SimulationReport,
    apply_model,
    concentration_experiment,
    gen_ar1_mvn,
    model_signal,
    run_simulation,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "XisisError",
    "InvalidInput",
    "DegenerateInput",
    "DegenerateResponse",
    "UndefinedMetric",
    "RankCounts",
    "DiscreteJoint",
    "rank_counts",
    "xi_score",
    "xi_binary_score",
    "xi_population_discrete",
    "pearson_score",
    "dcor_score",
    "point_biserial",
    "METHODS",
    "SENTINEL_SCORE",
    "DataMatrix",
    "ScoreVector",
    "ScreeningResult",
    "score_all",
    "top_d",
    "threshold_select",
    "default_d",
    "XiSisScreener",
    "MODELS",
    "ModelSpec",
    "SimulationConfig",
    "SimulationReport",
    "ConcentrationResult",
    "gen_ar1_mvn",
    "model_signal",
    "apply_model",
    "run_simulation",
    "concentration_experiment",
    "FoldPlan",
    "ConfusionCounts",
    "cv_folds",
    "cv_rmse",
    "confusion_counts",
    "precision_recall_f",
    "f_measure",
    "TableFile",
    "ingest_csv",
    "standardize",
]
