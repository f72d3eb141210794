"""Bradley-Terry-Luce ranking from pairwise comparisons.

Library surface: comparison data structures and the probability model
(:mod:`btlrank.model`), dense spectral analysis (:mod:`btlrank.spectral`),
MLE solvers and existence diagnostics (:mod:`btlrank.estimation`), schedule
and score generators (:mod:`btlrank.graphs`), theoretical bound calculators
(:mod:`btlrank.bounds`), and a Monte-Carlo harness (:mod:`btlrank.simulate`).
The ``btlrank`` command exposes everything for batch use.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("btlrank")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.0.0+local"

from .bounds import (
    BoundReport,
    ConsistencyCondition,
    ExistenceBound,
    FGValues,
    consistency_condition,
    estimate_curvature_constant,
    existence_bound,
    l2_bound_ours,
    l2_bound_shah,
    lemma_functions_f_g,
    proxy_h,
    proxy_h_vec,
    shah_curvature_params,
)
from .errors import (
    ConfigError,
    CsvFormatError,
    DimensionMismatchError,
    DisconnectedGraphError,
    GenerationError,
    MleExistenceError,
    NumericalError,
    SupportMismatchError,
)
from .estimation import (
    ExistencePrediction,
    FitResult,
    check_ford_condition,
    fit_mle_mm,
    fit_mle_newton,
    predict_existence,
)
from .graphs import (
    TopologySpec,
    banded_edge_count,
    even_spread_scores,
    gaussian_normalized_scores,
    generate_schedule,
)
from .io import (
    read_outcomes_csv,
    read_schedule_csv,
    read_scores_csv,
    write_outcomes_csv,
    write_schedule_csv,
    write_scores_csv,
)
from .model import (
    ComparisonSchedule,
    FisherMatrix,
    OutcomeTable,
    ScoreVector,
    fisher_information,
    gradient,
    log_likelihood,
    sample_outcomes,
    win_probability,
)
from .simulate import (
    CellResult,
    ExperimentConfig,
    ExperimentResult,
    ReplicateRecord,
    ScoreModel,
    SweepSpec,
    export_results,
    replicate_seeds,
    run_experiment,
)
from .spectral import (
    SpectralSummary,
    algebraic_connectivity,
    circulant_cayley_spectrum,
    eigenvalues,
    kappa,
    pseudo_inverse_psd,
    spectral_summary,
)

__all__ = [
    "__version__",
    # model
    "ScoreVector", "ComparisonSchedule", "OutcomeTable", "FisherMatrix",
    "win_probability", "log_likelihood", "gradient", "fisher_information",
    "sample_outcomes",
    # spectral
    "eigenvalues", "algebraic_connectivity", "kappa",
    "circulant_cayley_spectrum", "pseudo_inverse_psd", "SpectralSummary",
    "spectral_summary",
    # estimation
    "FitResult", "ExistencePrediction", "check_ford_condition", "fit_mle_mm",
    "fit_mle_newton", "predict_existence",
    # graphs
    "TopologySpec", "generate_schedule", "banded_edge_count",
    "even_spread_scores", "gaussian_normalized_scores",
    # bounds
    "proxy_h", "proxy_h_vec", "l2_bound_ours", "l2_bound_shah",
    "shah_curvature_params", "existence_bound", "consistency_condition",
    "lemma_functions_f_g", "estimate_curvature_constant", "BoundReport",
    "ExistenceBound", "ConsistencyCondition", "FGValues",
    # simulate
    "ExperimentConfig", "ExperimentResult", "CellResult", "ReplicateRecord",
    "ScoreModel", "SweepSpec", "run_experiment", "export_results",
    "replicate_seeds",
    # io
    "read_schedule_csv", "write_schedule_csv", "read_outcomes_csv",
    "write_outcomes_csv", "read_scores_csv", "write_scores_csv",
    # errors
    "DimensionMismatchError", "DisconnectedGraphError", "SupportMismatchError",
    "MleExistenceError", "NumericalError", "GenerationError", "CsvFormatError",
    "ConfigError",
]
