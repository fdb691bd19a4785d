"""Trajectory forecasting under squared loss: flat Bayes forecasts, least
squares vs. nearest-neighbour interpolation, and Monte-Carlo checks of the
self-normalized martingale bounds behind them."""

from .errors import (
    ConfigError,
    DataError,
    DegenerateDesignError,
    IngestionError,
    InsufficientDataError,
    InvalidInputError,
    InvalidLengthError,
    InvalidModelError,
    TrajRiskError,
)
from .predictors import (
    FlatPredictor,
    LinearOneParam,
    NNIndex,
    OracleSpec,
    ZeroPredictor,
    fit_linear_one_param,
    flat_forecast,
    linear_forecast,
    nn_forecast,
    oracle_forecast,
    zero_forecast,
)
from .risk import MCEstimate, RiskReport, compare_report, ecdf, empirical_risk, traj_loss
from .sim import Path, ProcessModel, StructureParams, VolParams, path_to_returns, simulate_path
from .windows import Dataset, SplitDataset, WindowPair, chrono_split, make_windows

__version__ = "0.1.0"

__all__ = [
    "chrono_split",
    "compare_report",
    "ConfigError",
    "DataError",
    "Dataset",
    "DegenerateDesignError",
    "ecdf",
    "empirical_risk",
    "fit_linear_one_param",
    "flat_forecast",
    "FlatPredictor",
    "IngestionError",
    "InsufficientDataError",
    "InvalidInputError",
    "InvalidLengthError",
    "InvalidModelError",
    "linear_forecast",
    "LinearOneParam",
    "make_windows",
    "MCEstimate",
    "nn_forecast",
    "NNIndex",
    "oracle_forecast",
    "OracleSpec",
    "Path",
    "path_to_returns",
    "ProcessModel",
    "RiskReport",
    "simulate_path",
    "SplitDataset",
    "StructureParams",
    "traj_loss",
    "TrajRiskError",
    "VolParams",
    "WindowPair",
    "zero_forecast",
    "ZeroPredictor",
]
