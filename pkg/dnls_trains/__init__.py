"""Default imports for dnls_trains"""
from dnls_trains.config import ExperimentConfig, parse_config
from dnls_trains.dynamics import Trajectory, evolve, rhs, step
from dnls_trains.fixedpoint import (PairTrajectory, PicardReport, build_W_H,
                                    duhamel_apply, fit_distance, picard_solve,
                                    synthesize, xnorm)
from dnls_trains.gauge import (GaugePair, from_gauge, nonlinearity,
                               profile_sources, relation_defect, to_gauge)
from dnls_trains.profiles import (EquationVariant, KinkParams, Orientation,
                                  SolitonParams, TrainSpec, scaled_family)
from dnls_trains.spectral import Field, Grid
from dnls_trains.trains import (residual_chi, residual_decay,
                                train_profile)

try:
    from ._version import version as __version__
except ImportError:
    # Package not installed, provide something
    __version__ = "N/A"

__all__ = [
    "ExperimentConfig", "parse_config", "Trajectory", "evolve", "rhs",
    "step", "PairTrajectory", "PicardReport", "build_W_H", "duhamel_apply",
    "fit_distance", "picard_solve", "synthesize", "xnorm", "GaugePair",
    "from_gauge", "nonlinearity", "profile_sources", "relation_defect",
    "to_gauge", "EquationVariant", "KinkParams", "Orientation",
    "SolitonParams", "TrainSpec", "scaled_family", "Field", "Grid",
    "residual_chi", "residual_decay", "train_profile"
]
