"""Complex-valued Dempster-Shafer evidence theory and the evidential quantum
dynamical model of categorisation-decision interference."""

from .complex_scalar import Complex
from .evidence import (
    CBBA,
    Frame,
    belief,
    combine,
    combine_classical,
    conflict,
    conflict_surface,
    pignistic,
    plausibility,
    validate_cbba,
)
from .fitting import FitConfig, ObservedDataset, evaluate_report, fit_alone, fit_ctd
from .quantum import CategoryWeights, HamiltonianParams, ModelConfig, predict_alone, predict_ctd

__all__ = [
    "CBBA", "CategoryWeights", "Complex", "FitConfig", "Frame", "HamiltonianParams",
    "ModelConfig", "ObservedDataset", "belief", "combine", "combine_classical", "conflict",
    "conflict_surface", "evaluate_report", "fit_alone", "fit_ctd", "pignistic", "plausibility",
    "predict_alone", "predict_ctd", "validate_cbba",
]
