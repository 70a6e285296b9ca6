"""Nonclassicality quantifiers for seeded parametric pair sources.

Core objects: seed/pump configuration (:mod:`pdcquant.seeds`), photon-
counting quantifiers and gain thresholds (:mod:`pdcquant.quantifiers`),
Gaussian covariance and entanglement tests (:mod:`pdcquant.covariance`),
and an independent truncated-Fock oracle (:mod:`pdcquant.fock`) used to
verify every closed form (:mod:`pdcquant.verify`).
"""

from .covariance import (
    build_covariance,
    is_entangled_gaussian,
    smallest_symplectic_eigenvalue,
    symplectic_eigenvalues,
)
from .errors import (
    InvalidConfigError,
    QuantifierNotApplicableError,
    TruncationInadequateError,
    UndefinedQuantifierError,
)
from .quantifiers import (
    GainThreshold,
    QuantifierReport,
    ThresholdReport,
    classify,
    ent_threshold,
    lee_threshold,
    p_ent,
    p_lee,
    p_ssn,
    ssn_threshold,
    thresholds,
)
from .seeds import (
    MomentSet,
    PdcParams,
    Seed,
    SeedFamily,
    SeededPdcConfig,
    coherent_seed,
    output_means,
    output_moments,
    squeezed_seed,
    thermal_seed,
    vacuum_seed,
)

__version__ = "0.1.0"

__all__ = [
    "GainThreshold",
    "InvalidConfigError",
    "MomentSet",
    "PdcParams",
    "QuantifierNotApplicableError",
    "QuantifierReport",
    "Seed",
    "SeedFamily",
    "SeededPdcConfig",
    "ThresholdReport",
    "TruncationInadequateError",
    "UndefinedQuantifierError",
    "build_covariance",
    "classify",
    "coherent_seed",
    "ent_threshold",
    "is_entangled_gaussian",
    "lee_threshold",
    "output_means",
    "output_moments",
    "p_ent",
    "p_lee",
    "p_ssn",
    "smallest_symplectic_eigenvalue",
    "squeezed_seed",
    "ssn_threshold",
    "symplectic_eigenvalues",
    "thermal_seed",
    "thresholds",
    "vacuum_seed",
    "__version__",
]
