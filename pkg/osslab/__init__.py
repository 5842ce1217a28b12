"""osslab: Osserman condition and Rakic duality for algebraic curvature tensors."""

from .checkers import equivalence_experiment, isotropy_check, osserman_check_sampled, rakic_duality_check
from .exceptions import (
    BianchiViolationError,
    ConfigError,
    ConflictingEntryError,
    KernelViolationError,
    ModelFormatError,
    NonFiniteValueError,
    NotAdaptedError,
    OsslabError,
    SymmetryViolationError,
    WrongDimensionError,
    ZeroVectorError,
)
from .fourdim import adapted_basis, canonical_osserman, classify_structure, osserman_check_exact, self_dual_check, weyl_pm
from .fuzz import FuzzRunner, run_fuzz
from .generators import build, perturb, random_curvature, space_form
from .models import CheckReport, EquivalenceReport, GeneratorSpec, SampleConfig
from .spectral import eigh
from .tensor import CurvatureTensor, canonicalize, einstein_check, jacobi, project_curvature

__version__ = "0.1.0"
__all__ = [
    "CurvatureTensor",
    "canonicalize",
    "project_curvature",
    "jacobi",
    "einstein_check",
    "eigh",
    "osserman_check_sampled",
    "rakic_duality_check",
    "isotropy_check",
    "equivalence_experiment",
    "weyl_pm",
    "self_dual_check",
    "osserman_check_exact",
    "adapted_basis",
    "classify_structure",
    "canonical_osserman",
    "space_form",
    "random_curvature",
    "perturb",
    "build",
    "FuzzRunner",
    "run_fuzz",
    "CheckReport",
    "EquivalenceReport",
    "GeneratorSpec",
    "SampleConfig",
    "OsslabError",
    "ConflictingEntryError",
    "BianchiViolationError",
    "SymmetryViolationError",
    "ZeroVectorError",
    "WrongDimensionError",
    "KernelViolationError",
    "NotAdaptedError",
    "ModelFormatError",
    "NonFiniteValueError",
    "ConfigError",
]
