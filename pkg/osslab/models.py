"""Typed records passed between osslab modules and written to report files."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .exceptions import ConfigError
from .prng import default_seed

#: Residuals within this factor of the threshold (either side) are flagged marginal.
MARGINAL_FACTOR = 10.0


@dataclass
class Witness:
    """Evidence attached to a failing check."""
    residual: float
    direction: Optional[List[float]] = None
    eigenvalue: Optional[float] = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"residual": self.residual}
        if self.direction is not None:
            data["direction"] = list(self.direction)
        if self.eigenvalue is not None:
            data["eigenvalue"] = self.eigenvalue
        if self.detail:
            data["detail"] = self.detail
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Witness":
        known = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})


@dataclass
class CheckReport:
    """Verdict of one check: pass iff ``max_residual <= tolerance * scale``."""
    check: str
    passed: bool
    max_residual: float
    tolerance: float
    scale: float = 1.0
    samples: int = 0
    witness: Optional[Witness] = None
    marginal: bool = False

    @classmethod
    def build(
        cls,
        check: str,
        max_residual: float,
        tolerance: float,
        scale: float = 1.0,
        samples: int = 0,
        witness: Optional[Witness] = None,
    ) -> "CheckReport":
        threshold = tolerance * scale
        passed = bool(max_residual <= threshold)
        if passed:
            witness = None
        elif witness is None:
            witness = Witness(residual=max_residual)
        marginal = bool(threshold / MARGINAL_FACTOR < max_residual <= threshold * MARGINAL_FACTOR)
        return cls(
            check=check,
            passed=passed,
            max_residual=float(max_residual),
            tolerance=tolerance,
            scale=float(scale),
            samples=samples,
            witness=witness,
            marginal=marginal,
        )

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "verdict": self.verdict,
            "maxResidual": self.max_residual,
            "tolerance": self.tolerance,
            "scale": self.scale,
            "samples": self.samples,
            "witness": self.witness.to_dict() if self.witness else None,
            "marginal": self.marginal,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CheckReport":
        witness = data.get("witness")
        return cls(
            check=data["check"],
            passed=data["verdict"] == "pass",
            max_residual=data["maxResidual"],
            tolerance=data["tolerance"],
            scale=data.get("scale", 1.0),
            samples=data.get("samples", 0),
            witness=Witness.from_dict(witness) if witness else None,
            marginal=data.get("marginal", False),
        )


@dataclass
class EquivalenceReport:
    """Joint outcome of the duality and Osserman checks on identical samples."""
    duality: CheckReport
    osserman: CheckReport
    agree: bool
    exact: Optional[CheckReport] = None
    exact_consistent: Optional[bool] = None
    isotropic: Optional[CheckReport] = None

    @property
    def marginal(self) -> bool:
        reports = [self.duality, self.osserman, self.exact, self.isotropic]
        return any(r.marginal for r in reports if r is not None)

    @property
    def consistent(self) -> bool:
        """Verdicts agree, and a passing Osserman verdict is backed by the isotropy check when one ran."""
        if not self.agree or self.exact_consistent is False:
            return False
        return not (self.isotropic is not None and self.osserman.passed and not self.isotropic.passed)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "duality": self.duality.to_dict(),
            "osserman": self.osserman.to_dict(),
            "agree": self.agree,
            "consistent": self.consistent,
            "marginal": self.marginal,
        }
        if self.exact is not None:
            data["exact"] = self.exact.to_dict()
            data["exactConsistent"] = self.exact_consistent
        if self.isotropic is not None:
            data["isotropic"] = self.isotropic.to_dict()
        return data


@dataclass
class SampleConfig:
    """Direction sampling for the sampled checks."""
    count: int = 200
    seed: int = field(default_factory=default_seed)
    include_structured: bool = True
    eigenspace_probes: int = 2
    full_eigenspace: bool = True

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ConfigError(f"sample count must be >= 1, got {self.count}")
        if self.eigenspace_probes < 0:
            raise ConfigError(f"eigenspace_probes must be >= 0, got {self.eigenspace_probes}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SampleConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})


@dataclass
class SpectralDecomposition:
    """Ascending eigenvalues, orthonormal eigenvector columns and eigenvalue groups."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    groups: List[List[int]]

    def eigenspace(self, group: int) -> np.ndarray:
        """Orthonormal columns spanning the eigenspace of ``groups[group]``."""
        return self.eigenvectors[:, self.groups[group]]

    def reconstruct(self) -> np.ndarray:
        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T


@dataclass
class HodgeSplit:
    """Bases of the (anti-)self-dual bivectors and the Weyl blocks on them."""
    orientation: int
    lambda_plus_basis: np.ndarray
    lambda_minus_basis: np.ndarray
    weyl_plus: np.ndarray
    weyl_minus: np.ndarray


@dataclass
class AdaptedBasis:
    """Orthonormal {x, y, z, w} with the six mutual Jacobi eigenvalues."""
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    w: np.ndarray
    lambdas: Tuple[float, float, float, float, float, float]
    residual: float = 0.0

    @property
    def vectors(self) -> np.ndarray:
        """Rows x, y, z, w."""
        return np.vstack([self.x, self.y, self.z, self.w])


@dataclass
class EigStructureCase:
    """Eigenvalue pattern of an adapted basis; identifications use 1-based lambda indices."""
    case: str
    identifications: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def matched(self) -> bool:
        return self.case != "none"


GENERATOR_KINDS = ("space-form", "canonical", "random", "perturbed")


@dataclass
class GeneratorSpec:
    """Provenance of a generated model, stored under ``"generator"`` in model files."""
    kind: str
    dimension: int = 4
    c: float = 1.0
    lambdas: Optional[Tuple[float, float, float]] = None
    seed: int = 0
    scale: float = 1.0
    eps: float = 0.05
    rotation_seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in GENERATOR_KINDS:
            raise ConfigError(f"unknown generator kind {self.kind!r}; expected one of {', '.join(GENERATOR_KINDS)}")
        if self.lambdas is not None:
            if len(self.lambdas) != 3:
                raise ConfigError("lambdas must hold exactly three values")
            self.lambdas = tuple(float(v) for v in self.lambdas)  # type: ignore[assignment]
        if self.kind == "canonical":
            if self.dimension != 4:
                raise ConfigError("canonical models exist in dimension 4 only")
            if self.lambdas is None:
                raise ConfigError("canonical models need lambdas")
        if not 2 <= self.dimension <= 8:
            raise ConfigError(f"dimension must be in 2..8, got {self.dimension}")
        if self.scale < 0:
            raise ConfigError(f"scale must be >= 0, got {self.scale}")
        if self.eps < 0:
            raise ConfigError(f"eps must be >= 0, got {self.eps}")

    def to_dict(self) -> Dict[str, Any]:
        data = dataclasses.asdict(self)
        if self.lambdas is not None:
            data["lambdas"] = list(self.lambdas)
        return {k: v for k, v in data.items() if v is not None}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GeneratorSpec":
        known = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})
