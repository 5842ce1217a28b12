"""Sampled Osserman and Rakic duality checks, and their equivalence experiment."""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import prng
from .decorators import traced
from .exceptions import ConfigError
from .fourdim import osserman_check_exact
from .models import CheckReport, EquivalenceReport, SampleConfig, SpectralDecomposition, Witness
from .spectral import eigh, perp_basis, restrict_to_perp
from .tensor import DEFAULT_TOL, CurvatureTensor, jacobi

logger = logging.getLogger("osslab.checkers")

# Eigenspace probes draw from streams far above the direction streams.
_PROBE_STREAM_OFFSET = 1 << 40


@dataclass
class _Probe(SpectralDecomposition):
    """Decomposition of J(x) on x-perp, eigenvectors in ambient coordinates."""
    x: np.ndarray


def structured_vectors(n: int) -> List[np.ndarray]:
    """Basis vectors, (e_i ± e_j)/sqrt2 and (sqrt3 e_i + e_j)/2."""
    eye = np.eye(n)
    vectors = [eye[i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            vectors.append(eye[i] + eye[j])
            vectors.append(eye[i] - eye[j])
    for i in range(n):
        for j in range(n):
            if i != j:
                vectors.append(np.sqrt(3.0) * eye[i] + eye[j])
    return [v / np.linalg.norm(v) for v in vectors]


def sample_unit_vectors(n: int, cfg: Optional[SampleConfig] = None) -> List[np.ndarray]:
    """``cfg.count`` normalized Gaussian draws, sample ``i`` from stream ``(cfg.seed, i)``."""
    if n < 2:
        raise ConfigError(f"dimension must be >= 2, got {n}")
    cfg = cfg or SampleConfig()
    vectors = []
    for i in range(cfg.count):
        v = prng.stream(cfg.seed, i).standard_normal(n)
        vectors.append(v / np.linalg.norm(v))
    if cfg.include_structured:
        vectors.extend(structured_vectors(n))
    return vectors


def _probe(R: CurvatureTensor, x: np.ndarray) -> _Probe:
    decomposition = eigh(restrict_to_perp(jacobi(R, x), x))
    return _Probe(
        x=x,
        eigenvalues=decomposition.eigenvalues,
        eigenvectors=perp_basis(x) @ decomposition.eigenvectors,
        groups=decomposition.groups,
    )


def _probes(R: CurvatureTensor, cfg: SampleConfig) -> List[_Probe]:
    return [_probe(R, x) for x in sample_unit_vectors(R.dimension, cfg)]


def _osserman_report(probes: List[_Probe], tol: float) -> CheckReport:
    reference = probes[0].eigenvalues
    spectrum = np.concatenate([p.eigenvalues for p in probes])
    scale = max(1.0, float(spectrum.max() - spectrum.min())) if spectrum.size else 1.0
    worst = 0.0
    witness: Optional[Witness] = None
    for p in probes:
        deviation = np.abs(p.eigenvalues - reference)
        if not deviation.size:
            continue
        k = int(np.argmax(deviation))
        residual = float(deviation[k])
        worst = max(worst, residual)
        if witness is None and residual > tol * scale:
            witness = Witness(
                residual=residual,
                direction=p.x.tolist(),
                eigenvalue=float(p.eigenvalues[k]),
                detail=f"reference eigenvalue {float(reference[k])!r}",
            )
    return CheckReport.build("osserman", worst, tol, scale, samples=len(probes), witness=witness)


def _duality_candidates(p: _Probe, index: int, cfg: SampleConfig) -> List[Tuple[float, np.ndarray]]:
    candidates = [(float(p.eigenvalues[k]), p.eigenvectors[:, k]) for k in range(p.eigenvalues.size)]
    if not cfg.full_eigenspace or cfg.eigenspace_probes == 0:
        return candidates
    rng = prng.stream(cfg.seed, _PROBE_STREAM_OFFSET + index)
    for g, group in enumerate(p.groups):
        if len(group) < 2:
            continue
        eigenvalue = float(np.mean(p.eigenvalues[group]))
        span = p.eigenspace(g)
        for _ in range(cfg.eigenspace_probes):
            y = span @ rng.standard_normal(len(group))
            candidates.append((eigenvalue, y / np.linalg.norm(y)))
    return candidates


def _duality_report(R: CurvatureTensor, probes: List[_Probe], cfg: SampleConfig, tol: float) -> CheckReport:
    scale = max(1.0, R.norm)
    worst = 0.0
    witness: Optional[Witness] = None
    for index, p in enumerate(probes):
        for eigenvalue, y in _duality_candidates(p, index, cfg):
            residual = float(np.linalg.norm(jacobi(R, y) @ p.x - eigenvalue * p.x))
            worst = max(worst, residual)
            if witness is None and residual > tol * scale:
                witness = Witness(
                    residual=residual,
                    direction=p.x.tolist(),
                    eigenvalue=eigenvalue,
                    detail="J(x)y = ly but J(y)x != lx for y = " + np.array2string(y, precision=6),
                )
    return CheckReport.build("duality", worst, tol, scale, samples=len(probes), witness=witness)


def _isotropy_report(probes: List[_Probe], tol: float) -> CheckReport:
    reference = float(np.mean(probes[0].eigenvalues))
    worst = 0.0
    witness: Optional[Witness] = None
    for p in probes:
        deviation = np.abs(p.eigenvalues - reference)
        k = int(np.argmax(deviation))
        residual = float(deviation[k])
        worst = max(worst, residual)
        if witness is None and residual > tol * max(1.0, abs(reference)):
            witness = Witness(residual=residual, direction=p.x.tolist(), eigenvalue=float(p.eigenvalues[k]))
    return CheckReport.build(
        "isotropy", worst, tol, max(1.0, abs(reference)), samples=len(probes), witness=witness
    )


@traced("osserman")
def osserman_check_sampled(
    R: CurvatureTensor, cfg: Optional[SampleConfig] = None, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Spectrum of J(x) on x-perp is the same (sorted, with multiplicity) for all samples."""
    return _osserman_report(_probes(R, cfg or SampleConfig()), tol)


@traced("duality")
def rakic_duality_check(
    R: CurvatureTensor,
    cfg: Optional[SampleConfig] = None,
    tol: float = DEFAULT_TOL,
    eigenspace_probes: Optional[int] = None,
) -> CheckReport:
    """J(x)y = ly implies J(y)x = lx, over eigenpairs of every sampled x.

    Each eigenspace of multiplicity > 1 is additionally probed with
    ``eigenspace_probes`` random unit vectors (defaults to ``cfg.eigenspace_probes``).
    """
    cfg = cfg or SampleConfig()
    if eigenspace_probes is not None:
        cfg = dataclasses.replace(cfg, eigenspace_probes=eigenspace_probes)
    return _duality_report(R, _probes(R, cfg), cfg, tol)


@traced("isotropy")
def isotropy_check(
    R: CurvatureTensor, cfg: Optional[SampleConfig] = None, tol: float = DEFAULT_TOL
) -> CheckReport:
    """J(x) = l Id on x-perp with one l for every sampled x."""
    return _isotropy_report(_probes(R, cfg or SampleConfig()), tol)


def equivalence_experiment(
    R: CurvatureTensor, cfg: Optional[SampleConfig] = None, tol: float = DEFAULT_TOL
) -> EquivalenceReport:
    """Duality and sampled Osserman verdicts on identical samples.

    Dimension 4 adds the exact criterion; dimension 3 adds the isotropy check.
    """
    cfg = cfg or SampleConfig()
    probes = _probes(R, cfg)
    duality = _duality_report(R, probes, cfg, tol)
    osserman = _osserman_report(probes, tol)
    report = EquivalenceReport(duality=duality, osserman=osserman, agree=duality.passed == osserman.passed)
    if R.dimension == 4:
        report.exact = osserman_check_exact(R, tol)
        report.exact_consistent = report.exact.passed == duality.passed == osserman.passed
    elif R.dimension == 3:
        report.isotropic = _isotropy_report(probes, tol)
    if not report.consistent:
        level = logging.INFO if report.marginal else logging.WARNING
        logger.log(
            level,
            "verdicts disagree (duality=%s osserman=%s exact=%s isotropy=%s, marginal=%s)",
            duality.verdict,
            osserman.verdict,
            report.exact.verdict if report.exact else "-",
            report.isotropic.verdict if report.isotropic else "-",
            report.marginal,
        )
    return report
