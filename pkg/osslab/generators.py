"""Model corpus: space forms, random tensors, perturbations and rotations."""

from __future__ import annotations

import logging
from typing import Any

import numpy as np

from . import prng
from .exceptions import ConfigError, ShapeMismatchError
from .fourdim import canonical_osserman
from .models import GeneratorSpec
from .tensor import MAX_DIMENSION, MIN_DIMENSION, CurvatureTensor, project_curvature

logger = logging.getLogger("osslab.generators")

# Stream indices; 0 is reserved for tensor draws.
_TENSOR_STREAM = 0
_ROTATION_STREAM = 1


def _check_dimension(n: int) -> None:
    if not MIN_DIMENSION <= n <= MAX_DIMENSION:
        raise ConfigError(f"dimension must be in {MIN_DIMENSION}..{MAX_DIMENSION}, got {n}")


def space_form(n: int, c: float) -> CurvatureTensor:
    """A(x,y,z,w) = c (<x,w><y,z> - <x,z><y,w>)."""
    _check_dimension(n)
    eye = np.eye(n)
    gram = np.einsum("xw,yz->xyzw", eye, eye) - np.einsum("xz,yw->xyzw", eye, eye)
    return CurvatureTensor(float(c) * gram)


def random_curvature(n: int, seed: int, scale: float = 1.0) -> CurvatureTensor:
    """Projection of i.i.d. uniform(-scale, scale) draws onto curvature tensors."""
    _check_dimension(n)
    if scale < 0:
        raise ConfigError(f"scale must be >= 0, got {scale}")
    raw = prng.stream(seed, _TENSOR_STREAM).uniform(-1.0, 1.0, size=(n,) * 4) * float(scale)
    return project_curvature(raw)


def perturb(R: CurvatureTensor, seed: int, eps: float) -> CurvatureTensor:
    """R + eps * random_curvature(n, seed, 1)."""
    if eps < 0:
        raise ConfigError(f"eps must be >= 0, got {eps}")
    if eps == 0:
        return R
    return R + eps * random_curvature(R.dimension, seed, 1.0)


def random_rotation(n: int, seed: int) -> np.ndarray:
    """Haar-distributed proper rotation (det = +1)."""
    _check_dimension(n)
    g = prng.stream(seed, _ROTATION_STREAM).standard_normal((n, n))
    q, r = np.linalg.qr(g)
    q = q * np.where(np.diag(r) < 0, -1.0, 1.0)
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def rotate(R: CurvatureTensor, q: Any) -> CurvatureTensor:
    """Components in the orthonormal basis given by the columns of ``q``."""
    q = np.asarray(q, dtype=float)
    n = R.dimension
    if q.shape != (n, n):
        raise ShapeMismatchError(f"rotation must be {n}x{n}, got {q.shape}")
    return CurvatureTensor(np.einsum("abcd,ai,bj,ck,dl->ijkl", R.components, q, q, q, q))


def build(spec: GeneratorSpec) -> CurvatureTensor:
    """Model described by a :class:`GeneratorSpec`."""
    if spec.kind == "space-form":
        model = space_form(spec.dimension, spec.c)
    elif spec.kind == "canonical":
        model = canonical_osserman(*spec.lambdas)  # type: ignore[misc]
    elif spec.kind == "random":
        model = random_curvature(spec.dimension, spec.seed, spec.scale)
    else:
        if spec.lambdas is not None:
            if spec.dimension != 4:
                raise ConfigError("perturbed canonical models exist in dimension 4 only")
            base = canonical_osserman(*spec.lambdas)
        else:
            base = space_form(spec.dimension, spec.c)
        model = perturb(base, spec.seed, spec.eps)
    if spec.rotation_seed is not None:
        model = rotate(model, random_rotation(spec.dimension, spec.rotation_seed))
    logger.debug("built %s model (dimension %d)", spec.kind, spec.dimension)
    return model
