"""Eigen-decomposition of small dense symmetric matrices.

The solver is the cyclic Jacobi rotation method: unconditionally stable for
symmetric input and fast enough at the sizes used here (m <= 8).
"""

from __future__ import annotations

import logging
from typing import Any, List, Optional, Sequence

import numpy as np

from .exceptions import KernelViolationError, NoConvergenceError, NonSymmetricError, ShapeMismatchError
from .models import SpectralDecomposition
from .tensor import unit_vector

logger = logging.getLogger("osslab.spectral")

SYMMETRY_TOL = 1e-12
OFFDIAG_THRESHOLD = 1e-14
MAX_SWEEPS = 50
GROUP_ABS_TOL = 1e-7
GROUP_REL_TOL = 1e-7
KERNEL_TOL = 1e-10


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def _max_offdiag(a: np.ndarray) -> float:
    if a.shape[0] < 2:
        return 0.0
    return _max_abs(a - np.diag(np.diag(a)))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Annihilate a[p, q] in place and accumulate the rotation into v."""
    theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(theta, 1.0))
    c = 1.0 / np.hypot(t, 1.0)
    s = t * c

    ap, aq = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * ap - s * aq
    a[:, q] = s * ap + c * aq
    ap, aq = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * ap - s * aq
    a[q, :] = s * ap + c * aq
    a[p, q] = a[q, p] = 0.0

    vp, vq = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def default_group_tol(values: Sequence[float]) -> float:
    """1e-7 absolute plus 1e-7 of the spectrum diameter."""
    if len(values) == 0:
        return GROUP_ABS_TOL
    return GROUP_ABS_TOL + GROUP_REL_TOL * float(max(values) - min(values))


def group_eigenvalues(values: Sequence[float], tol: float) -> List[List[int]]:
    """Partition ascending ``values`` by greedy left-to-right chaining.

    A value joins the current group iff it lies within ``tol`` of the group's
    current maximum.
    """
    groups: List[List[int]] = []
    top = 0.0
    for i, value in enumerate(values):
        if groups and value - top <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
        top = value
    return groups


def eigh(M: Any, tol: Optional[float] = None) -> SpectralDecomposition:
    """Full decomposition of a symmetric matrix.

    ``tol`` is the eigenvalue grouping tolerance (defaults to
    :func:`default_group_tol`). Output is a deterministic function of the
    input bits: ascending eigenvalues, eigenvectors whose largest-magnitude
    coordinate is positive.
    """
    a = np.array(M, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"expected a square matrix, got shape {a.shape}")
    m = a.shape[0]
    scale = _max_abs(a)
    asymmetry = _max_abs(a - a.T)
    if asymmetry > SYMMETRY_TOL * max(1.0, scale):
        raise NonSymmetricError(f"matrix is not symmetric (asymmetry {asymmetry:.3g})", residual=asymmetry)
    a = (a + a.T) / 2
    v = np.eye(m)
    threshold = OFFDIAG_THRESHOLD * scale

    for _ in range(MAX_SWEEPS):
        if _max_offdiag(a) <= threshold:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                if abs(a[p, q]) > threshold:
                    _rotate(a, v, p, q)
    else:
        off = _max_offdiag(a)
        if off > threshold:
            raise NoConvergenceError(f"no convergence after {MAX_SWEEPS} sweeps (off-diagonal {off:.3g})", residual=off)

    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = v[:, order]

    groups = group_eigenvalues(values, default_group_tol(values) if tol is None else tol)
    for group in groups:
        if len(group) > 1:
            vectors[:, group] = np.linalg.qr(vectors[:, group])[0]
    for k in range(m):
        lead = int(np.argmax(np.abs(vectors[:, k])))
        if vectors[lead, k] < 0:
            vectors[:, k] = -vectors[:, k]
    return SpectralDecomposition(eigenvalues=values, eigenvectors=vectors, groups=groups)


def perp_basis(x: Any) -> np.ndarray:
    """Orthonormal columns spanning ``x``-perp, from the Householder reflection of ``x``."""
    x = unit_vector(x, np.size(x))
    n = x.shape[0]
    k = int(np.argmax(np.abs(x)))
    u = x.copy()
    u[k] += 1.0 if x[k] >= 0 else -1.0
    h = np.eye(n) - 2.0 * np.outer(u, u) / (u @ u)
    return np.delete(h, k, axis=1)


def restrict_to_perp(M: Any, x: Any, tol: Optional[float] = None) -> np.ndarray:
    """Matrix of ``M`` on ``x``-perp in the :func:`perp_basis` of ``x``.

    ``M x`` must vanish to within ``tol`` (default ``1e-10 * max(1, |M|_inf)``).
    """
    a = np.asarray(M, dtype=float)
    x = unit_vector(x, a.shape[0])
    kernel = float(np.linalg.norm(a @ x))
    limit = KERNEL_TOL * max(1.0, _max_abs(a)) if tol is None else tol
    if kernel > limit:
        raise KernelViolationError(f"|Mx| = {kernel:.3g} exceeds {limit:.3g}", residual=kernel)
    b = perp_basis(x)
    k = b.T @ a @ b
    return (k + k.T) / 2
