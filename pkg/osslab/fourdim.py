"""Dimension-four machinery: Weyl tensor, Hodge star, W+/W-, adapted bases.

Bivectors are handled in coordinates on the basis
``e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4`` with the inner product
``<u^v, s^t> = <u,s><v,t> - <u,t><v,s>``, which makes that basis orthonormal.
The Weyl tensor acts by ``W(u^v) = sum_{k<l} W(u, v, e_k, e_l) e_k^e_l``.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Any, List, Sequence, Tuple

import numpy as np

from .exceptions import ConfigError, NotAdaptedError, WrongDimensionError
from .models import AdaptedBasis, CheckReport, EigStructureCase, HodgeSplit, Witness
from .spectral import eigh, perp_basis, restrict_to_perp
from .tensor import DEFAULT_TOL, CurvatureTensor, canonicalize, einstein_check, jacobi, ricci, unit_vector

logger = logging.getLogger("osslab.fourdim")

BIVECTOR_PAIRS: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# columns: star of e12, e13, e14, e23, e24, e34
_STAR = np.array(
    [
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
    ],
    dtype=float,
)

_R2 = 1.0 / np.sqrt(2.0)
_LAMBDA_PLUS = _R2 * np.array(
    [
        [1, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, -1, 0],
        [0, 0, 1, 1, 0, 0],
    ],
    dtype=float,
)
_LAMBDA_MINUS = _R2 * np.array(
    [
        [1, 0, 0, 0, 0, -1],
        [0, 1, 0, 0, 1, 0],
        [0, 0, 1, -1, 0, 0],
    ],
    dtype=float,
)

_CASES: Tuple[Tuple[str, Tuple[Tuple[int, ...], ...]], ...] = (
    ("a", ((1, 2, 3, 4, 5, 6),)),
    ("b", ((1, 6), (2, 3, 4, 5))),
    ("c", ((2, 5), (1, 3, 4, 6))),
    ("d", ((3, 4), (1, 2, 5, 6))),
    ("e", ((1, 6), (2, 5), (3, 4))),
)


class SelfDuality(str, Enum):
    SELF_DUAL = "selfDual"
    ANTI_SELF_DUAL = "antiSelfDual"
    BOTH = "both"
    NEITHER = "neither"


def _require_four(R: CurvatureTensor) -> None:
    if R.dimension != 4:
        raise WrongDimensionError(f"needs a dimension-4 model, got dimension {R.dimension}")


def _check_orientation(orientation: int) -> None:
    if orientation not in (1, -1):
        raise ConfigError(f"orientation must be +1 or -1, got {orientation!r}")


def hodge_star(orientation: int = 1) -> np.ndarray:
    """6x6 matrix of the Hodge star on bivectors."""
    _check_orientation(orientation)
    return orientation * _STAR


def bivector_basis(orientation: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """Rows ``E_i^+`` and ``E_i^-`` (bivector coordinates) for the given orientation."""
    _check_orientation(orientation)
    if orientation == 1:
        return _LAMBDA_PLUS.copy(), _LAMBDA_MINUS.copy()
    return _LAMBDA_MINUS.copy(), _LAMBDA_PLUS.copy()


def bivector_matrix(coords: Sequence[float]) -> np.ndarray:
    """Antisymmetric 4x4 matrix of a bivector given in coordinates."""
    m = np.zeros((4, 4))
    for c, (k, l) in zip(coords, BIVECTOR_PAIRS):
        m[k, l] += c
        m[l, k] -= c
    return m


def weyl(R: CurvatureTensor) -> CurvatureTensor:
    """Trace-free part of a dimension-4 curvature tensor."""
    _require_four(R)
    eye = np.eye(4)
    rho = ricci(R)
    tau = float(np.trace(rho))
    gram = np.einsum("xw,yz->xyzw", eye, eye) - np.einsum("xz,yw->xyzw", eye, eye)
    ricci_part = (
        np.einsum("xw,yz->xyzw", rho, eye)
        + np.einsum("yz,xw->xyzw", rho, eye)
        - np.einsum("xz,yw->xyzw", rho, eye)
        - np.einsum("yw,xz->xyzw", rho, eye)
    )
    w = R.components + (tau / 6) * gram - 0.5 * ricci_part
    # W may be pure rounding noise (space forms), so skip the relative checks.
    return CurvatureTensor(w, validate=False)


def weyl_operator(R: CurvatureTensor) -> np.ndarray:
    """6x6 matrix ``W[a, b] = W(e_k, e_l, e_p, e_q)`` for pairs a=(k,l), b=(p,q)."""
    w = weyl(R).components
    k = np.array([p[0] for p in BIVECTOR_PAIRS])
    l = np.array([p[1] for p in BIVECTOR_PAIRS])
    return w[k[:, None], l[:, None], k[None, :], l[None, :]]


def weyl_pm(R: CurvatureTensor, orientation: int = 1) -> HodgeSplit:
    """Blocks ``<W(E_i^±), E_j^±>`` of the Weyl operator."""
    _require_four(R)
    plus, minus = bivector_basis(orientation)
    op = weyl_operator(R)
    wp = plus @ op @ plus.T
    wm = minus @ op @ minus.T
    return HodgeSplit(
        orientation=orientation,
        lambda_plus_basis=np.array([bivector_matrix(row) for row in plus]),
        lambda_minus_basis=np.array([bivector_matrix(row) for row in minus]),
        weyl_plus=(wp + wp.T) / 2,
        weyl_minus=(wm + wm.T) / 2,
    )


def _weyl_norms(R: CurvatureTensor) -> Tuple[float, float, float]:
    split = weyl_pm(R)
    return (
        float(np.max(np.abs(split.weyl_plus))),
        float(np.max(np.abs(split.weyl_minus))),
        weyl(R).norm,
    )


def self_dual_check(R: CurvatureTensor, tol: float = DEFAULT_TOL) -> SelfDuality:
    """Chirality verdict relative to the standard orientation."""
    _require_four(R)
    plus, minus, total = _weyl_norms(R)
    limit = tol * max(1.0, total)
    plus_zero, minus_zero = plus <= limit, minus <= limit
    if plus_zero and minus_zero:
        return SelfDuality.BOTH
    if plus_zero:
        return SelfDuality.ANTI_SELF_DUAL
    if minus_zero:
        return SelfDuality.SELF_DUAL
    return SelfDuality.NEITHER


def self_dual_report(R: CurvatureTensor, tol: float = DEFAULT_TOL) -> CheckReport:
    """:func:`self_dual_check` as a report; residual is ``min(|W+|, |W-|) / max(1, |W|)``."""
    _require_four(R)
    plus, minus, total = _weyl_norms(R)
    residual = min(plus, minus) / max(1.0, total)
    verdict = self_dual_check(R, tol)
    witness = Witness(residual=residual, detail=f"{verdict.value}: |W+| = {plus:.6g}, |W-| = {minus:.6g}")
    return CheckReport.build("selfdual", residual, tol, witness=witness)


def osserman_check_exact(R: CurvatureTensor, tol: float = DEFAULT_TOL) -> CheckReport:
    """Osserman in dimension 4 iff Einstein and (anti-)self-dual."""
    _require_four(R)
    einstein = einstein_check(R, tol)
    chirality = self_dual_report(R, tol)
    einstein_residual = einstein.max_residual / einstein.scale
    residual = max(einstein_residual, chirality.max_residual)
    if einstein_residual >= chirality.max_residual:
        detail = "not Einstein: " + (einstein.witness.detail if einstein.witness else "")
    else:
        detail = "W+ and W- both non-zero: " + (chirality.witness.detail if chirality.witness else "")
    return CheckReport.build("osserman-exact", residual, tol, witness=Witness(residual=residual, detail=detail))


def _diagonalize_within(vectors: np.ndarray, columns: List[int], operator: np.ndarray) -> None:
    """Rotate ``vectors[:, columns]`` inside their span onto eigenvectors of ``operator``."""
    sub = vectors[:, columns]
    inner = sub.T @ operator @ sub
    vectors[:, columns] = sub @ eigh((inner + inner.T) / 2).eigenvectors


def adapted_basis(R: CurvatureTensor, x: Any, tol: float = DEFAULT_TOL) -> AdaptedBasis:
    """Complete ``x`` to an orthonormal basis realizing the six mutual Jacobi eigenvalues.

    Raises :class:`NotAdaptedError` when some eigenvector relation fails by
    more than ``tol * max(1, |R|_inf)``, i.e. duality fails at ``x``.
    """
    _require_four(R)
    x = unit_vector(x, 4)
    jx = jacobi(R, x)
    decomposition = eigh(restrict_to_perp(jx, x))
    vectors = perp_basis(x) @ decomposition.eigenvectors

    groups = decomposition.groups
    if any(1 in g and 2 in g for g in groups):
        _diagonalize_within(vectors, [1, 2], jacobi(R, vectors[:, 0]))
    elif any(0 in g and 1 in g for g in groups):
        _diagonalize_within(vectors, [0, 1], jacobi(R, vectors[:, 2]))

    y, z, w = vectors[:, 0], vectors[:, 1], vectors[:, 2]
    jy, jz = jacobi(R, y), jacobi(R, z)
    pairs = ((jx, y), (jx, z), (jx, w), (jy, z), (jy, w), (jz, w))
    lambdas = tuple(float(v @ op @ v) for op, v in pairs)
    residual = max(float(np.linalg.norm(op @ v - lam * v)) for (op, v), lam in zip(pairs, lambdas))
    scale = max(1.0, R.norm)
    if residual > tol * scale:
        logger.debug("no adapted basis at %s: residual %.3g", x, residual)
        raise NotAdaptedError(
            f"no adapted basis at this direction (eigenvector residual {residual:.3g} > {tol * scale:.3g})",
            residual=residual,
        )
    return AdaptedBasis(x=x, y=y, z=z, w=w, lambdas=lambdas, residual=residual)  # type: ignore[arg-type]


def classify_structure(lambdas: Sequence[float], tol: float = DEFAULT_TOL) -> EigStructureCase:
    """Most specific of the eigenvalue patterns a) - e) matched by six adapted eigenvalues."""
    values = [float(v) for v in lambdas]
    if len(values) != 6:
        raise ConfigError(f"expected six eigenvalues, got {len(values)}")
    limit = tol * max(1.0, max(abs(v) for v in values))

    def holds(group: Tuple[int, ...]) -> bool:
        members = [values[i - 1] for i in group]
        return max(members) - min(members) <= limit

    for case, identifications in _CASES:
        if all(holds(g) for g in identifications):
            return EigStructureCase(case=case, identifications=list(identifications))
    return EigStructureCase(case="none")


def canonical_osserman(l1: float, l2: float, l3: float) -> CurvatureTensor:
    """The anti-self-dual Einstein model with Jacobi spectrum {l1, l2, l3} in every direction."""
    entries = [
        (1, 2, 2, 1, l1),
        (3, 4, 4, 3, l1),
        (1, 3, 3, 1, l2),
        (2, 4, 4, 2, l2),
        (1, 4, 4, 1, l3),
        (2, 3, 3, 2, l3),
        (1, 3, 4, 2, (-l1 + 2 * l2 - l3) / 3),
        (1, 4, 3, 2, (l1 + l2 - 2 * l3) / 3),
        (1, 2, 4, 3, (-2 * l1 + l2 + l3) / 3),
    ]
    return canonicalize(4, entries, one_based=True)
