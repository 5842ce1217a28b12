"""Algebraic curvature tensors on R^n with the standard inner product.

A tensor is stored densely as ``A[i, j, k, l] = A(e_i, e_j, e_k, e_l)`` in a
fixed orthonormal basis. Sign convention: ``<J(x)y, v> = A(y, x, x, v)``, so a
space form of curvature ``c`` has ``J(x) = c (Id - x x^T)``.
"""

from __future__ import annotations

import logging
from typing import Any, Iterable, Iterator, Sequence, Tuple

import numpy as np

from .exceptions import (
    BianchiViolationError,
    ConflictingEntryError,
    IndexOutOfRangeError,
    NonFiniteValueError,
    NotOrthonormalError,
    ShapeMismatchError,
    SymmetryViolationError,
    ZeroVectorError,
)
from .models import CheckReport, Witness

logger = logging.getLogger("osslab.tensor")

MIN_DIMENSION = 2
MAX_DIMENSION = 8
DEFAULT_TOL = 1e-8
SEED_TOL = 1e-12
BIANCHI_TOL = 1e-12
ORTHONORMAL_TOL = 1e-12

Entry = Tuple[int, int, int, int, float]


def _antisymmetrize(s: np.ndarray) -> np.ndarray:
    s = (s - s.transpose(1, 0, 2, 3)) / 2
    return (s - s.transpose(0, 1, 3, 2)) / 2


def _pair_symmetrize(s: np.ndarray) -> np.ndarray:
    return (s + s.transpose(2, 3, 0, 1)) / 2


def bianchi_cycle(s: np.ndarray) -> np.ndarray:
    """(bS)(x,y,z,w) = S(x,y,z,w) + S(y,z,x,w) + S(z,x,y,w)."""
    return s + np.einsum("bcad->abcd", s) + np.einsum("cabd->abcd", s)


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


class CurvatureTensor:
    """Immutable algebraic curvature tensor.

    The constructor accepts any dense ``n**4`` array that is pair-symmetric up
    to ``1e-12`` of its largest component, symmetrizes it exactly and checks
    the first Bianchi identity at the same relative tolerance.
    """

    __slots__ = ("_components",)

    def __init__(self, components: Any, validate: bool = True) -> None:
        arr = np.array(components, dtype=float)
        if arr.ndim != 4 or len(set(arr.shape)) != 1:
            raise ShapeMismatchError(f"curvature tensor needs shape (n, n, n, n), got {arr.shape}")
        n = arr.shape[0]
        if not MIN_DIMENSION <= n <= MAX_DIMENSION:
            raise ShapeMismatchError(f"dimension must be in {MIN_DIMENSION}..{MAX_DIMENSION}, got {n}")
        if not np.all(np.isfinite(arr)):
            bad = tuple(int(v) for v in np.argwhere(~np.isfinite(arr))[0])
            raise NonFiniteValueError(f"component {bad} is not finite")
        sym = _pair_symmetrize(_antisymmetrize(arr))
        if validate:
            scale = _max_abs(arr)
            deviation = _max_abs(sym - arr)
            if deviation > SEED_TOL * scale:
                raise SymmetryViolationError(
                    f"components are not pair-symmetric (deviation {deviation:.3g})", residual=deviation
                )
            defect = bianchi_defect(sym)
            if defect > BIANCHI_TOL * scale:
                raise BianchiViolationError(
                    f"first Bianchi identity fails (defect {defect:.3g})", residual=defect
                )
        sym.setflags(write=False)
        self._components = sym

    @property
    def dimension(self) -> int:
        return self._components.shape[0]

    @property
    def components(self) -> np.ndarray:
        """Read-only dense array."""
        return self._components

    @property
    def norm(self) -> float:
        """Largest component magnitude."""
        return _max_abs(self._components)

    def __getitem__(self, index: Tuple[int, int, int, int]) -> float:
        return float(self._components[index])

    def replace(self, i: int, j: int, k: int, l: int, value: float) -> "CurvatureTensor":
        """Copy with component (i,j,k,l) (0-based) and its symmetry images set to ``value``."""
        arr = self._components.copy()
        for index, sign in _symmetry_images(i, j, k, l):
            arr[index] = sign * value
        return CurvatureTensor(arr)

    def __add__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        if not isinstance(other, CurvatureTensor):
            return NotImplemented
        if other.dimension != self.dimension:
            raise ShapeMismatchError(f"cannot add dimensions {self.dimension} and {other.dimension}")
        return CurvatureTensor(self._components + other._components, validate=False)

    def __mul__(self, factor: float) -> "CurvatureTensor":
        return CurvatureTensor(self._components * float(factor), validate=False)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"CurvatureTensor(dimension={self.dimension}, norm={self.norm:.6g})"


def bianchi_defect(components: np.ndarray) -> float:
    """Largest magnitude of the first Bianchi sum."""
    return _max_abs(bianchi_cycle(np.asarray(components, dtype=float)))


def _symmetry_images(i: int, j: int, k: int, l: int) -> Iterator[Tuple[Tuple[int, int, int, int], float]]:
    for (a, b, c, d) in ((i, j, k, l), (k, l, i, j)):
        yield (a, b, c, d), 1.0
        yield (b, a, c, d), -1.0
        yield (a, b, d, c), -1.0
        yield (b, a, d, c), 1.0


def canonicalize(dimension: int, entries: Iterable[Sequence[Any]], one_based: bool = False) -> CurvatureTensor:
    """Build a tensor from seed components, filling every symmetry image.

    ``entries`` are ``(i, j, k, l, value)`` tuples. Pair symmetries are imposed;
    the Bianchi identity is only checked.
    """
    if not MIN_DIMENSION <= dimension <= MAX_DIMENSION:
        raise ShapeMismatchError(f"dimension must be in {MIN_DIMENSION}..{MAX_DIMENSION}, got {dimension}")
    offset = 1 if one_based else 0
    arr = np.zeros((dimension,) * 4)
    assigned = np.zeros((dimension,) * 4, dtype=bool)
    for entry in entries:
        *raw_index, value = entry
        if len(raw_index) != 4:
            raise ShapeMismatchError(f"entry {tuple(entry)!r} needs four indices and a value")
        label = "(" + ",".join(str(v) for v in raw_index) + ")"
        index = tuple(int(v) - offset for v in raw_index)
        if any(not 0 <= v < dimension for v in index):
            raise IndexOutOfRangeError(f"component {label} is out of range for dimension {dimension}")
        value = float(value)
        if not np.isfinite(value):
            raise NonFiniteValueError(f"component {label} is not finite: {value!r}")
        for image, sign in _symmetry_images(*index):
            target = sign * value
            if assigned[image]:
                if abs(arr[image] - target) > SEED_TOL:
                    shown = "(" + ",".join(str(v + offset) for v in image) + ")"
                    raise ConflictingEntryError(
                        f"component {label} forces A{shown} = {target!r}, already {float(arr[image])!r}",
                        residual=abs(arr[image] - target),
                    )
            else:
                arr[image] = target
                assigned[image] = True
    cycle = np.abs(bianchi_cycle(arr))
    defect = _max_abs(cycle)
    if defect > BIANCHI_TOL * _max_abs(arr):
        worst = np.unravel_index(int(np.argmax(cycle)), cycle.shape)
        shown = "(" + ",".join(str(int(v) + offset) for v in worst) + ")"
        raise BianchiViolationError(
            f"first Bianchi identity fails at {shown} (defect {defect:.3g})", residual=defect
        )
    return CurvatureTensor(arr)


def project_curvature(raw: Any) -> CurvatureTensor:
    """Orthogonal projection of a dense n**4 array onto curvature tensors."""
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 4 or len(set(arr.shape)) != 1:
        raise ShapeMismatchError(f"expected shape (n, n, n, n), got {arr.shape}")
    s = _pair_symmetrize(_antisymmetrize(arr))
    s = s - bianchi_cycle(s) / 3
    return CurvatureTensor(s, validate=False)


def unit_vector(x: Any, dimension: int) -> np.ndarray:
    """``x`` normalized; raises on zero or mis-sized input."""
    v = np.asarray(x, dtype=float).ravel()
    if v.shape != (dimension,):
        raise ShapeMismatchError(f"vector needs {dimension} coordinates, got {v.shape[0]}")
    length = float(np.linalg.norm(v))
    if length == 0.0 or not np.isfinite(length):
        raise ZeroVectorError("direction must be a non-zero finite vector")
    return v / length


def _jacobi_matrix(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    m = np.einsum("iabj,a,b->ij", a, x, x)
    return (m + m.T) / 2


def jacobi(R: CurvatureTensor, x: Any) -> np.ndarray:
    """Matrix of J(x): ``M[i, j] = A(e_i, x, x, e_j)`` for the normalized ``x``."""
    return _jacobi_matrix(R.components, unit_vector(x, R.dimension))


def jacobi_expansion_residual(R: CurvatureTensor, x: Any, y: Any, theta: float) -> float:
    """Defect of J(cos t x + sin t y) = cos^2 J(x) + sin^2 J(y) + cos sin {A(.,x)y + A(.,y)x}."""
    n = R.dimension
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != (n,) or y.shape != (n,):
        raise ShapeMismatchError(f"vectors need {n} coordinates")
    off = max(abs(np.linalg.norm(x) - 1), abs(np.linalg.norm(y) - 1), abs(float(x @ y)))
    if off > ORTHONORMAL_TOL:
        raise NotOrthonormalError(f"x and y must be orthonormal (defect {off:.3g})", residual=off)
    a = R.components
    c, s = np.cos(theta), np.sin(theta)
    mixed = np.einsum("iabj,a,b->ij", a, x, y) + np.einsum("iabj,a,b->ij", a, y, x)
    expected = c * c * _jacobi_matrix(a, x) + s * s * _jacobi_matrix(a, y) + c * s * mixed
    return _max_abs(_jacobi_matrix(a, c * x + s * y) - expected)


def ricci(R: CurvatureTensor) -> np.ndarray:
    """rho[i, j] = sum_k A(e_k, e_i, e_j, e_k)."""
    rho = np.einsum("kijk->ij", R.components)
    return (rho + rho.T) / 2


def scalar(R: CurvatureTensor) -> float:
    return float(np.trace(ricci(R)))


def einstein_check(R: CurvatureTensor, tol: float = DEFAULT_TOL) -> CheckReport:
    """Pass iff ``|rho - (tau/n) Id|_inf <= tol * max(1, |rho|_inf)``."""
    rho = ricci(R)
    n = R.dimension
    constant = float(np.trace(rho)) / n
    deviation = rho - constant * np.eye(n)
    i, j = np.unravel_index(int(np.argmax(np.abs(deviation))), deviation.shape)
    residual = float(abs(deviation[i, j]))
    witness = Witness(
        residual=residual,
        detail=f"rho[{i + 1},{j + 1}] = {float(rho[i, j])!r}, expected {constant if i == j else 0.0!r}",
    )
    report = CheckReport.build(
        "einstein", residual, tol, scale=max(1.0, _max_abs(rho)), samples=0, witness=witness
    )
    logger.debug("einstein check: residual %.3g -> %s", residual, report.verdict)
    return report
