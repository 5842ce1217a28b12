"""JSON model and report files.

Model files list a canonical minimal set of components with 1-based indices::

    {"dimension": 4,
     "components": [{"indices": [1, 2, 2, 1], "value": 1.0}, ...],
     "generator": {"kind": "canonical", ...}}

Floats are written with ``repr`` precision (at most 17 significant digits),
so write -> read is the identity on tensors.
"""

from __future__ import annotations

import json
import logging
import math
import numbers
from typing import Any, Dict, List, Optional, Tuple

from .exceptions import ConfigError, ModelFormatError, OsslabError
from .models import GeneratorSpec
from .tensor import CurvatureTensor, canonicalize

logger = logging.getLogger("osslab.store")

COMPONENT_TOL = 1e-15


def model_to_dict(R: CurvatureTensor, generator: Optional[GeneratorSpec] = None) -> Dict[str, Any]:
    """Components with i<j, k<l, (i,j) <= (k,l), |value| > 1e-15, in sorted order."""
    n = R.dimension
    a = R.components
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    components: List[Dict[str, Any]] = []
    for p, (i, j) in enumerate(pairs):
        for k, l in pairs[p:]:
            value = float(a[i, j, k, l])
            if abs(value) > COMPONENT_TOL:
                components.append({"indices": [i + 1, j + 1, k + 1, l + 1], "value": value})
    data: Dict[str, Any] = {"dimension": n, "components": components}
    if generator is not None:
        data["generator"] = generator.to_dict()
    return data


def _is_number(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def model_from_dict(data: Any) -> Tuple[CurvatureTensor, Optional[GeneratorSpec]]:
    if not isinstance(data, dict):
        raise ModelFormatError("model file must hold a JSON object")
    n = data.get("dimension")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ModelFormatError(f"'dimension' must be an integer, got {n!r}")
    raw = data.get("components", [])
    if not isinstance(raw, list):
        raise ModelFormatError("'components' must be a list")

    entries = []
    for number, item in enumerate(raw, start=1):
        indices = item.get("indices") if isinstance(item, dict) else None
        value = item.get("value") if isinstance(item, dict) else None
        if (
            not isinstance(indices, list)
            or len(indices) != 4
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in indices)
        ):
            raise ModelFormatError(f"component #{number}: 'indices' must be four integers, got {indices!r}")
        if not all(1 <= v <= n for v in indices):
            raise ModelFormatError(f"component #{number} {indices}: index out of range 1..{n}")
        if not _is_number(value):
            raise ModelFormatError(f"component #{number} {indices}: 'value' must be a number, got {value!r}")
        if not math.isfinite(value):
            raise ModelFormatError(f"component #{number} {indices}: 'value' must be finite, got {value!r}")
        entries.append((*indices, value))

    try:
        R = canonicalize(n, entries, one_based=True)
    except OsslabError as exc:
        raise ModelFormatError(f"invalid model: {exc}", residual=exc.residual) from exc

    generator = None
    if data.get("generator") is not None:
        try:
            generator = GeneratorSpec.from_dict(data["generator"])
        except (ConfigError, TypeError) as exc:
            raise ModelFormatError(f"invalid 'generator' metadata: {exc}") from exc
    return R, generator


def dumps_model(R: CurvatureTensor, generator: Optional[GeneratorSpec] = None) -> str:
    return json.dumps(model_to_dict(R, generator), indent=2) + "\n"


def loads_model(text: str) -> Tuple[CurvatureTensor, Optional[GeneratorSpec]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from exc
    return model_from_dict(data)


def write_model(path: str, R: CurvatureTensor, generator: Optional[GeneratorSpec] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(R, generator))
    logger.debug("wrote dimension-%d model to %s", R.dimension, path)


def read_model(path: str) -> Tuple[CurvatureTensor, Optional[GeneratorSpec]]:
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())


def dumps_report(payload: Any) -> str:
    """Serialize a report (anything with ``to_dict``, or a list of them)."""
    if isinstance(payload, list):
        return json.dumps([p.to_dict() for p in payload], indent=2) + "\n"
    return json.dumps(payload.to_dict(), indent=2) + "\n"
