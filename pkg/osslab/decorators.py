"""Decorators for check instrumentation."""

from __future__ import annotations

import functools
import logging
import time
from typing import Any, Callable, Optional, TypeVar, cast

logger = logging.getLogger("osslab.decorators")

F = TypeVar("F", bound=Callable[..., Any])


def traced(action: Optional[str] = None) -> Callable[[F], F]:
    """Log start, duration and outcome of the wrapped check at DEBUG level.

    Usage::

        @traced("duality")
        def rakic_duality_check(R, cfg=None, tol=1e-8):
            ...

    If the result has a ``verdict`` attribute it is included in the log line.
    Exceptions are logged and re-raised unchanged.
    """

    def decorator(fn: F) -> F:
        @functools.wraps(fn)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            act = action or fn.__name__
            logger.debug("%s started", act)
            start = time.perf_counter()
            try:
                result = fn(*args, **kwargs)
            except Exception as exc:
                logger.debug("%s failed after %.3fs: %s", act, time.perf_counter() - start, exc)
                raise
            elapsed = time.perf_counter() - start
            verdict = getattr(result, "verdict", None)
            if verdict is not None:
                logger.debug("%s -> %s in %.3fs", act, verdict, elapsed)
            else:
                logger.debug("%s done in %.3fs", act, elapsed)
            return result

        return cast(F, wrapper)

    return decorator
