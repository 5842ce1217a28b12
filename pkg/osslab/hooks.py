"""Pre/post trial hooks for the fuzz runner."""

from __future__ import annotations

import logging
import threading
import time
from typing import Any, Dict, Tuple

logger = logging.getLogger("osslab.hooks")


def logging_hook_pre(trial: int, spec: Any) -> None:
    """Pre-hook that logs every trial before it runs."""
    logger.info("fuzz trial %d: %s", trial, spec)


def logging_hook_post(trial: int, spec: Any, report: Any) -> None:
    """Post-hook that logs every trial outcome."""
    logger.info("fuzz trial %d: agree=%s marginal=%s", trial, report.agree, report.marginal)


def timing_hook() -> Tuple[Any, Any]:
    """Returns a (pre, post) hook pair that logs trial duration.

    Usage::

        pre, post = timing_hook()
        runner.add_hook("pre", pre)
        runner.add_hook("post", post)
    """
    state: Dict[int, float] = {}
    lock = threading.Lock()

    def pre(trial: int, spec: Any) -> None:
        with lock:
            state[trial] = time.perf_counter()

    def post(trial: int, spec: Any, report: Any) -> None:
        with lock:
            start = state.pop(trial, time.perf_counter())
        logger.info("fuzz trial %d took %.3fs", trial, time.perf_counter() - start)

    return pre, post
