"""Equivalence fuzzing over a mixed corpus of Osserman and generic models."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import prng
from .checkers import equivalence_experiment
from .exceptions import ConfigError
from .generators import build
from .models import EquivalenceReport, GeneratorSpec, SampleConfig
from .tensor import DEFAULT_TOL

logger = logging.getLogger("osslab.fuzz")

#: Relative corpus weights per dimension; positives are canonical / space-form.
CORPUS_WEIGHTS: Dict[int, Dict[str, int]] = {
    4: {"canonical": 5, "space-form": 2, "random": 10, "perturbed": 5},
    3: {"space-form": 5, "random": 6, "perturbed": 4},
}
LAMBDA_GRID = (-2.0, -1.0, 0.0, 1.0, 3.0)
PERTURB_EPS = 0.05

_CORPUS_STREAM_OFFSET = 1 << 48


def kind_schedule(weights: Dict[str, int]) -> List[str]:
    """One cycle of kinds, ``weights[k]`` slots each, spread by smooth weighted round robin."""
    total = sum(weights.values())
    current = dict.fromkeys(weights, 0)
    order: List[str] = []
    for _ in range(total):
        for kind, weight in weights.items():
            current[kind] += weight
        pick = max(current, key=current.__getitem__)
        current[pick] -= total
        order.append(pick)
    return order


def corpus_spec(dimension: int, trial: int, seed: int, kinds: Optional[Sequence[str]] = None) -> GeneratorSpec:
    """Deterministic generator spec for one fuzz trial.

    Kinds follow :func:`kind_schedule` by trial index, so every full cycle of
    ``sum(weights)`` trials holds each kind exactly ``weights[kind]`` times.
    """
    if dimension not in CORPUS_WEIGHTS:
        raise ConfigError(f"fuzzing supports dimensions 3 and 4, got {dimension}")
    weights = {k: w for k, w in CORPUS_WEIGHTS[dimension].items() if kinds is None or k in kinds}
    if not weights:
        raise ConfigError(f"no corpus kind among {list(kinds or [])} exists in dimension {dimension}")
    schedule = kind_schedule(weights)
    kind = schedule[trial % len(schedule)]
    rng = prng.stream(seed, _CORPUS_STREAM_OFFSET + trial)
    model_seed = int(rng.integers(0, 2**31))
    rotation_seed = int(rng.integers(0, 2**31))

    if kind == "canonical":
        lambdas = tuple(float(v) for v in rng.choice(LAMBDA_GRID, size=3))
        return GeneratorSpec(kind, 4, lambdas=lambdas, rotation_seed=rotation_seed)  # type: ignore[arg-type]
    if kind == "space-form":
        return GeneratorSpec(kind, dimension, c=float(rng.uniform(-2.0, 2.0)))
    if kind == "random":
        return GeneratorSpec(kind, dimension, seed=model_seed)
    if dimension == 4:
        lambdas = tuple(float(v) for v in rng.choice(LAMBDA_GRID, size=3))
        eps = PERTURB_EPS * max(1.0, max(abs(v) for v in lambdas))
        return GeneratorSpec(kind, 4, lambdas=lambdas, seed=model_seed, eps=eps, rotation_seed=rotation_seed)  # type: ignore[arg-type]
    c = float(rng.uniform(-2.0, 2.0))
    return GeneratorSpec(kind, dimension, c=c, seed=model_seed, eps=PERTURB_EPS * max(1.0, abs(c)))


@dataclass
class FuzzTrial:
    trial: int
    spec: GeneratorSpec
    report: EquivalenceReport

    @property
    def agreed(self) -> bool:
        return self.report.consistent

    def to_dict(self) -> Dict[str, Any]:
        return {"trial": self.trial, "generator": self.spec.to_dict(), **self.report.to_dict()}


@dataclass
class FuzzSummary:
    dimension: int
    trials: List[FuzzTrial] = field(default_factory=list)

    @property
    def agreements(self) -> int:
        return sum(1 for t in self.trials if t.agreed)

    @property
    def disagreements(self) -> List[FuzzTrial]:
        """Disagreeing trials that are not numerically marginal."""
        return [t for t in self.trials if not t.agreed and not t.report.marginal]

    @property
    def marginal(self) -> int:
        return sum(1 for t in self.trials if t.report.marginal)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "trials": len(self.trials),
            "agreements": self.agreements,
            "disagreements": len(self.disagreements),
            "marginal": self.marginal,
            "results": [t.to_dict() for t in self.trials],
        }


class FuzzRunner:
    """Runs :func:`equivalence_experiment` over a deterministic corpus.

    Usage::

        runner = FuzzRunner(dimension=4, trials=100, seed=0)
        runner.add_hook("post", logging_hook_post)
        summary = runner.run()

    Pre hooks receive ``(trial, spec)``; post hooks ``(trial, spec, report)``.
    Results are aggregated in trial order whatever the worker count.
    """

    def __init__(
        self,
        dimension: int,
        trials: int,
        seed: int = 0,
        tol: float = DEFAULT_TOL,
        cfg: Optional[SampleConfig] = None,
        kinds: Optional[Sequence[str]] = None,
        workers: int = 1,
    ) -> None:
        if trials < 1:
            raise ConfigError(f"trials must be >= 1, got {trials}")
        if workers < 1:
            raise ConfigError(f"workers must be >= 1, got {workers}")
        self.dimension = dimension
        self.trials = trials
        self.seed = seed
        self.tol = tol
        self.cfg = cfg or SampleConfig(seed=seed)
        self.kinds = list(kinds) if kinds else None
        self.workers = workers
        self._hooks: Dict[str, List[Callable[..., Any]]] = {"pre": [], "post": []}
        # fail fast on an impossible corpus
        corpus_spec(dimension, 0, seed, self.kinds)

    def add_hook(self, stage: str, fn: Callable[..., Any]) -> None:
        """Register a pre or post trial hook; ``stage`` must be ``'pre'`` or ``'post'``."""
        if stage not in self._hooks:
            raise ValueError("stage must be 'pre' or 'post'")
        self._hooks[stage].append(fn)

    def _run_trial(self, trial: int) -> FuzzTrial:
        spec = corpus_spec(self.dimension, trial, self.seed, self.kinds)
        for fn in self._hooks["pre"]:
            fn(trial, spec)
        report = equivalence_experiment(build(spec), self.cfg, self.tol)
        for fn in self._hooks["post"]:
            fn(trial, spec, report)
        return FuzzTrial(trial=trial, spec=spec, report=report)

    def run(self) -> FuzzSummary:
        if self.workers == 1:
            results = [self._run_trial(t) for t in range(self.trials)]
        else:
            with ThreadPoolExecutor(max_workers=self.workers, thread_name_prefix="osslab-fuzz") as pool:
                results = list(pool.map(self._run_trial, range(self.trials)))
        summary = FuzzSummary(dimension=self.dimension, trials=results)
        logger.info(
            "fuzz dimension %d: %d/%d agreements, %d marginal",
            self.dimension, summary.agreements, len(results), summary.marginal,
        )
        for t in summary.disagreements:
            logger.warning("trial %d (%s) disagrees: %s", t.trial, t.spec.kind, t.report.to_dict())
        return summary


def run_fuzz(
    dimension: int,
    trials: int,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    cfg: Optional[SampleConfig] = None,
    kinds: Optional[Sequence[str]] = None,
    workers: int = 1,
) -> FuzzSummary:
    return FuzzRunner(dimension, trials, seed, tol, cfg, kinds, workers).run()
