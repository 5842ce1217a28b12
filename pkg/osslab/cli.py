"""osslab CLI.

Exit codes: 0 pass, 1 check failed, 2 usage error, 3 I/O or file-format error.
"""

from __future__ import annotations

import json
import logging
import sys
from typing import List, Optional, Sequence

import click
import numpy as np

from .checkers import isotropy_check, osserman_check_sampled, rakic_duality_check, sample_unit_vectors
from .exceptions import ConfigError, ModelFormatError, NotAdaptedError, ShapeMismatchError, ZeroVectorError
from .fourdim import adapted_basis, classify_structure, osserman_check_exact, self_dual_report
from .fuzz import CORPUS_WEIGHTS, FuzzRunner
from .generators import build
from .hooks import logging_hook_post, logging_hook_pre
from .models import GENERATOR_KINDS, CheckReport, GeneratorSpec, SampleConfig
from .prng import SEED_ENV
from .spectral import eigh, restrict_to_perp
from .store import dumps_model, dumps_report, read_model, write_model
from .tensor import DEFAULT_TOL, CurvatureTensor, einstein_check, jacobi, unit_vector

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_IO = 3

CHECKS = ("osserman", "duality", "einstein", "selfdual", "exact", "isotropy", "all")


def _floats(value: Optional[str], name: str) -> Optional[List[float]]:
    if value is None:
        return None
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}", param_hint=name)


def _load(path: str) -> CurvatureTensor:
    try:
        model, _ = read_model(path)
    except ModelFormatError as e:
        click.echo(f"Error: {path}: {e}", err=True)
        sys.exit(EXIT_IO)
    except OSError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_IO)
    return model


def _direction(R: CurvatureTensor, raw: Optional[str]) -> np.ndarray:
    coords = _floats(raw, "--direction")
    try:
        return unit_vector(coords, R.dimension)
    except (ZeroVectorError, ShapeMismatchError) as e:
        raise click.BadParameter(str(e), param_hint="--direction")


def _fmt(value: float) -> str:
    return f"{0.0 if abs(value) < 1e-13 else value:.12g}"


@click.group()
@click.version_option(package_name="osslab")
@click.option("-v", "--verbose", count=True, help="Log to stderr (-v info, -vv debug).")
def main(verbose: int) -> None:
    """osslab: Osserman condition and Rakic duality for algebraic curvature models."""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG if verbose > 1 else logging.INFO,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )


# --- make ---

@main.command()
@click.option("--kind", type=click.Choice(GENERATOR_KINDS), required=True)
@click.option("--dim", type=click.IntRange(2, 8), default=None, help="Dimension (default 4).")
@click.option("--c", "curvature", type=float, default=None, help="Space-form curvature.")
@click.option("--lambdas", default=None, help="Canonical eigenvalues l1,l2,l3.")
@click.option("--seed", type=int, default=0, envvar=SEED_ENV, show_envvar=True)
@click.option("--scale", type=float, default=1.0, help="Random draw scale.")
@click.option("--eps", type=float, default=0.05, help="Perturbation size.")
@click.option("--rotate", "rotation_seed", type=int, default=None, help="Rotate by a seeded random rotation.")
@click.option("--out", default=None, help="Output file (default: stdout).")
def make(
    kind: str,
    dim: Optional[int],
    curvature: Optional[float],
    lambdas: Optional[str],
    seed: int,
    scale: float,
    eps: float,
    rotation_seed: Optional[int],
    out: Optional[str],
) -> None:
    """Build a model file."""
    values = _floats(lambdas, "--lambdas")
    if values is not None and len(values) != 3:
        raise click.BadParameter("expected exactly three values", param_hint="--lambdas")
    if kind == "canonical" and values is None:
        raise click.UsageError("--kind canonical needs --lambdas")
    if kind == "space-form" and curvature is None:
        raise click.UsageError("--kind space-form needs --c")
    if kind in ("space-form", "random") and values is not None:
        raise click.UsageError(f"--lambdas does not apply to --kind {kind}")
    if kind in ("canonical", "random") and curvature is not None:
        raise click.UsageError(f"--c does not apply to --kind {kind}")
    if kind == "perturbed" and values is None and curvature is None:
        raise click.UsageError("--kind perturbed needs --lambdas or --c for the base model")

    try:
        spec = GeneratorSpec(
            kind=kind,
            dimension=dim if dim is not None else 4,
            c=curvature if curvature is not None else 1.0,
            lambdas=tuple(values) if values is not None else None,  # type: ignore[arg-type]
            seed=seed,
            scale=scale,
            eps=eps,
            rotation_seed=rotation_seed,
        )
        model = build(spec)
    except ConfigError as e:
        raise click.UsageError(str(e))

    if out is None:
        click.echo(dumps_model(model, spec), nl=False)
        return
    try:
        write_model(out, model, spec)
    except OSError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_IO)
    click.echo(f"✓ Wrote dimension-{model.dimension} {kind} model to {out}", err=True)


# --- check ---

def _run_checks(R: CurvatureTensor, what: str, cfg: SampleConfig, tol: float) -> List[CheckReport]:
    four = R.dimension == 4
    if what in ("selfdual", "exact") and not four:
        raise click.UsageError(f"--what {what} needs a dimension-4 model")
    selected = ("osserman", "duality", "einstein") if what == "all" else (what,)
    if what == "all" and four:
        selected += ("selfdual", "exact")
    runners = {
        "osserman": lambda: osserman_check_sampled(R, cfg, tol),
        "duality": lambda: rakic_duality_check(R, cfg, tol),
        "einstein": lambda: einstein_check(R, tol),
        "selfdual": lambda: self_dual_report(R, tol),
        "exact": lambda: osserman_check_exact(R, tol),
        "isotropy": lambda: isotropy_check(R, cfg, tol),
    }
    return [runners[name]() for name in selected]


def _echo_report(report: CheckReport) -> None:
    click.echo(
        f"{report.check:<15}{report.verdict.upper():<6}max residual {report.max_residual:.3e} "
        f"(tol {report.tolerance:g} x scale {report.scale:.4g}, {report.samples} samples)"
        + ("  [marginal]" if report.marginal else "")
    )
    w = report.witness
    if w is not None:
        if w.direction is not None:
            click.echo("    witness direction: " + " ".join(_fmt(v) for v in w.direction))
        if w.eigenvalue is not None:
            click.echo(f"    eigenvalue: {_fmt(w.eigenvalue)}  residual: {w.residual:.3e}")
        if w.detail:
            click.echo(f"    {w.detail}")


@main.command()
@click.argument("path")
@click.option("--what", type=click.Choice(CHECKS), default="all", show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=200, show_default=True)
@click.option("--seed", type=int, default=0, envvar=SEED_ENV, show_envvar=True)
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=DEFAULT_TOL, show_default=True)
@click.option("--probes", type=click.IntRange(min=0), default=2, show_default=True, help="Random probes per degenerate eigenspace.")
@click.option("--basis-only", is_flag=True, help="Test duality on eigenbasis vectors only.")
@click.option("--no-structured", is_flag=True, help="Skip the structured probe directions.")
@click.option("--json", "as_json", is_flag=True, help="Emit the report file format.")
def check(
    path: str,
    what: str,
    samples: int,
    seed: int,
    tol: float,
    probes: int,
    basis_only: bool,
    no_structured: bool,
    as_json: bool,
) -> None:
    """Run Osserman / duality / Einstein / self-duality checks on a model file."""
    R = _load(path)
    cfg = SampleConfig(
        count=samples,
        seed=seed,
        include_structured=not no_structured,
        eigenspace_probes=probes,
        full_eigenspace=not basis_only,
    )
    reports = _run_checks(R, what, cfg, tol)
    if as_json:
        click.echo(dumps_report(reports if what == "all" else reports[0]), nl=False)
    else:
        for report in reports:
            _echo_report(report)
    sys.exit(EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL)


# --- spectrum ---

@main.command()
@click.argument("path")
@click.option("--direction", default=None, help="Comma-separated direction v1,...,vn.")
@click.option("--samples", type=click.IntRange(min=1), default=None, help="Number of sampled directions.")
@click.option("--seed", type=int, default=0, envvar=SEED_ENV, show_envvar=True)
def spectrum(path: str, direction: Optional[str], samples: Optional[int], seed: int) -> None:
    """Print sorted eigenvalues of J(x) on x-perp."""
    if direction is not None and samples is not None:
        raise click.UsageError("use either --direction or --samples")
    R = _load(path)
    if direction is not None:
        directions = [_direction(R, direction)]
    else:
        cfg = SampleConfig(count=samples or 10, seed=seed, include_structured=False)
        directions = sample_unit_vectors(R.dimension, cfg)
    for x in directions:
        values = eigh(restrict_to_perp(jacobi(R, x), x)).eigenvalues
        line = " ".join(_fmt(v) for v in values)
        if direction is None:
            line = ",".join(f"{v:.6f}" for v in x) + "\t" + line
        click.echo(line)


# --- classify ---

@main.command()
@click.argument("path")
@click.option("--direction", default=None, help="Base vector x (default e1).")
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=DEFAULT_TOL, show_default=True)
def classify(path: str, direction: Optional[str], tol: float) -> None:
    """Adapted basis, six Jacobi eigenvalues and their structure case."""
    R = _load(path)
    if R.dimension != 4:
        raise click.UsageError(f"classify needs a dimension-4 model, got dimension {R.dimension}")
    x = _direction(R, direction) if direction is not None else np.eye(4)[0]
    try:
        basis = adapted_basis(R, x, tol)
    except NotAdaptedError as e:
        click.echo(f"Not adapted: {e}", err=True)
        sys.exit(EXIT_FAIL)
    for name, v in zip("xyzw", basis.vectors):
        click.echo(f"{name}: " + " ".join(_fmt(c) for c in v))
    click.echo("lambdas: " + " ".join(_fmt(v) for v in basis.lambdas))
    click.echo(f"case: {classify_structure(basis.lambdas, tol).case}")


# --- fuzz ---

@main.command()
@click.option("--dim", type=click.Choice(["3", "4"]), default="4", show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--seed", type=int, default=0, envvar=SEED_ENV, show_envvar=True)
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), default=DEFAULT_TOL, show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=100, show_default=True, help="Sampled directions per model.")
@click.option("--kind", "kinds", type=click.Choice(GENERATOR_KINDS), multiple=True, help="Restrict the corpus.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def fuzz(dim: str, trials: int, seed: int, tol: float, samples: int, kinds: Sequence[str], workers: int, as_json: bool) -> None:
    """Check that duality and Osserman verdicts agree over a mixed corpus."""
    dimension = int(dim)
    available = set(CORPUS_WEIGHTS[dimension])
    if kinds and not available.intersection(kinds):
        raise click.UsageError(f"no corpus kind among {', '.join(kinds)} exists in dimension {dimension}")
    runner = FuzzRunner(
        dimension, trials, seed, tol, SampleConfig(count=samples, seed=seed), kinds or None, workers
    )
    runner.add_hook("pre", logging_hook_pre)
    runner.add_hook("post", logging_hook_post)
    summary = runner.run()
    if as_json:
        click.echo(json.dumps(summary.to_dict(), indent=2))
    else:
        click.echo(f"agreements: {summary.agreements}/{len(summary.trials)}")
        if summary.marginal:
            click.echo(f"marginal: {summary.marginal}")
        for t in summary.disagreements:
            click.echo(
                f"trial {t.trial} ({t.spec.kind}): duality={t.report.duality.verdict} "
                f"osserman={t.report.osserman.verdict}"
                + (f" exact={t.report.exact.verdict}" if t.report.exact else "")
            )
    sys.exit(EXIT_PASS if summary.ok else EXIT_FAIL)


if __name__ == "__main__":
    main()
