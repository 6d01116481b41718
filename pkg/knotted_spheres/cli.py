"""
Command-line interface for knotted_spheres.

Usage:
    knotted-spheres eval --spec sphere.json --u 0.785 --v 0
    knotted-spheres grid --spec case1.json --grid 0:1:10,0:6.283:10 --out out.csv
    knotted-spheres check --spec-dir corpus/ --claims PROP1,PROP4,PROP9
    knotted-spheres laplace --spec cone.json --direction minus1 --out cone.csv
    knotted-spheres mesh --spec torus.json --project drop-x4 --out torus.obj
    knotted-spheres corpus --out-dir corpus/
"""
from __future__ import annotations

import io
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import click

from . import __version__
from .claims import Verifier
from .config import Settings
from .corpus import builtin_corpus, builtin_documents
from .exceptions import EXIT_CLAIM_FAILURE, EXIT_INPUT_ERROR, EXIT_OK, KnottedSpheresError, exit_code_for
from .export import (
    DEFAULT_PROJECTION,
    build_mesh,
    load_spec,
    load_spec_dir,
    point_report,
    projection_matrix,
    sidecar_path,
    write_documents,
    write_laplace_csv,
    write_obj,
    write_samples_csv,
)
from .models import ClaimId, GridConfig
from .nets import LaplaceDirection
from .patch import SurfaceSpec
from .sampling import DEFAULT_RESOLUTION, evaluate_point, fit_grid, laplace_grid, sample_grid

logger = logging.getLogger(__name__)

__all__ = ["cli", "main", "run"]

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class _Group(click.Group):
    """Command group that turns library errors into the documented exit codes."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except KnottedSpheresError as exc:
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(exit_code_for(exc))


def _parse_grid(ctx, param, value: Optional[str]) -> Optional[GridConfig]:
    return None if value is None else GridConfig.from_string(value)


def _parse_seed(ctx, param, value: Optional[str]) -> Optional[int]:
    if value is None:
        return None
    try:
        return int(value, 16)
    except ValueError:
        raise click.BadParameter(f"{value!r} is not a hexadecimal integer")


def _parse_claims(ctx, param, value: Optional[str]) -> Optional[List[ClaimId]]:
    if value is None:
        return None
    try:
        return [ClaimId(name.strip().upper()) for name in value.split(",") if name.strip()]
    except ValueError as exc:
        choices = ", ".join(c.value for c in ClaimId)
        raise click.BadParameter(f"{exc}; known claims: {choices}")


def _parse_projection(ctx, param, value: str) -> str:
    projection_matrix(value)
    return value


def _emit(out: Optional[str], write: Callable[[io.StringIO], object]) -> None:
    """Render through ``write`` and send the text to ``out`` ('-' or None is stdout)."""
    buffer = io.StringIO()
    write(buffer)
    if out is None or out == "-":
        click.echo(buffer.getvalue(), nl=False)
        return
    with open(out, "w", encoding="utf-8", newline="") as stream:
        stream.write(buffer.getvalue())
    logger.info(f"Wrote {out}")


def _sampling_grid(spec: SurfaceSpec, grid: Optional[GridConfig]) -> GridConfig:
    """The grid as given, or one covering the whole domain."""
    if grid is not None:
        return grid
    return fit_grid(spec)


spec_option = click.option("--spec", "spec_path", type=click.Path(dir_okay=False), required=True,
                           help="Surface document (JSON)")
grid_option = click.option("--grid", callback=_parse_grid, default=None,
                           help="Parameter grid a:b:n,c:d:m (default: 50x50 over the domain)")
out_option = click.option("--out", default=None, help="Output file (default: stdout)")
workers_option = click.option("--workers", type=click.IntRange(min=1), default=None,
                              help="Worker threads; output order never depends on it")


@click.group(cls=_Group)
@click.version_option(version=__version__, prog_name="knotted-spheres")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Logging level (default: KNOTTED_SPHERES_LOG_LEVEL or WARNING)")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str]):
    """
    Knotted spheres and rotational surfaces in E^4.

    Evaluate surfaces, sample them on grids, export meshes and Laplace
    transforms, and verify the curvature and conjugate-net statements.
    """
    settings = Settings.from_env(log_level=log_level)
    level = settings.log_level.upper()
    logging.basicConfig(
        level=level if level in LOG_LEVELS else "WARNING",
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    ctx.obj = settings


@cli.command("eval")
@spec_option
@click.option("--u", "u", type=float, required=True)
@click.option("--v", "v", type=float, required=True)
def eval_command(spec_path: str, u: float, v: float):
    """
    Print the geometry of a surface at one point as JSON.

    Examples:

        knotted-spheres eval --spec sphere.json --u 0.7853981633974483 --v 0
    """
    spec = load_spec(spec_path)
    report = point_report(spec.name, evaluate_point(spec, u, v))
    click.echo(report.model_dump_json(indent=2))
    if report.skip_reason is not None:
        click.echo(f"Error: {report.skip_reason}", err=True)
        sys.exit(EXIT_INPUT_ERROR)


@cli.command()
@spec_option
@grid_option
@out_option
@workers_option
@click.pass_obj
def grid(settings: Settings, spec_path: str, grid: Optional[GridConfig], out: Optional[str], workers: Optional[int]):
    """
    Sample a surface on a grid and write one CSV row per point.

    Examples:

        knotted-spheres grid --spec case1.json --grid 0:1:10,0:6.283:10 --out out.csv
    """
    spec = load_spec(spec_path)
    samples = sample_grid(spec, _sampling_grid(spec, grid), workers or settings.workers)
    _emit(out, lambda stream: write_samples_csv(samples, stream))


@cli.command()
@click.option("--spec-dir", type=click.Path(file_okay=False), default=None,
              help="Directory of surface documents (default: the built-in corpus)")
@click.option("--claims", "claim_ids", callback=_parse_claims, default=None,
              help="Comma-separated claim ids (default: all)")
@click.option("--tol", type=click.FloatRange(min=0.0, min_open=True), default=None,
              help="Tolerance for every selected claim (default: per claim)")
@click.option("--seed", callback=_parse_seed, default=None, help="Hex seed of the built-in corpus")
@grid_option
@click.option("--resolution", type=click.IntRange(min=2), default=DEFAULT_RESOLUTION, show_default=True,
              help="Points per axis on each domain when no --grid is given")
@out_option
@workers_option
@click.pass_obj
def check(
    settings: Settings,
    spec_dir: Optional[str],
    claim_ids: Optional[List[ClaimId]],
    tol: Optional[float],
    seed: Optional[int],
    grid: Optional[GridConfig],
    resolution: int,
    out: Optional[str],
    workers: Optional[int],
):
    """
    Run the verification harness and print the ledger as JSON.

    Exits with status 2 when a claim fails.

    Examples:

        knotted-spheres check --claims PROP4,PROP9

        knotted-spheres check --spec-dir corpus/ --claims PROP1,PROP4,PROP9
    """
    settings = settings.model_copy(update={k: v for k, v in {"seed": seed, "workers": workers}.items() if v is not None})
    corpus = load_spec_dir(spec_dir) if spec_dir else builtin_corpus(settings.seed)
    verifier = Verifier(
        corpus, grid=grid, settings=settings, seed=None if spec_dir else settings.seed, resolution=resolution,
    )
    ledger = verifier.run(claim_ids, tol)
    _emit(out, lambda stream: stream.write(ledger.to_json() + "\n"))
    if not ledger.ok:
        failed = ", ".join(r.claim.value for r in ledger.claims if not r.ok)
        click.echo(f"Failed: {failed}", err=True)
        sys.exit(EXIT_CLAIM_FAILURE)


@cli.command()
@spec_option
@grid_option
@click.option("--direction", type=click.Choice([d.value for d in LaplaceDirection]), default=LaplaceDirection.MINUS.value,
              help="minus1 for X - Xu/G^2_12, plus1 for X - Xv/G^1_12")
@out_option
@workers_option
@click.pass_obj
def laplace(
    settings: Settings,
    spec_path: str,
    grid: Optional[GridConfig],
    direction: str,
    out: Optional[str],
    workers: Optional[int],
):
    """
    Write the Laplace transform of a surface as CSV.

    Examples:

        knotted-spheres laplace --spec cone.json --grid 0.5:1.5:5,0:6.283:8
    """
    spec = load_spec(spec_path)
    samples = laplace_grid(spec, _sampling_grid(spec, grid), direction, workers or settings.workers)
    _emit(out, lambda stream: write_laplace_csv(samples, stream))


@cli.command()
@spec_option
@grid_option
@click.option("--project", "projection", default=DEFAULT_PROJECTION, callback=_parse_projection,
              help="drop-x1..drop-x4 or ortho:n1,n2,n3,n4")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="OBJ file")
@workers_option
@click.pass_obj
def mesh(
    settings: Settings,
    spec_path: str,
    grid: Optional[GridConfig],
    projection: str,
    out: str,
    workers: Optional[int],
):
    """
    Export a projected triangle mesh (OBJ) with a JSON sidecar report.

    Examples:

        knotted-spheres mesh --spec torus.json --grid 0:6.283:40,0:6.283:40 --out torus.obj
    """
    spec = load_spec(spec_path)
    sampling = _sampling_grid(spec, grid)
    result = build_mesh(spec.name, sample_grid(spec, sampling, workers or settings.workers), sampling, projection)
    _emit(out, lambda stream: write_obj(result, stream))
    sidecar = sidecar_path(out)
    sidecar.write_text(result.report.model_dump_json(indent=2) + "\n", encoding="utf-8")
    click.echo(f"{out}: {result.report.vertices} vertices, {result.report.faces} faces, "
               f"{len(result.report.skipped)} collapsed")


@cli.command()
@click.option("--out-dir", type=click.Path(file_okay=False), required=True)
@click.option("--seed", callback=_parse_seed, default=None, help="Hex seed of the random instances")
@click.pass_obj
def corpus(settings: Settings, out_dir: str, seed: Optional[int]):
    """
    Write the built-in corpus as surface documents, one JSON file each.

    Examples:

        knotted-spheres corpus --out-dir corpus/ --seed 4B4E4F54
    """
    paths = write_documents(builtin_documents(settings.seed if seed is None else seed), Path(out_dir))
    click.echo(f"Wrote {len(paths)} surface documents to {out_dir}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI on ``argv`` and return its exit code instead of exiting.

    0 on success, 1 on input and usage errors, 2 when ``check`` finds a
    failing claim.
    """
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="knotted-spheres", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT_ERROR
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_INPUT_ERROR
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT_ERROR
    return rv if isinstance(rv, int) else EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
