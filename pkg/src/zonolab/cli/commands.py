import functools
import io
import logging
import sys
from dataclasses import replace
from logging import getLogger
from pathlib import Path
from typing import Any
from typing import Callable

import click

from .. import __version__
from .._schema import SCHEMA_VERSION
from ..errors import DegenerateZonotopeError
from ..errors import NumericalBreakdownError
from ..errors import ZonolabError
from ..functionals import append_report_row
from ..functionals import functionals_report
from ..functionals import intrinsic_volume
from ..functionals import power_k_volume
from ..functionals import steiner_polynomial
from ..inequalities import SUITE_ALIASES
from ..inequalities import available_suites
from ..inequalities import dump_suite_summary
from ..inequalities import input_digest
from ..inequalities import resolve_suite
from ..inequalities import verify_theorem_suite
from ..inequalities import write_suite_csv
from ..radii import circumradius
from ..radii import ratio_report
from ..rng import fresh_seed
from ..rng import spawn_generators
from ..search import constrained_minimize
from ..search import load_search_config
from ..search import thm5_counterexample
from ..search import write_run_directory
from ..stochastic import ProbeFamily
from ..stochastic import asymptotic_probe
from ..stochastic import expected_random_wedge
from ..stochastic import family_member
from ..stochastic import write_estimates_csv
from ..stochastic import write_probe_csv
from ..zonotope import load_generator_set
from ..zonotope import projection_body
from ..zonotope import save_generator_set
from ._io import emit
from ._io import write_manifest
from .data import ExitCode
from .data import RunManifest

__all__ = ["cli"]

EXTRA_CHECKS: dict[str, str] = {
    "lemma6": "E|det(u_1..u_d)| of uniform unit vectors against 2 omega_(d+1)^(d-1) / omega_d^d",
    "thm5-counterexample": "a shifted rhombic dodecahedron in odd d beats the regular circumradius",
}

_DEFAULT_DIMENSION: dict[ProbeFamily, int] = {
    ProbeFamily.PLANAR_REGULAR: 2,
    ProbeFamily.FIBONACCI_SPHERE: 3,
    ProbeFamily.RANDOM_UNIFORM: 3,
}


class SizeRange(click.ParamType):
    """Generator counts written as "a..b", "a,b,c" or "a"."""

    name = "sizes"

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> list[int]:
        if isinstance(value, list):
            return value

        try:
            if ".." in value:
                start, stop = (int(part) for part in value.split("..", 1))
                sizes = list(range(start, stop + 1))
            else:
                sizes = [int(part) for part in value.split(",")]
        except ValueError:
            self.fail(f"'{value}' isn't a size, a list of sizes or a range a..b", param, ctx)

        if not sizes or min(sizes) < 1:
            self.fail(f"'{value}' holds no positive sizes", param, ctx)

        return sizes


def _exits_with_codes[**P](func: Callable[P, ExitCode]) -> Callable[P, None]:
    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs):
        ctx = click.get_current_context()
        logger = getLogger(__name__)

        try:
            code = func(*args, **kwargs)
        except NumericalBreakdownError as e:
            logger.error(f"Numerical failure: {e}")
            click.echo(f"Error: {e}", err=True)
            code = ExitCode.NUMERICAL
        except ZonolabError as e:
            logger.error(f"{type(e).__name__}: {e}")
            click.echo(f"Error: {e}", err=True)
            code = ExitCode.USAGE

        ctx.exit(int(code))

    return wrapper


def _manifest(ctx: click.Context, digest: str, seed: int | None = None) -> RunManifest:
    return RunManifest(
        argv=tuple(sys.argv),
        command=ctx.command_path,
        config_digest=digest,
        seed=seed,
    )


@click.group()
@click.version_option(__version__, prog_name="zonolab")
@click.option("-v", "--verbose", count=True, help="Log more; repeat for debug output.")
@click.option("-q", "--quiet", is_flag=True, help="Only log errors.")
@click.option(
    "--workers",
    type=click.IntRange(min=1),
    envvar="ZONOLAB_WORKERS",
    help="Worker threads; results never depend on it.",
)
@click.pass_context
def cli(ctx: click.Context, verbose: int, quiet: bool, workers: int | None):
    """Exact and Monte Carlo calculus for zonotopes."""
    level = logging.ERROR if quiet else max(logging.DEBUG, logging.WARNING - 10 * verbose)
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", force=True
    )

    ctx.ensure_object(dict)
    ctx.obj["workers"] = workers


@cli.command()
@click.argument("input_file", type=click.File("r"))
@click.option("--all", "everything", is_flag=True, help="Every functional, both radii and the Steiner polynomial.")
@click.option("--vk", type=int, multiple=True, help="V_k for this k; repeatable.")
@click.option("--radii", is_flag=True, help="Circumradius and inradius with certificates.")
@click.option("--steiner", is_flag=True, help="The Steiner polynomial coefficients.")
@click.option("--power-k", type=int, help="The total k-volume of power --alpha.")
@click.option("--alpha", type=float, default=2.0, show_default=True)
@click.option("--projection-body", "with_projection_body", is_flag=True, help="The generators of the projection body.")
@click.option("--allow-large", is_flag=True, help="Lift the enumeration refusals.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False, path_type=Path), help="Append a CSV row.")
@click.option("--manifest", "manifest_path", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
@_exits_with_codes
def compute(
    ctx: click.Context,
    input_file,
    everything: bool,
    vk: tuple[int, ...],
    radii: bool,
    steiner: bool,
    power_k: int | None,
    alpha: float,
    with_projection_body: bool,
    allow_large: bool,
    csv_path: Path | None,
    manifest_path: Path | None,
) -> ExitCode:
    """Evaluates functionals of the generator set in INPUT_FILE."""
    gs = load_generator_set(input_file)
    workers = ctx.obj["workers"]

    if not (vk or radii or steiner or power_k is not None or with_projection_body):
        everything = True

    payload: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "label": gs.label,
        "n": gs.n,
        "d": gs.dim,
    }

    if everything:
        payload["functionals"] = functionals_report(
            gs, allow_large=allow_large, workers=workers
        ).to_json()

    if vk:
        payload["intrinsic_volumes"] = {
            str(k): intrinsic_volume(gs, k, allow_large=allow_large, workers=workers)
            for k in vk
        }

    if everything or radii:
        try:
            payload["radii"] = ratio_report(gs, allow_large=allow_large, workers=workers).to_json()
        except DegenerateZonotopeError:
            getLogger(__name__).warning(f"{gs.label!r} isn't full-dimensional; no inradius")
            payload["radii"] = {
                "cirr": circumradius(gs, allow_large=allow_large, workers=workers).to_json(),
                "ir": None,
                "ratio_minus_one": None,
            }

    if everything or steiner:
        payload["steiner"] = steiner_polynomial(
            gs, allow_large=allow_large, workers=workers
        ).to_json()

    if power_k is not None:
        payload["power_k"] = power_k_volume(
            gs, power_k, alpha, allow_large=allow_large, workers=workers
        ).to_json()

    if with_projection_body:
        payload["projection_body"] = projection_body(gs).to_json()

    emit(payload)

    if csv_path is not None:
        append_report_row(csv_path, functionals_report(gs, allow_large=allow_large, workers=workers))

    if manifest_path is not None:
        digest = input_digest(gs.generators, **{k: repr(v) for k, v in ctx.params.items() if k != "input_file"})
        write_manifest(manifest_path, _manifest(ctx, digest).finish(ExitCode.OK))

    return ExitCode.OK


def _list_suites():
    aliases: dict[str, list[str]] = {}

    for alias, name in SUITE_ALIASES.items():
        aliases.setdefault(name, []).append(alias)

    for name in available_suites():
        also = f" (also {', '.join(aliases[name])})" if name in aliases else ""
        click.echo(f"{name}{also}: {resolve_suite(name).summary}")

    for name, summary in EXTRA_CHECKS.items():
        click.echo(f"{name}: {summary}")


@cli.command()
@click.argument("suite", required=False)
@click.option("--list", "list_suites", is_flag=True, help="Print the available suites.")
@click.option("--trials", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--d", "d", type=int, default=3, show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=100_000, show_default=True, help="Samples for lemma6.")
@click.option("--v-scale", type=float, default=1e-2, show_default=True, help="Shift length for thm5-counterexample.")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Directory for CSV, summary and manifest.")
@click.pass_context
@_exits_with_codes
def verify(
    ctx: click.Context,
    suite: str | None,
    list_suites: bool,
    trials: int,
    seed: int,
    d: int,
    samples: int,
    v_scale: float,
    out: Path | None,
) -> ExitCode:
    """Checks the inequalities of SUITE on sampled inputs.

    Exits with 1 when any claim is violated beyond tolerance.
    """
    if list_suites:
        _list_suites()

        return ExitCode.OK

    if suite is None:
        raise click.UsageError("Missing a suite name; see --list")

    workers = ctx.obj["workers"]

    if out is not None:
        out.mkdir(parents=True, exist_ok=True)

    match suite:
        case "lemma6":
            estimate = expected_random_wedge(d, samples, seed, workers=workers)
            code = ExitCode.OK if estimate.agrees() else ExitCode.FINDINGS
            emit(estimate.to_json())

            if out is not None:
                with (out / "estimates.csv").open("w", newline="") as file:
                    write_estimates_csv(file, [estimate])
        case "thm5-counterexample":
            record = thm5_counterexample(d, v_scale)
            code = ExitCode.OK if record.beats_regular and record.width_check else ExitCode.FINDINGS
            emit(record.to_json())
        case _:
            result = verify_theorem_suite(suite, trials, seed, d=d, workers=workers)
            code = ExitCode.OK if result.holds else ExitCode.FINDINGS
            emit(result.to_json())

            if out is not None:
                with (out / "suite.csv").open("w", newline="") as file:
                    write_suite_csv(file, result)

                with (out / "summary.json").open("w") as file:
                    dump_suite_summary(file, result)

    if out is not None:
        digest = input_digest(suite=suite, trials=trials, seed=seed, d=d, samples=samples, v_scale=v_scale)
        write_manifest(out / "manifest.json", _manifest(ctx, digest, seed).finish(code))

    return code


@cli.command()
@click.argument("config_file", type=click.File("r"))
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="The run directory.")
@click.option("--seed", type=click.IntRange(min=0), help="Overrides the config's seed.")
@click.pass_context
@_exits_with_codes
def search(ctx: click.Context, config_file, out: Path | None, seed: int | None) -> ExitCode:
    """Runs the search described by the YAML CONFIG_FILE.

    A config without a seed is seeded from OS entropy; the seed is written
    to the run directory, so the run can be repeated bit for bit.
    """
    logger = getLogger(__name__)
    config = load_search_config(config_file)

    if seed is not None:
        config = config.with_seed(seed)

    if config.seed is None:
        config = config.with_seed(fresh_seed())
        logger.info(f"Seeded the search with {config.seed}")

    if config.workers is None and ctx.obj["workers"] is not None:
        config = replace(config, workers=ctx.obj["workers"])

    manifest = _manifest(ctx, config.digest(), config.seed)
    outcome = constrained_minimize(config)

    if out is None:
        out = Path("runs") / f"{config.objective}-{config.digest()[:12]}"

    write_run_directory(out, outcome, manifest.finish(ExitCode.OK).to_json())

    click.echo(f"{config.objective} = {outcome.value!r} (restart {outcome.best_restart}); wrote {out}")

    return ExitCode.OK


@cli.command()
@click.argument("family", type=click.Choice([str(family) for family in ProbeFamily]))
@click.option("--n", "sizes", type=SizeRange(), default="8..64", show_default=True)
@click.option("--d", "d", type=int, help="The dimension; defaults to 2 for planar-regular, else 3.")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Directory for fixtures and the probe table.")
@click.pass_context
@_exits_with_codes
def sample(
    ctx: click.Context, family: str, sizes: list[int], d: int | None, seed: int, out: Path | None
) -> ExitCode:
    """Generates members of FAMILY and tabulates their gaps to the ball.

    Exits with 1 when a lower bound fails from n = 8 on.
    """
    family = ProbeFamily(family)
    d = _DEFAULT_DIMENSION[family] if d is None else d
    rows = asymptotic_probe(family, d, sizes, seed, workers=ctx.obj["workers"])
    code = ExitCode.FINDINGS if any(row.lower_bounds_hold is False for row in rows) else ExitCode.OK

    if out is None:
        buffer = io.StringIO()
        write_probe_csv(buffer, rows)
        click.echo(buffer.getvalue(), nl=False)

        return code

    fixtures = out / "fixtures"
    fixtures.mkdir(parents=True, exist_ok=True)

    for n, generator in zip(sizes, spawn_generators(seed, len(sizes))):
        with (fixtures / f"{family}-d{d}-n{n}.json").open("w") as file:
            save_generator_set(file, family_member(family, n, d, generator))

    with (out / "probe.csv").open("w", newline="") as file:
        write_probe_csv(file, rows)

    digest = input_digest(family=str(family), d=d, sizes=sizes, seed=seed)
    write_manifest(out / "manifest.json", _manifest(ctx, digest, seed).finish(code))
    click.echo(f"Wrote {len(sizes)} fixture(s) and {out / 'probe.csv'}")

    return code
