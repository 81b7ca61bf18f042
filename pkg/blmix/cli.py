"""
blmix CLI - Main entry point.
Exact mixing analysis of the two-urn Bernoulli-Laplace chain.

Data (JSON, CSV, TSV) goes to stdout; logs and errors go to stderr.
Exit codes: 2 invalid input, 3 inconclusive (iteration cap), 1 failed verification.
"""
import io
import json
import sys
from dataclasses import replace

import click

from . import __version__
from .backends import BackendFactory
from .chain import ChainParams, build_kernel
from .config import load_config, load_settings, set_config_value
from .contracts import MixResult
from .errors import BLMixError, InconclusiveError, RegimeError, UnsupportedSizeError
from .logging_config import get_logger, setup_logging
from .mixing import (
    FIGURE_PRESETS,
    TABLE_PRESETS,
    CurveStatus,
    FigurePreset,
    RatioTriple,
    SweepGrid,
    default_cap,
    parse_axis,
    tv_profile,
    worst_case_curve,
)
from .spectral import classify, lambda1_exact, lambda2_exact, q_n, t_n

logger = get_logger(__name__)

EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3


def _fail(error: Exception) -> None:
    """Report a library error on stderr and exit with its code."""
    click.secho(f"Error: {error}", fg='red', err=True)
    sys.exit(EXIT_INCONCLUSIVE if isinstance(error, InconclusiveError) else EXIT_INVALID)


def _emit_json(payload: dict) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(',') if v.strip())
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got '{text}'")


def _parse_ns(text: str) -> tuple[int, ...]:
    """'50,100,150' or 'start:stop:step' (stop inclusive)."""
    try:
        if ':' in text:
            start, stop, step = (int(v) for v in text.split(':'))
            return tuple(range(start, stop + 1, step))
        return tuple(int(v) for v in text.split(',') if v.strip())
    except ValueError:
        raise click.BadParameter(f"expected 'a,b,c' or 'start:stop:step', got '{text}'")


def _backend(settings, name):
    name = name or settings.backend
    if name == 'rational':
        return BackendFactory.create_backend(name, max_n=settings.rational_max_n)
    return BackendFactory.create_backend(name)


chain_options = [
    click.option('--n', 'n', type=int, required=True, help="Total number of balls."),
    click.option('--m', 'm', type=int, required=True, help="Left-urn size."),
    click.option('--r', 'r', type=int, required=True, help="Number of red balls."),
    click.option('--k', 'k', type=int, required=True, help="Balls swapped per step."),
]


def with_chain_options(fn):
    for option in reversed(chain_options):
        fn = option(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="blmix")
@click.option('--verbose', '-v', is_flag=True, help="Enable DEBUG-level logging.")
def cli(verbose):
    """
    blmix: exact mixing times of the Bernoulli-Laplace urn chain.

    Kernels, worst-case total-variation curves, spectral predictors,
    coupling simulations and the published table/figure sweeps.
    """
    level = "DEBUG" if verbose else None
    setup_logging(level)


@cli.command()
@with_chain_options
@click.option('--epsilon', type=float, default=None, help="TV threshold (default 0.01).")
@click.option('--backend', type=click.Choice(BackendFactory.get_available_backends()),
              default=None, help="Arithmetic backend.")
@click.option('--all-starts/--extremes', default=True,
              help="Maximize over every start (default) or only the two extreme states.")
@click.option('--cap', type=int, default=None, help="Iteration cap.")
def mix(n, m, r, k, epsilon, backend, all_starts, cap):
    """Mixing time of a single chain, as JSON."""
    try:
        settings = load_settings(epsilon=epsilon)
        params = ChainParams(n=n, m=m, r=r, k=k)
        arith = _backend(settings, backend)
        kernel = build_kernel(params, arith)
        if cap is None:
            cap = default_cap(params, settings.cap_floor)
        curve = worst_case_curve(kernel, settings.epsilon, cap=cap, extremes_only=not all_starts)
        if curve.status is CurveStatus.INCONCLUSIVE:
            curve.require_mixed()

        try:
            tn = t_n(params)
        except RegimeError:
            tn = None
        try:
            qn = q_n(params)
        except UnsupportedSizeError:
            qn = None
        lam2 = lambda2_exact(params)
        result = MixResult(
            params=params.as_dict(),
            epsilon=settings.epsilon,
            t_mix=curve.t_mix,
            non_mixing=curve.non_mixing,
            t_n=tn,
            q_n=qn,
            lambda1=float(lambda1_exact(params)),
            lambda2=None if lam2 is None else float(lam2),
            regime=classify(params, settings.critical_constant).value,
            backend=arith.name,
            approximate=curve.approximate,
        )
        _emit_json(result.model_dump())
    except BLMixError as e:
        _fail(e)


@cli.command()
@with_chain_options
@click.option('--steps', type=int, default=None,
              help="Last t to print (default: five steps past the mixing time).")
@click.option('--epsilon', type=float, default=None, help="TV threshold used for the default range.")
@click.option('--backend', type=click.Choice(BackendFactory.get_available_backends()), default=None)
def curve(n, m, r, k, steps, epsilon, backend):
    """Worst-case distance profile d(t) as TSV (t, d, worst start)."""
    try:
        settings = load_settings(epsilon=epsilon)
        params = ChainParams(n=n, m=m, r=r, k=k)
        kernel = build_kernel(params, _backend(settings, backend))
        if steps is None:
            mixed = worst_case_curve(kernel, settings.epsilon)
            steps = 10 if mixed.t_mix is None else mixed.t_mix + 5
        click.echo("t\td\tworst_start")
        for t, value, start in tv_profile(kernel, steps):
            click.echo(f"{t}\t{value:.12g}\t{start}")
    except BLMixError as e:
        _fail(e)


@cli.command()
@click.option('--table', type=click.Choice(['1', '2', '3']), default=None,
              help="Built-in grid of the published tables.")
@click.option('--axis', type=click.Choice(['k', 'r', 'm']), default=None, help="Varying ratio.")
@click.option('--ratios', default=None, help="Comma-separated ratios along the axis.")
@click.option('--ns', default=None, help="n values: 'a,b,c' or 'start:stop:step'.")
@click.option('--gamma', type=float, default=0.02, help="Fixed k/n when the axis is r or m.")
@click.option('--eta', type=float, default=0.5, help="Fixed r/n when the axis is k or m.")
@click.option('--h', 'h', type=float, default=None, help="Fixed m/n (default: m = r).")
@click.option('--epsilon', type=float, default=None, help="TV threshold (default 0.01).")
@click.option('--backend', type=click.Choice(BackendFactory.get_available_backends()), default=None)
@click.option('--threads', type=int, default=None, help="Worker threads (env BLMIX_THREADS).")
@click.option('--output', '-o', type=click.Path(dir_okay=False), default=None,
              help="CSV path (default: stdout).")
@click.option('--resume', is_flag=True, help="Resume the last interrupted sweep job.")
@click.option('--progress', is_flag=True, help="Show a progress bar on stderr.")
def sweep(table, axis, ratios, ns, gamma, eta, h, epsilon, backend, threads, output, resume, progress):
    """Mixing-time grid as CSV: one row per ratio, one column per n."""
    from .commands.sweep import SweepJob, write_sweep_csv

    try:
        settings = load_settings(epsilon=epsilon, threads=threads, backend=backend)
        if resume:
            job_id = SweepJob.find_latest_job(settings.state_dir)
            if not job_id:
                click.secho("No interrupted sweep job found to resume.", fg='yellow', err=True)
                sys.exit(EXIT_INVALID)
            job = SweepJob.load_state(job_id, settings.state_dir)
            logger.info("resuming sweep job %s", job_id)
        else:
            if table:
                grid = TABLE_PRESETS[int(table)]
                if epsilon is not None:
                    grid = replace(grid, epsilon=settings.epsilon)
            elif axis and ratios and ns:
                grid = SweepGrid(axis=parse_axis(axis), ratios=_parse_floats(ratios),
                                 ns=_parse_ns(ns), epsilon=settings.epsilon,
                                 gamma=gamma, eta=eta, h=h)
            else:
                raise click.UsageError("give --table, or all of --axis, --ratios and --ns")
            job = SweepJob(grid, backend=settings.backend, state_dir=settings.state_dir)

        result = job.run(threads=settings.threads, progress=progress)
        if output:
            write_sweep_csv(result, output)
            if result.failures:
                click.secho(f"{len(result.failures)} cells failed, see the .errors.log sidecar",
                            fg='yellow', err=True)
        else:
            buffer = io.StringIO()
            write_sweep_csv(result, stream=buffer)
            click.echo(buffer.getvalue(), nl=False)
            for cell in result.failures:
                click.secho(f"ratio={cell.ratio} n={cell.n}: {cell.error}", fg='yellow', err=True)
    except FileNotFoundError as e:
        click.secho(f"Sweep job not found: {e}", fg='red', err=True)
        sys.exit(EXIT_INVALID)
    except BLMixError as e:
        _fail(e)


@cli.command()
@click.option('--preset', type=click.Choice(['1', '2', '3']), default=None, help="Published figure.")
@click.option('--gamma', type=float, default=None, help="k/n for a custom figure.")
@click.option('--eta', type=float, default=None, help="r/n for a custom figure.")
@click.option('--h', 'h', type=float, default=None, help="m/n for a custom figure (default: m = r).")
@click.option('--ns', default=None, help="n values: 'a,b,c' or 'start:stop:step'.")
@click.option('--epsilon', type=float, default=None, help="TV threshold (default 0.01).")
@click.option('--backend', type=click.Choice(BackendFactory.get_available_backends()), default=None)
@click.option('--threads', type=int, default=None, help="Worker threads (env BLMIX_THREADS).")
@click.option('--out-dir', type=click.Path(file_okay=False), default='.', help="Output directory.")
@click.option('--name', default=None, help="Base file name (default: figure<preset> or figure).")
@click.option('--progress', is_flag=True, help="Show a progress bar on stderr.")
def figure(preset, gamma, eta, h, ns, epsilon, backend, threads, out_dir, name, progress):
    """t_mix against n: writes <name>.tsv and <name>.svg."""
    from pathlib import Path

    from .commands.figure import figure_points, write_svg, write_tsv

    try:
        settings = load_settings(epsilon=epsilon, threads=threads, backend=backend)
        if preset:
            fig = FIGURE_PRESETS[int(preset)]
            if ns:
                fig = FigurePreset(fig.ratios, _parse_ns(ns), settings.epsilon, fig.name)
            elif epsilon is not None:
                fig = FigurePreset(fig.ratios, fig.ns, settings.epsilon, fig.name)
        elif gamma is not None and eta is not None and ns:
            fig = FigurePreset(RatioTriple(gamma, eta, eta if h is None else h),
                                _parse_ns(ns), settings.epsilon, name="figure")
        else:
            raise click.UsageError("give --preset, or all of --gamma, --eta and --ns")

        points = figure_points(fig, threads=settings.threads, backend=settings.backend,
                               progress=progress)
        for point in points:
            if point.status == "skipped":
                click.secho(f"skipped n={point.n}: {point.notice}", fg='yellow', err=True)
            elif point.status == "err":
                click.secho(f"failed n={point.n}: {point.notice}", fg='red', err=True)

        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        base = name or fig.name
        tsv = write_tsv(points, out / f"{base}.tsv")
        svg = write_svg(points, out / f"{base}.svg", title=f"t_mix({fig.epsilon}) at {fig.ratios}")
        click.echo(str(tsv))
        click.echo(str(svg))
    except BLMixError as e:
        _fail(e)


@cli.command()
@click.option('--suite', type=click.Choice(['spectral', 'coupling', 'llt', 'all']), default='all')
@click.option('--seed', type=int, default=42, help="Seed for the Monte-Carlo checks.")
@click.option('--trials', type=int, default=100_000, help="Monte-Carlo trials per coupling check.")
def verify(suite, seed, trials):
    """Run property suites; JSON report, exit 1 on any failure."""
    from .commands.verify import run_suites

    try:
        report = run_suites(suite, seed=seed, trials=trials)
    except BLMixError as e:
        _fail(e)
    _emit_json(report.model_dump())
    if not report.passed:
        sys.exit(EXIT_VERIFY_FAILED)


@cli.group()
def config():
    """Show or edit ~/.blmix/config.json."""
    pass


@config.command('show')
def config_show():
    """Print the stored configuration and the resolved settings."""
    try:
        settings = load_settings()
    except BLMixError as e:
        _fail(e)
    _emit_json({"file": load_config(), "settings": settings.model_dump()})


@config.command('set')
@click.argument('key')
@click.argument('value')
def config_set(key, value):
    """Store KEY=VALUE (JSON values such as 0.05 or true are decoded)."""
    try:
        decoded = json.loads(value)
    except json.JSONDecodeError:
        decoded = value
    set_config_value(key, decoded)
    try:
        load_settings()
    except BLMixError as e:
        click.secho(f"Warning: stored value is invalid: {e}", fg='yellow', err=True)
    click.echo(f"✓ {key} = {decoded!r}")


if __name__ == '__main__':
    cli()
