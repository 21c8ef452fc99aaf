"""
Command-Line Interface

Subcommands: range, sweep, clone3, nonlocal, verify, threshold, cloner and
serve. Machine-readable output goes to stdout (or --out); logs go to stderr.

Exit codes: 0 success, 1 failed invariant, 2 usage or domain error,
3 output could not be written.
"""

from __future__ import annotations

import functools
import logging
import math
import os
import sys

import click

from config.settings import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_ETA_GRID,
    DEFAULT_HOST,
    DEFAULT_PORT,
    DEFAULT_SEED,
    MAX_SCALING_COPIES,
    MIN_THRESHOLD_STEP,
    OPTIMAL_ETA,
    THRESHOLD_STEP,
)
from analyzers.broadcast_scan import CSV_COLUMNS
from analyzers.verification import CHECKS, CheckStatus, run_verification
from app import reports
from app.utils import ReportEnvelope, format_interval, format_table, format_value, to_csv
from simulators.errors import DimensionError, DomainError, InfeasibleClonerError

logger = logging.getLogger(__name__)

EXIT_INVARIANT = 1
EXIT_IO = 3


def handle_errors(func):
    """Map domain errors to usage errors (exit 2) and output failures to exit 3."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (DomainError, DimensionError) as e:
            raise click.UsageError(str(e)) from e
        except OSError as e:
            click.echo(f"Error: cannot write output: {e}", err=True)
            sys.exit(EXIT_IO)
    return wrapper


def _parse_grid(text: str, lo: float, hi: float, lo_open: bool, name: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise click.BadParameter(f"{name} must be a comma-separated list of numbers, got {text!r}")
    if not values:
        raise click.BadParameter(f"{name} is empty")
    for value in values:
        if not math.isfinite(value):
            raise click.BadParameter(f"{name} value {value!r} is not a finite number")
        below = value <= lo if lo_open else value < lo
        if below or value > hi:
            bracket = "(" if lo_open else "["
            raise click.BadParameter(f"{name} value {value!r} outside {bracket}{lo:g}, {hi:g}]")
    return values


def _eta_grid(ctx, param, value):
    if value is None:
        return DEFAULT_ETA_GRID
    return _parse_grid(value, 0.0, OPTIMAL_ETA, True, "eta grid")


def _alpha_grid(ctx, param, value):
    if value is None:
        return DEFAULT_ALPHA_GRID
    return _parse_grid(value, 0.0, 1.0, False, "alpha grid")


def output_options(formats=("table", "json")):
    def decorator(func):
        func = click.option("--timestamp", default=None,
                            help="Envelope timestamp (ISO-8601). Defaults to the current UTC time, "
                                 "so JSON reruns are byte-identical only when this is set")(func)
        func = click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
                            help="Write the report to this file instead of stdout")(func)
        func = click.option("--format", "fmt", type=click.Choice(formats), default="table",
                            show_default=True, help="Output format")(func)
        return func
    return decorator


def emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    logger.info("report written to %s", out)


def render(envelope: ReportEnvelope, fmt: str, out: str | None, table) -> None:
    emit(envelope.to_json() if fmt == "json" else table(envelope), out)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log progress at DEBUG level on stderr")
def cli(verbose):
    """Entanglement broadcasting with universal quantum cloners."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _range_table(envelope: ReportEnvelope) -> str:
    nonlocal_row, local_row = envelope.rows
    return (
        f"eta = {format_value(envelope.parameters['eta'])}\n"
        f"nonlocal inseparable: {format_interval(nonlocal_row['lo'], nonlocal_row['hi'])}\n"
        f"local separable:      {format_interval(local_row['lo'], local_row['hi'])}\n"
    )


@cli.command("range")
@click.option("--eta", type=float, required=True, help="Reduction factor of the local cloners, in (0, 2/3]")
@output_options()
@handle_errors
def range_command(eta, fmt, out, timestamp):
    """Analytic alpha^2 ranges for the broadcast pairs."""
    render(reports.range_report(eta, timestamp), fmt, out, _range_table)


def _sweep_table(envelope: ReportEnvelope) -> str:
    columns = list(CSV_COLUMNS) + ["closed_form_deviation", "disagreement", "error"]
    summary = envelope.summary
    return format_table(envelope.rows, columns) + (
        f"\n{summary['points']} points, {summary['disagreements']} disagreement(s), "
        f"{summary['complementarity_violations']} complementarity violation(s)\n"
    )


@cli.command("sweep")
@click.option("--eta-grid", callback=_eta_grid, default=None,
              help="Comma-separated eta values (default: 9 points on [0.58, 2/3])")
@click.option("--alpha-grid", callback=_alpha_grid, default=None,
              help="Comma-separated alpha^2 values (default: 101 points on [0, 1])")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker processes for the grid")
@output_options(("table", "json", "csv"))
@handle_errors
def sweep_command(eta_grid, alpha_grid, workers, fmt, out, timestamp):
    """Cross-check the pipeline against the closed forms over an (eta, alpha^2) grid."""
    envelope, rows = reports.sweep_report(eta_grid, alpha_grid, workers, timestamp)
    if fmt == "csv":
        emit(to_csv(envelope.rows, CSV_COLUMNS), out)
    else:
        render(envelope, fmt, out, _sweep_table)
    if envelope.summary["disagreements"]:
        click.echo(f"{envelope.summary['disagreements']} disagreement row(s)", err=True)
        sys.exit(EXIT_INVARIANT)


def _clone3_table(envelope: ReportEnvelope) -> str:
    row = envelope.rows[0]
    lines = [
        f"alpha^2 = {format_value(row['alpha_sq'])}",
        f"verdict: {row['verdict']} (min partial-transpose eigenvalue {format_value(row['min_pt_eigenvalue'])})",
        f"scaled form: s = {format_value(row['s'])}, residual {format_value(row['fit_residual'])}",
        f"closed-form deviation: {format_value(row['closed_form_deviation'])}",
        "nonlocal pair (real part):",
    ]
    lines += ["  " + "  ".join(f"{v: .7f}" for v in line) for line in row["matrix_real"]]
    return "\n".join(lines) + "\n"


@cli.command("clone3")
@click.option("--alpha-sq", type=float, required=True, help="Input weight alpha^2 in [0, 1]")
@output_options()
@handle_errors
def clone3_command(alpha_sq, fmt, out, timestamp):
    """Broadcast through the optimal 1->3 cloner."""
    render(reports.clone3_report(alpha_sq, timestamp), fmt, out, _clone3_table)


def _nonlocal_table(envelope: ReportEnvelope) -> str:
    summary = envelope.summary
    lo, hi = summary["nonlocal_cloning_range"]
    return format_table(envelope.rows, ["m", "s_nl", "verdict"]) + (
        f"\nmax entangled copies: {summary['max_entangled_copies']}\n"
        f"local broadcasting max copies: {summary['local_max_copies']}\n"
        f"nonlocal cloning alpha^2 range: {format_interval(lo, hi)}\n"
    )


@cli.command("nonlocal")
@click.option("--max-m", type=click.IntRange(min=1, max=MAX_SCALING_COPIES), default=10, show_default=True,
              help="Largest number of copies to tabulate")
@output_options()
@handle_errors
def nonlocal_command(max_m, fmt, out, timestamp):
    """Scaling of nonlocal entanglement cloning with the number of copies."""
    render(reports.nonlocal_report(max_m, timestamp), fmt, out, _nonlocal_table)


@cli.command("verify")
@click.option("--check", "checks", multiple=True, type=click.Choice(list(CHECKS)),
              help="Run only this check (repeatable)")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Seed of all random probes")
@output_options()
@handle_errors
def verify_command(checks, seed, fmt, out, timestamp):
    """Run the invariant suite; exit 1 if any check fails."""
    report = run_verification(checks, seed)
    envelope = reports.verification_envelope(report, seed, timestamp)

    def table(_):
        lines = [f"{check.status.value.upper():<13} {check.name:<25} {check.detail} ({check.seconds:.2f}s)"
                 for check in report.checks]
        lines.append(
            f"\n{len(report.checks)} checks: {report.count(CheckStatus.PASS)} passed, "
            f"{report.count(CheckStatus.FAIL)} failed, {report.count(CheckStatus.INCONCLUSIVE)} inconclusive"
        )
        return "\n".join(lines) + "\n"

    render(envelope, fmt, out, table)
    if not report.passed:
        for check in report.failures:
            click.echo(f"FAILED: {check.name}: {check.detail}", err=True)
        sys.exit(EXIT_INVARIANT)


def _threshold_table(envelope: ReportEnvelope) -> str:
    row = envelope.rows[0]
    return (
        f"step: {format_value(envelope.parameters['step'])}\n"
        f"largest eta with empty interval: {row['eta_empty']:.6f} (fidelity {row['fidelity']:.6f})\n"
        f"analytic bound: eta = {format_value(row['eta_bound'])} (fidelity {format_value(row['fidelity_bound'])})\n"
        f"deviation: eta {row['eta_error']:.2e}, fidelity {row['fidelity_error']:.2e}\n"
    )


@cli.command("threshold")
@click.option("--step", type=click.FloatRange(min=MIN_THRESHOLD_STEP, max=OPTIMAL_ETA, max_open=True),
              default=THRESHOLD_STEP, show_default=True, help="Decrement of the downward eta scan")
@output_options()
@handle_errors
def threshold_command(step, fmt, out, timestamp):
    """Locate the smallest reduction factor that still broadcasts entanglement."""
    render(reports.threshold_report(step, timestamp), fmt, out, _threshold_table)


def _cloner_table(envelope: ReportEnvelope) -> str:
    row = envelope.rows[0]
    keys = ["kind", "a", "b", "c", "eta", "ancilla_dim", "measured_eta", "fidelity",
            "isometry_defect", "symmetry_defect", "constraints_passed", "max_residual"]
    lines = [f"{key:<20} {format_value(row[key])}" for key in keys]
    residuals = envelope.summary["residuals"]
    if residuals:
        lines.append("\nconstraint residuals:")
        lines += [f"  {name:<22} {value:.3e}" for name, value in residuals.items()]
    return "\n".join(lines) + "\n"


@cli.command("cloner")
@click.option("--eta", type=float, default=None, help="Build the simple cloner with this reduction factor")
@click.option("--a", "coeff_a", type=float, default=None, help="General cloner coefficient a")
@click.option("--c", "coeff_c", type=float, default=None, help="General cloner coefficient c")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Seed of the search restarts")
@output_options()
@handle_errors
def cloner_command(eta, coeff_a, coeff_c, seed, fmt, out, timestamp):
    """Build a universal 1->2 cloner and report its measured properties."""
    try:
        envelope = reports.cloner_report(eta, coeff_a, coeff_c, seed, timestamp)
    except InfeasibleClonerError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_INVARIANT)
    render(envelope, fmt, out, _cloner_table)
    if not envelope.summary["passed"]:
        sys.exit(EXIT_INVARIANT)


@cli.command("serve")
@click.option("--host", default=None, help=f"Bind address (default: $HOST or {DEFAULT_HOST})")
@click.option("--port", type=int, default=None, help=f"Port (default: $PORT or {DEFAULT_PORT})")
def serve_command(host, port):
    """Run the JSON HTTP service."""
    from app import create_app

    app = create_app()
    host = host or os.environ.get("HOST", DEFAULT_HOST)
    port = port or int(os.environ.get("PORT", DEFAULT_PORT))
    logger.warning("serving on %s:%d", host, port)
    app.run(debug=False, host=host, port=port)
