"""Selfcheck command for running the seeded invariant corpus."""

from pathlib import Path

import tomli_w
import typer

from nary_python_cli.utils.config import (
    get_config,
    get_context_budget,
    get_selfcheck_settings,
    get_trials,
)
from nary_python_cli.utils.corpus import run_selfcheck
from nary_python_cli.utils.errors import InputError
from nary_python_cli.utils.output import fail, is_verbose, paginate_output, should_use_pager

app = typer.Typer(
    help="Run the cross-module invariant suites on a seeded random corpus",
    no_args_is_help=False,
    invoke_without_command=True,
    context_settings={"help_option_names": ["-h", "--help"]},
)


def parse_shape(text: str) -> tuple[int, int]:
    """'2x3' or '2,3' -> (2, 3)."""
    pieces = text.lower().replace(",", "x").split("x")
    if len(pieces) != 2 or not all(piece.strip().isdigit() for piece in pieces):
        raise InputError(f"shape must look like '2x3', got {text!r}")
    n, m = (int(piece) for piece in pieces)
    if n < 2 or m < 1:
        raise InputError(f"shape {text!r} needs n >= 2 and m >= 1")
    return n, m


@app.callback()
def selfcheck_callback(
    ctx: typer.Context,
    structures: int = typer.Option(None, "--structures", help="Structures per shape (overrides config)"),
    shape: list[str] = typer.Option(None, "--shape", help="Shape 'NxM'; repeat for several (overrides config)"),
    trials: int = typer.Option(None, "--trials", help="Sampling trials per property (overrides config)"),
    report: Path = typer.Option(None, "--report", help="Also write the report as TOML to this file"),
):
    """Check oracle agreement, group action laws, disjointness and pipeline postconditions.

    Failures are counted and reported; the exit code is 1 when any occurred.

    Examples::

        nary selfcheck
        nary --seed 1 selfcheck --shape 2x3 --structures 200
        nary selfcheck --structures 20 --report selfcheck.toml
    """
    verbose = is_verbose(ctx)
    config = get_config()
    settings = get_selfcheck_settings(config)
    try:
        shapes = [parse_shape(text) for text in shape] if shape else settings["shapes"]
    except InputError as exc:
        fail(exc)
    budget = get_context_budget(ctx, verbose)

    result = run_selfcheck(
        budget.seed,
        shapes,
        structures=settings["structures"] if structures is None else structures,
        trials=get_trials(config) if trials is None else trials,
        density=settings["density"],
        pipeline_runs=settings["pipeline_runs"],
        budget=budget,
        verbose=verbose,
    )

    paginate_output(result.render(), should_use_pager(ctx))
    if report is not None:
        report.write_text(tomli_w.dumps(result.as_dict()), encoding="utf-8")
        typer.echo(f"✅ Report written to {report}")
    if not result.passed:
        raise typer.Exit(1)
