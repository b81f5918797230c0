"""Degenerate command for applying a witness family to a structure."""

from pathlib import Path

import typer

from nary_python_cli.utils.degeneration import apply_witness
from nary_python_cli.utils.errors import DimensionMismatch, NaryError
from nary_python_cli.utils.formats import read_structure, read_witness, render_structure, write_structure
from nary_python_cli.utils.output import fail, is_verbose, paginate_output, should_use_pager

app = typer.Typer(
    help="Apply a parameterized basis to a structure and take the limit at t = 0",
    no_args_is_help=True,
    invoke_without_command=True,
    context_settings={
        "allow_interspersed_args": True,
        "help_option_names": ["-h", "--help"],
    },
)


@app.callback()
def degenerate_callback(
    ctx: typer.Context,
    structure: Path = typer.Argument(..., exists=True, dir_okay=False, help="Structure file"),
    witness: Path = typer.Argument(..., exists=True, dir_okay=False, help="Witness file with the family E^t"),
    output: Path = typer.Option(None, "--output", "-o", help="Write the target structure to this file"),
):
    """Compute the degeneration of a structure along a witness family.

    Examples::

        nary degenerate algebra.structure step-1.witness
        nary degenerate algebra.structure step-1.witness -o target.structure
    """
    verbose = is_verbose(ctx)
    try:
        mu = read_structure(structure)
        parsed = read_witness(witness)
        if parsed.arity != mu.arity:
            raise DimensionMismatch(f"witness is for arity {parsed.arity}, structure has arity {mu.arity}")
        result = apply_witness(mu, parsed.family)
    except NaryError as exc:
        fail(exc)

    if verbose:
        typer.echo(f"  [verbose] determinant {parsed.family.determinant_monomial()}")
    typer.echo("✅ basis change (no constant depends on t)" if result.lossless else "✅ degeneration computed")
    if output is not None:
        write_structure(output, result.target)
        typer.echo(f"✅ Target written to {output}")
    else:
        paginate_output(render_structure(result.target).rstrip("\n"), should_use_pager(ctx))
