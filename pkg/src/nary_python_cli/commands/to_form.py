"""To-form command for degenerating to an algebra of an n-linear form."""

from pathlib import Path

import typer

from nary_python_cli.utils.config import get_context_budget
from nary_python_cli.utils.degeneration import degenerate_to_form
from nary_python_cli.utils.errors import NaryError
from nary_python_cli.utils.formats import read_structure
from nary_python_cli.utils.output import fail, is_verbose, paginate_output, report_witnesses, should_use_pager

app = typer.Typer(
    help="Degenerate a non-subalgebraic structure to an algebra of an n-linear form",
    no_args_is_help=True,
    invoke_without_command=True,
    context_settings={
        "allow_interspersed_args": True,
        "help_option_names": ["-h", "--help"],
    },
)


@app.callback()
def to_form_callback(
    ctx: typer.Context,
    structure: Path = typer.Argument(..., exists=True, dir_okay=False, help="Structure file"),
    output_dir: Path = typer.Option(None, "--output-dir", help="Write the witness and target files here"),
):
    """Find an escaping product and degenerate along it.

    Exits with 1 when the structure is subalgebraic and 3 when no escaping
    product is found within the retry budget.

    Examples::

        nary to-form algebra.structure
        nary --seed 7 to-form algebra.structure --output-dir out/
    """
    verbose = is_verbose(ctx)
    try:
        mu = read_structure(structure)
        witness = degenerate_to_form(mu, get_context_budget(ctx, verbose), verbose)
    except NaryError as exc:
        fail(exc)

    typer.echo("✅ degenerated to an algebra of a nonzero n-linear form")
    target = report_witnesses([witness], output_dir, verbose)
    paginate_output(target.rstrip("\n"), should_use_pager(ctx))
