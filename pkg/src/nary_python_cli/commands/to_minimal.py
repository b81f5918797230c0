"""To-minimal command for degenerating a form algebra to a p-minimal one."""

from pathlib import Path

import typer

from nary_python_cli.utils.config import get_context_budget
from nary_python_cli.utils.degeneration import form_to_minimal
from nary_python_cli.utils.errors import NaryError
from nary_python_cli.utils.formats import read_structure
from nary_python_cli.utils.output import fail, is_verbose, paginate_output, report_witnesses, should_use_pager

app = typer.Typer(
    help="Degenerate an algebra of a nonzero n-linear form to a p-minimal one",
    no_args_is_help=True,
    invoke_without_command=True,
    context_settings={
        "allow_interspersed_args": True,
        "help_option_names": ["-h", "--help"],
    },
)


@app.callback()
def to_minimal_callback(
    ctx: typer.Context,
    structure: Path = typer.Argument(..., exists=True, dir_okay=False, help="Structure file"),
    output_dir: Path = typer.Option(None, "--output-dir", help="Write the witness and target files here"),
):
    """Find the maximal form partition p and degenerate to a p-minimal presentation.

    Examples::

        nary to-minimal form.structure
        nary to-minimal form.structure --output-dir out/
    """
    verbose = is_verbose(ctx)
    try:
        mu = read_structure(structure)
        chain = form_to_minimal(mu, get_context_budget(ctx, verbose), verbose)
    except NaryError as exc:
        fail(exc)

    typer.echo(f"✅ {chain.partition}-minimal presentation, realized by {chain.witness_map}")
    target = report_witnesses(chain.witnesses, output_dir, verbose)
    paginate_output(target.rstrip("\n"), should_use_pager(ctx))
