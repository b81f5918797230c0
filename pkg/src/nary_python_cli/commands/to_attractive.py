"""To-attractive command for degenerating a subalgebraic structure."""

from pathlib import Path

import typer

from nary_python_cli.utils.config import get_context_budget
from nary_python_cli.utils.degeneration import subalgebraic_to_max_attractive
from nary_python_cli.utils.errors import NaryError
from nary_python_cli.utils.formats import read_structure
from nary_python_cli.utils.output import fail, is_verbose, paginate_output, report_witnesses, should_use_pager

app = typer.Typer(
    help="Degenerate a subalgebraic structure to a maximally p-attractive one",
    no_args_is_help=True,
    invoke_without_command=True,
    context_settings={
        "allow_interspersed_args": True,
        "help_option_names": ["-h", "--help"],
    },
)


@app.callback()
def to_attractive_callback(
    ctx: typer.Context,
    structure: Path = typer.Argument(..., exists=True, dir_okay=False, help="Structure file"),
    output_dir: Path = typer.Option(None, "--output-dir", help="Write the witness and target files here"),
):
    """Change basis, then contract along <e_1..e_s> for s = 1, ..., m-1.

    Exits with 1 when the structure is not subalgebraic and 2 when it is zero.

    Examples::

        nary to-attractive nu.structure
        nary -v to-attractive t11.structure --output-dir out/
    """
    verbose = is_verbose(ctx)
    try:
        mu = read_structure(structure)
        chain = subalgebraic_to_max_attractive(mu, get_context_budget(ctx, verbose), verbose)
    except NaryError as exc:
        fail(exc)

    typer.echo(f"✅ maximally {chain.partition}-attractive presentation after {len(chain.witnesses)} steps")
    target = report_witnesses(chain.witnesses, output_dir, verbose)
    paginate_output(target.rstrip("\n"), should_use_pager(ctx))
