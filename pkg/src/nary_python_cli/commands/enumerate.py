"""Enumerate command for the level-one tables of binary and ternary algebras."""

import typer

from nary_python_cli.utils.classification import enumerate_level_one
from nary_python_cli.utils.errors import NaryError
from nary_python_cli.utils.output import fail, is_verbose, paginate_output, should_use_pager

app = typer.Typer(
    help="List the level-one families for n = 2 or n = 3 in a given dimension",
    no_args_is_help=True,
    invoke_without_command=True,
    context_settings={"help_option_names": ["-h", "--help"]},
)


@app.callback()
def enumerate_callback(
    ctx: typer.Context,
    n: int = typer.Option(..., "--n", "-n", help="Arity, 2 or 3"),
    m: int = typer.Option(..., "--m", "-m", help="Dimension"),
):
    """Print one line per family: kind|n|m|partition|symbol: constraint|constants.

    Examples::

        nary enumerate -n 2 -m 3
        nary -p enumerate -n 3 -m 4
    """
    try:
        entries = enumerate_level_one(n, m)
    except NaryError as exc:
        fail(exc)

    if is_verbose(ctx):
        typer.echo(f"  [verbose] {len(entries)} families for n={n} m={m}")
    paginate_output("\n".join(entry.render() for entry in entries), should_use_pager(ctx))
