"""Contract command for k-IW contractions."""

from pathlib import Path

import typer

from nary_python_cli.utils.degeneration import iw_contraction
from nary_python_cli.utils.errors import NaryError
from nary_python_cli.utils.formats import read_structure
from nary_python_cli.utils.output import fail, is_verbose, paginate_output, report_witnesses, should_use_pager

app = typer.Typer(
    help="Compute the k-IW contraction with respect to <e_1, ..., e_l>",
    no_args_is_help=True,
    invoke_without_command=True,
    context_settings={
        "allow_interspersed_args": True,
        "help_option_names": ["-h", "--help"],
    },
)


@app.callback()
def contract_callback(
    ctx: typer.Context,
    structure: Path = typer.Argument(..., exists=True, dir_okay=False, help="Structure file"),
    l: int = typer.Option(..., "--l", "-l", help="Dimension of the subalgebra <e_1, ..., e_l>"),
    k: int = typer.Option(..., "--k", "-k", help="The subalgebra must be a k-subalgebra, 2 <= k <= n"),
    output_dir: Path = typer.Option(None, "--output-dir", help="Write the witness and target files here"),
):
    """Contract a structure along a k-subalgebra spanned by the first l basis vectors.

    Exits with 1 when <e_1, ..., e_l> is not a k-subalgebra.

    Examples::

        nary contract nu.structure -l 1 -k 2
        nary contract t2.structure -l 1 -k 3 --output-dir out/
    """
    verbose = is_verbose(ctx)
    try:
        mu = read_structure(structure)
        witness = iw_contraction(mu, l, k)
    except NaryError as exc:
        fail(exc)

    typer.echo(f"✅ {k}-IW contraction on <e_1..e_{l}>")
    target = report_witnesses([witness], output_dir, verbose)
    paginate_output(target.rstrip("\n"), should_use_pager(ctx))
