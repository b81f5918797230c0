"""Verify-paper command for checking the level-one tables against the golden files."""

import difflib

import typer

from nary_python_cli.utils.classification import (
    GOLDEN_DIMENSIONS,
    Kind,
    enumerate_level_one,
    golden_table,
    is_maximally_p_attractive_presentation,
    is_p_minimal_presentation,
    maxatt_system,
    pmin_system,
    render_table,
)
from nary_python_cli.utils.errors import NaryError, UnsupportedArity
from nary_python_cli.utils.output import fail, is_verbose

app = typer.Typer(
    help="Compare the computed n = 2 or n = 3 level-one table with the shipped golden file",
    no_args_is_help=True,
    invoke_without_command=True,
    context_settings={"help_option_names": ["-h", "--help"]},
)


@app.callback()
def verify_paper_callback(
    ctx: typer.Context,
    n: int = typer.Option(..., "--n", "-n", help="Arity, 2 or 3"),
):
    """Render the level-one table, diff it against the golden file and re-check every representative.

    Examples::

        nary verify-paper --n 2
        nary -v verify-paper --n 3
    """
    verbose = is_verbose(ctx)
    try:
        if n not in GOLDEN_DIMENSIONS:
            raise UnsupportedArity(f"golden tables exist for n = 2 and n = 3, not n = {n}")
        computed = render_table(n)
        golden = golden_table(n)
        problems = []
        for m in range(1, GOLDEN_DIMENSIONS[n] + 1):
            for entry in enumerate_level_one(n, m):
                if entry.kind is Kind.FORM_MINIMAL:
                    verdict = is_p_minimal_presentation(entry.representative, entry.partition)
                    system = pmin_system(n, m, entry.partition)
                else:
                    verdict = is_maximally_p_attractive_presentation(entry.representative, entry.partition)
                    system = maxatt_system(n, m, entry.partition)
                if verbose:
                    typer.echo(
                        f"  [verbose] {entry.symbol} m={m}: {system.size} unknowns, "
                        f"{len(system.equations)} equations, solution dimension {system.solution_dimension()}"
                    )
                if not verdict.holds:
                    problems.append(f"{entry.symbol} (m={m}) fails its {verdict.property} check")
    except NaryError as exc:
        fail(exc)

    if computed != golden:
        typer.echo(f"❌ n={n} table differs from the golden file", err=True)
        diff = difflib.unified_diff(
            golden.splitlines(), computed.splitlines(), "golden", "computed", lineterm=""
        )
        for line in diff:
            typer.echo(line, err=True)
        raise typer.Exit(1)
    for problem in problems:
        typer.echo(f"❌ {problem}", err=True)
    if problems:
        raise typer.Exit(1)

    typer.echo(computed, nl=False)
    typer.echo(f"✅ n={n} table matches the golden file ({len(computed.splitlines())} entries)")
