"""Main CLI entry point for nary."""

import typer

from nary_python_cli import __version__
from nary_python_cli.commands import (
    check,
    classify,
    config,
    contract,
    degenerate,
    enumerate,
    selfcheck,
    to_attractive,
    to_form,
    to_minimal,
    verify_paper,
)

app = typer.Typer(
    help="Exact computations with n-ary algebras: degenerations, contractions, property checks and level-one classification.",
    context_settings={"help_option_names": ["-h", "--help"]},
    no_args_is_help=True,
)

# Add subcommands (alphabetically sorted)
app.add_typer(check.app, name="check")
app.add_typer(classify.app, name="classify")
app.add_typer(config.app, name="config")
app.add_typer(contract.app, name="contract")
app.add_typer(degenerate.app, name="degenerate")
app.add_typer(enumerate.app, name="enumerate")
app.add_typer(selfcheck.app, name="selfcheck")
app.add_typer(to_attractive.app, name="to-attractive")
app.add_typer(to_form.app, name="to-form")
app.add_typer(to_minimal.app, name="to-minimal")
app.add_typer(verify_paper.app, name="verify-paper")


def version_callback(value: bool):
    """Show version and exit."""
    if value:
        typer.echo(f"nary, version {__version__}")
        raise typer.Exit()


@app.callback(invoke_without_command=True)
def main(
    ctx: typer.Context,
    version: bool = typer.Option(
        None,
        "--version",
        callback=version_callback,
        is_eager=True,
        help="Show the version and exit.",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Show more detailed output.",
    ),
    pager: bool = typer.Option(
        False,
        "--pager",
        "-p",
        help="Use a pager (less) for command output.",
    ),
    seed: int = typer.Option(
        None,
        "--seed",
        help="Seed for every randomized search (overrides NARY_SEED and config).",
    ),
):
    """Exact computations with n-ary algebras."""
    # Store flags in context for subcommands to access
    ctx.obj = {
        "verbose": verbose,
        "pager": pager,
        "seed": seed,
    }


if __name__ == "__main__":
    app()
