"""Classify command for recognizing level-one structures."""

from pathlib import Path

import typer

from nary_python_cli.utils.classification import Kind, Verdict, recognize_level_one
from nary_python_cli.utils.config import get_context_budget
from nary_python_cli.utils.errors import NaryError
from nary_python_cli.utils.formats import read_structure
from nary_python_cli.utils.output import fail, is_verbose, render_certificate, report_witnesses
from nary_python_cli.utils.scalars import render_rational

app = typer.Typer(
    help="Decide whether a structure has level one",
    no_args_is_help=True,
    invoke_without_command=True,
    context_settings={
        "allow_interspersed_args": True,
        "help_option_names": ["-h", "--help"],
    },
)

EXIT_CODES = {
    Verdict.LEVEL_ONE: 0,
    Verdict.LEVEL_ZERO: 1,
    Verdict.NOT_LEVEL_ONE: 1,
    Verdict.INCONCLUSIVE: 3,
}


@app.callback()
def classify_callback(
    ctx: typer.Context,
    structure: Path = typer.Argument(..., exists=True, dir_okay=False, help="Structure file"),
    output_dir: Path = typer.Option(None, "--output-dir", help="Write the normalizing witness chain here"),
):
    """Recognize level one and, for n = 2 and n = 3, name the family.

    Exit code 0 for level one, 1 for level zero or any higher level, 3 when
    a basis search runs out of attempts.

    Examples::

        nary classify n3.structure
        nary --seed 3 classify algebra.structure --output-dir out/
    """
    verbose = is_verbose(ctx)
    try:
        mu = read_structure(structure)
        recognition = recognize_level_one(mu, get_context_budget(ctx, verbose), verbose)
    except NaryError as exc:
        fail(exc)

    verdict = recognition.verdict
    if verdict is Verdict.LEVEL_ONE:
        typer.echo(f"✅ level one: {recognition.kind.value}, partition {recognition.partition}")
        if recognition.family is not None:
            parameters = ", ".join(render_rational(c) for c in recognition.parameters)
            typer.echo(f"  family: {recognition.family}" + (f" ({parameters})" if parameters else ""))
        typer.echo(f"  infinite level one: {'yes' if recognition.kind is Kind.FORM_MINIMAL else 'no'}")
    elif verdict is Verdict.INCONCLUSIVE:
        typer.echo(f"⚠️  inconclusive: {recognition.reason}")
    else:
        typer.echo(f"❌ {verdict.value}: {recognition.reason}")
        if recognition.certificate is not None:
            for line in render_certificate(recognition.certificate):
                typer.echo(line)

    if recognition.chain is not None and (verbose or output_dir is not None):
        report_witnesses(recognition.chain.witnesses, output_dir, verbose)

    raise typer.Exit(EXIT_CODES[verdict])
