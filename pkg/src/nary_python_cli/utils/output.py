"""Output utilities for formatting, pagination and error reporting."""

import shutil
import subprocess
import sys
from typing import NoReturn

import typer

from nary_python_cli.utils.errors import NaryError, ParseError
from nary_python_cli.utils.formats import render_structure, render_witness, write_chain
from nary_python_cli.utils.scalars import render_rational


def paginate_output(output: str, use_pager: bool = False):
    """Display output using a pager if requested and available.

    Args:
        output: The text to display
        use_pager: Whether to use a pager (from -p flag or command default)

    The function will use 'less -R' if:
    - use_pager is True
    - stdout is a terminal (not piped)
    - 'less' is available on the system

    Otherwise, it will print directly to stdout.
    """
    if use_pager and sys.stdout.isatty() and shutil.which("less"):
        subprocess.run(["less", "-R"], input=output, text=True)
    else:
        typer.echo(output)


def should_use_pager(ctx: typer.Context, command_default: bool = False) -> bool:
    """Determine if pager should be used based on context and command default."""
    if ctx.obj and ctx.obj.get("pager", False):
        return True
    return command_default


def is_verbose(ctx: typer.Context) -> bool:
    return bool(ctx.obj.get("verbose", False)) if ctx.obj else False


def fail(exc: NaryError) -> NoReturn:
    """Print an error to stderr and exit with the error's exit code."""
    if isinstance(exc, ParseError):
        typer.echo(f"❌ Parse error: {exc}", err=True)
    else:
        typer.echo(f"❌ Error: {exc}", err=True)
    raise typer.Exit(exc.exit_code)


def render_vector(vector) -> str:
    return "(" + ", ".join(render_rational(c) for c in vector) + ")"


def render_certificate(certificate) -> list[str]:
    """Human-readable lines for a property violation."""
    lines = [f"  arguments: {', '.join(render_vector(v) for v in certificate.arguments)}"]
    lines.append(f"  product:   {render_vector(certificate.product)}")
    for r, subspace in enumerate(certificate.chain, start=1):
        basis = ", ".join(render_vector(v) for v in subspace.basis()) or "0"
        lines.append(f"  V{r} = <{basis}>")
    return lines


def report_witnesses(witnesses, output_dir=None, verbose: bool = False) -> str:
    """Summarize a witness chain, writing its files to ``output_dir`` when given.

    Returns the rendered target structure.
    """
    for i, witness in enumerate(witnesses, start=1):
        kind = "basis change" if witness.lossless else "degeneration"
        typer.echo(f"  step {i}: {kind}, {len(witness.target.support())} nonzero products in the target")
        if verbose:
            for line in render_witness(witness.source.arity, witness.family).splitlines()[2:]:
                typer.echo(f"  [verbose]   {line}")
    if output_dir is not None:
        written = write_chain(output_dir, witnesses)
        typer.echo(f"✅ Wrote {len(written)} files to {output_dir}")
    return render_structure(witnesses[-1].target)
