"""Check command for deciding properties of a structure."""

from pathlib import Path

import typer

from nary_python_cli.utils.classification import (
    is_maximally_p_attractive_presentation,
    is_p_minimal_presentation,
)
from nary_python_cli.utils.config import get_config, get_context_budget, get_trials
from nary_python_cli.utils.errors import BadPartition, InputError, NaryError, NotFormAlgebra, UnknownProperty
from nary_python_cli.utils.formats import read_structure
from nary_python_cli.utils.output import fail, is_verbose, render_certificate
from nary_python_cli.utils.properties import (
    SAMPLED_PROPERTIES,
    PropertyVerdict,
    form_decomposition,
    is_k_subalgebra,
    is_p_anticommutative,
    is_p_attractive,
    is_subalgebraic,
    sampled_check,
)
from nary_python_cli.utils.scalars import parse_rational
from nary_python_cli.utils.structures import Partition, Subspace

PROPERTIES = (
    "anticommutative",
    "attractive",
    "attractive-presentation",
    "form",
    "k-subalgebra",
    "minimal-presentation",
    "subalgebraic",
)

app = typer.Typer(
    help="Check a property of a structure",
    no_args_is_help=True,
    invoke_without_command=True,
    context_settings={
        "allow_interspersed_args": True,
        "help_option_names": ["-h", "--help"],
    },
)


def parse_subspace(text: str, ambient: int) -> Subspace:
    """Spanning vectors separated by ';', coordinates by ','."""
    vectors = []
    for piece in text.split(";"):
        if not piece.strip():
            continue
        try:
            vector = tuple(parse_rational(c) for c in piece.split(","))
        except ValueError as exc:
            raise InputError(f"bad subspace vector {piece.strip()!r}: {exc}") from None
        vectors.append(vector)
    return Subspace.span(ambient, vectors)


def _require_partition(name: str, partition: str | None) -> Partition:
    if partition is None:
        raise BadPartition(f"property '{name}' needs --partition")
    return Partition.parse(partition)


@app.callback()
def check_callback(
    ctx: typer.Context,
    path: Path = typer.Argument(..., exists=True, dir_okay=False, help="Structure file to check"),
    property_name: str = typer.Option(
        ...,
        "--property",
        help=f"Property to decide: {', '.join(PROPERTIES)}",
    ),
    partition: str = typer.Option(
        None,
        "--partition",
        help="Partition such as '(2,1)' for the partition-indexed properties",
    ),
    subspace: str = typer.Option(
        None,
        "--subspace",
        help="Spanning vectors for k-subalgebra, e.g. '1,0,0;0,1,0'",
    ),
    k: int = typer.Option(None, "--k", help="k for the k-subalgebra property"),
    sampled: bool = typer.Option(
        False,
        "--sampled",
        help="Also evaluate the definition on random inputs (subalgebraic, anticommutative, attractive)",
    ),
    trials: int = typer.Option(None, "--trials", help="Sampling trials (overrides config)"),
):
    """Decide a property of a structure and print a certificate when it fails.

    Exit code 0 when the property holds, 1 when it fails and 2 for malformed
    input. A failure is decided exactly; the counterexample printed with it
    comes from a seeded search and may be missing.

    Examples::

        nary check --property subalgebraic nu.alg
        nary check --property anticommutative --partition "(1,1)" n3.alg
        nary check --property k-subalgebra --subspace "1,0,0" --k 2 algebra.alg
        nary check --property attractive --partition "(2)" --sampled t2.alg
    """
    verbose = is_verbose(ctx)
    try:
        if property_name not in PROPERTIES:
            raise UnknownProperty(f"unknown property {property_name!r}; expected one of {', '.join(PROPERTIES)}")
        mu = read_structure(path)
        budget = get_context_budget(ctx, verbose)
        if verbose:
            typer.echo(f"  [verbose] {path}: n={mu.arity} m={mu.dimension}, {len(mu.support())} nonzero products")
        p = None
        if property_name == "subalgebraic":
            verdict = is_subalgebraic(mu, budget)
        elif property_name == "anticommutative":
            p = _require_partition(property_name, partition)
            verdict = is_p_anticommutative(mu, p, budget)
        elif property_name == "attractive":
            p = _require_partition(property_name, partition)
            verdict = is_p_attractive(mu, p, budget)
        elif property_name == "minimal-presentation":
            verdict = is_p_minimal_presentation(mu, _require_partition(property_name, partition))
        elif property_name == "attractive-presentation":
            verdict = is_maximally_p_attractive_presentation(mu, _require_partition(property_name, partition))
        elif property_name == "k-subalgebra":
            if subspace is None or k is None:
                raise InputError("property 'k-subalgebra' needs --subspace and --k")
            verdict = is_k_subalgebra(mu, parse_subspace(subspace, mu.dimension), k)
        else:
            try:
                decomposition = form_decomposition(mu)
                verdict = PropertyVerdict(not decomposition.is_zero, property="form algebra")
            except NotFormAlgebra as exc:
                if verbose:
                    typer.echo(f"  [verbose] {exc}")
                verdict = PropertyVerdict(False, property="form algebra")
    except NaryError as exc:
        fail(exc)

    label = verdict.property or property_name
    if verdict.holds:
        typer.echo(f"✅ holds: {label}")
    else:
        if verdict.certificate is not None:
            typer.echo(f"❌ fails: {label}")
            for line in render_certificate(verdict.certificate):
                typer.echo(line)
        elif property_name in SAMPLED_PROPERTIES:
            typer.echo(f"❌ fails: {label} (no explicit counterexample found)")
        else:
            typer.echo(f"❌ fails: {label}")

    if sampled and property_name in SAMPLED_PROPERTIES:
        count = trials if trials is not None else get_trials(get_config())
        sample = sampled_check(mu, property_name, count, budget.seed, p, budget.bound)
        if sample.holds:
            typer.echo(f"✅ sampled: no violation in {count} trials")
        else:
            typer.echo("⚠️  sampled: violation found")
            for line in render_certificate(sample.certificate):
                typer.echo(line)
            if verdict.holds:
                typer.echo("❌ Error: sampled violation contradicts the symbolic verdict", err=True)
                raise typer.Exit(1)

    raise typer.Exit(0 if verdict.holds else 1)
