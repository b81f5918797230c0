"""Configuration management commands."""

import shutil

import typer

from nary_python_cli.utils.config import (
    SEED_ENV,
    get_config,
    get_config_path,
    get_default_config_path,
    get_coordinate_bound,
    get_retry_budget,
    get_seed,
    get_selfcheck_settings,
    get_trials,
)
from nary_python_cli.utils.output import paginate_output, should_use_pager

app = typer.Typer(
    help="Configuration management commands",
    context_settings={"help_option_names": ["-h", "--help"]},
    no_args_is_help=True,
)


@app.command()
def init(
    yes: bool = typer.Option(
        False,
        "--yes",
        "-y",
        help="Skip confirmation prompt and overwrite existing config",
    ),
):
    """Initialize user configuration file."""
    user_config_path = get_config_path()
    default_config_path = get_default_config_path()

    if user_config_path.exists():
        typer.echo(f"Configuration file already exists at {user_config_path}")
        if not yes:
            overwrite = typer.confirm("Do you want to overwrite it?")
            if not overwrite:
                typer.echo("Aborted.")
                raise typer.Exit(0)

    if not default_config_path.exists():
        typer.echo(
            f"❌ Error: Default configuration not found at {default_config_path}",
            err=True,
        )
        raise typer.Exit(1)

    user_config_path.parent.mkdir(parents=True, exist_ok=True)
    shutil.copy(default_config_path, user_config_path)
    typer.echo(f"✅ Configuration file created at {user_config_path}")
    typer.echo("\nYou can now edit this file to change the seed, retry budget and selfcheck corpus.")


@app.command()
def show(ctx: typer.Context):
    """Display the current configuration.

    Shows the active configuration file and the resolved search, sampling
    and selfcheck settings.

    Examples::

        nary config show
        NARY_SEED=5 nary config show
    """
    config_path = get_config_path()
    default_config_path = get_default_config_path()

    if config_path.exists():
        active_config_path = config_path
        config_source = "user config"
    elif default_config_path.exists():
        active_config_path = default_config_path
        config_source = "default config"
    else:
        typer.echo("❌ No configuration file found", err=True)
        typer.echo("\nCreate one using: nary config init")
        raise typer.Exit(1)

    def h(text):
        """Bold cyan section header."""
        return typer.style(text, fg=typer.colors.CYAN, bold=True)

    def key(text):
        """Bold label."""
        return typer.style(text, bold=True)

    def val(text):
        """Green value."""
        return typer.style(str(text), fg=typer.colors.GREEN)

    def dim(text):
        """Dimmed hint text."""
        return typer.style(str(text), fg=typer.colors.BRIGHT_BLACK)

    try:
        config = get_config()
        seed_flag = ctx.obj.get("seed") if ctx.obj else None
        seed = get_seed(config, seed_flag)
        settings = get_selfcheck_settings(config)
    except (OSError, ValueError) as e:
        typer.echo(f"❌ Error reading configuration: {e}", err=True)
        raise typer.Exit(1)

    if seed_flag is not None:
        seed_source = "--seed"
    elif seed != int(config.get("search", {}).get("seed", 0)):
        seed_source = SEED_ENV
    else:
        seed_source = "config"

    buf = []
    buf.append(typer.style(f"📋 Configuration ({config_source})", bold=True))
    buf.append(f"{key('Location:')} {active_config_path}\n")

    buf.append(h("Search"))
    buf.append(f"  {key('seed:')}              {val(seed)}  {dim(f'({seed_source})')}")
    buf.append(f"  {key('retry_budget:')}      {val(get_retry_budget(config))}")
    buf.append(f"  {key('coordinate_bound:')}  {val(get_coordinate_bound(config))}")
    buf.append("")

    buf.append(h("Sampling"))
    buf.append(f"  {key('trials:')}            {val(get_trials(config))}")
    buf.append("")

    buf.append(h("Selfcheck"))
    shapes = ", ".join(f"{n}x{m}" for n, m in settings["shapes"])
    buf.append(f"  {key('structures:')}        {val(settings['structures'])}")
    buf.append(f"  {key('shapes:')}            {val(shapes)}")
    buf.append(f"  {key('density:')}           {val(settings['density'])}")
    buf.append(f"  {key('pipeline_runs:')}     {val(settings['pipeline_runs'])}")
    buf.append("")
    buf.append(dim("  nary config init   – (re)create from default"))

    paginate_output("\n".join(buf), should_use_pager(ctx, command_default=False))
