"""Configuration loading for nary.

The packaged ``config.toml`` holds the defaults; a user file at
``~/.config/nary-python-cli/config.toml`` replaces it when present.
"""

import os
import tomllib
from pathlib import Path

import typer

from nary_python_cli.utils.properties import SearchBudget

SEED_ENV = "NARY_SEED"


def get_config_path():
    """Get the path to the user config file."""
    config_dir = Path.home() / ".config" / "nary-python-cli"
    return config_dir / "config.toml"


def get_default_config_path():
    """Get the path to the default config file shipped with the package."""
    return Path(__file__).parent.parent / "config.toml"


def get_config():
    """Load configuration from user config or default config."""
    user_config_path = get_config_path()
    default_config_path = get_default_config_path()

    if user_config_path.exists():
        with open(user_config_path, "rb") as f:
            return tomllib.load(f)

    if default_config_path.exists():
        with open(default_config_path, "rb") as f:
            return tomllib.load(f)

    return {}


def get_seed(config, flag=None):
    """Resolve the search seed: flag, then NARY_SEED, then ``search.seed``."""
    if flag is not None:
        return int(flag)
    env_value = os.environ.get(SEED_ENV)
    if env_value not in (None, ""):
        return int(env_value)
    return int(config.get("search", {}).get("seed", 0))


def get_retry_budget(config):
    return int(config.get("search", {}).get("retry_budget", 64))


def get_coordinate_bound(config):
    return int(config.get("search", {}).get("coordinate_bound", 3))


def get_trials(config):
    return int(config.get("sampling", {}).get("trials", 100))


def get_selfcheck_settings(config):
    """Corpus settings with defaults filled in; shapes become (n, m) tuples."""
    selfcheck = config.get("selfcheck", {})
    return {
        "structures": int(selfcheck.get("structures", 200)),
        "shapes": [tuple(int(x) for x in shape) for shape in selfcheck.get("shapes", [[2, 3], [3, 3]])],
        "density": float(selfcheck.get("density", 0.35)),
        "pipeline_runs": int(selfcheck.get("pipeline_runs", 10)),
    }


def get_search_budget(config, seed=None):
    """SearchBudget for the resolved seed and the configured retry budget."""
    return SearchBudget(
        seed=get_seed(config, seed),
        retries=get_retry_budget(config),
        bound=get_coordinate_bound(config),
    )


def get_context_budget(ctx, verbose=False):
    """SearchBudget from the active config and the global --seed option."""
    seed = ctx.obj.get("seed") if ctx.obj else None
    budget = get_search_budget(get_config(), seed)
    if verbose:
        typer.echo(f"  [verbose] seed {budget.seed}, retry budget {budget.retries}, bound {budget.bound}")
    return budget
