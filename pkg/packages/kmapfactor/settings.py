"""Configuration loading for kmapfactor.

Sources, lowest to highest precedence:

1. model defaults;
2. the ``[tool.kmapfactor]`` table of ``pyproject.toml``;
3. ``KMAPFACTOR_*`` environment variables, with a ``.env`` file filling in
   whatever the real environment does not set;
4. explicit CLI flags, passed in as overrides.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import TYPE_CHECKING

import tomlkit
from dotenv import dotenv_values
from pydantic import ValidationError
from tomlkit.exceptions import TOMLKitError

from kmapfactor.exceptions import InputFormatError
from kmapfactor.models import Settings, SolverConfig

if TYPE_CHECKING:
    from collections.abc import Mapping

ENV_PREFIX = "KMAPFACTOR_"
TOOL_TABLE = "kmapfactor"

_SOLVER_KEYS = frozenset({"max_exclusions", "method", "node_budget"})
_SETTINGS_KEYS = frozenset({"workers"})


def _normalise_key(key: str) -> str:
    return key.strip().lower().replace("-", "_")


def read_tool_table(pyproject_path: Path) -> dict[str, object]:
    """Read ``[tool.kmapfactor]`` from a pyproject file.

    Args:
        pyproject_path: Path to the TOML file.

    Returns:
        The table with keys normalised to snake_case; empty when the table
        is absent.

    Raises:
        InputFormatError: If the file is unreadable or not valid TOML, or the
            table has an unknown key.
    """
    try:
        with pyproject_path.open(encoding="utf-8") as f:
            document = tomlkit.load(f)
    except OSError as e:
        raise InputFormatError(f"cannot read {pyproject_path}: {e.strerror}") from e
    except TOMLKitError as e:
        raise InputFormatError(f"{pyproject_path}: {e}") from e

    tool = document.unwrap().get("tool", {})
    table = tool.get(TOOL_TABLE, {}) if isinstance(tool, dict) else {}
    if not isinstance(table, dict):
        raise InputFormatError(f"{pyproject_path}: [tool.{TOOL_TABLE}] must be a table")
    values: dict[str, object] = {}
    for key, value in table.items():
        name = _normalise_key(str(key))
        if name not in _SOLVER_KEYS | _SETTINGS_KEYS:
            raise InputFormatError(f"{pyproject_path}: unknown [tool.{TOOL_TABLE}] key {key!r}")
        values[name] = value
    return values


def read_environment(
    environ: Mapping[str, str] | None = None, dotenv_path: Path | None = None
) -> dict[str, str]:
    """Collect ``KMAPFACTOR_*`` settings from the environment.

    Args:
        environ: Environment mapping; defaults to os.environ.
        dotenv_path: ``.env`` file to merge underneath; skipped when missing.

    Returns:
        Settings keyed by snake_case name, values still as text.
    """
    merged: dict[str, str] = {}
    if dotenv_path is not None and dotenv_path.is_file():
        merged.update({k: v for k, v in dotenv_values(dotenv_path).items() if v is not None})
    merged.update(os.environ if environ is None else environ)

    values: dict[str, str] = {}
    for key, value in merged.items():
        if not key.startswith(ENV_PREFIX):
            continue
        name = _normalise_key(key.removeprefix(ENV_PREFIX))
        if name in _SOLVER_KEYS | _SETTINGS_KEYS:
            values[name] = value
    return values


def build_settings(values: Mapping[str, object]) -> Settings:
    """Validate merged values into a Settings model.

    Args:
        values: snake_case keys from any source.

    Returns:
        The validated settings.

    Raises:
        InputFormatError: If pydantic rejects a value.
    """
    solver = {k: v for k, v in values.items() if k in _SOLVER_KEYS}
    rest = {k: v for k, v in values.items() if k in _SETTINGS_KEYS}
    try:
        return Settings(solver=SolverConfig.model_validate(solver), **rest)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise InputFormatError(f"invalid configuration: {problems}") from e


def load_settings(
    config_path: Path | None = None,
    cwd: Path | None = None,
    environ: Mapping[str, str] | None = None,
    overrides: Mapping[str, object] | None = None,
) -> Settings:
    """Merge every configuration source.

    Args:
        config_path: Explicit pyproject file; must exist when given.
        cwd: Directory searched for ``pyproject.toml`` and ``.env``;
            defaults to the current directory.
        environ: Environment mapping; defaults to os.environ.
        overrides: CLI values; None entries are ignored.

    Returns:
        The effective settings.

    Raises:
        InputFormatError: On a missing explicit config file, malformed TOML,
            or invalid values.
    """
    base = cwd or Path.cwd()
    values: dict[str, object] = {}

    if config_path is not None:
        if not config_path.is_file():
            raise InputFormatError(f"config file not found: {config_path}")
        values.update(read_tool_table(config_path))
    elif (base / "pyproject.toml").is_file():
        values.update(read_tool_table(base / "pyproject.toml"))

    values.update(read_environment(environ, base / ".env"))
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    return build_settings(values)


__all__ = ["ENV_PREFIX", "build_settings", "load_settings", "read_environment", "read_tool_table"]
