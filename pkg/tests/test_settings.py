"""Tests for configuration loading.

Tests cover:
- reading [tool.kmapfactor] from pyproject.toml
- KMAPFACTOR_* environment variables and .env files
- precedence of defaults, file, environment and CLI overrides
- validation errors
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from kmapfactor.exceptions import InputFormatError
from kmapfactor.models import Method
from kmapfactor.settings import build_settings, load_settings, read_environment, read_tool_table

if TYPE_CHECKING:
    from pathlib import Path


def write_pyproject(directory: Path, body: str) -> Path:
    path = directory / "pyproject.toml"
    path.write_text(f'[project]\nname = "demo"\n\n{body}', encoding="utf-8")
    return path


class TestReadToolTable:
    """Test suite for read_tool_table."""

    def test_reads_table_with_dashed_keys(self, tmp_path: Path) -> None:
        """Test keys are normalised to snake_case.

        Tests: read_tool_table
        How: A table mixing dashed and snake_case keys
        Why: TOML users write either spelling
        """
        path = write_pyproject(
            tmp_path, '[tool.kmapfactor]\nmax-exclusions = 1\nmethod = "greedy"\nworkers = 3\n'
        )

        assert read_tool_table(path) == {"max_exclusions": 1, "method": "greedy", "workers": 3}

    def test_missing_table_is_empty(self, tmp_path: Path) -> None:
        """Test a pyproject without the table contributes nothing."""
        assert read_tool_table(write_pyproject(tmp_path, "")) == {}

    @pytest.mark.parametrize(
        "body",
        ['[tool.kmapfactor]\ncolour = "red"\n', '[tool]\nkmapfactor = 3\n', "[tool.kmapfactor\n"],
        ids=["unknown-key", "not-a-table", "malformed"],
    )
    def test_rejects_bad_tables(self, tmp_path: Path, body: str) -> None:
        """Test unknown keys, non-table values and malformed TOML."""
        with pytest.raises(InputFormatError):
            read_tool_table(write_pyproject(tmp_path, body))


class TestReadEnvironment:
    """Test suite for read_environment."""

    def test_prefix_filter(self) -> None:
        """Test only known KMAPFACTOR_ keys are kept."""
        environ = {"KMAPFACTOR_METHOD": "greedy", "KMAPFACTOR_COLOUR": "red", "PATH": "/bin"}
        assert read_environment(environ) == {"method": "greedy"}

    def test_real_environment_beats_dotenv(self, tmp_path: Path) -> None:
        """Test the .env file only fills keys the environment leaves unset.

        Tests: read_environment with a .env file
        How: Set node budget in both, workers only in .env
        Why: A checked-in .env must not override a shell export
        """
        dotenv = tmp_path / ".env"
        dotenv.write_text("KMAPFACTOR_NODE_BUDGET=10\nKMAPFACTOR_WORKERS=2\n", encoding="utf-8")

        values = read_environment({"KMAPFACTOR_NODE_BUDGET": "99"}, dotenv)

        assert values == {"node_budget": "99", "workers": "2"}


class TestLoadSettings:
    """Test suite for load_settings precedence."""

    def test_defaults(self, tmp_path: Path) -> None:
        """Test an empty directory and environment give model defaults."""
        settings = load_settings(cwd=tmp_path, environ={})

        assert settings.solver.method is Method.EXACT
        assert settings.solver.max_exclusions == 2
        assert settings.solver.node_budget == 2_000_000
        assert settings.workers == 1

    def test_precedence(self, tmp_path: Path) -> None:
        """Test file < environment < overrides.

        Tests: load_settings merge order
        How: Set each key at several levels
        Why: CLI flags must always win
        """
        write_pyproject(
            tmp_path, '[tool.kmapfactor]\nmethod = "greedy"\nmax_exclusions = 1\nworkers = 4\n'
        )
        environ = {"KMAPFACTOR_MAX_EXCLUSIONS": "0", "KMAPFACTOR_WORKERS": "3"}

        settings = load_settings(cwd=tmp_path, environ=environ, overrides={"workers": 2, "method": None})

        assert settings.solver.method is Method.GREEDY
        assert settings.solver.max_exclusions == 0
        assert settings.workers == 2

    def test_explicit_config_replaces_cwd_file(self, tmp_path: Path) -> None:
        """Test --config is read instead of the working directory's file."""
        write_pyproject(tmp_path, '[tool.kmapfactor]\nmethod = "greedy"\n')
        other = tmp_path / "other"
        other.mkdir()
        config = write_pyproject(other, "[tool.kmapfactor]\nnode-budget = 50\n")

        settings = load_settings(config, cwd=tmp_path, environ={})

        assert settings.solver.method is Method.EXACT
        assert settings.solver.node_budget == 50

    def test_missing_explicit_config(self, tmp_path: Path) -> None:
        """Test a --config path that does not exist is an error."""
        with pytest.raises(InputFormatError, match="not found"):
            load_settings(tmp_path / "absent.toml", cwd=tmp_path, environ={})

    @pytest.mark.parametrize(
        "values",
        [{"node_budget": 0}, {"max_exclusions": -1}, {"method": "simulated"}, {"workers": 0}],
    )
    def test_invalid_values(self, values: dict[str, object]) -> None:
        """Test pydantic rejections surface as InputFormatError."""
        with pytest.raises(InputFormatError, match="invalid configuration"):
            build_settings(values)
