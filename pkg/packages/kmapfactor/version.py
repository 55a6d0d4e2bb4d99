"""Resolve the kmapfactor version string.

Prefers the live VCS version from hatchling when running from a checkout,
then installed package metadata, then a local placeholder so that the
package still imports from a bare source tree (e.g. ``pythonpath`` in tests).
"""

from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version as _dist_version
from pathlib import Path

_DIST_NAME = "kmapfactor"
_UNKNOWN_VERSION = "0.0.0+unknown"


def _version_from_checkout() -> str | None:
    """Ask hatchling for the version of the surrounding checkout.

    Returns:
        The computed version, or None when hatchling is unavailable or no
        pyproject.toml encloses this file.
    """
    try:
        # Build-time dependency only
        from hatchling.metadata.core import ProjectMetadata  # noqa: PLC0415
        from hatchling.plugin.manager import PluginManager  # noqa: PLC0415
        from hatchling.utils.fs import locate_file  # noqa: PLC0415
    except ImportError:
        return None

    pyproject_toml = locate_file(__file__, "pyproject.toml")
    if pyproject_toml is None:
        return None
    metadata = ProjectMetadata(
        root=str(Path(pyproject_toml).parent), plugin_manager=PluginManager()
    )
    try:
        value = metadata.core.version or metadata.hatch.version.cached
    except (LookupError, ValueError, OSError):
        # hatch-vcs fails outside a git work tree
        return None
    return str(value)


def _version_from_metadata() -> str:
    """Read the version of the installed distribution.

    Returns:
        The installed version, or a placeholder when not installed.
    """
    try:
        return _dist_version(_DIST_NAME)
    except PackageNotFoundError:
        return _UNKNOWN_VERSION


__version__ = _version_from_checkout() or _version_from_metadata()
