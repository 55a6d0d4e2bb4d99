"""Shared Rich console utilities for kmapfactor.

Provides the standard-output and standard-error Console instances and
helpers for consistent message and table formatting across all modules.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from rich.console import Console, RenderableType
from rich.measure import Measurement
from rich.panel import Panel

from kmapfactor.models import MessageType

if TYPE_CHECKING:
    from rich.table import Table

# Results and tables
console = Console()
# Errors, warnings, diagnostics and progress
err_console = Console(stderr=True)

_STDERR_TYPES = frozenset({MessageType.ERROR, MessageType.WARNING})


def set_quiet(quiet: bool) -> None:
    """Silence (or restore) non-error output on both consoles.

    Error panels are still shown because display_message bypasses the quiet
    flag for MessageType.ERROR.

    Args:
        quiet: Whether to suppress output.
    """
    console.quiet = quiet
    err_console.quiet = quiet


def get_rendered_width(renderable: RenderableType) -> int:
    """Get actual rendered width of a Rich renderable.

    Args:
        renderable: Any Rich renderable (Panel, Table, Text, etc.)

    Returns:
        Width in characters needed to display the renderable.
    """
    temp_console = Console(width=9999)
    measurement = Measurement.get(temp_console, temp_console.options, renderable)
    return int(measurement.maximum)


def print_table(table: Table) -> None:
    """Print a table at its natural content width.

    Args:
        table: Rich Table to print.
    """
    table.width = get_rendered_width(table)
    console.print(table, crop=False, overflow="ignore", no_wrap=True, soft_wrap=True)


def display_message(
    message: str, message_type: MessageType = MessageType.INFO, title: str | None = None
) -> None:
    """Display a formatted message panel.

    Errors and warnings go to standard error, everything else to standard
    output.

    Args:
        message: The message text to display
        message_type: Type of message (affects styling and stream)
        title: Optional panel title (defaults to message type)
    """
    color, default_title = message_type.value
    panel = Panel.fit(
        message,
        title=f"[bold {color}]{title or default_title}[/bold {color}]",
        border_style=color,
        padding=(0, 1),
    )
    target = err_console if message_type in _STDERR_TYPES else console
    if message_type is MessageType.ERROR and target.quiet:
        # Errors are never swallowed by --quiet
        Console(stderr=True).print(panel)
        return
    target.print(panel)


def diagnostic(message: str) -> None:
    """Print a dim diagnostic line on standard error.

    Args:
        message: Diagnostic text (rich markup allowed).
    """
    err_console.print(f"[dim]{message}[/dim]")
