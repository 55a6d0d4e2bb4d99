"""Template module exports."""

from jinja2 import Environment

from .kmap_template import KMAP_TEMPLATE
from .netlist_template import NETLIST_TEMPLATE

# Plain-text output: HTML escaping would rewrite the ' complement marker
text_environment = Environment(keep_trailing_newline=True, autoescape=False)  # noqa: S701

__all__ = ["KMAP_TEMPLATE", "NETLIST_TEMPLATE", "text_environment"]
