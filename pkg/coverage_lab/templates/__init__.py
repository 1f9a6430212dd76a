"""Templates — Coverage Lab (graphiques SVG et rapport Markdown)."""

from __future__ import annotations

from functools import lru_cache
from typing import Any

from jinja2 import Environment, PackageLoader, StrictUndefined, select_autoescape


@lru_cache(maxsize=1)
def get_environment() -> Environment:
    """Environnement jinja2 partagé ; échappement XML pour les gabarits .svg.j2."""
    return Environment(
        loader=PackageLoader("coverage_lab", "templates"),
        autoescape=select_autoescape(enabled_extensions=("svg.j2",), default_for_string=False),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )


def render(name: str, **context: Any) -> str:
    return get_environment().get_template(name).render(**context)
