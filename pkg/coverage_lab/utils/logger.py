"""
Logger structuré — Coverage Lab.

Configure un logging coloré (via Rich) pour l'arbre de loggers coverage_lab.
"""

from __future__ import annotations

import logging

from rich.console import Console
from rich.logging import RichHandler

from coverage_lab.config import get_settings


_configured = False


def setup_logging(level: str | None = None) -> None:
    """Configure le logging global une seule fois (un niveau explicite force la reconfiguration)."""
    global _configured
    if _configured and level is None:
        return
    _configured = True

    name = level or get_settings().log_level
    resolved = getattr(logging, name.upper(), logging.INFO)

    console = Console(stderr=True)
    handler = RichHandler(
        console=console,
        show_time=True,
        show_path=False,
        markup=False,
        rich_tracebacks=True,
    )
    handler.setLevel(resolved)
    handler.setFormatter(logging.Formatter("%(name)s — %(message)s"))

    root = logging.getLogger("coverage_lab")
    root.setLevel(resolved)
    root.handlers.clear()
    root.addHandler(handler)

    # Réduire le bruit des libs
    for lib in ("shapely", "asyncio", "concurrent"):
        logging.getLogger(lib).setLevel(logging.WARNING)
