"""
Modèle d'énergie de transmission — Coverage Lab.
"""

from __future__ import annotations

import logging

from coverage_lab.exceptions import DomainError

logger = logging.getLogger("coverage_lab.energy")


def transmission_energy(d: float, alpha: float, c: float) -> float:
    """E = d^α + c ; le modèle suppose α > 2 (hors domaine : calculé mais signalé)."""
    if d < 0:
        raise DomainError(f"distance négative : {d}")
    if alpha <= 2:
        logger.warning(f"Exposant α={alpha} ≤ 2 : modèle d'énergie non conforme (calcul effectué)")
    return d**alpha + c
