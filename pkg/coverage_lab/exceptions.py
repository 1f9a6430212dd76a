"""
Exceptions — Coverage Lab.

Toutes les erreurs métier dérivent de CoverageLabError afin que la CLI
puisse les distinguer des bugs (code de sortie 1 ou 2).
"""

from __future__ import annotations


class CoverageLabError(Exception):
    """Racine des erreurs Coverage Lab."""


class InvalidFieldError(CoverageLabError, ValueError):
    """Terrain d'aire nulle ou mal formé."""


class PreconditionError(CoverageLabError, ValueError):
    """Précondition d'une opération non respectée."""


class DomainError(CoverageLabError, ValueError):
    """Entrée hors du domaine d'une formule analytique."""


class InconsistentPartitionError(CoverageLabError, ValueError):
    """Les sous-zones ne pavent pas le terrain."""


class DegenerateParamsError(CoverageLabError, ValueError):
    """Paramètres gaussiens pathologiques (taux d'acceptation < 1 %)."""


class DegenerateInputError(CoverageLabError, ValueError):
    """Sites de Voronoï confondus malgré le décalage de départage."""


class ConfigError(CoverageLabError, ValueError):
    """Configuration d'expérience invalide."""


class OutputError(CoverageLabError, OSError):
    """Chemin de sortie non inscriptible."""

    def __init__(self, path: object, reason: str):
        super().__init__(f"{path} : {reason}")
        self.path = path
        self.reason = reason
