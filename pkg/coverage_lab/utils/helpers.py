"""
Utilitaires divers — Coverage Lab.
"""

from __future__ import annotations

import statistics
from collections.abc import Sequence

import numpy as np


def derive_seed(master: int, *keys: int) -> int:
    """Graine 64 bits dérivée de (graine maître, clés) — indépendante de l'ordre d'exécution."""
    seq = np.random.SeedSequence(entropy=master, spawn_key=tuple(keys))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int | np.random.Generator) -> np.random.Generator:
    """Générateur numpy à partir d'une graine (un Generator est rendu tel quel)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def mean_std(values: Sequence[float]) -> tuple[float, float]:
    """Moyenne et écart-type d'échantillon (0 pour une seule valeur)."""
    if not values:
        return 0.0, 0.0
    mean = statistics.fmean(values)
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, std


def percentage(fraction: float, digits: int = 2) -> str:
    """Formate une fraction en pourcentage."""
    return f"{fraction * 100:.{digits}f}%"
