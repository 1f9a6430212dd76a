"""
Coverage Lab
============
Optimisation de la couverture d'un réseau de capteurs sans fil.
Algorithme génétique par sous-zones, protocoles de comparaison
(aléatoire uniforme, gaussien 2D, enchères Voronoï, auto-dispersion)
et banc d'essai reproduisant les courbes couverture / nombre de nœuds.
"""

__version__ = "1.0.0"
__author__ = "Team7"
