"""Métriques de couverture — Coverage Lab."""
