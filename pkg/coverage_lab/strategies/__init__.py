"""Stratégies de déploiement — Coverage Lab."""
