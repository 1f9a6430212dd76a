"""Utilitaires — Coverage Lab."""
