"""Géométrie — Coverage Lab."""
