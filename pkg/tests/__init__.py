"""Tests — Coverage Lab."""
