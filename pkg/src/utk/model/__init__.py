"""Finite, dimension-truncated cubical-sets semantics."""
