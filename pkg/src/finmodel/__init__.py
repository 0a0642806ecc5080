"""Finite model categories: small object argument, homotopy categories and weak colimits."""
