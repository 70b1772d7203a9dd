"""Finite relative categories: nerves, hammock localization and localization checks."""

__version__ = "0.1.0"
