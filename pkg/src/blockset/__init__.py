"""Blocking sets, minimal codes and trifferent codes over small finite fields."""

__version__ = "0.1.0"
