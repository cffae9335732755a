"""Finite-field toolkit for genus-3 Howe curves: decomposed Richelot
isogeny codomains, explicit curve constructions, and enumeration of
superspecial hyperelliptic and non-hyperelliptic families in small odd
characteristic."""

__version__ = "0.1.0"
