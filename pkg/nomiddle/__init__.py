"""Injectivity domains over finite rings and the no-middle-class classifications."""

__version__ = "0.1.0"
