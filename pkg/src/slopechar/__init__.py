"""Exact cut-and-project tilings and coincidence characterization of slopes."""

__version__ = "0.1.0"
