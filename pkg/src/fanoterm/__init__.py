"""Exact tools for classifying terminalizations of symplectic quotients
of Fano varieties of lines on smooth cubic fourfolds."""

__version__ = "0.1.0"
