"""Transport and entanglement of a two-dot molecule between normal or
superconducting leads."""

__version__ = "0.1.0"
