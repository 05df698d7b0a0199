"""joinlang: a minimal MLTT kernel whose only higher-inductive primitive
is the graph quotient, with a machine-checked library built on it."""

__version__ = "0.1.0"
