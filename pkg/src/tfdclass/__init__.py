"""Fixed point data of six-dimensional monotone semifree circle actions with a 4-dimensional maximum."""

__version__ = "0.1.0"
