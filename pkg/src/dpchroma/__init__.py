"""DP-coloring covers and degree-truncated coloring pipelines."""

__version__ = "0.1.0"
