"""Absolute Trust aggregation library and P2P reputation simulator."""

__version__ = "0.1.0"
