"""Projectivity groups of finite polar spaces."""

__version__ = "0.1.0"
