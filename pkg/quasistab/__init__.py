"""Quasistab - balanced multidegrees on quasistable pointed curves, via marked dual graphs."""

__version__ = "1.0.0"
