"""Pass and shot planning for Small Size League robot soccer."""

__version__ = "0.1.0"
