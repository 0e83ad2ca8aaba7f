"""Classification and construction of K3,3-free latin rectangles."""

__version__ = "0.1.0"
