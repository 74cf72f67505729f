"""Chamber-regular lattices on C2-tilde buildings with (3,5) quadrangle links."""

__version__ = "0.1.0"
