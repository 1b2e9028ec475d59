"""Exact integral-lattice tools for vanishing root systems of threefolds."""

__version__ = "0.1.0"
