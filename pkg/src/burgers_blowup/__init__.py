"""Universal structure of blow-up in 1D scalar conservation laws."""

__version__ = "0.1.0"
