"""Geographic information service for urban green open spaces (RTHKP)."""

__version__ = "0.1.0"
