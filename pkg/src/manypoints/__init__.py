"""Ray class groups of small hyperelliptic function fields and the search for
curves with many rational points built on them."""

__version__ = "0.1.0"
