"""qsna - quasi-sure no-arbitrage on finite multi-prior scenario trees."""

__version__ = "0.1.0"
__app_name__ = "qsna"
