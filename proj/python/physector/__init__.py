"""Physical-sector extraction from commuting-measurement frequency data."""

from physector._core import *  # noqa: F401,F403
from physector._core import __doc__  # noqa: F401

__version__ = "0.1.0"
