"""Hereditarily finite sets, simplicial sets at finite truncation, fibrations and W-types."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
