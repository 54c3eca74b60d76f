"""Iterated Gilbert mosaics and tropical plane curves."""

from _gilbertsim import *  # noqa: F401,F403
