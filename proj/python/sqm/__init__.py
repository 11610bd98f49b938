"""Trace-based conditional probabilities: sharp-position PVMs, coherent-state POVMs, CCR and CAR algebras."""

from ._sqm import *  # noqa: F401,F403
from ._sqm import ValidationError, NumericalError  # noqa: F401
