"""Streaming clique estimators and a name-based factory."""

from .adaptive import ATS4C
from .base import CliqueEstimator, EdgeSample, split_memory
from .five import TS5C
from .fourest import FiveEst, FourEst
from .tiered import TS4C1, TS4C2

ESTIMATORS = {
    "fourest": FourEst,
    "ts4c1": TS4C1,
    "ts4c2": TS4C2,
    "ats4c": ATS4C,
    "ts5c": TS5C,
    "fiveest": FiveEst,
}


def make_estimator(name: str, memory: int, seed: int, **kw) -> CliqueEstimator:
    """Build an estimator by name.  Extra keywords go to the constructor
    (``alpha`` for the tiered ones, ``kernel`` for ts5c)."""
    try:
        cls = ESTIMATORS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown estimator {name!r}; choose from {sorted(ESTIMATORS)}") from None
    return cls(memory, seed, **kw)


__all__ = [
    "ATS4C", "CliqueEstimator", "EdgeSample", "ESTIMATORS", "FiveEst", "FourEst",
    "TS4C1", "TS4C2", "TS5C", "make_estimator", "split_memory",
]
