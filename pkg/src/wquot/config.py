"""Resource bounds shared by the CLI and the scripts."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Bounds:
    state_bound: int = 10_000      # determinization, products, quotient automata
    iteration_bound: int = 10_000  # fixpoint sweeps for series quotients
    raw_bound: int = 1_000_000     # weighted states of the raw universal construction
    window: int = 3                # default word length for printed value tables


DEFAULT_BOUNDS = Bounds()
