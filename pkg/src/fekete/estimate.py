"""Result container shared by every numerical driver."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

EXACT = "exact"
MONTE_CARLO = "monte_carlo"


@dataclass
class Estimate:
    """A value with its uncertainty and provenance.

    ``std_error`` is the Monte-Carlo standard error (0 in exact mode);
    ``error_estimate`` is the deterministic quadrature error bound.
    """

    value: float
    std_error: float = 0.0
    n_samples: int = 0
    seed: int | None = None
    mode: str = EXACT
    error_estimate: float = 0.0
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in (EXACT, MONTE_CARLO):
            raise ValueError(f"unknown estimate mode {self.mode!r}")
        if self.std_error < 0:
            raise ValueError("std_error must be non-negative")
        if self.mode == EXACT and self.std_error != 0.0:
            raise ValueError("exact estimates carry no standard error")

    def to_dict(self) -> dict:
        return asdict(self)
