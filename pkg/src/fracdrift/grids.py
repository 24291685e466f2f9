"""Uniform time grids shared by the solver and Monte Carlo layers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class TimeGrid:
    """Uniform discretization of [0, t_end] with n_steps = round(t_end/dt)."""

    t_end: float
    dt: float
    n_steps: int = field(init=False)

    def __post_init__(self) -> None:
        if not self.dt > 0.0:
            raise DomainError(f"dt must be positive: {self.dt}")
        if not self.t_end > 0.0:
            raise DomainError(f"t_end must be positive: {self.t_end}")
        n = int(round(self.t_end / self.dt))
        if n < 2:
            raise DomainError(f"grid needs n_steps >= 2: t_end={self.t_end} dt={self.dt}")
        if abs(n * self.dt - self.t_end) > 1e-12 * self.t_end:
            raise DomainError(
                f"t_end must be an integer multiple of dt: {self.t_end} / {self.dt}"
            )
        object.__setattr__(self, "n_steps", n)

    def times(self) -> np.ndarray:
        """All n_steps + 1 node times including both endpoints."""
        return self.dt * np.arange(self.n_steps + 1)

    def midpoints(self) -> np.ndarray:
        """Cell midpoints (j + 1/2) * dt, one per step."""
        return self.dt * (np.arange(self.n_steps) + 0.5)
