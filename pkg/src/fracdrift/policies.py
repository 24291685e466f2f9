"""Evaluation policies for the series-based special functions."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation control for the Mittag-Leffler and Mainardi series.

    asymptotic_crossover_z = None lets the evaluator calibrate the series
    range itself (largest z where the compensated series keeps >= 6
    significant digits) and fit the stretched-exponential tail below that
    point.  A user-supplied value forces the handoff there instead.
    """

    rel_tol: float = 1e-12
    max_terms: int = 400
    asymptotic_crossover_z: float | None = None

    if __debug__:

        def __post_init__(self) -> None:
            if not self.rel_tol > 0.0:
                raise ValueError(f"rel_tol must be positive: {self.rel_tol}")
            if self.max_terms < 1:
                raise ValueError(f"max_terms must be >= 1: {self.max_terms}")
            if self.asymptotic_crossover_z is not None and not self.asymptotic_crossover_z > 0.0:
                raise ValueError(
                    f"asymptotic_crossover_z must be positive: {self.asymptotic_crossover_z}"
                )


DEFAULT_POLICY = SeriesPolicy()
