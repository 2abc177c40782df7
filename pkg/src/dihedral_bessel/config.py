"""Shared evaluation configuration and result containers."""

from dataclasses import dataclass

DEFAULT_SEED = 12345


@dataclass(frozen=True)
class EvalConfig:
    """Knobs shared by every series evaluator.

    tol is a relative target for truncation; tail_window is the number of
    consecutive below-tolerance terms required before a series is declared
    converged (guards against oscillating terms passing through zero).
    """

    tol: float = 1e-12
    tail_window: int = 5
    max_terms: int = 256
    max_degree: int = 2048
    composition_cap: int = 10_000_000
    mc_samples: int = 100_000
    seed: int = DEFAULT_SEED
    extended_precision: bool = False
    reduce_angles: bool = True

    def __post_init__(self) -> None:
        if not (0.0 < self.tol < 1.0):
            raise ValueError(f"tol must be in (0, 1), got {self.tol}")
        if self.tail_window < 1:
            raise ValueError("tail_window must be >= 1")
        if self.max_terms < self.tail_window + 1:
            raise ValueError("max_terms too small for the tail window")
        if self.max_degree < 8:
            raise ValueError("max_degree must be >= 8")
        if self.mc_samples < 1:
            raise ValueError("mc_samples must be >= 1")


@dataclass
class EvalResult:
    """Value plus an error estimate.

    error is a truncation bound for series methods and a Monte Carlo
    standard error for sampling methods.
    """

    value: float
    error: float
    terms_used: int | None = None
    samples_used: int | None = None
