"""
Trust metric data models.
"""

from fractions import Fraction
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class WeightConfig(BaseModel):
    """Weights a rater assigns to satisfactory, neutral and unsatisfactory files."""

    w_g: float = Field(default=10.0, gt=0, description="Weight for a satisfactory file")
    w_b: float = Field(default=1.0, gt=0, description="Weight for an unsatisfactory file")

    @model_validator(mode="after")
    def _check_order(self) -> "WeightConfig":
        if not self.w_g > self.w_b:
            raise ValueError(f"w_g ({self.w_g}) must be greater than w_b ({self.w_b})")
        return self

    @property
    def w_n(self) -> float:
        """Weight for a neutral file, midway between w_b and w_g."""
        return (self.w_g + self.w_b) / 2


class TransactionCounts(BaseModel):
    """Download outcome tallies of one rater about one ratee."""

    n_g: int = Field(default=0, ge=0, description="Satisfactory files")
    n_n: int = Field(default=0, ge=0, description="Neutral files")
    n_b: int = Field(default=0, ge=0, description="Unsatisfactory files")

    @property
    def n_t(self) -> int:
        return self.n_g + self.n_n + self.n_b

    def fractions(self) -> Tuple[float, float]:
        """Return (x, y): satisfactory and unsatisfactory fractions."""
        if self.n_t == 0:
            return 0.0, 0.0
        return self.n_g / self.n_t, self.n_b / self.n_t


class SolverConfig(BaseModel):
    """Exponents and stopping rule of the Absolute Trust fixed-point iteration."""

    p: int = Field(default=3, ge=1, description="Exponent of the weighted-average term")
    q: int = Field(default=1, ge=1, description="Exponent of the set-trust term")
    threshold: float = Field(default=1e-4, gt=0, description="Residual convergence bound")
    max_iterations: int = Field(default=100, ge=1, description="Hard iteration cap")
    initial_value: float = Field(default=5.5, gt=0, description="Starting trust for every peer")

    @property
    def alpha(self) -> float:
        return self.q / self.p

    @classmethod
    def from_alpha(cls, alpha: float, **kwargs) -> "SolverConfig":
        """Build integer exponents for a rational alpha such as 1/3."""
        ratio = Fraction(alpha).limit_denominator(100)
        if ratio <= 0:
            raise ValueError(f"alpha must be positive, got {alpha}")
        return cls(p=ratio.denominator, q=ratio.numerator, **kwargs)


class GlobalTrustVector(BaseModel):
    """Global trust values with the solver bookkeeping that produced them."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    values: np.ndarray
    iterations_used: int = 0
    residual_trace: List[float] = Field(default_factory=list)
    converged: bool = True

    @field_validator("values", mode="before")
    @classmethod
    def _as_float_array(cls, v) -> np.ndarray:
        arr = np.asarray(v, dtype=float)
        if arr.ndim != 1:
            raise ValueError(f"values must be one-dimensional, got shape {arr.shape}")
        return arr

    @classmethod
    def uniform(cls, n: int, value: float) -> "GlobalTrustVector":
        return cls(values=np.full(n, float(value)))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> float:
        return float(self.values[index])
