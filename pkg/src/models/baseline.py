"""
Parameters of the EigenTrust and PowerTrust reference aggregators.
"""

import math
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator


class BaselineConfig(BaseModel):
    """Damping, pre-trust and power-node settings shared by both baselines."""

    pretrusted_set: List[int] = Field(default_factory=list, description="Pre-trusted peer ids (EigenTrust)")
    damping: float = Field(default=0.15, ge=0.0, le=1.0, description="Weight of the pre-trust distribution")
    power_node_count: Optional[int] = Field(
        default=None, ge=1, description="Top-ranked peers elected as power nodes; None means ceil(0.05*N)"
    )
    pretrusted_count: int = Field(default=3, ge=1, description="How many good peers are pre-trusted in simulations")
    epsilon: float = Field(default=1e-6, gt=0, description="L1 convergence bound")
    max_iterations: int = Field(default=1000, ge=1, description="Hard iteration cap")

    @field_validator("pretrusted_set")
    @classmethod
    def _unique_ids(cls, v: List[int]) -> List[int]:
        if any(i < 0 for i in v):
            raise ValueError("pretrusted_set ids must be non-negative")
        return sorted(set(v))

    def power_nodes_for(self, n: int) -> int:
        """Resolve the power node count for a network of n peers."""
        m = self.power_node_count if self.power_node_count is not None else math.ceil(0.05 * n)
        if not 1 <= m <= n:
            raise ValueError(f"power_node_count must be within [1, {n}], got {m}")
        return m
