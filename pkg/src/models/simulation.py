"""
Data models for the peer-to-peer reputation simulator.
"""

from enum import Enum
from typing import List, Literal, Optional, Set, Tuple

from pydantic import BaseModel, Field, model_validator

from .baseline import BaselineConfig
from .trust import SolverConfig, TransactionCounts, WeightConfig


class Behavior(str, Enum):
    """Behavior model of a simulated peer."""

    GOOD = "good"
    PURE_MALICIOUS = "pure_malicious"
    UNPREDICTABLE = "unpredictable"
    COLLECTIVE = "collective"


class Feedback(str, Enum):
    """Outcome a rater records for one download."""

    SATISFACTORY = "g"
    NEUTRAL = "n"
    UNSATISFACTORY = "b"


class PeerProfile(BaseModel):
    """A simulated peer and the files it shares."""

    id: int = Field(..., ge=0, description="Peer index")
    behavior: Behavior = Field(default=Behavior.GOOD, description="Behavior model")
    switch_transaction: Optional[int] = Field(
        default=None, ge=0, description="Query cycle after which an unpredictable peer turns malicious"
    )
    group_id: Optional[int] = Field(default=None, ge=0, description="Collective this peer belongs to")
    owned_files: Set[int] = Field(default_factory=set, description="File ids held by the peer")

    @model_validator(mode="after")
    def _check_behavior_fields(self) -> "PeerProfile":
        if self.behavior == Behavior.UNPREDICTABLE and self.switch_transaction is None:
            raise ValueError(f"Unpredictable peer {self.id} needs a switch_transaction")
        if self.behavior == Behavior.COLLECTIVE and self.group_id is None:
            raise ValueError(f"Collective peer {self.id} needs a group_id")
        return self

    def is_malicious_at(self, clock: int) -> bool:
        """Whether the profile intends malicious behavior at query cycle ``clock``."""
        if self.behavior == Behavior.GOOD:
            return False
        if self.behavior == Behavior.UNPREDICTABLE:
            return clock >= self.switch_transaction
        return True

    def same_group(self, other: "PeerProfile") -> bool:
        return (
            self.behavior == Behavior.COLLECTIVE
            and other.behavior == Behavior.COLLECTIVE
            and self.group_id == other.group_id
        )


Algorithm = Literal["absolute", "eigentrust", "powertrust"]


class SimConfig(BaseModel):
    """
    Simulation parameters.

    Defaults follow the reference experiment setup: 100 peers, 1000 files,
    10000 observed query cycles, Zipf exponent 0.4, trust update every 200
    cycles and 95% behavior fidelity. The first ``transient_cycles`` cycles
    build up download history: every responder is acceptable and nothing is
    recorded in the result. ``global_ref`` and the solver's ``initial_value``
    default to the neutral weight when left unset.
    """

    num_peers: int = Field(default=100, ge=2, description="Peer count N")
    num_files: int = Field(default=1000, ge=1, description="Distinct files in the network")
    num_transactions: int = Field(default=10000, ge=1, description="Query cycles per trial")
    transient_cycles: int = Field(
        default=2000, ge=0, description="Warm-up query cycles run before observation starts"
    )
    zipf_gamma: float = Field(default=0.4, ge=0, description="Zipf exponent of file replication")
    min_replicas: int = Field(default=1, ge=1, description="Replicas of the least popular file")

    ttl_initial: int = Field(default=3, ge=0, description="TTL of the first query flood")
    ttl_upper: int = Field(default=7, ge=0, description="Largest TTL a query escalates to")
    ttl_step: int = Field(default=2, ge=1, description="TTL increment per retry")
    global_ref: Optional[float] = Field(default=None, gt=0, description="Source-acceptance threshold")

    update_period: int = Field(default=200, ge=1, description="Query cycles between trust updates")
    behavior_fidelity: float = Field(default=0.95, ge=0, le=1, description="Probability of acting per profile")
    neutral_probability: float = Field(
        default=0.0, ge=0, le=1, description="Chance an honest rater records an authentic file as neutral"
    )

    weights: WeightConfig = Field(default_factory=WeightConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    baseline: BaselineConfig = Field(default_factory=BaselineConfig)

    algorithm: Algorithm = Field(default="absolute", description="Global trust aggregation in use")
    selection_mode: Literal["max", "proportional"] = Field(default="proportional")
    beta: float = Field(default=0.7, ge=0, le=1, description="Weight of global trust against local trust")
    seed: int = Field(default=42, ge=0, description="Trial seed")
    holder_replication: int = Field(default=2, ge=1, description="Trust holders per peer")

    topology: Literal["random_regular", "ring", "complete"] = Field(default="random_regular")
    topology_degree: int = Field(default=8, ge=1, description="Degree of the random regular overlay")

    malicious_fraction: float = Field(default=0.0, ge=0, le=1, description="Share of pure malicious peers")
    unpredictable_fraction: float = Field(default=0.0, ge=0, le=1, description="Share of unpredictable peers")
    collective_groups: int = Field(default=0, ge=0, description="Number of malicious collectives")
    collective_group_fraction: float = Field(default=0.05, gt=0, le=1, description="Share of peers per collective")
    switch_window: Tuple[float, float] = Field(
        default=(0.2, 0.5), description="Bounds of the unpredictable switch point, as fractions of the run"
    )

    @model_validator(mode="after")
    def _resolve_defaults(self) -> "SimConfig":
        if self.global_ref is None:
            self.global_ref = self.weights.w_n
        if "initial_value" not in self.solver.model_fields_set:
            self.solver = self.solver.model_copy(update={"initial_value": self.weights.w_n})

        if self.ttl_initial > self.ttl_upper:
            raise ValueError(f"ttl_initial ({self.ttl_initial}) exceeds ttl_upper ({self.ttl_upper})")
        if self.holder_replication > self.num_peers - 1:
            raise ValueError(f"holder_replication must be below num_peers ({self.num_peers})")

        low, high = self.switch_window
        if not 0 <= low <= high <= 1:
            raise ValueError(f"switch_window must satisfy 0 <= low <= high <= 1, got {self.switch_window}")

        if self.malicious_count + self.unpredictable_count + self.collective_count > self.num_peers:
            raise ValueError("Malicious, unpredictable and collective peers exceed num_peers")
        return self

    @property
    def malicious_count(self) -> int:
        return round(self.malicious_fraction * self.num_peers)

    @property
    def unpredictable_count(self) -> int:
        return round(self.unpredictable_fraction * self.num_peers)

    @property
    def group_size(self) -> int:
        return max(1, round(self.collective_group_fraction * self.num_peers))

    @property
    def collective_count(self) -> int:
        return self.collective_groups * self.group_size

    @property
    def total_cycles(self) -> int:
        return self.transient_cycles + self.num_transactions


class LedgerEntry(BaseModel):
    """Download history of one rater about one ratee and the local trust it implies."""

    rater: int = Field(..., ge=0)
    ratee: int = Field(..., ge=0)
    counts: TransactionCounts = Field(default_factory=TransactionCounts)
    local_trust: float = Field(..., gt=0, description="Current T_ij")


class MessageTally(BaseModel):
    """Message counters of the trust protocol."""

    feedback_messages: int = Field(default=0, ge=0)
    trust_read_messages: int = Field(default=0, ge=0)
    hypothetical_normalized_feedback: int = Field(
        default=0, ge=0, description="Messages a normalized scheme would have sent for the same feedback"
    )

    def average_source_set_size(self) -> float:
        """Mean number of sources a rater had when it sent feedback."""
        if self.feedback_messages == 0:
            return 0.0
        return self.hypothetical_normalized_feedback / self.feedback_messages

    def saving_per_update(self) -> float:
        """Messages saved per feedback by not renormalizing a rater's row."""
        if self.feedback_messages == 0:
            return 0.0
        return self.average_source_set_size() - 1.0


class ExperimentResult(BaseModel):
    """Outcome of one simulated trial."""

    algorithm: Algorithm
    authentic_count: int = Field(default=0, ge=0)
    inauthentic_count: int = Field(default=0, ge=0)
    rejected_queries: int = Field(default=0, ge=0, description="Query cycles ending without a download")
    ttl_escalations: int = Field(default=0, ge=0)
    nonconverged_updates: int = Field(default=0, ge=0)
    per_peer_load: List[int] = Field(default_factory=list, description="Downloads served per peer")
    holder_load: List[int] = Field(default_factory=list, description="Peers whose trust each peer holds")
    good_peers: List[int] = Field(default_factory=list)
    residual_traces: List[List[float]] = Field(default_factory=list, description="Solver trace per update round")
    message_tally: MessageTally = Field(default_factory=MessageTally)
    config: SimConfig

    @property
    def completed_transactions(self) -> int:
        return self.authentic_count + self.inauthentic_count
