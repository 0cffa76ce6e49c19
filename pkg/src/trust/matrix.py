"""
Sparse trust matrices.

``TrustMatrix`` holds raw local trust scores for Absolute Trust;
``NormalizedTrustMatrix`` holds the row-stochastic form the baselines need.
"""

from typing import Dict, Iterable, Mapping, Optional, Tuple

import numpy as np
from scipy import sparse

from ..models.trust import TransactionCounts, WeightConfig
from .errors import DimensionMismatchError, InvalidTrustInputError

Pair = Tuple[int, int]

# Slack for scores read back from text files
_BOUND_TOL = 1e-9


def _check_pair(n: int, rater: int, ratee: int) -> None:
    if not (0 <= rater < n and 0 <= ratee < n):
        raise DimensionMismatchError(f"Pair ({rater}, {ratee}) outside a {n}-peer matrix")
    if rater == ratee:
        raise InvalidTrustInputError(f"Peer {rater} cannot rate itself")


class TrustMatrix:
    """
    Local trust matrix T, where T[i, j] is the trust rater i assigns ratee j.

    Only interacting pairs are stored. The solver reads the matrix through its
    transpose (rows are ratees) and through the incidence pattern C with
    C[i, j] = 1 iff T[j, i] is present.
    """

    def __init__(
        self,
        n: int,
        entries: Mapping[Pair, float],
        weights: Optional[WeightConfig] = None,
    ):
        if n < 1:
            raise DimensionMismatchError(f"Matrix dimension must be positive, got {n}")

        self.n = n
        self.weights = weights
        self._entries: Dict[Pair, float] = {}

        for (rater, ratee), score in entries.items():
            _check_pair(n, rater, ratee)
            score = float(score)
            if not np.isfinite(score) or score <= 0:
                raise InvalidTrustInputError(f"T[{rater}, {ratee}] must be positive, got {score}")
            if weights is not None and not (
                weights.w_b - _BOUND_TOL <= score <= weights.w_g + _BOUND_TOL
            ):
                raise InvalidTrustInputError(
                    f"T[{rater}, {ratee}] = {score} outside [{weights.w_b}, {weights.w_g}]"
                )
            self._entries[(int(rater), int(ratee))] = score

        self._transposed: Optional[sparse.csr_matrix] = None
        self._incidence: Optional[sparse.csr_matrix] = None

    @classmethod
    def from_triples(
        cls,
        n: int,
        triples: Iterable[Tuple[int, int, float]],
        weights: Optional[WeightConfig] = None,
    ) -> "TrustMatrix":
        entries: Dict[Pair, float] = {}
        for rater, ratee, score in triples:
            entries[(int(rater), int(ratee))] = float(score)
        return cls(n, entries, weights)

    @classmethod
    def from_dense(cls, array: np.ndarray, weights: Optional[WeightConfig] = None) -> "TrustMatrix":
        """Build from a dense array; zeros mean no interaction and the diagonal is ignored."""
        array = np.asarray(array, dtype=float)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DimensionMismatchError(f"Expected a square array, got shape {array.shape}")

        entries = {
            (int(i), int(j)): float(array[i, j])
            for i, j in zip(*np.nonzero(array))
            if i != j
        }
        return cls(array.shape[0], entries, weights)

    @property
    def entries(self) -> Dict[Pair, float]:
        return dict(self._entries)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def __len__(self) -> int:
        return self.n

    def __contains__(self, pair: Pair) -> bool:
        return pair in self._entries

    def get(self, rater: int, ratee: int) -> Optional[float]:
        return self._entries.get((rater, ratee))

    def transposed(self) -> sparse.csr_matrix:
        """Tᵗ as CSR: row i holds the scores peer i received."""
        if self._transposed is None:
            if self._entries:
                raters, ratees = zip(*self._entries.keys())
                data = list(self._entries.values())
            else:
                raters, ratees, data = [], [], []
            self._transposed = sparse.csr_matrix(
                (np.asarray(data, dtype=float), (np.asarray(ratees, dtype=int), np.asarray(raters, dtype=int))),
                shape=(self.n, self.n),
            )
        return self._transposed

    def incidence(self) -> sparse.csr_matrix:
        """Incidence pattern C of Tᵗ."""
        if self._incidence is None:
            c = self.transposed().copy()
            c.data[:] = 1.0
            self._incidence = c
        return self._incidence

    def rated_mask(self) -> np.ndarray:
        """Boolean mask of peers with at least one rater."""
        return np.diff(self.transposed().indptr) > 0

    def raters_of(self, ratee: int) -> np.ndarray:
        row = self.transposed()
        return row.indices[row.indptr[ratee]:row.indptr[ratee + 1]]

    def to_dense(self) -> np.ndarray:
        return self.transposed().T.toarray()


class NormalizedTrustMatrix:
    """
    Row-stochastic local trust matrix for the EigenTrust family.

    Rows without any positive score are "dangling"; they are stored empty and
    stand for the pre-trust distribution, which is only known at iteration time.
    """

    def __init__(self, n: int, scores: Mapping[Pair, float]):
        if n < 1:
            raise DimensionMismatchError(f"Matrix dimension must be positive, got {n}")
        self.n = n

        rows, cols, data = [], [], []
        for (rater, ratee), value in scores.items():
            _check_pair(n, rater, ratee)
            if value < 0:
                raise InvalidTrustInputError(f"Normalized scores must be non-negative, got {value}")
            if value > 0:
                rows.append(rater)
                cols.append(ratee)
                data.append(float(value))

        raw = sparse.csr_matrix(
            (np.asarray(data, dtype=float), (np.asarray(rows, dtype=int), np.asarray(cols, dtype=int))),
            shape=(n, n),
        )
        row_sums = np.asarray(raw.sum(axis=1)).ravel()
        self.dangling = row_sums == 0

        inverse = np.zeros(n)
        inverse[~self.dangling] = 1.0 / row_sums[~self.dangling]
        self.matrix: sparse.csr_matrix = sparse.csr_matrix(sparse.diags(inverse) @ raw)

    @classmethod
    def from_counts(cls, n: int, counts: Mapping[Pair, TransactionCounts]) -> "NormalizedTrustMatrix":
        """Normalize ``max(n_g - n_b, 0)`` per rater."""
        return cls(n, {pair: max(c.n_g - c.n_b, 0) for pair, c in counts.items()})

    def row_sums(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=1)).ravel()

    def dense(self, pretrust: np.ndarray) -> np.ndarray:
        """Materialize the matrix with dangling rows replaced by ``pretrust``."""
        pretrust = np.asarray(pretrust, dtype=float)
        if pretrust.shape != (self.n,):
            raise DimensionMismatchError(f"Pre-trust vector must have length {self.n}")
        full = self.matrix.toarray()
        full[self.dangling] = pretrust
        return full

    def propagate(self, t: np.ndarray, pretrust: np.ndarray) -> np.ndarray:
        """Compute ``Cᵗ t`` where dangling rows of C equal ``pretrust``."""
        return self.matrix.T @ t + t[self.dangling].sum() * pretrust
