"""
Reading local trust matrices from CSV triples.

Files have a one-line ``rater,ratee,score`` header followed by one row per
interacting pair, with 0-based peer ids.
"""

from pathlib import Path
from typing import Optional, Union

import pandas as pd
from loguru import logger

from ..models.trust import WeightConfig
from ..trust.errors import TrustError
from ..trust.matrix import TrustMatrix

COLUMNS = ["rater", "ratee", "score"]


class MatrixFormatError(ValueError):
    """Raised for unreadable or malformed matrix files."""


def read_trust_matrix(
    path: Union[str, Path],
    n: Optional[int] = None,
    weights: Optional[WeightConfig] = None,
) -> TrustMatrix:
    """
    Load a trust matrix file.

    Args:
        path: CSV file with ``rater,ratee,score`` columns
        n: Peer count; defaults to the largest id plus one
        weights: When given, scores must lie in [w_b, w_g]

    Raises:
        FileNotFoundError: if the file does not exist
        MatrixFormatError: for bad headers, non-integer ids or invalid scores
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Matrix file not found: {path}")

    try:
        df = pd.read_csv(path, skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise MatrixFormatError(f"{path}: cannot parse CSV ({e})") from e

    if list(df.columns) != COLUMNS:
        raise MatrixFormatError(f"{path}: header must be {','.join(COLUMNS)}, got {','.join(map(str, df.columns))}")
    if df.empty:
        raise MatrixFormatError(f"{path}: no entries")

    ids = df[["rater", "ratee"]]
    if not all(pd.api.types.is_integer_dtype(t) for t in ids.dtypes) or (ids < 0).any().any():
        raise MatrixFormatError(f"{path}: peer ids must be non-negative integers")
    if not pd.api.types.is_numeric_dtype(df["score"]):
        raise MatrixFormatError(f"{path}: scores must be numeric")
    if df.duplicated(subset=["rater", "ratee"]).any():
        raise MatrixFormatError(f"{path}: duplicate (rater, ratee) pairs")

    size = n if n is not None else int(ids.to_numpy().max()) + 1
    try:
        matrix = TrustMatrix.from_triples(size, df.itertuples(index=False, name=None), weights)
    except TrustError as e:
        raise MatrixFormatError(f"{path}: {e}") from e

    logger.info(f"Loaded {matrix.nnz} ratings among {size} peers from {path}")
    return matrix
