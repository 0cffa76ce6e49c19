# Utilities package
from .data_export import ResultExporter
from .logger import setup_logger
from .matrix_io import MatrixFormatError, read_trust_matrix

__all__ = [
    'MatrixFormatError',
    'read_trust_matrix',
    'ResultExporter',
    'setup_logger',
]
