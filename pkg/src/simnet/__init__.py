# Network simulation package; the simulator itself lives in .simulator
from .behavior import build_population, give_feedback, transact
from .holders import holder_load, trust_holders_of
from .ledger import Ledger
from .placement import FilePlacement, place_files, replica_counts
from .selection import Responder, select_source
from .topology import Overlay, issue_query

__all__ = [
    'build_population',
    'FilePlacement',
    'give_feedback',
    'holder_load',
    'issue_query',
    'Ledger',
    'Overlay',
    'place_files',
    'replica_counts',
    'Responder',
    'select_source',
    'transact',
    'trust_holders_of',
]
