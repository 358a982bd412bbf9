from .contentstore import ContentStore, CsRecord
from .fib import FaceRecord, Fib, FibConfig, FibEntry, fib_threshold
from .pit import Pit, PitEntry

__all__ = [
    "ContentStore",
    "CsRecord",
    "FaceRecord",
    "Fib",
    "FibConfig",
    "FibEntry",
    "Pit",
    "PitEntry",
    "fib_threshold",
]
