"""Synchronizability checks for systems of communicating finite state machines."""

from syncheck._core import (
    PreconditionError,
    System,
    builtin_names,
    builtin_system,
    causally_equivalent,
    exists_equiv_k_bounded,
    k_synchronizable,
    normalize_trace,
    parse_system,
    ring_synchronizable,
    run_trace,
    serialize_system,
    stable_bisimilar,
    strongly_k_stable,
)

__all__ = [
    "PreconditionError",
    "System",
    "builtin_names",
    "builtin_system",
    "causally_equivalent",
    "exists_equiv_k_bounded",
    "k_synchronizable",
    "normalize_trace",
    "parse_system",
    "ring_synchronizable",
    "run_trace",
    "serialize_system",
    "stable_bisimilar",
    "strongly_k_stable",
]
