"""Exhaustive reference procedures for tests and the brute CLI mode."""

from __future__ import annotations

from itertools import combinations

from .formula import Assignment, Formula, all_assignments, evaluate


def brute_sat(f: Formula, max_vars: int = 24) -> Assignment | None:
    """First satisfying assignment in lexicographic order, or None."""
    if f.num_vars > max_vars:
        raise ValueError(f"{f.num_vars} variables exceed exhaustive limit {max_vars}")
    for bits in all_assignments(f.num_vars):
        if evaluate(f, bits):
            return bits
    return None


def ball_promise(f: Formula, center: Assignment, radius: int) -> Assignment | None:
    """First satisfying assignment within Hamming distance `radius` of center.

    Scans by increasing distance, flip positions in lexicographic order.
    """
    if len(center) != f.num_vars:
        raise ValueError("center length mismatch")
    if radius < 0:
        raise ValueError("negative radius")
    n = f.num_vars
    for dist in range(0, min(radius, n) + 1):
        for positions in combinations(range(n), dist):
            cand = list(center)
            for pos in positions:
                cand[pos] ^= 1
            bits = tuple(cand)
            if evaluate(f, bits):
                return bits
    return None
