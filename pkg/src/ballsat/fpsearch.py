"""Fixed-point amplitude amplification, simulated exactly.

The register is the flip-word space {1..K}^r; a word is "marked" when
its walk ends on a satisfying assignment.  The iterate alternates a
phase on marked words with a phase about the uniform start state, with
angles from the fractional-order Chebyshev construction, so the success
probability stays above 1 - eps^2 once the marked fraction reaches
lambda_min = K^-r.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .fliptree import FlipSequence, walk
from .formula import Assignment, Formula

_NORM_TOL = 1e-9
_SPACE_LIMIT = 10**7


def chebyshev_t(order: float, x: float) -> float:
    """First-kind Chebyshev value T_order(x), fractional orders allowed.

    Uses the trigonometric form on [-1, 1] and the hyperbolic branch for
    x > 1; x < -1 is rejected (fractional orders would leave the reals).
    """
    if abs(x) <= 1.0:
        return math.cos(order * math.acos(x))
    if x > 1.0:
        return math.cosh(order * math.acosh(x))
    raise ValueError("x < -1 not supported at fractional order")


@dataclass(frozen=True)
class SearchSchedule:
    epsilon: float
    lambda_min: float
    L: int
    angles: tuple[tuple[float, float], ...]  # (alpha_j, beta_j), j = 1..l
    gamma_inv: float

    @property
    def l(self) -> int:
        return (self.L - 1) // 2

    @property
    def queries(self) -> int:
        return self.L - 1


def make_schedule(epsilon: float, lambda_min: float) -> SearchSchedule:
    """Angle schedule for tolerance epsilon and marked-fraction floor lambda_min.

    L is the smallest odd integer >= log2(2/eps) / sqrt(lambda_min);
    gamma^-1 = T_{1/L}(1/eps); alpha_j = 2*arccot(tan(2*pi*j/L) *
    sqrt(1 - gamma^2)) taken in (0, 2*pi); beta_j = -alpha_{l-j+1}.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon={epsilon} outside (0, 1)")
    if not 0.0 < lambda_min <= 1.0:
        raise ValueError(f"lambda_min={lambda_min} outside (0, 1]")
    bound = math.log2(2.0 / epsilon) / math.sqrt(lambda_min)
    L = math.ceil(bound)
    if L % 2 == 0:
        L += 1
    half = (L - 1) // 2
    gamma_inv = chebyshev_t(1.0 / L, 1.0 / epsilon)
    root = math.sqrt(max(0.0, 1.0 - 1.0 / gamma_inv**2))
    alphas = [
        2.0 * math.atan2(1.0, math.tan(2.0 * math.pi * j / L) * root)
        for j in range(1, half + 1)
    ]
    angles = tuple((alphas[j], -alphas[half - 1 - j]) for j in range(half))
    return SearchSchedule(epsilon, lambda_min, L, angles, gamma_inv)


@dataclass(frozen=True)
class FlipState:
    """State vector over flip words, with the marked-word mask."""

    formula: Formula
    center: Assignment
    radius: int
    alphabet: int
    amplitudes: np.ndarray
    marked: np.ndarray

    @property
    def size(self) -> int:
        return len(self.amplitudes)


def _decode_sequence(index: int, alphabet: int, radius: int) -> FlipSequence:
    syms = []
    for _ in range(radius):
        index, rem = divmod(index, alphabet)
        syms.append(rem + 1)
    return tuple(reversed(syms))


def prepare(f: Formula, center: Assignment, radius: int, alphabet: int) -> FlipState:
    """Uniform superposition over flip words, marking satisfying walks."""
    if radius < 0:
        raise ValueError("negative radius")
    total = alphabet**radius
    if total > _SPACE_LIMIT:
        raise ValueError(f"flip-word space {alphabet}^{radius} too large")
    marked = np.fromiter(
        (
            walk(f, center, seq).value
            for seq in product(range(1, alphabet + 1), repeat=radius)
        ),
        dtype=bool,
        count=total,
    )
    amps = np.full(total, 1.0 / math.sqrt(total), dtype=complex)
    return FlipState(f, center, radius, alphabet, amps, marked)


def apply_g(state: FlipState, alpha: float, beta: float) -> FlipState:
    """One amplification step: marked phase, uniform-state phase, global sign.

    Marked amplitudes pick up e^{i*beta}; the projector onto the uniform
    start state applies I - (1 - e^{-i*alpha})|S><S|.  The conjugate
    phase on the |S> side is what keeps the fixed-point success floor at
    1 - eps^2 under the schedule's angle convention.
    """
    amps = state.amplitudes.copy()
    amps[state.marked] *= cmath.exp(1j * beta)
    mean = amps.mean()
    amps -= (1.0 - cmath.exp(-1j * alpha)) * mean
    np.negative(amps, out=amps)
    norm = float(np.vdot(amps, amps).real)
    if abs(norm - 1.0) > _NORM_TOL:
        raise RuntimeError(f"norm drifted to {norm}")
    return FlipState(
        state.formula, state.center, state.radius, state.alphabet, amps, state.marked
    )


def apply_schedule(
    state: FlipState,
    schedule: SearchSchedule,
    trace: list[tuple[int, float]] | None = None,
) -> FlipState:
    """Apply all l steps, j = 1 first; optionally trace marked probability."""
    for step, (alpha, beta) in enumerate(schedule.angles, start=1):
        state = apply_g(state, alpha, beta)
        if trace is not None:
            trace.append((step, marked_probability(state)))
    return state


def marked_probability(state: FlipState) -> float:
    amps = state.amplitudes[state.marked]
    return float(np.vdot(amps, amps).real)


def search_state(
    f: Formula, center: Assignment, radius: int, alphabet: int, epsilon: float
) -> tuple[FlipState, SearchSchedule]:
    """Prepared-and-amplified state with the schedule tuned to lambda_min = K^-r."""
    schedule = make_schedule(epsilon, 1.0 / alphabet**radius)
    state = prepare(f, center, radius, alphabet)
    return apply_schedule(state, schedule), schedule


def sample_sequence(state: FlipState, rng: np.random.Generator) -> FlipSequence:
    """Measure the register: one flip word by Born probabilities."""
    probs = np.abs(state.amplitudes) ** 2
    probs /= probs.sum()
    index = int(rng.choice(state.size, p=probs))
    return _decode_sequence(index, state.alphabet, state.radius)


def _as_rng(rng: np.random.Generator | int | None) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def run_search(
    f: Formula,
    center: Assignment,
    radius: int,
    alphabet: int,
    epsilon: float,
    rng: np.random.Generator | int | None = None,
    trace: list[tuple[int, float]] | None = None,
) -> tuple[Assignment, int, int]:
    """One search shot: amplify, measure, walk, verify.

    Returns (candidate, success bit, oracle queries = L - 1).
    """
    generator = _as_rng(rng)
    schedule = make_schedule(epsilon, 1.0 / alphabet**radius)
    state = prepare(f, center, radius, alphabet)
    state = apply_schedule(state, schedule, trace)
    seq = sample_sequence(state, generator)
    out = walk(f, center, seq)
    return out.candidate, out.value, schedule.queries


def success_probability_exact(
    lam: float, epsilon: float, lambda_min: float | None = None
) -> float:
    """Exact success probability from the two-dimensional invariant subspace.

    The dynamics confine to span{marked, unmarked} uniform vectors, so a
    2x2 product gives the probability exactly.  The schedule is tuned to
    lambda_min (defaulting to lam itself).
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda={lam} outside [0, 1]")
    if lam == 0.0:
        return 0.0
    schedule = make_schedule(epsilon, lambda_min if lambda_min is not None else lam)
    start = np.array([math.sqrt(1.0 - lam), math.sqrt(lam)], dtype=complex)
    state = start.copy()
    for alpha, beta in schedule.angles:
        state[1] *= cmath.exp(1j * beta)
        overlap = start[0].real * state[0] + start[1].real * state[1]
        state = -(state - (1.0 - cmath.exp(-1j * alpha)) * overlap * start)
    return float(abs(state[1]) ** 2)
