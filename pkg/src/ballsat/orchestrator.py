"""Top-level solve: decomposition, cover sweep, and worker dispatch.

The formula splits over the most-occurring variables into prefix
subproblems; each codeword of a binary covering code over the free
variables seeds a ball search.  Workers share nothing, messages carry
only formulas, assignments, and counts, and the first satisfying model
cancels the rest.  A FALSE answer is one-sided with an explicit
failure-probability bound.
"""

from __future__ import annotations

import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .codes import (
    BinaryCoveringCode,
    build_binary_cover,
    build_kary_cover,
    read_cover,
    verify_cover,
    write_cover,
)
from .formula import (
    CONFLICT,
    Assignment,
    Formula,
    decompose,
    evaluate,
    top_k_vars,
    unsat_count,
)
from .pbs import (
    CallLog,
    DescentParams,
    PbsInstance,
    PbsRuntime,
    QuantumAttempt,
    descent_t,
    kpbs_hybrid,
    kqcpbs,
    quantum_kpbs,
)


class ConfigError(ValueError):
    """Unusable configuration; the CLI maps this to UNKNOWN."""


def exponent(alphabet: int, gamma: float) -> float:
    """Base-2 runtime exponent per variable for a given quantum-radius fraction."""
    if alphabet < 3:
        raise ValueError(f"alphabet {alphabet} below 3")
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"gamma={gamma} outside [0, 1)")
    k = alphabet
    return 1.0 + math.log2((k - 1) / k) - gamma * math.log2((k - 1) / math.sqrt(k))


@dataclass(frozen=True)
class ResourceModel:
    """Radius cap from a qubit budget: gamma solves A g log2(1/g) + B g = c."""

    A: float
    B: float
    c: float
    gamma: float

    def r_max(self, word_length: int) -> int:
        return math.floor(self.gamma * word_length)


def solve_resource(A: float, B: float, c: float) -> ResourceModel:
    """Smallest positive root of A g log2(1/g) + B g = c, increasing branch."""
    if A <= 0 or B <= 0:
        raise ConfigError("resource constants must be positive")
    if not 0.0 < c < 1.0:
        raise ConfigError(f"qubit fraction c={c} outside (0, 1)")

    def g(x: float) -> float:
        return A * x * math.log2(1.0 / x) + B * x

    peak = 2.0 ** (B / A - 1.0 / math.log(2.0))
    hi = min(peak, 1.0 - 1e-15)
    if g(hi) < c:
        raise ConfigError(f"qubit fraction c={c} unreachable (max {g(hi):.6f})")
    lo = 1e-300
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if g(mid) < c:
            lo = mid
        else:
            hi = mid
    return ResourceModel(A, B, c, hi)


@dataclass(frozen=True)
class SolveConfig:
    k: int = 0
    epsilon: float = 0.1
    alphabet: int | None = None       # clause width K; derived from the formula if None
    rho: float | None = None          # cover radius fraction; defaults to 1/K
    workers: int | None = None        # defaults to 2^k
    retries: int = 3
    seed: int = 0
    r_max: int | None = None          # overrides the resource model when set
    mode: str = "hybrid"              # "hybrid" | "classical"
    cover_cache: str | Path | None = None


@dataclass(frozen=True)
class QuantumCallRecord:
    prefix: str
    codeword: int
    radius: int
    L: int
    queries: int
    outcome: str
    attempt: int

    def as_json_dict(self) -> dict:
        return {
            "prefix": self.prefix,
            "codeword": self.codeword,
            "radius": self.radius,
            "L": self.L,
            "queries": self.queries,
            "outcome": self.outcome,
            "attempt": self.attempt,
        }


@dataclass
class SolveStats:
    quantum_calls: int = 0
    total_queries: int = 0
    branches: int = 0
    dispatches: int = 0
    groups_failed: int = 0
    failure_bound: float = 0.0
    wall_time: float = 0.0
    records: list[QuantumCallRecord] = field(default_factory=list)


@dataclass
class SolveResult:
    status: str                 # "SAT" | "FALSE"
    model: Assignment | None
    stats: SolveStats


# Messages between the orchestrator and workers carry only formulas,
# assignments, and counts; see the structural test in the suite.
@dataclass(frozen=True)
class WorkItem:
    prefix: str
    prefix_pos: int
    codeword_index: int
    formula: Formula
    center: Assignment
    radius: int
    r_max: int


@dataclass(frozen=True)
class WorkResult:
    item: WorkItem
    model: Assignment | None
    attempts: tuple[QuantumAttempt, ...]
    branches: int
    groups_failed: int


_BINARY_MEMO: dict[tuple[int, int], BinaryCoveringCode] = {}
_KARY_MEMO: dict[tuple[int, int, int, int], object] = {}


def _load_or_build_cover(cache_dir, name, build):
    if cache_dir is None:
        return build()
    path = Path(cache_dir) / name
    if path.exists():
        code = read_cover(path.read_text())
        ok, witness = verify_cover(code)
        if not ok:
            raise ConfigError(f"cached cover {path} does not cover {witness}")
        return code
    code = build()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(write_cover(code))
    return code


def _binary_cover(word_length: int, radius: int, cache_dir) -> BinaryCoveringCode:
    key = (word_length, radius)
    if key not in _BINARY_MEMO:
        _BINARY_MEMO[key] = _load_or_build_cover(
            cache_dir,
            f"bin-{word_length}-r{radius}.cover",
            lambda: build_binary_cover(word_length, radius=radius),
        )
    return _BINARY_MEMO[key]


def _descent_params(alphabet: int, radius: int, seed: int, cache_dir) -> DescentParams:
    t = descent_t(alphabet, radius)
    s = t // alphabet
    mixed = ((seed & 0xFFFFFFFF) * 1000003 + alphabet * 10007 + t * 101 + s) & 0x7FFFFFFF
    key = (alphabet, t, s, mixed)
    if key not in _KARY_MEMO:
        _KARY_MEMO[key] = _load_or_build_cover(
            cache_dir,
            f"kary-{alphabet}-t{t}-s{s}.cover",
            lambda: build_kary_cover(alphabet, t, s, mixed),
        )
    return DescentParams(t, _KARY_MEMO[key])


def _lift_center(
    word, free_vars: list[int], prefix_bits, kvars: list[int], num_vars: int
) -> Assignment:
    bits = [0] * num_vars
    for pos, var in enumerate(free_vars):
        bits[var - 1] = word[pos]
    for var, bit in zip(kvars, prefix_bits):
        bits[var - 1] = bit
    return tuple(bits)


def _chunks(seq, size):
    for i in range(0, len(seq), size):
        yield seq[i : i + size]


def solve(f: Formula, cfg: SolveConfig, rm: ResourceModel | None = None) -> SolveResult:
    """Decide satisfiability; SAT answers carry a re-verified model."""
    t_start = time.perf_counter()
    n = f.num_vars
    if not 0 <= cfg.k <= n:
        raise ConfigError(f"k={cfg.k} outside [0, {n}]")
    if not 0.0 < cfg.epsilon < 1.0:
        raise ConfigError(f"epsilon={cfg.epsilon} outside (0, 1)")
    if cfg.retries < 1:
        raise ConfigError("retries must be at least 1")
    if cfg.mode not in ("hybrid", "classical"):
        raise ConfigError(f"unknown mode {cfg.mode!r}")
    alphabet = cfg.alphabet if cfg.alphabet is not None else max(3, f.max_width)
    if alphabet < 3:
        raise ConfigError(f"alphabet {alphabet} below 3")
    if f.max_width > alphabet:
        raise ConfigError(f"clause width {f.max_width} exceeds alphabet {alphabet}")
    rho = cfg.rho if cfg.rho is not None else 1.0 / alphabet
    if not 0.0 < rho < 0.5:
        raise ConfigError(f"rho={rho} outside (0, 1/2)")
    workers = cfg.workers if cfg.workers is not None else max(1, 2**cfg.k)
    if workers < 1:
        raise ConfigError("need at least one worker")
    word_length = n - cfg.k
    radius = math.floor(rho * word_length)
    if cfg.mode == "classical":
        r_cap = 0
    elif cfg.r_max is not None:
        r_cap = cfg.r_max
    elif rm is not None:
        r_cap = rm.r_max(word_length)
    else:
        raise ConfigError("need a resource model or an explicit r_max")
    if r_cap < 0:
        raise ConfigError(f"r_max={r_cap} negative")

    seed = cfg.seed & 0xFFFFFFFFFFFFFFFF
    cover = _binary_cover(word_length, radius, cfg.cover_cache)
    dp = (
        _descent_params(alphabet, radius, cfg.seed, cfg.cover_cache)
        if cfg.mode == "hybrid"
        else None
    )
    kvars = top_k_vars(f, cfg.k)
    kv_set = set(kvars)
    free_vars = [v for v in range(1, n + 1) if v not in kv_set]
    entries = decompose(f, cfg.k)
    order_rng = np.random.default_rng(np.random.SeedSequence([seed, 0]))
    order = order_rng.permutation(len(entries))

    stats = SolveStats()
    cancel = threading.Event()

    def finish(status: str, model: Assignment | None) -> SolveResult:
        stats.failure_bound = stats.groups_failed * cfg.epsilon ** (2 * cfg.retries)
        stats.wall_time = time.perf_counter() - t_start
        return SolveResult(status, model, stats)

    def run_item(item: WorkItem) -> WorkResult:
        rng = np.random.default_rng(
            np.random.SeedSequence([seed, 1 + item.prefix_pos, item.codeword_index])
        )
        log = CallLog()
        rt = PbsRuntime(rng=rng, retries=cfg.retries, log=log, cancel=cancel)
        inst = PbsInstance(
            item.formula, item.center, item.radius, item.r_max, cfg.epsilon, alphabet
        )
        if cfg.mode == "classical":
            model = kqcpbs(inst, rt)
        elif item.radius > item.r_max:
            model = kpbs_hybrid(inst, dp, rt)
        else:
            model = quantum_kpbs(replace(inst, radius=min(item.radius, item.r_max)), rt)
        return WorkResult(item, model, tuple(log.attempts), log.branches, log.groups_failed)

    def absorb(result: WorkResult) -> None:
        stats.branches += result.branches
        stats.groups_failed += result.groups_failed
        for att in result.attempts:
            stats.records.append(
                QuantumCallRecord(
                    result.item.prefix,
                    result.item.codeword_index,
                    att.radius,
                    att.L,
                    att.queries,
                    att.outcome,
                    att.attempt,
                )
            )
            stats.quantum_calls += 1
            stats.total_queries += att.queries

    def accept(model: Assignment | None, prefix_bits) -> Assignment | None:
        if model is None:
            return None
        lifted = list(model)
        for var, bit in zip(kvars, prefix_bits):
            lifted[var - 1] = bit
        candidate = tuple(lifted)
        return candidate if evaluate(f, candidate) else None

    with ThreadPoolExecutor(max_workers=workers) as pool:
        for prefix_pos in order:
            prefix_bits, sub = entries[prefix_pos]
            if sub is CONFLICT:
                continue
            prefix_str = "".join(map(str, prefix_bits))
            scored = []
            for ci, word in enumerate(cover.codewords):
                center = _lift_center(word, free_vars, prefix_bits, kvars, n)
                score = unsat_count(sub, center)
                if score == 0:
                    model = accept(center, prefix_bits)
                    if model is not None:
                        return finish("SAT", model)
                scored.append((score, ci, center))
            scored.sort(key=lambda sc: (sc[0], sc[1]))
            for batch in _chunks(scored, workers):
                items = [
                    WorkItem(prefix_str, int(prefix_pos), ci, sub, center, radius, r_cap)
                    for _, ci, center in batch
                ]
                stats.dispatches += len(items)
                futures = [pool.submit(run_item, it) for it in items]
                batch_pos = {it.codeword_index: i for i, it in enumerate(items)}
                results: list[WorkResult] = []
                winner: WorkResult | None = None
                for fut in as_completed(futures):
                    res = fut.result()
                    results.append(res)
                    if res.model is not None and winner is None:
                        winner = res
                        cancel.set()
                # merge metrics in dispatch order so runs are reproducible
                results.sort(key=lambda r: batch_pos[r.item.codeword_index])
                for res in results:
                    absorb(res)
                if winner is not None:
                    model = accept(winner.model, prefix_bits)
                    if model is not None:
                        return finish("SAT", model)
                    cancel.clear()  # defensive: winner failed re-verification
    return finish("FALSE", None)
