"""Covering codes for ball search.

Binary covers of assignment space come from a greedy set-cover pass
(optionally blockwise for long words); K-ary covers of flip-word space
are drawn at random to a union-bound size and repaired if the draw
leaves holes.  Construction always verifies coverage before returning.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

Word = tuple[int, ...]

_SPACE_LIMIT = 10**7


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(x != y for x, y in zip(a, b))


def binary_entropy(rho: float) -> float:
    """H(rho) in bits; defined on the open interval (0, 1)."""
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho={rho} outside (0, 1)")
    return -rho * math.log2(rho) - (1.0 - rho) * math.log2(1.0 - rho)


@dataclass(frozen=True)
class BinaryCoveringCode:
    word_length: int
    radius: int
    codewords: tuple[Word, ...]


@dataclass(frozen=True)
class KaryCoveringCode:
    alphabet: int            # symbols are 1..alphabet
    word_length: int
    radius: int
    codewords: tuple[Word, ...]
    size_bound: int          # union-bound draw count the construction targeted
    repaired: bool = False   # True if random draws left holes that were patched


def _int_to_bits(x: int, length: int) -> Word:
    return tuple((x >> (length - 1 - j)) & 1 for j in range(length))


def _bits_to_int(bits: Sequence[int]) -> int:
    x = 0
    for b in bits:
        x = (x << 1) | b
    return x


def _ball_masks(length: int, radius: int) -> list[int]:
    masks = [0]
    for dist in range(1, min(radius, length) + 1):
        for positions in combinations(range(length), dist):
            m = 0
            for p in positions:
                m |= 1 << p
            masks.append(m)
    return masks


def _greedy_cover_ints(length: int, radius: int) -> list[int]:
    """Greedy set cover of {0,1}^length by Hamming balls; deterministic."""
    if length == 0:
        return [0]
    if radius >= length:
        return [0]
    n_words = 1 << length
    if radius == 0:
        return list(range(n_words))
    masks = np.array(_ball_masks(length, radius), dtype=np.int64)
    all_words = np.arange(n_words, dtype=np.int64)
    uncovered = np.ones(n_words, dtype=bool)
    code: list[int] = []
    while uncovered.any():
        counts = np.zeros(n_words, dtype=np.int64)
        for m in masks:
            counts += uncovered[all_words ^ m]
        # argmax returns the lowest index on ties
        pick = int(counts.argmax())
        code.append(pick)
        uncovered[pick ^ masks] = False
    return code


def build_binary_cover(
    word_length: int,
    rho: float | None = None,
    block_divisor: int = 1,
    *,
    radius: int | None = None,
) -> BinaryCoveringCode:
    """Greedy binary covering code.

    The target radius is floor(rho * word_length) with rho in (0, 1/2),
    or an explicit `radius` override.  With block_divisor d > 1 the word
    splits into d equal blocks covered independently; the direct product
    covers at the sum of block radii, which never exceeds the target.
    """
    if word_length < 0:
        raise ValueError("negative word length")
    if radius is None:
        if rho is None:
            raise ValueError("need rho or radius")
        if not 0.0 < rho < 0.5:
            raise ValueError(f"rho={rho} outside (0, 1/2)")
        radius = math.floor(rho * word_length)
    elif not 0 <= radius <= word_length:
        raise ValueError(f"radius={radius} outside [0, {word_length}]")
    if word_length == 0:
        return BinaryCoveringCode(0, radius, ((),))
    if block_divisor < 1 or word_length % block_divisor != 0:
        raise ValueError(f"block_divisor={block_divisor} does not divide {word_length}")
    block_len = word_length // block_divisor
    frac = rho if rho is not None else radius / word_length
    block_radius = math.floor(frac * block_len) if block_divisor > 1 else radius
    if word_length > 24:
        raise ValueError("word length too large for exhaustive greedy cover")
    block_code = _greedy_cover_ints(block_len, block_radius)
    block_words = [_int_to_bits(x, block_len) for x in block_code]
    codewords = tuple(
        sum(parts, ()) for parts in product(block_words, repeat=block_divisor)
    )
    code = BinaryCoveringCode(word_length, radius, codewords)
    ok, witness = verify_cover(code)
    if not ok:
        raise RuntimeError(f"greedy cover failed to cover {witness}")
    return code


def _kary_index(word: Sequence[int], alphabet: int) -> int:
    x = 0
    for sym in word:
        x = x * alphabet + (sym - 1)
    return x


def _kary_word(index: int, alphabet: int, length: int) -> Word:
    syms = []
    for _ in range(length):
        index, rem = divmod(index, alphabet)
        syms.append(rem + 1)
    return tuple(reversed(syms))


def _kary_ball_indices(word: Word, radius: int, alphabet: int) -> Iterable[int]:
    t = len(word)
    others = {s: [x for x in range(1, alphabet + 1) if x != s] for s in range(1, alphabet + 1)}
    for dist in range(0, min(radius, t) + 1):
        for positions in combinations(range(t), dist):
            pools = [others[word[p]] for p in positions]
            for repl in product(*pools):
                changed = list(word)
                for p, sym in zip(positions, repl):
                    changed[p] = sym
                yield _kary_index(changed, alphabet)


def kary_draw_bound(alphabet: int, word_length: int, radius: int) -> int:
    """Union-bound draw count: ceil(t ln(K) K^t / (C(t,s) (K-1)^s))."""
    k, t, s = alphabet, word_length, radius
    denom = math.comb(t, s) * (k - 1) ** s
    return math.ceil(t * math.log(k) * k**t / denom)


def build_kary_cover(
    alphabet: int, word_length: int, radius: int, seed: int = 0
) -> KaryCoveringCode:
    """Randomized K-ary covering code over {1..K}^t.

    Draws distinct random words to the union-bound count, then patches
    any uncovered word (lexicographically first) until coverage holds;
    patched codes carry repaired=True.
    """
    k, t, s = alphabet, word_length, radius
    if k < 2:
        raise ValueError(f"alphabet {k} too small")
    if not 0 <= s <= t:
        raise ValueError(f"radius={s} outside [0, {t}]")
    if k**t > _SPACE_LIMIT:
        raise ValueError(f"space {k}^{t} too large")
    if t == 0:
        return KaryCoveringCode(k, 0, 0, ((),), 1, False)
    rng = random.Random(seed)
    if s == t:
        # any single word covers the whole space
        word = _kary_word(rng.randrange(k**t), k, t)
        return KaryCoveringCode(k, t, s, (word,), 1, False)
    total = k**t
    bound = kary_draw_bound(k, t, s)
    count = min(bound, total)
    indices = rng.sample(range(total), count)
    codewords = [_kary_word(i, k, t) for i in indices]
    covered = bytearray(total)
    for word in codewords:
        for idx in _kary_ball_indices(word, s, k):
            covered[idx] = 1
    repaired = False
    while True:
        try:
            hole = covered.index(0)
        except ValueError:
            break
        repaired = True
        word = _kary_word(hole, k, t)
        codewords.append(word)
        for idx in _kary_ball_indices(word, s, k):
            covered[idx] = 1
    code = KaryCoveringCode(k, t, s, tuple(codewords), bound, repaired)
    ok, witness = verify_cover(code)
    if not ok:
        raise RuntimeError(f"k-ary cover failed to cover {witness}")
    return code


def verify_cover(
    code: BinaryCoveringCode | KaryCoveringCode,
    space: Iterable[Word] | None = None,
) -> tuple[bool, Word | None]:
    """Exhaustive coverage check; returns (ok, first uncovered word or None).

    With an explicit `space` the check scans it generically; otherwise
    the full word space enumerates in lexicographic order via ball
    marking, which is much faster.
    """
    if space is not None:
        for word in space:
            if all(hamming_distance(word, cw) > code.radius for cw in code.codewords):
                return False, word
        return True, None
    if isinstance(code, BinaryCoveringCode):
        length = code.word_length
        if length == 0:
            return (True, None) if code.codewords else (False, ())
        total = 1 << length
        masks = _ball_masks(length, code.radius)
        covered = bytearray(total)
        for cw in code.codewords:
            base = _bits_to_int(cw)
            for m in masks:
                covered[base ^ m] = 1
        # mask indexing uses LSB-at-right ints; lexicographic word order
        # over MSB-first bit tuples is plain numeric order on them
        try:
            hole = covered.index(0)
        except ValueError:
            return True, None
        return False, _int_to_bits(hole, length)
    k, t = code.alphabet, code.word_length
    if t == 0:
        return (True, None) if code.codewords else (False, ())
    total = k**t
    if total > _SPACE_LIMIT:
        raise ValueError(f"space {k}^{t} too large")
    covered = bytearray(total)
    for cw in code.codewords:
        for idx in _kary_ball_indices(cw, code.radius, k):
            covered[idx] = 1
    try:
        hole = covered.index(0)
    except ValueError:
        return True, None
    return False, _kary_word(hole, k, t)


def write_cover(code: BinaryCoveringCode | KaryCoveringCode) -> str:
    """Text form: 'cover <alphabet> <word_length> <radius> <count>' + one word per line."""
    if isinstance(code, BinaryCoveringCode):
        alphabet = 2
        lines = ["".join(map(str, cw)) for cw in code.codewords]
    else:
        alphabet = code.alphabet
        if alphabet > 9:
            raise ValueError("alphabet too large for digit serialization")
        lines = ["".join(map(str, cw)) for cw in code.codewords]
    header = f"cover {alphabet} {code.word_length} {code.radius} {len(code.codewords)}"
    return "\n".join([header, *lines]) + "\n"


def read_cover(text: str) -> BinaryCoveringCode | KaryCoveringCode:
    """Inverse of write_cover; alphabet 2 reads as a binary code."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("cover "):
        raise ValueError("missing cover header")
    parts = lines[0].split()
    if len(parts) != 5:
        raise ValueError(f"malformed cover header {lines[0]!r}")
    alphabet, word_length, radius, count = map(int, parts[1:])
    body = lines[1:]
    if len(body) != count:
        raise ValueError(f"header declares {count} codewords, found {len(body)}")
    words = []
    for ln in body:
        word = tuple(int(ch) for ch in ln.strip())
        if len(word) != word_length:
            raise ValueError(f"codeword {ln!r} has wrong length")
        words.append(word)
    if alphabet == 2:
        return BinaryCoveringCode(word_length, radius, tuple(words))
    bound = kary_draw_bound(alphabet, word_length, radius) if word_length else 1
    return KaryCoveringCode(alphabet, word_length, radius, tuple(words), bound)
