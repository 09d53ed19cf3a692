"""Tag-based comparison scheme: 14-bit level indicator + 31-bit BCH codeword.

Each transmitted block is the level's indicator word followed by a BCH
codeword whose correction capability matches that level. The receiver first
decodes the indicator by minimum distance over the m indicator words (ties
to the higher level, mirroring the tag-free decoder's policy) and then runs
the BCH decoder *of the estimated level*, wrong or not. That misrouting on
tag errors is the failure mode the scheme is here to exhibit, so it is
reproduced deliberately.

The indicator book is not hand-picked: a greedy search maximizes its minimum
pairwise distance so the baseline is as strong as its structure allows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bch import BchCode, BCH31_T_TO_K
from .bitvec import as_bit_vector, int_to_bits
from .codebook import level_label

__all__ = [
    "INDICATOR_LENGTH",
    "BCH_LENGTH",
    "TOTAL_LENGTH",
    "IndicatorBook",
    "BaselineCodebook",
    "BaselineDecodeResult",
    "build_indicator_book",
    "build_baseline",
    "baseline_encode",
    "baseline_decode",
]

INDICATOR_LENGTH = 14
BCH_LENGTH = 31
TOTAL_LENGTH = INDICATOR_LENGTH + BCH_LENGTH  # 45, matching the tag-free blocklength


@dataclass(frozen=True)
class IndicatorBook:
    """m indicator words of length 14 with their achieved minimum distance."""

    words: np.ndarray  # (m, 14) uint8, row x-1 tags level x
    d_ind: int
    seed: int

    @property
    def num_levels(self) -> int:
        return int(self.words.shape[0])


def _min_pairwise(words: list[int]) -> int:
    best = INDICATOR_LENGTH + 1
    for i in range(len(words) - 1):
        for j in range(i + 1, len(words)):
            d = (words[i] ^ words[j]).bit_count()
            if d < best:
                best = d
    return best


def _greedy_collect(m: int, target_d: int, stream, budget: int) -> list[int] | None:
    chosen: list[int] = []
    examined = 0
    for v in stream:
        examined += 1
        if all((v ^ u).bit_count() >= target_d for u in chosen):
            chosen.append(v)
            if len(chosen) == m:
                return chosen
        if examined >= budget:
            break
    return None


def build_indicator_book(m: int = 6, seed: int = 11, budget: int = 200_000) -> IndicatorBook:
    """Greedy maximum-minimum-distance indicator words, deterministic per seed.

    Mirrors the codebook constructor's seeded-random greedy: targets are
    tried from 14 downward and the first target for which m words are found
    wins, so the achieved minimum distance is the largest the greedy can
    reach. The distance recorded is recomputed from the result.
    """
    space = 2 ** INDICATOR_LENGTH
    for target_d in range(INDICATOR_LENGTH, 0, -1):
        rng = np.random.default_rng(np.random.SeedSequence([seed, target_d]))
        stream = (int(v) for v in rng.integers(0, space, size=budget))
        chosen = _greedy_collect(m, target_d, stream, budget)
        if chosen is not None:
            words = np.stack([int_to_bits(v, INDICATOR_LENGTH) for v in chosen])
            words.setflags(write=False)
            return IndicatorBook(words=words, d_ind=_min_pairwise(chosen), seed=seed)
    raise AssertionError("unreachable: target_d=1 always succeeds")


@dataclass(frozen=True)
class BaselineCodebook:
    """Per-level indicator word, BCH member, and message-set size."""

    indicator: IndicatorBook
    t_map: tuple[int, ...]
    group_sizes: tuple[int, ...]
    codes: tuple[BchCode, ...]

    @property
    def num_levels(self) -> int:
        return len(self.t_map)

    @property
    def blocklength(self) -> int:
        return TOTAL_LENGTH

    def message_bits(self, level_index: int) -> int:
        size = self.group_sizes[level_index - 1]
        return max(1, (size - 1).bit_length())


def build_baseline(group_sizes, t_map=(1, 1, 2, 3, 5, 7), indicator_seed: int = 11) -> BaselineCodebook:
    sizes = tuple(int(s) for s in group_sizes)
    ts = tuple(int(t) for t in t_map)
    if len(sizes) != len(ts):
        raise ValueError(f"{len(sizes)} group sizes but {len(ts)} t values")
    if any(a > b for a, b in zip(ts, ts[1:])):
        raise ValueError(f"baseline t_map must be non-decreasing, got {ts}")
    codes = []
    for x, (t, size) in enumerate(zip(ts, sizes), start=1):
        if t not in BCH31_T_TO_K:
            raise ValueError(f"level {x}: no BCH(31,*) member with t={t}")
        code = BchCode.for_t(t)
        if size > 2 ** code.k:
            raise ValueError(f"level {x}: {size} messages exceed 2^k for BCH(31,{code.k})")
        codes.append(code)
    book = build_indicator_book(m=len(ts), seed=indicator_seed)
    return BaselineCodebook(indicator=book, t_map=ts, group_sizes=sizes, codes=tuple(codes))


def baseline_encode(level_index: int, msg_index: int, bcb: BaselineCodebook) -> np.ndarray:
    """indicator(level) followed by the systematic BCH codeword of the message index."""
    if not 1 <= level_index <= bcb.num_levels:
        raise ValueError(f"level {level_index} out of range 1..{bcb.num_levels}")
    if not 0 <= msg_index < bcb.group_sizes[level_index - 1]:
        raise ValueError(
            f"message index {msg_index} out of range for level {level_label(level_index)} "
            f"(size {bcb.group_sizes[level_index - 1]})"
        )
    code = bcb.codes[level_index - 1]
    cw = int_to_bits(code.encode_int(msg_index), BCH_LENGTH)
    return np.concatenate([bcb.indicator.words[level_index - 1], cw])


@dataclass(frozen=True)
class BaselineDecodeResult:
    estimated_level: int
    estimated_message_index: int
    indicator_exact: bool  # received indicator matched the selected word bit for bit
    bch_ok: bool
    tie_occurred: bool


def baseline_decode(r, bcb: BaselineCodebook) -> BaselineDecodeResult:
    """Indicator-directed decode, including the wrong-table failure mode."""
    vec = as_bit_vector(r, name="received")
    if vec.size != TOTAL_LENGTH:
        raise ValueError(f"received length {vec.size} != {TOTAL_LENGTH}")
    dists = (bcb.indicator.words != vec[:INDICATOR_LENGTH]).sum(axis=1)
    dmin = int(dists.min())
    m = bcb.num_levels
    level = m - int(np.argmin(dists[::-1]))  # ties resolve to the higher level
    tie = int((dists == dmin).sum()) >= 2

    code = bcb.codes[level - 1]
    r_int = 0
    for b in vec[INDICATOR_LENGTH:]:
        r_int = (r_int << 1) | int(b)
    msg_int, ok = code.decode_int(r_int)
    width = bcb.message_bits(level)
    msg_index = msg_int & ((1 << width) - 1)
    return BaselineDecodeResult(
        estimated_level=level,
        estimated_message_index=msg_index,
        indicator_exact=(dmin == 0),
        bch_ok=ok,
        tie_occurred=tie,
    )
