"""Greedy layered-codebook construction.

Groups are filled in order of descending importance so the hardest distance
constraints claim space first. For each group with two or more codewords, the
second accepted word is drawn at distance exactly 2t+1 from the first, which
pins the group's achieved intra minimum distance to its design value. With
every cross-group distance screened against max(2t_p+1, 2t_q+1), the finished
codebook then satisfies the strong inter-level rule (cross distance at least
the larger of the two groups' intra minimum distances) by construction, not
by luck.

Candidate streams are deterministic per (policy, seed, level, slot), so one
config always rebuilds the identical codebook.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from sklearn.base import BaseEstimator

from .bitvec import int_to_bits
from .codebook import LayeredCodebook, LevelSpec, validate_level_specs
from .errors import InfeasibleConstructionError

__all__ = [
    "ConstructionConfig",
    "InfeasibilityReport",
    "enumerate_candidates",
    "build",
    "CodebookBuilder",
]

CANDIDATE_ORDERS = ("lexicographic", "gray-code", "random")
EXHAUSTIVE_LIMIT = 64  # full 2^n enumeration allowed up to here


@dataclass(frozen=True)
class ConstructionConfig:
    """Search parameters for one greedy build."""

    blocklength: int
    level_specs: tuple[LevelSpec, ...]
    candidate_order: str = "random"
    seed: int = 0
    max_candidates: int = 2_000_000  # per slot
    inter_min_overrides: tuple[tuple[int, int, int], ...] = ()  # (p, q, min distance)

    def __post_init__(self):
        if self.blocklength < 1:
            raise ValueError(f"blocklength must be positive, got {self.blocklength}")
        specs = validate_level_specs(self.level_specs)
        object.__setattr__(self, "level_specs", specs)
        if self.candidate_order not in CANDIDATE_ORDERS:
            raise ValueError(f"candidate_order must be one of {CANDIDATE_ORDERS}, got {self.candidate_order!r}")
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be positive")
        total = sum(s.group_size for s in specs)
        if total > 2 ** self.blocklength:
            raise ValueError(f"{total} codewords cannot fit in {{0,1}}^{self.blocklength}")
        m = len(specs)
        for p, q, d in self.inter_min_overrides:
            if not (1 <= p <= m and 1 <= q <= m and p != q):
                raise ValueError(f"override pair ({p},{q}) out of range")
            if d < 1:
                raise ValueError(f"override distance must be >= 1, got {d}")

    @classmethod
    def make(cls, blocklength, target_t, group_sizes, **kwargs) -> "ConstructionConfig":
        """Convenience: build level specs from parallel t / size sequences."""
        if len(target_t) != len(group_sizes):
            raise ValueError("target_t and group_sizes must have equal length")
        specs = tuple(
            LevelSpec(level_index=i + 1, target_t=int(t), group_size=int(s))
            for i, (t, s) in enumerate(zip(target_t, group_sizes))
        )
        return cls(blocklength=blocklength, level_specs=specs, **kwargs)


def default_config(seed: int = 2024) -> ConstructionConfig:
    """The shipped 45-bit, 6-level design: t = (1,1,2,3,5,7), eight messages per level.

    The t vector mirrors the correction capabilities available to a length-31
    BCH baseline so both schemes in the simulator are capability-matched.
    """
    return ConstructionConfig.make(
        blocklength=45,
        target_t=(1, 1, 2, 3, 5, 7),
        group_sizes=(8, 8, 8, 8, 8, 8),
        candidate_order="random",
        seed=seed,
    )


@dataclass(frozen=True)
class InfeasibilityReport:
    """Why a build stopped: the first slot that could not be filled."""

    level_index: int
    slot_index: int  # 1-based position within the group
    candidates_examined: int
    space_exhausted: bool  # True when the full candidate space was enumerated

    def __str__(self) -> str:
        reason = "candidate space exhausted" if self.space_exhausted else "search budget exhausted"
        return (
            f"infeasible: could not fill slot {self.slot_index} of level {self.level_index} "
            f"({reason} after {self.candidates_examined} candidates)"
        )


def _int_stream(n: int, policy: str, seed: int) -> Iterator[int]:
    if policy == "lexicographic":
        return iter(range(2 ** n))
    if policy == "gray-code":
        return (i ^ (i >> 1) for i in range(2 ** n))
    # seeded random without replacement
    def gen() -> Iterator[int]:
        rng = np.random.default_rng(np.random.SeedSequence([seed, n]))
        seen: set[int] = set()
        space = 2 ** n
        while len(seen) < space:
            if n <= 62:
                v = int(rng.integers(0, space))
            else:
                bits = rng.integers(0, 2, size=n)
                v = 0
                for b in bits:
                    v = (v << 1) | int(b)
            if v in seen:
                continue
            seen.add(v)
            yield v

    return gen()


def enumerate_candidates(n: int, policy: str = "lexicographic", seed: int = 0):
    """Deterministic stream of candidate codewords as bit vectors.

    Exhaustive policies ('lexicographic', 'gray-code') yield each of the 2^n
    words exactly once and require n <= 64; 'random' draws seeded words
    without replacement and works at any blocklength.
    """
    if policy not in CANDIDATE_ORDERS:
        raise ValueError(f"unknown candidate order {policy!r}")
    if policy != "random" and n > EXHAUSTIVE_LIMIT:
        raise ValueError(
            f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_LIMIT}; "
            f"use the 'random' policy for n = {n}"
        )
    return (int_to_bits(v, n) for v in _int_stream(n, policy, seed))


def _pair_stream(n: int, base: int, distance: int, policy: str, seed: int) -> Iterator[int]:
    """Words at Hamming distance exactly *distance* from *base*, deterministic order."""
    if policy in ("lexicographic", "gray-code"):
        for positions in itertools.combinations(range(n), distance):
            v = base
            for pos in positions:
                v ^= 1 << (n - 1 - pos)
            yield v
    else:
        rng = np.random.default_rng(np.random.SeedSequence([seed, n, distance]))
        seen: set[int] = set()
        total = _n_choose_k(n, distance)
        while len(seen) < total:
            positions = rng.choice(n, size=distance, replace=False)
            v = base
            for pos in positions:
                v ^= 1 << (n - 1 - int(pos))
            if v in seen:
                continue
            seen.add(v)
            yield v


def _popcount(v: int) -> int:
    return v.bit_count()


def build(cfg: ConstructionConfig) -> LayeredCodebook | InfeasibilityReport:
    """Run the greedy search; returns the codebook or an infeasibility report.

    Deterministic given cfg. The result always passes verify_codebook under
    both inter-level rules; callers are still expected to re-verify
    (the constructor is never trusted by the rest of the package).
    """
    n = cfg.blocklength
    specs = cfg.level_specs
    m = len(specs)

    overrides = {}
    for p, q, d in cfg.inter_min_overrides:
        key = (min(p, q), max(p, q))
        overrides[key] = max(overrides.get(key, 0), d)

    def cross_bound(x: int, q: int) -> int:
        base = max(specs[x - 1].required_dmin, specs[q - 1].required_dmin)
        return max(base, overrides.get((min(x, q), max(x, q)), 0))

    accepted: dict[int, list[int]] = {x: [] for x in range(1, m + 1)}
    taken: set[int] = set()

    def admissible(v: int, x: int, check_intra: bool) -> bool:
        if v in taken:
            return False
        if check_intra:
            need = specs[x - 1].required_dmin
            for u in accepted[x]:
                if _popcount(u ^ v) < need:
                    return False
        for q in range(1, m + 1):
            if q == x or not accepted[q]:
                continue
            need = cross_bound(x, q)
            for u in accepted[q]:
                if _popcount(u ^ v) < need:
                    return False
        return True

    space = 2 ** n
    for x in range(m, 0, -1):  # most important level first
        spec = specs[x - 1]
        for slot in range(1, spec.group_size + 1):
            if slot == 2:
                # pin the group's intra minimum distance to its design value
                stream = _pair_stream(n, accepted[x][0], spec.required_dmin, cfg.candidate_order, cfg.seed + x)
                stream_size = _n_choose_k(n, spec.required_dmin)
            else:
                stream = _int_stream(n, cfg.candidate_order, cfg.seed + x * 1000 + slot)
                stream_size = space
            examined = 0
            found = None
            for v in stream:
                examined += 1
                if admissible(v, x, check_intra=(slot > 2)):
                    found = v
                    break
                if examined >= cfg.max_candidates:
                    break
            if found is None:
                return InfeasibilityReport(
                    level_index=x,
                    slot_index=slot,
                    candidates_examined=examined,
                    space_exhausted=examined >= stream_size,
                )
            accepted[x].append(found)
            taken.add(found)

    groups = [np.stack([int_to_bits(v, n) for v in accepted[x]]) for x in range(1, m + 1)]
    return LayeredCodebook(groups, specs)


def _n_choose_k(n: int, k: int) -> int:
    if k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


class CodebookBuilder(BaseEstimator):
    """Estimator-style front end for the greedy search.

    fit() ignores X/y (the search is driven entirely by the parameters) and
    exposes the result as ``codebook_``. Infeasible configurations raise
    InfeasibleConstructionError carrying the report.
    """

    def __init__(
        self,
        blocklength: int = 45,
        target_t: tuple = (1, 1, 2, 3, 5, 7),
        group_sizes: tuple = (8, 8, 8, 8, 8, 8),
        candidate_order: str = "random",
        seed: int = 2024,
        max_candidates: int = 2_000_000,
        inter_min_overrides: tuple = (),
    ):
        self.blocklength = blocklength
        self.target_t = target_t
        self.group_sizes = group_sizes
        self.candidate_order = candidate_order
        self.seed = seed
        self.max_candidates = max_candidates
        self.inter_min_overrides = inter_min_overrides

    def _config(self) -> ConstructionConfig:
        return ConstructionConfig.make(
            blocklength=self.blocklength,
            target_t=tuple(self.target_t),
            group_sizes=tuple(self.group_sizes),
            candidate_order=self.candidate_order,
            seed=self.seed,
            max_candidates=self.max_candidates,
            inter_min_overrides=tuple(self.inter_min_overrides),
        )

    def fit(self, X=None, y=None):
        result = build(self._config())
        if isinstance(result, InfeasibilityReport):
            raise InfeasibleConstructionError(result)
        self.codebook_ = result
        return self
