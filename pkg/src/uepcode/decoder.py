"""Tag-free nearest-group decoding and its correctness checks.

The receiver never sees an explicit protection tag. It computes, for each
group, the minimum Hamming distance from the received word to the group's
codewords, picks the closest group as the estimated importance level, then
the closest codeword within that group, and finally inverts the group's
message mapping. The whole scan is exhaustive by design.

Tie policy: equal group minima resolve to the highest importance level
(misclassifying upward fails safe); equal distances inside a group resolve
to the lowest list index. Within a group's correction radius ties cannot
occur at all, which is what ``theorem1_check`` demonstrates by enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import NotFittedError

from .bitvec import as_bit_matrix, as_bit_vector, bits_to_string
from .codebook import LayeredCodebook, LevelSpec, verify_codebook

__all__ = [
    "DecodeResult",
    "group_min_distance",
    "classify",
    "classify_batch",
    "theorem1_check",
    "theorem2_check",
    "TheoremReport",
    "NearestGroupDecoder",
]

_CHUNK = 4096  # received words processed per vectorized block


def group_min_distance(r, group) -> tuple[int, int]:
    """Minimum distance from *r* to a codeword group, plus the argmin index.

    Ties go to the first (lowest-index) codeword attaining the minimum.
    """
    vec = as_bit_vector(r, name="received")
    mat = as_bit_matrix(group, name="group")
    if mat.shape[1] != vec.size:
        raise ValueError(f"length mismatch: received {vec.size}, group {mat.shape[1]}")
    dists = (mat != vec).sum(axis=1)
    idx = int(dists.argmin())
    return int(dists[idx]), idx


@dataclass(frozen=True)
class DecodeResult:
    """Everything the nearest-group decoder knows about one received word."""

    estimated_level: int
    estimated_codeword: np.ndarray
    estimated_message_index: int
    per_group_min_distance: np.ndarray
    tie_occurred: bool


def classify_batch(received: np.ndarray, cb: LayeredCodebook):
    """Vectorized nearest-group decode of many received words.

    Returns (levels, message_indices, group_min_dists, ties) where levels is
    1-based, group_min_dists has shape (T, m) and ties flags rows on which
    two or more groups share the global minimum.
    """
    R = as_bit_matrix(received, name="received")
    if R.shape[1] != cb.blocklength:
        raise ValueError(f"received blocklength {R.shape[1]} != codebook {cb.blocklength}")
    mat = cb.codeword_matrix
    starts = cb.group_starts
    col_levels = cb.column_levels
    m = cb.num_levels
    T = R.shape[0]

    levels = np.empty(T, dtype=np.int64)
    msg_idx = np.empty(T, dtype=np.int64)
    group_mins = np.empty((T, m), dtype=np.int64)
    ties = np.empty(T, dtype=bool)

    big = np.int64(cb.blocklength + 1)
    for lo in range(0, T, _CHUNK):
        hi = min(lo + _CHUNK, T)
        block = R[lo:hi]
        dists = (block[:, None, :] != mat[None, :, :]).sum(axis=2, dtype=np.int64)
        gmins = np.minimum.reduceat(dists, starts, axis=1)
        global_min = gmins.min(axis=1)
        # highest importance level wins ties: argmin over the reversed level axis
        sel = m - 1 - np.argmin(gmins[:, ::-1], axis=1)
        tie = (gmins == global_min[:, None]).sum(axis=1) >= 2
        # first codeword of the selected group attaining the minimum
        masked = np.where(col_levels[None, :] == (sel + 1)[:, None], dists, big)
        flat = masked.argmin(axis=1)
        levels[lo:hi] = sel + 1
        msg_idx[lo:hi] = flat - starts[sel]
        group_mins[lo:hi] = gmins
        ties[lo:hi] = tie
    return levels, msg_idx, group_mins, ties


def classify(r, cb: LayeredCodebook) -> DecodeResult:
    """Nearest-group decode of a single received word."""
    vec = as_bit_vector(r, name="received")
    levels, msg_idx, group_mins, ties = classify_batch(vec[None, :], cb)
    level = int(levels[0])
    idx = int(msg_idx[0])
    return DecodeResult(
        estimated_level=level,
        estimated_codeword=cb.groups[level - 1][idx],
        estimated_message_index=idx,
        per_group_min_distance=group_mins[0],
        tie_occurred=bool(ties[0]),
    )


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of a decoder guarantee check."""

    passed: bool
    cases_checked: int
    counterexample: str | None = None

    def __str__(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        msg = f"{state}: {self.cases_checked} cases checked"
        if self.counterexample:
            msg += f"; first counterexample: {self.counterexample}"
        return msg


def _error_patterns_exhaustive(n: int, max_weight: int):
    for w in range(0, max_weight + 1):
        for positions in itertools.combinations(range(n), w):
            yield w, positions


def theorem1_check(cb: LayeredCodebook, max_weight_exhaustive: int = 2) -> TheoremReport:
    """Enumerate bounded-weight errors and assert classification never fails.

    For every level A, every codeword c of A and every error pattern of
    weight w <= min(t_A, max_weight_exhaustive), the decoder must return
    level A and codeword c. Requires the codebook to satisfy
    d_AB >= 2*t_A + 1 for every pair (the hypothesis that makes the
    guarantee hold); a counterexample therefore falsifies the
    implementation, not the guarantee.
    """
    m = cb.num_levels
    for a in range(1, m + 1):
        t_a = cb.level_specs[a - 1].target_t
        for b in range(1, m + 1):
            if b == a:
                continue
            if cb.inter_d[a - 1, b - 1] < 2 * t_a + 1:
                raise ValueError(
                    f"precondition violated: d_{a}{b} = {int(cb.inter_d[a - 1, b - 1])} "
                    f"< 2*t_{a}+1 = {2 * t_a + 1}"
                )

    n = cb.blocklength
    cases = 0
    for a in range(1, m + 1):
        t_a = cb.level_specs[a - 1].target_t
        cap = min(t_a, max_weight_exhaustive)
        patterns = []
        for w, positions in _error_patterns_exhaustive(n, cap):
            e = np.zeros(n, dtype=np.uint8)
            for p in positions:
                e[p] = 1
            patterns.append(e)
        if not patterns:
            continue
        E = np.stack(patterns)
        for i, c in enumerate(cb.groups[a - 1]):
            received = c[None, :] ^ E
            levels, msg_idx, _, _ = classify_batch(received, cb)
            bad = np.nonzero((levels != a) | (msg_idx != i))[0]
            cases += received.shape[0]
            if bad.size:
                j = int(bad[0])
                return TheoremReport(
                    passed=False,
                    cases_checked=cases,
                    counterexample=(
                        f"level {a} codeword {bits_to_string(c)} with error "
                        f"{bits_to_string(E[j])} decoded to level {int(levels[j])}, "
                        f"message {int(msg_idx[j])}"
                    ),
                )
    return TheoremReport(passed=True, cases_checked=cases)


def theorem2_check(cb: LayeredCodebook, trials: int = 100_000, seed: int = 0,
                   weight_span: int = 3) -> TheoremReport:
    """Randomized check of the false-selection guarantee beyond the radius.

    Samples (level A, codeword, error of weight w > t_A with
    w <= t_A + weight_span). Whenever the decoder picks some other level,
    the selected level's radius must be below w, and no level B with both
    d_AB >= 2*t_B + 1 and t_B >= w may ever be selected.
    """
    rep = verify_codebook(cb)
    if not rep.passed:
        raise ValueError(f"codebook fails verification; run verify first:\n{rep}")
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    n = cb.blocklength
    m = cb.num_levels
    t = [s.target_t for s in cb.level_specs]

    levels_drawn = rng.integers(1, m + 1, size=trials)
    cases = 0
    violations = None
    received = np.empty((trials, n), dtype=np.uint8)
    weights = np.empty(trials, dtype=np.int64)
    tx_level = np.empty(trials, dtype=np.int64)
    for i in range(trials):
        a = int(levels_drawn[i])
        group = cb.groups[a - 1]
        c = group[int(rng.integers(0, group.shape[0]))]
        w_lo = t[a - 1] + 1
        w_hi = min(n, t[a - 1] + weight_span)
        if w_lo > w_hi:
            w = w_lo
        else:
            w = int(rng.integers(w_lo, w_hi + 1))
        pos = rng.choice(n, size=w, replace=False)
        r = c.copy()
        r[pos] ^= 1
        received[i] = r
        weights[i] = w
        tx_level[i] = a

    est_levels, _, _, _ = classify_batch(received, cb)
    for i in range(trials):
        cases += 1
        a = int(tx_level[i])
        s_hat = int(est_levels[i])
        w = int(weights[i])
        if s_hat == a:
            continue
        if t[s_hat - 1] >= w and cb.inter_d[a - 1, s_hat - 1] >= 2 * t[s_hat - 1] + 1:
            violations = (
                f"level {a}, weight {w} error selected level {s_hat} with "
                f"t={t[s_hat - 1]} >= w and d_AB={int(cb.inter_d[a - 1, s_hat - 1])}"
            )
            break
        if t[s_hat - 1] >= w:
            violations = (
                f"level {a}, weight {w} error selected level {s_hat} with t={t[s_hat - 1]} >= w"
            )
            break
    if violations:
        return TheoremReport(passed=False, cases_checked=cases, counterexample=violations)
    return TheoremReport(passed=True, cases_checked=cases)


class NearestGroupDecoder(BaseEstimator, ClassifierMixin):
    """Nearest-group classification with the scikit-learn estimator surface.

    fit(X, y) takes one codeword per row and its 1-based importance level;
    row order within each level is preserved and defines message indices.
    predict(X) returns estimated levels for received words. ``decode``
    exposes the full per-word result.
    """

    def __init__(self, target_t=None):
        self.target_t = target_t

    def fit(self, X, y):
        X = as_bit_matrix(X, name="X")
        y = np.asarray(y, dtype=np.int64)
        if y.ndim != 1 or y.size != X.shape[0]:
            raise ValueError("y must be one level per codeword row")
        levels = np.unique(y)
        if levels.min() < 1:
            raise ValueError("levels are 1-based")
        m = int(levels.max())
        if set(levels.tolist()) != set(range(1, m + 1)):
            raise ValueError(f"levels must cover 1..m with no gaps, got {levels.tolist()}")
        groups = [X[y == lv] for lv in range(1, m + 1)]
        if self.target_t is None:
            # derive each level's radius from its intra distance (singletons
            # claim 0), then clamp from the top so the ladder never
            # overstates what a higher level can correct
            ts = []
            for g in groups:
                if g.shape[0] == 1:
                    ts.append(0)
                else:
                    d = int(min(
                        (g[i + 1:] != g[i]).sum(axis=1).min() for i in range(g.shape[0] - 1)
                    ))
                    ts.append((d - 1) // 2)
            for i in range(m - 2, -1, -1):
                ts[i] = min(ts[i], ts[i + 1])
        else:
            ts = list(self.target_t)
            if len(ts) != m:
                raise ValueError(f"target_t has {len(ts)} entries for {m} levels")
        specs = [LevelSpec(level_index=i + 1, target_t=int(t), group_size=int(g.shape[0]))
                 for i, (t, g) in enumerate(zip(ts, groups))]
        self.codebook_ = LayeredCodebook(groups, specs)
        self.classes_ = np.arange(1, m + 1)
        return self

    @classmethod
    def from_codebook(cls, cb: LayeredCodebook) -> "NearestGroupDecoder":
        est = cls(target_t=cb.target_t)
        est.codebook_ = cb
        est.classes_ = np.arange(1, cb.num_levels + 1)
        return est

    def _check_fitted(self):
        if not hasattr(self, "codebook_"):
            raise NotFittedError("this NearestGroupDecoder is not fitted yet; call fit first")

    def predict(self, X) -> np.ndarray:
        self._check_fitted()
        levels, _, _, _ = classify_batch(as_bit_matrix(X, name="X"), self.codebook_)
        return levels

    def decode(self, X) -> list[DecodeResult]:
        self._check_fitted()
        X = as_bit_matrix(X, name="X")
        levels, msg_idx, gmins, ties = classify_batch(X, self.codebook_)
        cb = self.codebook_
        return [
            DecodeResult(
                estimated_level=int(levels[i]),
                estimated_codeword=cb.groups[int(levels[i]) - 1][int(msg_idx[i])],
                estimated_message_index=int(msg_idx[i]),
                per_group_min_distance=gmins[i],
                tie_occurred=bool(ties[i]),
            )
            for i in range(X.shape[0])
        ]
