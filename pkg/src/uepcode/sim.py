"""Seeded Monte Carlo engine: per-level BER and group classification accuracy.

Trials are partitioned into fixed-size shards, each with its own RNG stream
derived from (master seed, channel, scheme, point, shard). Workers merely
pull shards and counters merge by integer summation, so the CSV produced is
byte-identical for any worker count.

BER is measured on decoded message bits, i.e. the bits of the message index
after inverse mapping, not on raw codeword bits; a block decoded against a
level of a different message width counts all of its true message bits as
wrong. Classification hits require the estimated level to equal the
transmitted one.
"""

from __future__ import annotations

import logging
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .baseline import INDICATOR_LENGTH, BaselineCodebook, baseline_encode, build_baseline
from .channels import AwgnChannel, VlcIsiChannel
from .codebook import LayeredCodebook, golden_codebook_path, level_label, verify_codebook
from .decoder import classify_batch
from .errors import UepError

__all__ = [
    "SimConfig",
    "SimRow",
    "CSV_COLUMNS",
    "estimate_gca",
    "wilson_interval",
    "run_point",
    "run_simulation",
    "write_csv",
    "rows_to_csv",
]

log = logging.getLogger(__name__)

SHARD_SIZE = 10_000
SCHEMES = ("proposed", "baseline")
CHANNELS = ("awgn", "vlc")
CSV_COLUMNS = (
    "scheme", "channel", "param", "level", "trials", "bit_count", "bit_errors",
    "ber", "class_hits", "gca", "gca_lo", "gca_hi", "ties", "seed",
)

_WILSON_Z = 1.959963984540054  # two-sided 95%


@dataclass(frozen=True)
class SimConfig:
    scheme: str = "both"  # proposed | baseline | both
    channel: str = "awgn"  # awgn | vlc
    sweep: tuple[float, ...] = (0.0, 2.0, 4.0, 6.0)
    trials_per_point: int = 200_000
    master_seed: int = 1
    codebook_path: str = ""
    report_levels: tuple[int, ...] = (1, 4, 6)  # A, D, F
    vlc_noise_sigma: float = 0.1
    vlc_threshold: float = 0.5
    baseline_t_map: tuple[int, ...] = (1, 1, 2, 3, 5, 7)
    baseline_indicator_seed: int = 11

    def __post_init__(self):
        if self.scheme not in ("proposed", "baseline", "both"):
            raise ValueError(f"scheme must be proposed|baseline|both, got {self.scheme!r}")
        if self.channel not in CHANNELS:
            raise ValueError(f"channel must be awgn|vlc, got {self.channel!r}")
        if not self.sweep:
            raise ValueError("sweep must be non-empty")
        if any(a >= b for a, b in zip(self.sweep, self.sweep[1:])):
            raise ValueError(f"sweep values must be strictly increasing, got {self.sweep}")
        if self.trials_per_point < 1:
            raise ValueError("trials_per_point must be >= 1")
        if self.master_seed < 0:
            raise ValueError("master_seed must be >= 0")
        if not self.report_levels:
            raise ValueError("report_levels must be non-empty")

    @property
    def schemes(self) -> tuple[str, ...]:
        return SCHEMES if self.scheme == "both" else (self.scheme,)

    def resolved_codebook_path(self) -> str:
        return self.codebook_path or golden_codebook_path()


@dataclass(frozen=True)
class SimRow:
    scheme: str
    channel: str
    param: float
    level: str
    trials: int
    bit_count: int
    bit_errors: int
    ber: float
    class_hits: int
    gca: float
    gca_lo: float
    gca_hi: float
    ties: int
    seed: int

    def csv_line(self) -> str:
        return ",".join(str(v) for v in (
            self.scheme, self.channel, self.param, self.level, self.trials,
            self.bit_count, self.bit_errors, self.ber, self.class_hits,
            self.gca, self.gca_lo, self.gca_hi, self.ties, self.seed,
        ))


def wilson_interval(hits: int, total: int, z: float = _WILSON_Z) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if total < 1:
        raise ValueError("total must be >= 1")
    phat = hits / total
    denom = 1.0 + z * z / total
    center = (phat + z * z / (2 * total)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / total + z * z / (4.0 * total * total)) / denom
    # the extremes are exact: rounding must not pull the bound inside [0, 1]
    lo = 0.0 if hits == 0 else max(0.0, center - half)
    hi = 1.0 if hits == total else min(1.0, center + half)
    return lo, hi


def estimate_gca(hits: int, trials: int) -> tuple[float, float, float]:
    """Point estimate plus Wilson bounds for classification accuracy."""
    lo, hi = wilson_interval(hits, trials)
    return hits / trials, lo, hi


# -- per-process artifact cache ------------------------------------------------

_ARTIFACTS: dict = {}


def _load_artifacts(cfg: SimConfig):
    key = (cfg.resolved_codebook_path(), cfg.baseline_t_map, cfg.baseline_indicator_seed)
    if key in _ARTIFACTS:
        return _ARTIFACTS[key]
    cb = LayeredCodebook.load(cfg.resolved_codebook_path())
    report = verify_codebook(cb)
    if not report.passed:
        raise UepError(f"refusing to simulate with an invalid codebook:\n{report}")
    bcb = build_baseline(cb.group_sizes, t_map=cfg.baseline_t_map,
                         indicator_seed=cfg.baseline_indicator_seed)
    m = cb.num_levels
    max_n = max(cb.group_sizes)
    prop_lut = np.zeros((m, max_n, cb.blocklength), dtype=np.uint8)
    base_lut = np.zeros((m, max_n, bcb.blocklength), dtype=np.uint8)
    for x in range(1, m + 1):
        for i in range(cb.group_sizes[x - 1]):
            prop_lut[x - 1, i] = cb.groups[x - 1][i]
            base_lut[x - 1, i] = baseline_encode(x, i, bcb)
    widths = np.array([cb.message_bits(x) for x in range(1, m + 1)], dtype=np.int64)
    entry = (cb, bcb, prop_lut, base_lut, widths)
    _ARTIFACTS[key] = entry
    return entry


def _make_channel(cfg: SimConfig, param: float):
    if cfg.channel == "awgn":
        return AwgnChannel(ebn0_db=param)
    return VlcIsiChannel(h=param, noise_sigma=cfg.vlc_noise_sigma, threshold=cfg.vlc_threshold)


def _shard_counts(trials: int) -> list[int]:
    full, rest = divmod(trials, SHARD_SIZE)
    return [SHARD_SIZE] * full + ([rest] if rest else [])


def _msg_bit_errors(true_msgs, est_msgs, width_true, width_est):
    mismatch = width_est != width_true
    diff = np.bitwise_count((true_msgs ^ est_msgs).astype(np.uint64)).astype(np.int64)
    return np.where(mismatch, width_true, diff)


def _run_shard(cfg: SimConfig, scheme: str, point_idx: int, shard_idx: int, n_trials: int):
    """Simulate one shard; returns (m, 5) counters: trials, hits, ties, bits, errors."""
    cb, bcb, prop_lut, base_lut, widths = _load_artifacts(cfg)
    m = cb.num_levels
    seed_seq = np.random.SeedSequence([
        cfg.master_seed, CHANNELS.index(cfg.channel), SCHEMES.index(scheme),
        point_idx, shard_idx,
    ])
    rng = np.random.default_rng(seed_seq)
    sizes = np.array(cb.group_sizes, dtype=np.int64)
    channel = _make_channel(cfg, cfg.sweep[point_idx])

    levels0 = rng.integers(0, m, size=n_trials)  # 0-based
    msgs = rng.integers(0, sizes[levels0])
    if scheme == "proposed":
        tx = prop_lut[levels0, msgs]
    else:
        tx = base_lut[levels0, msgs]
    rx = channel.transmit(tx, rng)

    if scheme == "proposed":
        est_levels, est_msgs, _, ties = classify_batch(rx, cb)
        est0 = est_levels - 1
    else:
        ind = rx[:, :INDICATOR_LENGTH]
        dists = (ind[:, None, :] != bcb.indicator.words[None, :, :]).sum(axis=2)
        dmin = dists.min(axis=1)
        est0 = (m - 1) - np.argmin(dists[:, ::-1], axis=1)
        ties = (dists == dmin[:, None]).sum(axis=1) >= 2
        pow2 = (1 << np.arange(30, -1, -1)).astype(np.int64)
        r_ints = rx[:, INDICATOR_LENGTH:].astype(np.int64) @ pow2
        est_msgs = np.empty(n_trials, dtype=np.int64)
        for i in range(n_trials):
            lv = int(est0[i])
            msg_int, _ = bcb.codes[lv].decode_int(int(r_ints[i]))
            est_msgs[i] = msg_int & ((1 << int(widths[lv])) - 1)

    width_true = widths[levels0]
    width_est = widths[est0]
    errs = _msg_bit_errors(msgs, est_msgs, width_true, width_est)
    hits = (est0 == levels0).astype(np.int64)

    counters = np.zeros((m, 5), dtype=np.int64)
    counters[:, 0] = np.bincount(levels0, minlength=m)
    counters[:, 1] = np.bincount(levels0, weights=hits, minlength=m).astype(np.int64)
    counters[:, 2] = np.bincount(levels0, weights=ties.astype(np.int64), minlength=m).astype(np.int64)
    counters[:, 3] = np.bincount(levels0, weights=width_true, minlength=m).astype(np.int64)
    counters[:, 4] = np.bincount(levels0, weights=errs, minlength=m).astype(np.int64)
    return counters


def _run_shard_star(args):
    return _run_shard(*args)


def _rows_from_counters(cfg: SimConfig, scheme: str, point_idx: int, counters: np.ndarray):
    rows = []
    for level in cfg.report_levels:
        trials, hits, ties, bits, errors = (int(v) for v in counters[level - 1])
        if trials == 0:
            log.warning("level %s drew no trials at %s=%s; row omitted",
                        level_label(level), cfg.channel, cfg.sweep[point_idx])
            continue
        gca, lo, hi = estimate_gca(hits, trials)
        rows.append(SimRow(
            scheme=scheme,
            channel=cfg.channel,
            param=float(cfg.sweep[point_idx]),
            level=level_label(level),
            trials=trials,
            bit_count=bits,
            bit_errors=errors,
            ber=errors / bits,
            class_hits=hits,
            gca=gca,
            gca_lo=lo,
            gca_hi=hi,
            ties=ties,
            seed=cfg.master_seed,
        ))
    return rows


def run_point(cfg: SimConfig, point_idx: int, scheme: str | None = None,
              workers: int = 1) -> list[SimRow]:
    """Simulate one channel point for one scheme (or all configured schemes)."""
    schemes = (scheme,) if scheme else cfg.schemes
    rows = []
    for sch in schemes:
        tasks = [
            (cfg, sch, point_idx, shard_idx, count)
            for shard_idx, count in enumerate(_shard_counts(cfg.trials_per_point))
        ]
        results = _execute(tasks, workers)
        counters = sum(results)
        rows.extend(_rows_from_counters(cfg, sch, point_idx, counters))
    return rows


def _execute(tasks, workers: int):
    if workers <= 1 or len(tasks) == 1:
        return [_run_shard_star(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_shard_star, tasks))


def run_simulation(cfg: SimConfig, workers: int = 1) -> list[SimRow]:
    """Full sweep over all configured schemes and channel points."""
    _load_artifacts(cfg)  # fail fast on a bad codebook, before any work
    tasks = []
    for sch in cfg.schemes:
        for point_idx in range(len(cfg.sweep)):
            for shard_idx, count in enumerate(_shard_counts(cfg.trials_per_point)):
                tasks.append((cfg, sch, point_idx, shard_idx, count))
    results = _execute(tasks, workers)
    merged: dict[tuple[str, int], np.ndarray] = {}
    for task, counters in zip(tasks, results):
        key = (task[1], task[2])
        if key in merged:
            merged[key] = merged[key] + counters
        else:
            merged[key] = counters
    rows = []
    for sch in cfg.schemes:
        for point_idx in range(len(cfg.sweep)):
            rows.extend(_rows_from_counters(cfg, sch, point_idx, merged[(sch, point_idx)]))
    return rows


def rows_to_csv(rows) -> str:
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(row.csv_line() for row in rows)
    return "\n".join(lines) + "\n"


def write_csv(rows, path) -> None:
    """Write simulation rows atomically (temp file + rename)."""
    text = rows_to_csv(rows)
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(prefix=".simcsv-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
