import math

import numpy as np
import pytest

from uepcode.codebook import golden_codebook_path
from uepcode.decoder import classify_batch
from uepcode.errors import UepError
from uepcode.sim import (
    CSV_COLUMNS,
    SimConfig,
    estimate_gca,
    rows_to_csv,
    run_point,
    run_simulation,
    wilson_interval,
    write_csv,
)


def wilson_oracle(hits, total, z=1.959963984540054):
    """Independent closed-form evaluation used to freeze expected values."""
    phat = hits / total
    denom = 1 + z * z / total
    center = (phat + z * z / (2 * total)) / denom
    half = z * math.sqrt(phat * (1 - phat) / total + z * z / (4 * total * total)) / denom
    return center - half, center + half


class TestWilson:
    def test_all_hits(self):
        gca, lo, hi = estimate_gca(100, 100)
        assert gca == 1.0 and hi == 1.0 and lo > 0.95

    def test_half_hits_frozen_values(self):
        lo, hi = wilson_interval(50, 100)
        assert lo == pytest.approx(0.404, abs=2e-3)
        assert hi == pytest.approx(0.596, abs=2e-3)
        oracle = wilson_oracle(50, 100)
        assert (lo, hi) == pytest.approx(oracle, abs=1e-12)

    def test_no_hits(self):
        gca, lo, hi = estimate_gca(0, 100)
        assert gca == 0.0 and lo == pytest.approx(0.0, abs=1e-12)

    def test_zero_trials_rejected(self):
        with pytest.raises(ValueError):
            wilson_interval(0, 0)


class TestConfigValidation:
    def test_bad_scheme(self):
        with pytest.raises(ValueError, match="scheme"):
            SimConfig(scheme="bogus")

    def test_empty_sweep(self):
        with pytest.raises(ValueError, match="non-empty"):
            SimConfig(sweep=())

    def test_non_increasing_sweep(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            SimConfig(sweep=(1.0, 1.0))

    def test_bad_channel(self):
        with pytest.raises(ValueError, match="channel"):
            SimConfig(channel="fiber")


class TestNoiselessPoints:
    def test_awgn_noiseless_identity(self):
        cfg = SimConfig(scheme="both", channel="awgn", sweep=(300.0,),
                        trials_per_point=3000, master_seed=3)
        rows = run_simulation(cfg)
        assert len(rows) == 6  # 2 schemes x 1 point x 3 levels
        for row in rows:
            assert row.ber == 0.0 and row.gca == 1.0 and row.bit_errors == 0

    def test_vlc_noiseless_low_h(self):
        cfg = SimConfig(scheme="both", channel="vlc", sweep=(0.2,),
                        trials_per_point=3000, master_seed=3, vlc_noise_sigma=0.0)
        rows = run_simulation(cfg)
        for row in rows:
            assert row.ber == 0.0 and row.gca == 1.0


class TestBoundedErrorRegime:
    def test_gca_near_one_when_expected_weight_is_small(self):
        # at 6 dB the crossover is ~0.0023, so the expected block error
        # weight (~0.1) sits far inside every level's radius: accuracy must
        # reach 0.99 for all six levels
        cfg = SimConfig(scheme="proposed", channel="awgn", sweep=(6.0,),
                        trials_per_point=60_000, master_seed=8,
                        report_levels=(1, 2, 3, 4, 5, 6))
        rows = run_simulation(cfg)
        assert len(rows) == 6
        for row in rows:
            assert row.gca >= 0.99, (row.level, row.gca)


class TestUniformWordOracle:
    def test_gca_at_p_half_matches_classification_rates(self):
        # at Eb/N0 = -inf the received word is uniform and independent of the
        # transmitted one, so per-level GCA must equal the rate at which the
        # decoder assigns uniform random words to that level
        from uepcode.codebook import LayeredCodebook

        cb = LayeredCodebook.load(golden_codebook_path())
        rng = np.random.default_rng(2024)
        words = rng.integers(0, 2, (100_000, cb.blocklength), dtype=np.uint8)
        levels, _, _, _ = classify_batch(words, cb)
        rates = np.bincount(levels, minlength=cb.num_levels + 1)[1:] / words.shape[0]

        cfg = SimConfig(scheme="proposed", channel="awgn", sweep=(float("-inf"), 300.0),
                        trials_per_point=60_000, master_seed=17,
                        report_levels=(1, 2, 3, 4, 5, 6))
        rows = [r for r in run_point(cfg, 0)]
        assert len(rows) == 6
        for row, rate in zip(rows, rates):
            sigma = math.sqrt(max(rate * (1 - rate), 1e-9) / row.trials)
            assert abs(row.gca - rate) < 4 * sigma + 1e-6


class TestDeterminism:
    def _cfg(self, **kw):
        base = dict(scheme="both", channel="awgn", sweep=(0.0, 2.0),
                    trials_per_point=12_000, master_seed=11)
        base.update(kw)
        return SimConfig(**base)

    def test_repeat_runs_byte_identical(self):
        a = rows_to_csv(run_simulation(self._cfg()))
        b = rows_to_csv(run_simulation(self._cfg()))
        assert a == b

    def test_worker_count_invariance(self):
        serial = rows_to_csv(run_simulation(self._cfg(), workers=1))
        parallel = rows_to_csv(run_simulation(self._cfg(), workers=2))
        assert serial == parallel

    def test_seed_changes_results(self):
        a = rows_to_csv(run_simulation(self._cfg()))
        b = rows_to_csv(run_simulation(self._cfg(master_seed=12)))
        assert a != b


class TestCsvShape:
    def test_header_and_completeness(self, tmp_path):
        cfg = SimConfig(scheme="both", channel="awgn", sweep=(0.0, 4.0),
                        trials_per_point=2000, master_seed=1,
                        report_levels=(1, 2, 3, 4, 5, 6))
        rows = run_simulation(cfg)
        text = rows_to_csv(rows)
        lines = text.strip().split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        combos = {(r.scheme, r.param, r.level) for r in rows}
        assert len(combos) == len(rows) == 2 * 2 * 6
        per_point = {}
        for r in rows:
            per_point.setdefault((r.scheme, r.param), 0)
            per_point[(r.scheme, r.param)] += r.trials
        assert all(v == 2000 for v in per_point.values())

        out = tmp_path / "rows.csv"
        write_csv(rows, out)
        assert out.read_text() == text

    def test_counts_consistent(self):
        cfg = SimConfig(scheme="baseline", channel="vlc", sweep=(0.3,),
                        trials_per_point=4000, master_seed=9, vlc_noise_sigma=0.3)
        rows = run_simulation(cfg)
        for r in rows:
            assert 0 <= r.bit_errors <= r.bit_count
            assert 0 <= r.class_hits <= r.trials
            assert 0.0 <= r.ber <= 1.0 and 0.0 <= r.gca <= 1.0
            assert r.bit_count == r.trials * 3  # eight messages per level


class TestZeroTrialLevels:
    def test_rows_omitted_with_warning(self, caplog):
        # one trial cannot cover three reported levels: the empty ones are
        # dropped from the CSV rather than divided by zero
        cfg = SimConfig(scheme="proposed", channel="awgn", sweep=(300.0,),
                        trials_per_point=1, master_seed=2)
        with caplog.at_level("WARNING", logger="uepcode.sim"):
            rows = run_simulation(cfg)
        assert len(rows) < 3
        assert any("row omitted" in rec.message for rec in caplog.records)


class TestInvalidCodebookRefused:
    def test_corrupted_codebook_rejected(self, tmp_path):
        lines = open(golden_codebook_path()).read().splitlines()
        # overwrite one level-6 word with a level-1 word, breaking separation
        first_word = lines[2]
        lines[-1] = first_word[:-1] + ("1" if first_word[-1] == "0" else "0")
        bad = tmp_path / "bad.txt"
        bad.write_text("\n".join(lines) + "\n")
        cfg = SimConfig(scheme="proposed", channel="awgn", sweep=(0.0,),
                        trials_per_point=10, master_seed=1, codebook_path=str(bad))
        with pytest.raises(UepError, match="refusing"):
            run_simulation(cfg)
