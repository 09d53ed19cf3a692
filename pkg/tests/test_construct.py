import itertools

import numpy as np
import pytest
from sklearn.base import clone

from uepcode.bitvec import bits_to_string
from uepcode.codebook import golden_codebook_path, verify_codebook
from uepcode.construct import (
    CodebookBuilder,
    ConstructionConfig,
    InfeasibilityReport,
    build,
    default_config,
    enumerate_candidates,
)
from uepcode.errors import InfeasibleConstructionError


def exhaustive_two_level_feasible(n, t1, n1, t2, n2):
    """Brute-force oracle: does ANY codeword assignment satisfy the build rules?

    Rules mirrored from the constructor: intra distance >= 2t+1 inside each
    group, cross distance >= max(2t1+1, 2t2+1) between groups. Enumerates
    every split of {0,1}^n; feasible iff some assignment works.
    """
    words = list(range(2 ** n))
    need_intra1, need_intra2 = 2 * t1 + 1, 2 * t2 + 1
    need_cross = max(need_intra1, need_intra2)

    def dist(a, b):
        return (a ^ b).bit_count()

    for g2 in itertools.combinations(words, n2):
        if any(dist(a, b) < need_intra2 for a, b in itertools.combinations(g2, 2)):
            continue
        remaining = [w for w in words if all(dist(w, v) >= need_cross for v in g2)]
        for g1 in itertools.combinations(remaining, n1):
            if all(dist(a, b) >= need_intra1 for a, b in itertools.combinations(g1, 2)):
                return True
    return False


class TestEnumerateCandidates:
    def test_lexicographic_n2(self):
        got = [bits_to_string(v) for v in enumerate_candidates(2, "lexicographic")]
        assert got == ["00", "01", "10", "11"]

    def test_gray_n2(self):
        got = [bits_to_string(v) for v in enumerate_candidates(2, "gray-code")]
        assert got == ["00", "01", "11", "10"]

    def test_exhaustive_policies_cover_space_once(self):
        for policy in ("lexicographic", "gray-code"):
            got = [bits_to_string(v) for v in enumerate_candidates(4, policy)]
            assert len(got) == 16 and len(set(got)) == 16

    def test_seeded_random_first_draws_distinct(self):
        stream = enumerate_candidates(45, "random", seed=1)
        first = [bits_to_string(next(stream)) for _ in range(3)]
        assert len(set(first)) == 3
        assert all(len(w) == 45 for w in first)

    def test_random_is_deterministic_per_seed(self):
        a = [bits_to_string(v) for v, _ in zip(enumerate_candidates(20, "random", seed=9), range(10))]
        b = [bits_to_string(v) for v, _ in zip(enumerate_candidates(20, "random", seed=9), range(10))]
        assert a == b

    def test_exhaustive_over_64_bits_rejected(self):
        with pytest.raises(ValueError, match="random"):
            enumerate_candidates(65, "lexicographic")

    def test_unknown_policy(self):
        with pytest.raises(ValueError, match="unknown"):
            enumerate_candidates(4, "spiral")


class TestConfigValidation:
    def test_too_many_codewords(self):
        with pytest.raises(ValueError, match="cannot fit"):
            ConstructionConfig.make(2, (0,), (5,))

    def test_non_monotone_t(self):
        with pytest.raises(ValueError, match="non-decreasing"):
            ConstructionConfig.make(8, (2, 1), (1, 1))

    def test_bad_policy(self):
        with pytest.raises(ValueError, match="candidate_order"):
            ConstructionConfig.make(8, (1,), (2,), candidate_order="bogus")

    def test_override_pair_range(self):
        with pytest.raises(ValueError, match="override"):
            ConstructionConfig.make(8, (1,), (2,), inter_min_overrides=((1, 3, 4),))


class TestBuild:
    def test_n3_single_level_complementary_pair(self):
        cfg = ConstructionConfig.make(3, (1,), (2,), candidate_order="lexicographic")
        cb = build(cfg)
        words = [bits_to_string(w) for w in cb.groups[0]]
        assert words == ["000", "111"]

    def test_n7_two_level_infeasible_matches_oracle(self):
        # oracle first: no assignment at all satisfies the constraints
        assert not exhaustive_two_level_feasible(7, t1=1, n1=2, t2=3, n2=1)
        cfg = ConstructionConfig.make(7, (1, 3), (2, 1), candidate_order="lexicographic")
        result = build(cfg)
        assert isinstance(result, InfeasibilityReport)
        assert result.space_exhausted
        assert result.level_index == 1

    def test_feasible_two_level_matches_oracle(self):
        assert exhaustive_two_level_feasible(7, t1=1, n1=2, t2=1, n2=2)
        cfg = ConstructionConfig.make(7, (1, 1), (2, 2), candidate_order="lexicographic")
        cb = build(cfg)
        assert verify_codebook(cb).passed

    def test_determinism_small(self):
        cfg = ConstructionConfig.make(10, (1, 2), (3, 2), candidate_order="random", seed=77)
        a, b = build(cfg), build(cfg)
        assert a.dumps() == b.dumps()

    def test_determinism_default(self):
        assert build(default_config()).dumps() == build(default_config()).dumps()

    def test_golden_fixture_is_default_build(self):
        built = build(default_config())
        with open(golden_codebook_path(), "r", encoding="utf-8") as fh:
            assert built.dumps() == fh.read()

    def test_built_codebooks_pass_independent_verify(self):
        configs = [
            ConstructionConfig.make(9, (0, 1), (2, 2), candidate_order="gray-code"),
            ConstructionConfig.make(12, (1, 1, 2), (2, 2, 2), candidate_order="random", seed=3),
            ConstructionConfig.make(15, (1, 3), (4, 2), candidate_order="random", seed=5),
        ]
        for cfg in configs:
            cb = build(cfg)
            assert not isinstance(cb, InfeasibilityReport), cfg
            report = verify_codebook(cb)
            assert report.passed, f"{cfg}: {report}"

    def test_intra_dmin_pinned_to_design_value(self):
        cfg = ConstructionConfig.make(15, (1, 2), (3, 3), candidate_order="random", seed=6)
        cb = build(cfg)
        assert cb.intra_dmin == (3, 5)

    def test_monotone_hardness_small(self):
        base = dict(blocklength=11, target_t=(1, 2), group_sizes=(3, 2),
                    candidate_order="random", seed=21)
        assert not isinstance(build(ConstructionConfig.make(**base)), InfeasibilityReport)
        for idx in range(2):
            sizes = list(base["group_sizes"])
            sizes[idx] -= 1
            cfg = ConstructionConfig.make(11, base["target_t"], tuple(sizes),
                                          candidate_order="random", seed=21)
            assert not isinstance(build(cfg), InfeasibilityReport), f"shrunk group {idx}"

    def test_budget_exhaustion_reports_slot(self):
        cfg = ConstructionConfig.make(21, (5,), (8,), candidate_order="random",
                                      seed=1, max_candidates=5)
        result = build(cfg)
        assert isinstance(result, InfeasibilityReport)
        assert not result.space_exhausted
        assert result.candidates_examined <= 5
        assert "budget" in str(result)

    def test_inter_min_override_enforced(self):
        cfg = ConstructionConfig.make(16, (1, 1), (3, 3), candidate_order="random",
                                      seed=4, inter_min_overrides=((1, 2, 9),))
        cb = build(cfg)
        assert cb.inter_d[0, 1] >= 9

    def test_singleton_levels_use_design_floor_for_cross(self):
        # two singleton groups with t=(1,3): cross distance must reach 7
        cfg = ConstructionConfig.make(9, (1, 3), (1, 1), candidate_order="lexicographic")
        cb = build(cfg)
        assert cb.inter_d[0, 1] >= 7


class TestCodebookBuilderEstimator:
    def test_fit_exposes_codebook(self):
        est = CodebookBuilder(blocklength=10, target_t=(1, 1), group_sizes=(2, 2),
                              candidate_order="random", seed=2)
        est.fit()
        assert verify_codebook(est.codebook_).passed

    def test_get_set_params_and_clone(self):
        est = CodebookBuilder(blocklength=12, seed=9)
        params = est.get_params()
        assert params["blocklength"] == 12 and params["seed"] == 9
        est2 = clone(est).set_params(seed=10)
        assert est2.get_params()["seed"] == 10 and est.get_params()["seed"] == 9

    def test_infeasible_raises(self):
        est = CodebookBuilder(blocklength=7, target_t=(1, 3), group_sizes=(2, 1),
                              candidate_order="lexicographic")
        with pytest.raises(InfeasibleConstructionError):
            est.fit()
