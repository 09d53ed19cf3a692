import pytest

from uepcode.configfile import construction_config_from, parse_config, sim_config_from
from uepcode.errors import ConfigError


def write(tmp_path, text):
    path = tmp_path / "test.cfg"
    path.write_text(text)
    return path


class TestParsing:
    def test_basic_parse(self, tmp_path):
        cfg = parse_config(write(tmp_path, """
# comment
sim.scheme = proposed

sim.trials_per_point = 500   # trailing comment
"""))
        assert cfg.get_str("sim.scheme") == "proposed"
        assert cfg.get_int("sim.trials_per_point") == 500
        assert cfg.get_str("missing", "fallback") == "fallback"

    def test_missing_equals_cites_line(self, tmp_path):
        path = write(tmp_path, "sim.scheme proposed\n")
        with pytest.raises(ConfigError) as err:
            parse_config(path)
        assert err.value.line == 1 and "key = value" in str(err.value)

    def test_duplicate_key_rejected(self, tmp_path):
        path = write(tmp_path, "a.b = 1\na.b = 2\n")
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config(path)

    def test_typed_errors_cite_line(self, tmp_path):
        cfg = parse_config(write(tmp_path, "\n\nsim.trials_per_point = many\n"))
        with pytest.raises(ConfigError) as err:
            cfg.get_int("sim.trials_per_point")
        assert err.value.line == 3

    def test_list_accessors(self, tmp_path):
        cfg = parse_config(write(tmp_path, "awgn.ebn0_db_list = -2, 0, 2.5\nsim.levels = A, D, F\n"))
        assert cfg.get_floats("awgn.ebn0_db_list") == (-2.0, 0.0, 2.5)
        assert cfg.get_levels("sim.levels") == (1, 4, 6)


class TestConstructionConfig:
    def test_defaults(self, tmp_path):
        cfg = construction_config_from(parse_config(write(tmp_path, "")))
        assert cfg.blocklength == 45
        assert tuple(s.target_t for s in cfg.level_specs) == (1, 1, 2, 3, 5, 7)
        assert cfg.candidate_order == "random"

    def test_explicit_values_and_overrides(self, tmp_path):
        cfg = construction_config_from(parse_config(write(tmp_path, """
build.blocklength = 16
build.t = 1, 2
build.sizes = 3, 2
build.policy = gray-code
build.seed = 99
build.budget = 1000
build.inter_min_1_2 = 9
""")))
        assert cfg.blocklength == 16
        assert cfg.seed == 99 and cfg.max_candidates == 1000
        assert cfg.inter_min_overrides == ((1, 2, 9),)

    def test_cli_overrides_win(self, tmp_path):
        cfg = construction_config_from(
            parse_config(write(tmp_path, "build.seed = 1\nbuild.budget = 10\n")),
            seed_override=5, budget_override=20)
        assert cfg.seed == 5 and cfg.max_candidates == 20

    def test_malformed_override_key(self, tmp_path):
        with pytest.raises(ConfigError, match="inter_min"):
            construction_config_from(parse_config(write(tmp_path, "build.inter_min_x = 3\n")))

    def test_invalid_parameters_become_config_errors(self, tmp_path):
        with pytest.raises(ConfigError, match="invalid construction"):
            construction_config_from(parse_config(write(tmp_path, "build.t = 2, 1\n")))


class TestSimConfig:
    def test_awgn_sweep_selected(self, tmp_path):
        cfg = sim_config_from(parse_config(write(tmp_path, """
sim.channel = awgn
awgn.ebn0_db_list = -4, 0, 4
vlc.h_list = 0.1, 0.2
""")))
        assert cfg.channel == "awgn" and cfg.sweep == (-4.0, 0.0, 4.0)

    def test_vlc_sweep_selected(self, tmp_path):
        cfg = sim_config_from(parse_config(write(tmp_path, """
sim.channel = vlc
vlc.h_list = 0.1, 0.2
vlc.noise_sigma = 0.3
""")))
        assert cfg.channel == "vlc" and cfg.sweep == (0.1, 0.2)
        assert cfg.vlc_noise_sigma == 0.3

    def test_bad_channel(self, tmp_path):
        with pytest.raises(ConfigError, match="sim.channel"):
            sim_config_from(parse_config(write(tmp_path, "sim.channel = fiber\n")))

    def test_seed_override(self, tmp_path):
        cfg = sim_config_from(parse_config(write(tmp_path, "sim.master_seed = 4\n")),
                              seed_override=9)
        assert cfg.master_seed == 9

    def test_invalid_values_become_config_errors(self, tmp_path):
        with pytest.raises(ConfigError, match="invalid simulation"):
            sim_config_from(parse_config(write(tmp_path, "sim.scheme = nope\n")))

    def test_baseline_keys(self, tmp_path):
        cfg = sim_config_from(parse_config(write(tmp_path, """
baseline.t_map = 1, 2, 3
baseline.indicator_seed = 17
""")))
        assert cfg.baseline_t_map == (1, 2, 3)
        assert cfg.baseline_indicator_seed == 17
