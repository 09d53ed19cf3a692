"""Plain-text key=value configuration files with section-prefixed keys.

Lines are `section.key = value`; blank lines and '#' comments are ignored.
Every parse failure reports the file and line number so the CLI can emit a
usable diagnostic and exit with the config-error status.

Sections in use: build.* (construction), sim.* (simulation control),
awgn.* / vlc.* (channel sweeps), baseline.* (tag-based scheme).
"""

from __future__ import annotations

from dataclasses import dataclass

from .codebook import level_index_from_label
from .construct import ConstructionConfig
from .errors import ConfigError
from .sim import SimConfig

__all__ = ["ConfigMap", "parse_config", "construction_config_from", "sim_config_from"]


@dataclass(frozen=True)
class _Entry:
    value: str
    line: int


class ConfigMap:
    """Parsed key=value file with typed accessors that cite line numbers."""

    def __init__(self, entries: dict[str, _Entry], path: str):
        self._entries = entries
        self.path = path

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def keys(self):
        return self._entries.keys()

    def line_of(self, key: str) -> int | None:
        e = self._entries.get(key)
        return e.line if e else None

    def get_str(self, key: str, default: str | None = None) -> str | None:
        e = self._entries.get(key)
        return e.value if e else default

    def _typed(self, key, default, convert, kind):
        e = self._entries.get(key)
        if e is None:
            return default
        try:
            return convert(e.value)
        except ValueError:
            raise ConfigError(f"key {key!r} expects {kind}, got {e.value!r}",
                              self.path, e.line) from None

    def get_int(self, key: str, default: int | None = None):
        return self._typed(key, default, lambda s: int(s, 0), "an integer")

    def get_float(self, key: str, default: float | None = None):
        return self._typed(key, default, float, "a number")

    def get_ints(self, key: str, default=None):
        return self._typed(
            key, default,
            lambda s: tuple(int(p.strip(), 0) for p in s.split(",") if p.strip()),
            "a comma-separated integer list",
        )

    def get_floats(self, key: str, default=None):
        return self._typed(
            key, default,
            lambda s: tuple(float(p.strip()) for p in s.split(",") if p.strip()),
            "a comma-separated number list",
        )

    def get_levels(self, key: str, default=None):
        return self._typed(
            key, default,
            lambda s: tuple(level_index_from_label(p.strip()) for p in s.split(",") if p.strip()),
            "a comma-separated level list such as A,D,F",
        )


def parse_config(path) -> ConfigMap:
    entries: dict[str, _Entry] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"expected 'key = value', got {line!r}", str(path), lineno)
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.split("#", 1)[0].strip()
            if not key:
                raise ConfigError("empty key", str(path), lineno)
            if key in entries:
                raise ConfigError(f"duplicate key {key!r} (first at line {entries[key].line})",
                                  str(path), lineno)
            entries[key] = _Entry(value=value, line=lineno)
    return ConfigMap(entries, str(path))


def construction_config_from(cfg: ConfigMap, seed_override: int | None = None,
                             budget_override: int | None = None) -> ConstructionConfig:
    target_t = cfg.get_ints("build.t", (1, 1, 2, 3, 5, 7))
    sizes = cfg.get_ints("build.sizes", tuple([8] * len(target_t)))
    overrides = []
    for key in sorted(cfg.keys()):
        if not key.startswith("build.inter_min_"):
            continue
        tail = key[len("build.inter_min_"):]
        parts = tail.split("_")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ConfigError(f"override key must look like build.inter_min_<p>_<q>, got {key!r}",
                              cfg.path, cfg.line_of(key))
        overrides.append((int(parts[0]), int(parts[1]), cfg.get_int(key)))
    try:
        return ConstructionConfig.make(
            blocklength=cfg.get_int("build.blocklength", 45),
            target_t=target_t,
            group_sizes=sizes,
            candidate_order=cfg.get_str("build.policy", "random"),
            seed=seed_override if seed_override is not None else cfg.get_int("build.seed", 2024),
            max_candidates=budget_override if budget_override is not None else cfg.get_int("build.budget", 2_000_000),
            inter_min_overrides=tuple(overrides),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid construction parameters: {exc}", cfg.path) from exc


def sim_config_from(cfg: ConfigMap, seed_override: int | None = None) -> SimConfig:
    channel = cfg.get_str("sim.channel", "awgn")
    if channel == "awgn":
        sweep = cfg.get_floats("awgn.ebn0_db_list", (0.0, 2.0, 4.0, 6.0))
    elif channel == "vlc":
        sweep = cfg.get_floats("vlc.h_list", (0.05, 0.15, 0.25, 0.35))
    else:
        raise ConfigError(f"sim.channel must be awgn or vlc, got {channel!r}",
                          cfg.path, cfg.line_of("sim.channel"))
    t_map = cfg.get_ints("baseline.t_map", (1, 1, 2, 3, 5, 7))
    try:
        return SimConfig(
            scheme=cfg.get_str("sim.scheme", "both"),
            channel=channel,
            sweep=sweep,
            trials_per_point=cfg.get_int("sim.trials_per_point", 200_000),
            master_seed=seed_override if seed_override is not None else cfg.get_int("sim.master_seed", 1),
            codebook_path=cfg.get_str("sim.codebook", ""),
            report_levels=cfg.get_levels("sim.levels", (1, 4, 6)),
            vlc_noise_sigma=cfg.get_float("vlc.noise_sigma", 0.1),
            vlc_threshold=cfg.get_float("vlc.threshold", 0.5),
            baseline_t_map=t_map,
            baseline_indicator_seed=cfg.get_int("baseline.indicator_seed", 11),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid simulation parameters: {exc}", cfg.path) from exc
