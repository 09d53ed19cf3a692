"""Command-line front door.

Subcommands: build, verify, check-theorems, simulate, baseline-info.
Exit status is the contract for CI: 0 success, 1 verification or theorem
failure, 2 usage/config error, 3 infeasible construction. Output files are
written atomically. The UEP_LOG environment variable (DEBUG/INFO/WARNING/
ERROR) controls verbosity.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys

from .baseline import build_baseline
from .bitvec import bits_to_string
from .codebook import LayeredCodebook, level_label, verify_codebook
from .configfile import construction_config_from, parse_config, sim_config_from
from .construct import InfeasibilityReport, build, default_config
from .decoder import theorem1_check, theorem2_check
from .errors import CodebookFormatError, ConfigError
from .sim import run_simulation, write_csv

log = logging.getLogger("uepcode")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3


def _distance_summary(cb: LayeredCodebook) -> str:
    lines = ["level  t  size  intra_dmin"]
    for spec, d in zip(cb.level_specs, cb.intra_dmin):
        lines.append(f"{spec.label:>5}  {spec.target_t}  {spec.group_size:>4}  {d if d is not None else '-':>10}")
    lines.append("")
    lines.append("inter-level distances d_pq:")
    header = "     " + " ".join(f"{level_label(q):>3}" for q in range(1, cb.num_levels + 1))
    lines.append(header)
    for p in range(1, cb.num_levels + 1):
        cells = " ".join(
            f"{int(cb.inter_d[p - 1, q - 1]) if p != q else '-':>3}"
            for q in range(1, cb.num_levels + 1)
        )
        lines.append(f"{level_label(p):>4} {cells}")
    return "\n".join(lines)


def _cmd_build(args) -> int:
    if args.config:
        cfg = construction_config_from(parse_config(args.config),
                                       seed_override=args.seed,
                                       budget_override=args.budget)
    else:
        cfg = default_config()
        if args.seed is not None:
            cfg = dataclasses.replace(cfg, seed=args.seed)
        if args.budget is not None:
            cfg = dataclasses.replace(cfg, max_candidates=args.budget)
    result = build(cfg)
    if isinstance(result, InfeasibilityReport):
        print(result, file=sys.stderr)
        return EXIT_INFEASIBLE
    report = verify_codebook(result)
    if not report.passed:
        print(report, file=sys.stderr)
        return EXIT_FAIL
    out = args.out or "codebook.txt"
    result.save(out)
    print(f"wrote {out}")
    print(_distance_summary(result))
    return EXIT_OK


def _cmd_verify(args) -> int:
    cb = LayeredCodebook.load(args.codebook)
    report = verify_codebook(cb)
    print(report)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_check_theorems(args) -> int:
    cb = LayeredCodebook.load(args.codebook)
    status = EXIT_OK
    try:
        rep1 = theorem1_check(cb, max_weight_exhaustive=args.t1_max_weight)
        print(f"bounded-error classification check: {rep1}")
        if not rep1.passed:
            status = EXIT_FAIL
    except ValueError as exc:
        print(f"bounded-error classification check: precondition failed: {exc}", file=sys.stderr)
        status = EXIT_FAIL
    try:
        rep2 = theorem2_check(cb, trials=args.t2_trials, seed=args.seed or 0)
        print(f"false-selection check: {rep2}")
        if not rep2.passed:
            status = EXIT_FAIL
    except ValueError as exc:
        print(f"false-selection check: precondition failed: {exc}", file=sys.stderr)
        status = EXIT_FAIL
    return status


def _cmd_simulate(args) -> int:
    cfg = sim_config_from(parse_config(args.config), seed_override=args.seed)
    rows = run_simulation(cfg, workers=args.workers)
    out = args.out or "sim_results.csv"
    write_csv(rows, out)
    if cfg.channel == "vlc":
        meta = f"channel vlc: noise_sigma={cfg.vlc_noise_sigma} threshold={cfg.vlc_threshold}"
    else:
        meta = "channel awgn: hard-decision BSC, Eb/N0 per coded bit"
    print(f"wrote {out} ({len(rows)} rows; scheme={cfg.scheme}; {meta}; "
          f"message-bit BER; master_seed={cfg.master_seed})")
    return EXIT_OK


def _cmd_baseline_info(args) -> int:
    if args.config:
        cfg = sim_config_from(parse_config(args.config))
        sizes = (8,) * len(cfg.baseline_t_map)
        bcb = build_baseline(sizes, t_map=cfg.baseline_t_map,
                             indicator_seed=cfg.baseline_indicator_seed)
    else:
        bcb = build_baseline((8,) * 6)
    print(f"indicator words (length {bcb.indicator.words.shape[1]}, "
          f"min pairwise distance d_ind={bcb.indicator.d_ind}):")
    for x, word in enumerate(bcb.indicator.words, start=1):
        print(f"  level {level_label(x)}: {bits_to_string(word)}")
    print("BCH members per level:")
    for x, (t, code) in enumerate(zip(bcb.t_map, bcb.codes), start=1):
        print(f"  level {level_label(x)}: BCH(31,{code.k}) t={t} generator=0b{code.generator:b}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uepcode",
        description="Layered unequal-error-protection codebooks: construction, "
                    "verification, decoding guarantees, and link simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a codebook and write the codebook file")
    p.add_argument("--config", help="key=value config file (build.* section)")
    p.add_argument("--out", help="output codebook path (default codebook.txt)")
    p.add_argument("--seed", type=int, help="override the construction seed")
    p.add_argument("--budget", type=int, help="cap candidates examined per slot")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="check every distance constraint of a codebook file")
    p.add_argument("codebook", help="codebook file to verify")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check-theorems", help="run the decoder guarantee checks")
    p.add_argument("codebook", help="codebook file to check")
    p.add_argument("--t1-max-weight", type=int, default=2,
                   help="exhaustive error-weight cap for the bounded-error check")
    p.add_argument("--t2-trials", type=int, default=100_000,
                   help="random trials for the false-selection check")
    p.add_argument("--seed", type=int, help="seed for the false-selection check")
    p.set_defaults(func=_cmd_check_theorems)

    p = sub.add_parser("simulate", help="run the Monte Carlo sweep and write CSV")
    p.add_argument("--config", required=True, help="key=value config file (sim.* section)")
    p.add_argument("--out", help="output CSV path (default sim_results.csv)")
    p.add_argument("--seed", type=int, help="override sim.master_seed")
    p.add_argument("--workers", type=int, default=1, help="parallel workers (results identical for any count)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("baseline-info", help="print the indicator book and BCH parameters")
    p.add_argument("--config", help="key=value config file (baseline.* section)")
    p.set_defaults(func=_cmd_baseline_info)

    return parser


def main(argv=None) -> int:
    level_name = os.environ.get("UEP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level_name, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, CodebookFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
