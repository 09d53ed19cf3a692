"""Tag-free layered unequal-error-protection codes.

Construction of layered codebooks with prescribed intra-level and
inter-level Hamming-distance structure, nearest-group decoding with
executable correctness checks, a tag-based BCH baseline, and a seeded
Monte Carlo link simulator over hard-decision AWGN and VLC-ISI channels.
"""

from .baseline import (
    BaselineCodebook,
    BaselineDecodeResult,
    IndicatorBook,
    baseline_decode,
    baseline_encode,
    build_baseline,
    build_indicator_book,
)
from .bch import BchCode, bch_decode, bch_encode
from .bitvec import correction_radius, hamming_distance, hamming_weight
from .channels import AwgnChannel, VlcIsiChannel, bsc_crossover, transmit_awgn, transmit_vlc
from .codebook import (
    LayeredCodebook,
    LevelSpec,
    VerificationReport,
    golden_codebook_path,
    inter_level_distance,
    intra_group_dmin,
    level_index_from_label,
    level_label,
    verify_codebook,
)
from .construct import (
    CodebookBuilder,
    ConstructionConfig,
    InfeasibilityReport,
    build,
    default_config,
    enumerate_candidates,
)
from .decoder import (
    DecodeResult,
    NearestGroupDecoder,
    classify,
    classify_batch,
    group_min_distance,
    theorem1_check,
    theorem2_check,
)
from .errors import CodebookFormatError, ConfigError, InfeasibleConstructionError, UepError
from .sim import (
    SimConfig,
    SimRow,
    estimate_gca,
    run_point,
    run_simulation,
    wilson_interval,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AwgnChannel",
    "BaselineCodebook",
    "BaselineDecodeResult",
    "BchCode",
    "CodebookBuilder",
    "CodebookFormatError",
    "ConfigError",
    "ConstructionConfig",
    "DecodeResult",
    "IndicatorBook",
    "InfeasibilityReport",
    "InfeasibleConstructionError",
    "LayeredCodebook",
    "LevelSpec",
    "NearestGroupDecoder",
    "SimConfig",
    "SimRow",
    "UepError",
    "VerificationReport",
    "VlcIsiChannel",
    "baseline_decode",
    "baseline_encode",
    "bch_decode",
    "bch_encode",
    "bsc_crossover",
    "build",
    "build_baseline",
    "build_indicator_book",
    "classify",
    "classify_batch",
    "correction_radius",
    "default_config",
    "enumerate_candidates",
    "estimate_gca",
    "golden_codebook_path",
    "group_min_distance",
    "hamming_distance",
    "hamming_weight",
    "inter_level_distance",
    "intra_group_dmin",
    "level_index_from_label",
    "level_label",
    "run_point",
    "run_simulation",
    "theorem1_check",
    "theorem2_check",
    "transmit_awgn",
    "transmit_vlc",
    "verify_codebook",
    "wilson_interval",
    "write_csv",
]
