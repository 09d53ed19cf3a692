import numpy as np
import pytest

from uepcode.codebook import LayeredCodebook, LevelSpec, golden_codebook_path


@pytest.fixture(scope="session")
def golden_cb() -> LayeredCodebook:
    return LayeredCodebook.load(golden_codebook_path())


@pytest.fixture(scope="session")
def two_singleton_cb() -> LayeredCodebook:
    """The n=7 repetition-style pair used throughout the decoder checks."""
    return LayeredCodebook(
        [["0000000"], ["1111111"]],
        [LevelSpec(1, 3, 1), LevelSpec(2, 3, 1)],
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
