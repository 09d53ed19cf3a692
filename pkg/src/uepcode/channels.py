"""Hard-decision channel models.

AWGN: antipodal signaling with a zero-threshold hard decision collapses to a
binary symmetric channel whose crossover probability is the Gaussian tail
Q(sqrt(2 Eb/N0)); the Eb/N0 here is per transmitted (coded) bit, which keeps
the two simulated schemes energy-matched at the channel since they share one
blocklength.

VLC-ISI: each received intensity picks up a fraction h of both neighbors,
y(t) = h*x(t-1) + x(t) + h*x(t+1), with zero guard bits beyond the frame
(idle optical channel between frames). Optional Gaussian intensity noise is
added before thresholding. A sample at exactly the threshold decides 1, so
with sigma=0 the "101" corruption pattern appears exactly from h = 0.25 up.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .bitvec import as_bit_matrix

__all__ = ["AwgnChannel", "VlcIsiChannel", "transmit_awgn", "transmit_vlc", "bsc_crossover"]


def bsc_crossover(ebn0_db: float) -> float:
    """Crossover probability of hard-decision antipodal signaling over AWGN."""
    if math.isnan(ebn0_db):
        raise ValueError("ebn0_db must not be NaN")
    ebn0 = 10.0 ** (ebn0_db / 10.0)
    # Q(x) = erfc(x / sqrt(2)) / 2 evaluated at x = sqrt(2 * ebn0)
    return 0.5 * math.erfc(math.sqrt(ebn0))


def _rows(bits) -> tuple[np.ndarray, bool]:
    arr = np.asarray(bits)
    if arr.ndim == 1:
        return as_bit_matrix(arr[None, :], name="bits"), True
    return as_bit_matrix(arr, name="bits"), False


class AwgnChannel(BaseEstimator, TransformerMixin):
    """BSC-equivalent hard-decision AWGN channel at a fixed Eb/N0.

    ``transmit`` is the pure form (explicit generator); ``transform`` keeps a
    generator seeded from random_state for pipeline use and therefore
    advances internal state between calls.
    """

    def __init__(self, ebn0_db: float = 0.0, random_state=None):
        self.ebn0_db = ebn0_db
        self.random_state = random_state

    @property
    def crossover_p(self) -> float:
        return bsc_crossover(self.ebn0_db)

    def transmit(self, bits, rng: np.random.Generator) -> np.ndarray:
        """Flip each bit independently with the crossover probability."""
        p = self.crossover_p
        mat, single = _rows(bits)
        if p == 0.0:
            out = mat.copy()
        else:
            flips = rng.random(mat.shape) < p
            out = mat ^ flips.astype(np.uint8)
        return out[0] if single else out

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "_rng"):
            self._rng = np.random.default_rng(self.random_state)
        return self.transmit(X, self._rng)


class VlcIsiChannel(BaseEstimator, TransformerMixin):
    """Three-tap visible-light ISI channel with hard decision.

    h is the interference coefficient (0 <= h < 0.5), noise_sigma the
    standard deviation of additive Gaussian intensity noise (0 disables),
    threshold the decision level, strictly inside (0, 1).
    """

    def __init__(self, h: float = 0.1, noise_sigma: float = 0.0,
                 threshold: float = 0.5, random_state=None):
        self.h = h
        self.noise_sigma = noise_sigma
        self.threshold = threshold
        self.random_state = random_state

    def _validate(self):
        if not 0.0 <= self.h < 0.5:
            raise ValueError(f"interference coefficient must satisfy 0 <= h < 0.5, got {self.h}")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must lie strictly in (0, 1), got {self.threshold}")
        if self.noise_sigma < 0.0:
            raise ValueError(f"noise_sigma must be >= 0, got {self.noise_sigma}")

    def intensities(self, bits) -> np.ndarray:
        """Noise-free received intensities y(t), guard bits zero."""
        self._validate()
        mat, single = _rows(bits)
        x = mat.astype(np.float64)
        y = x.copy()
        y[:, 1:] += self.h * x[:, :-1]
        y[:, :-1] += self.h * x[:, 1:]
        return y[0] if single else y

    def transmit(self, bits, rng: np.random.Generator) -> np.ndarray:
        mat, single = _rows(bits)
        y = self.intensities(mat)
        if self.noise_sigma > 0.0:
            y = y + rng.normal(0.0, self.noise_sigma, size=y.shape)
        out = (y >= self.threshold).astype(np.uint8)
        return out[0] if single else out

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "_rng"):
            self._rng = np.random.default_rng(self.random_state)
        return self.transmit(X, self._rng)


def transmit_awgn(c, ch: AwgnChannel, rng: np.random.Generator) -> np.ndarray:
    """Functional form of :meth:`AwgnChannel.transmit`."""
    return ch.transmit(c, rng)


def transmit_vlc(c, ch: VlcIsiChannel, rng: np.random.Generator) -> np.ndarray:
    """Functional form of :meth:`VlcIsiChannel.transmit`."""
    return ch.transmit(c, rng)
