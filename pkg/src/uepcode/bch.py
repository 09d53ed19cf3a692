"""Binary BCH codes of length 31 over GF(2^5).

The narrow-sense family used by the tag-based baseline:
(31,26,t=1), (31,21,t=2), (31,16,t=3), (31,11,t=5), (31,6,t=7).

Generator polynomials are built from cyclotomic cosets at import time rather
than hardcoded, and encoding is systematic (message bits first, polynomial
remainder as parity). Decoding is classic syndrome / Berlekamp-Massey /
Chien search; an uncorrectable word is flagged, never silently mangled.

Binary polynomials are Python ints, bit k holding the coefficient of x^k.
Codeword bit arrays are most-significant coefficient first, so array
position j carries the coefficient of x^(n-1-j).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bitvec import as_bit_vector, int_to_bits

__all__ = ["BchCode", "bch_encode", "bch_decode", "BCH31_T_TO_K", "generator_polynomial"]

N = 31
M = 5
PRIMITIVE_POLY = 0b100101  # x^5 + x^2 + 1

BCH31_T_TO_K = {1: 26, 2: 21, 3: 16, 5: 11, 7: 6}

# -- GF(2^5) tables -----------------------------------------------------------

_EXP = [0] * (2 * N)
_LOG = [0] * (N + 1)
_x = 1
for _i in range(N):
    _EXP[_i] = _x
    _LOG[_x] = _i
    _x <<= 1
    if _x & (1 << M):
        _x ^= PRIMITIVE_POLY
for _i in range(N, 2 * N):
    _EXP[_i] = _EXP[_i - N]


def _gf_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _EXP[_LOG[a] + _LOG[b]]


def _gf_div(a: int, b: int) -> int:
    if a == 0:
        return 0
    return _EXP[(_LOG[a] - _LOG[b]) % N]


# -- binary polynomial arithmetic (ints, bit k = coeff of x^k) ----------------

def _poly_mul_bin(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _poly_mod_bin(a: int, mod: int) -> int:
    dm = mod.bit_length()
    while a.bit_length() >= dm:
        a ^= mod << (a.bit_length() - dm)
    return a


def _cyclotomic_coset(s: int) -> tuple[int, ...]:
    coset = []
    v = s
    while v not in coset:
        coset.append(v)
        v = (v * 2) % N
    return tuple(sorted(coset))


def _minimal_polynomial(coset) -> int:
    # product over the coset of (x - alpha^e), computed over GF(2^5);
    # the result always collapses to a binary polynomial
    coeffs = [1]  # coeffs[k] = coefficient of x^k, highest degree last
    for e in coset:
        root = _EXP[e % N]
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] ^= c
            nxt[k] ^= _gf_mul(c, root)
        coeffs = nxt
    out = 0
    for k, c in enumerate(coeffs):
        if c not in (0, 1):
            raise AssertionError("minimal polynomial is not binary")
        if c:
            out |= 1 << k
    return out


def generator_polynomial(t: int) -> int:
    """lcm of the minimal polynomials of alpha^1 .. alpha^2t."""
    cosets = set()
    for s in range(1, 2 * t + 1):
        cosets.add(_cyclotomic_coset(s))
    g = 1
    for coset in sorted(cosets):
        g = _poly_mul_bin(g, _minimal_polynomial(coset))
    return g


@dataclass(frozen=True)
class BchCode:
    """One member of the length-31 narrow-sense family, ready to encode/decode."""

    t: int
    k: int = 0
    generator: int = 0
    _synd_tab: tuple = field(default=(), repr=False, compare=False)
    _chien_tab: tuple = field(default=(), repr=False, compare=False)

    @property
    def n(self) -> int:
        return N

    @classmethod
    def for_t(cls, t: int) -> "BchCode":
        if t not in BCH31_T_TO_K:
            raise ValueError(f"no length-31 BCH member with t={t}; choose from {sorted(BCH31_T_TO_K)}")
        k = BCH31_T_TO_K[t]
        g = generator_polynomial(t)
        if g.bit_length() - 1 != N - k:
            raise AssertionError(f"generator degree {g.bit_length() - 1} != {N - k}")
        # synd_tab[i][j]: contribution of codeword position j to syndrome S_{i+1}
        synd = tuple(
            tuple(_EXP[((i + 1) * (N - 1 - j)) % N] for j in range(N))
            for i in range(2 * t)
        )
        # chien_tab[e][d]: alpha^(-e*d), used to evaluate the locator at alpha^-e
        chien = tuple(
            tuple(_EXP[(-e * d) % N] for d in range(t + 1))
            for e in range(N)
        )
        return cls(t=t, k=k, generator=g, _synd_tab=synd, _chien_tab=chien)

    # -- integer fast path -----------------------------------------------------

    def encode_int(self, message: int) -> int:
        if message >> self.k:
            raise ValueError(f"message does not fit in k={self.k} bits")
        shifted = message << (N - self.k)
        return shifted ^ _poly_mod_bin(shifted, self.generator)

    def decode_int(self, received: int) -> tuple[int, bool]:
        """Correct up to t errors; returns (message, ok).

        On failure ok is False and the raw systematic bits are returned
        best-effort.
        """
        synd_tab = self._synd_tab
        two_t = 2 * self.t
        S = [0] * two_t
        v = received
        while v:
            low = v & -v
            j = N - low.bit_length()  # array position of this set bit
            for i in range(two_t):
                S[i] ^= synd_tab[i][j]
            v ^= low
        if not any(S):
            return received >> (N - self.k), True

        # Berlekamp-Massey over GF(2^5)
        C = [0] * (two_t + 1)
        B = [0] * (two_t + 1)
        C[0] = B[0] = 1
        L, mshift, b = 0, 1, 1
        for i in range(two_t):
            d = S[i]
            for j in range(1, L + 1):
                if C[j] and S[i - j]:
                    d ^= _EXP[_LOG[C[j]] + _LOG[S[i - j]]]
            if d == 0:
                mshift += 1
                continue
            coef = _gf_div(d, b)
            if 2 * L <= i:
                T = C[:]
                for j in range(0, two_t + 1 - mshift):
                    if B[j]:
                        C[j + mshift] ^= _EXP[_LOG[coef] + _LOG[B[j]]]
                L = i + 1 - L
                B = T
                b = d
                mshift = 1
            else:
                for j in range(0, two_t + 1 - mshift):
                    if B[j]:
                        C[j + mshift] ^= _EXP[_LOG[coef] + _LOG[B[j]]]
                mshift += 1

        raw = received >> (N - self.k)
        if L > self.t:
            return raw, False

        # Chien search: error at position j iff locator vanishes at alpha^-(n-1-j)
        chien = self._chien_tab
        flips = 0
        roots = 0
        for e in range(N):
            row = chien[e]
            acc = 1
            for d in range(1, L + 1):
                if C[d]:
                    acc ^= _EXP[_LOG[C[d]] + _LOG[row[d]]]
            if acc == 0:
                roots += 1
                flips |= 1 << e  # x^e corresponds to array position n-1-e
        if roots != L:
            return raw, False
        corrected = received ^ flips
        return corrected >> (N - self.k), True


def bch_encode(msg, code: BchCode) -> np.ndarray:
    """Systematic encode of a k-bit message into a 31-bit codeword."""
    bits = as_bit_vector(msg, name="message")
    if bits.size != code.k:
        raise ValueError(f"message length {bits.size} != k={code.k}")
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return int_to_bits(code.encode_int(value), N)


def bch_decode(r, code: BchCode) -> tuple[np.ndarray, bool]:
    """Decode a 31-bit received word; returns (message bits, ok flag)."""
    bits = as_bit_vector(r, name="received")
    if bits.size != N:
        raise ValueError(f"received length {bits.size} != {N}")
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    msg, ok = code.decode_int(value)
    return int_to_bits(msg, code.k), ok
