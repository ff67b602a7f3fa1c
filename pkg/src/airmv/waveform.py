"""Peak-to-mean envelope power of transmitted blocks and resource accounting.

Transform scalings are pinned so that the oversampled time signal carries
the same energy as the input block (unit-factor Parseval); only power
ratios enter the PMEPR, so the convention matters solely for test
determinism.
"""

from __future__ import annotations

import math

import numpy as np

from .encoding import Method

__all__ = [
    "dfts_ofdm_modulate",
    "ofdm_map_modulate",
    "pmepr",
    "resources_per_mv",
    "separation_resources",
]


def _as_block(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("expected a nonempty 1-D coefficient block")
    return c


def dfts_ofdm_modulate(coeffs, oversampling: int = 16) -> np.ndarray:
    """Spread the block with a full-size forward transform, map to
    contiguous bins of an oversampling*(K+1)-point inverse transform.

    With oversampling 1 this is an exact round trip of the input.
    """
    c = _as_block(coeffs)
    if oversampling < 1:
        raise ValueError("oversampling factor must be >= 1")
    n = c.size
    big = oversampling * n
    spectrum = np.zeros(big, dtype=complex)
    spectrum[:n] = np.fft.fft(c)
    return np.fft.ifft(spectrum) * math.sqrt(big / n)


def ofdm_map_modulate(coeffs, oversampling: int = 16) -> np.ndarray:
    """Place the block directly on contiguous subcarriers of an
    oversampling*(K+1)-point inverse transform."""
    c = _as_block(coeffs)
    if oversampling < 1:
        raise ValueError("oversampling factor must be >= 1")
    big = oversampling * c.size
    spectrum = np.zeros(big, dtype=complex)
    spectrum[: c.size] = c
    return np.fft.ifft(spectrum) * math.sqrt(big)


def pmepr(signal) -> float:
    """10 log10(max |s|^2 / mean |s|^2) in dB; zero for constant envelopes."""
    s = np.asarray(signal)
    if s.size == 0:
        raise ValueError("empty signal")
    power = np.abs(s) ** 2
    mean = power.mean()
    if mean == 0.0:
        raise ValueError("all-zero signal has no PMEPR")
    return 10.0 * math.log10(power.max() / mean)


def resources_per_mv(method: Method, K: int, L_e: int) -> float:
    """Complex-valued resources consumed per majority vote: the padded
    block length K + L_e divided by the votes carried per codeword."""
    if L_e < 0:
        raise ValueError("L_e must be nonnegative")
    return (K + L_e) / method.votes_per_codeword(K)


def separation_resources(U: int, spectral_efficiency: float = 1.0) -> float:
    """Resources per vote when each transmitter gets an orthogonal slot."""
    if U < 1:
        raise ValueError("need at least one transmitter")
    if spectral_efficiency <= 0:
        raise ValueError("spectral efficiency must be positive")
    return U / spectral_efficiency
