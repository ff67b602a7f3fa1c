"""Reference aggregation schemes for comparison.

Goldenbaum's non-coherent scheme scales random unimodular sequences by the
square root of the (shifted) vote and estimates the vote sum from received
energy. OBDA maps votes to BPSK with truncated channel inversion at the
transmitters; it is coherent and therefore needs per-node CSI, which is
exactly the requirement the zero-encoded schemes avoid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GoldenbaumConfig",
    "ObdaConfig",
    "default_sequence_length",
    "goldenbaum_encode",
    "goldenbaum_decode",
    "obda_encode",
    "obda_decode",
]


def default_sequence_length(K: int) -> int:
    """Sequence length matching the indexed scheme's resource budget:
    the nearest integer of (K + 1) / log2(K)."""
    if K < 2:
        raise ValueError("K must be at least 2")
    return max(1, round((K + 1) / math.log2(K)))


@dataclass(frozen=True)
class GoldenbaumConfig:
    L_seq: int
    sigma2: float
    U: int

    def __post_init__(self) -> None:
        if self.L_seq < 1:
            raise ValueError("sequence length must be positive")
        if self.sigma2 < 0:
            raise ValueError("sigma2 must be nonnegative")
        if self.U < 1:
            raise ValueError("need at least one transmitter")


@dataclass(frozen=True)
class ObdaConfig:
    sigma2: float
    U: int
    truncation: float = 0.2
    phase_error_halfwidth: float = math.radians(120.0)
    phase_errors: bool = False
    tci: bool = True

    def __post_init__(self) -> None:
        if self.truncation < 0:
            raise ValueError("truncation threshold must be nonnegative")
        if self.sigma2 < 0:
            raise ValueError("sigma2 must be nonnegative")


def goldenbaum_encode(vote: int, L_seq: int, rng: np.random.Generator) -> np.ndarray:
    """Transmit sqrt(vote + 1) times a random unimodular sequence.

    Votes -1/+1 map to symbols 0/2, so a negative voter stays silent.
    """
    if vote not in (-1, 1):
        raise ValueError("vote must be -1 or +1")
    phases = rng.uniform(0.0, 2.0 * np.pi, L_seq)
    return math.sqrt(vote + 1) * np.exp(1j * phases)


def goldenbaum_decode(y: np.ndarray, cfg: GoldenbaumConfig) -> int:
    """Majority vote from received energy.

    The expected noise energy over the whole received window (len(y)
    samples) is subtracted before scaling, which makes the vote-sum
    estimate (|y|^2 - len(y) sigma2) / L_seq - U unbiased.
    """
    y = np.asarray(y)
    if y.shape[-1] < cfg.L_seq:
        raise ValueError("received window shorter than the sequence length")
    energy = np.sum(np.abs(y) ** 2, axis=-1)
    estimate = (energy - y.shape[-1] * cfg.sigma2) / cfg.L_seq - cfg.U
    return np.sign(estimate).astype(int)


def obda_encode(vote: int, h: complex, cfg: ObdaConfig,
                rng: np.random.Generator | None = None) -> complex:
    """BPSK symbol with truncated channel inversion.

    The node stays silent when |h|^2 is at or below the truncation level;
    otherwise it pre-equalizes by conj(h)/|h|^2. With phase errors enabled
    a uniform phase offset models imperfect synchronization. With tci
    disabled the node has no CSI and transmits the raw BPSK symbol.
    """
    if vote not in (-1, 1):
        raise ValueError("vote must be -1 or +1")
    if cfg.tci:
        gain = abs(h) ** 2
        if gain <= cfg.truncation:
            return 0.0 + 0.0j
        symbol = vote * np.conjugate(h) / gain
    else:
        symbol = complex(vote)
    if cfg.phase_errors:
        if rng is None:
            raise ValueError("an rng is required for phase errors")
        w = cfg.phase_error_halfwidth
        symbol = symbol * np.exp(1j * rng.uniform(-w, w))
    return complex(symbol)


def obda_decode(y) -> int:
    """Majority vote as the sign of the real part of the aggregate symbol."""
    return np.sign(np.real(y)).astype(int)
