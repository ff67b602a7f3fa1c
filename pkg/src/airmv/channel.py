"""Multipath Rayleigh channel with exponential power-delay profile.

Transmissions superpose through zero-padded linear convolution: a length
K+1 sequence through L_e taps arrives as K+L_e samples, which is what lets
the received samples be read as a polynomial whose factors include every
transmitter's encoded zeros.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["PdpConfig", "pdp", "sample_channel", "superpose"]


def pdp(L_e: int, rho: float) -> np.ndarray:
    """Tap power vector of the exponential delay profile; sums to one."""
    if not isinstance(L_e, (int, np.integer)) or L_e < 1:
        raise ValueError(f"L_e must be a positive integer, got {L_e!r}")
    if not (0.0 < rho <= 1.0):
        raise ValueError(f"decay constant rho must lie in (0, 1], got {rho!r}")
    if rho == 1.0:
        return np.full(L_e, 1.0 / L_e)
    return (1.0 - rho) / (1.0 - rho**L_e) * rho ** np.arange(L_e)


@dataclass(frozen=True)
class PdpConfig:
    """Effective tap count and decay constant of the composite channel."""

    L_e: int
    rho: float = 1.0

    def __post_init__(self) -> None:
        pdp(self.L_e, self.rho)  # validates
        object.__setattr__(self, "L_e", int(self.L_e))
        object.__setattr__(self, "rho", float(self.rho))

    @property
    def taps(self) -> np.ndarray:
        return pdp(self.L_e, self.rho)


def sample_channel(
    cfg: PdpConfig, U: int, rng: np.random.Generator, trials: int | None = None
) -> np.ndarray:
    """Draw i.i.d. circularly symmetric Gaussian taps, variance p_l per tap.

    Returns shape (U, L_e), or (trials, U, L_e) when `trials` is given.
    """
    if U < 1:
        raise ValueError("need at least one transmitter")
    shape = ((trials,) if trials is not None else ()) + (U, cfg.L_e)
    scale = np.sqrt(cfg.taps / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def superpose(
    coeff_seqs,
    channels,
    sigma2: float = 0.0,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Received samples y_n = sum_u sum_l h_{u,l} c_{u,n-l} + w_n.

    `coeff_seqs` has shape (..., U, K+1) and `channels` (..., U, L_e); the
    zero-padded linear convolution yields (..., K+L_e) samples. Noise w_n is
    CN(0, sigma2), drawn from `rng` when sigma2 > 0.
    """
    c = np.asarray(coeff_seqs, dtype=complex)
    h = np.asarray(channels, dtype=complex)
    if c.ndim < 2 or h.ndim < 2 or c.shape[:-1] != h.shape[:-1]:
        raise ValueError(
            f"coefficients {c.shape} and channels {h.shape} must share the "
            "same (..., U) leading shape"
        )
    n_coef = c.shape[-1]
    n_tap = h.shape[-1]
    y = np.zeros(c.shape[:-2] + (n_coef + n_tap - 1,), dtype=complex)
    for tap in range(n_tap):
        y[..., tap : tap + n_coef] += np.einsum("...u,...un->...n", h[..., tap], c)
    if sigma2 < 0:
        raise ValueError("noise variance must be nonnegative")
    if sigma2 > 0:
        if rng is None:
            raise ValueError("an rng is required when sigma2 > 0")
        y += np.sqrt(sigma2 / 2.0) * (
            rng.standard_normal(y.shape) + 1j * rng.standard_normal(y.shape)
        )
    return y
