"""Non-coherent majority-vote detection on the received polynomial.

The detectors evaluate the received sequence (as a polynomial) at candidate
zero locations and compare magnitude-squares. Every transmitter whose
codeword contains the probed zero contributes exactly nothing there, so the
test-point energies scale with the number of voters on each side. The
uncoded detector needs the delay profile and noise level to de-bias its
count estimates; the differential and indexed detectors compare energies at
a common radius, where all those scalars cancel.

sign(0) is reported as 0 and counted as a computation error downstream;
under noise an exact tie has probability zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import PdpConfig
from .encoding import Method
from .huffman import RadiusParam, root_phases

__all__ = [
    "channel_power",
    "noise_power",
    "signal_scale_uncoded",
    "signal_scale_differential",
    "signal_scale_indexed",
    "signal_scale",
    "DecoderContext",
    "CountEstimates",
    "estimate_counts",
    "decode_uncoded",
    "decode_differential",
    "decode_indexed",
    "decode",
]


def channel_power(d_arg: float, cfg: PdpConfig) -> float:
    """Expected |H(z)|^2 on the circle |z| = d_arg: sum_l p_l d_arg^{2l}.

    Closed geometric forms are used except where their ratio hits 1, in
    which case the finite sum is taken directly.
    """
    if d_arg <= 0:
        raise ValueError("d_arg must be positive")
    g = d_arg * d_arg
    L, rho = cfg.L_e, cfg.rho
    if abs(1.0 - g * rho) < 1e-9:
        return float(np.dot(cfg.taps, g ** np.arange(L)))
    if rho == 1.0:
        return (1.0 - g**L) / (1.0 - g) / L
    return (1.0 - rho) / (1.0 - rho**L) * (1.0 - (g * rho) ** L) / (1.0 - g * rho)


def noise_power(d_arg: float, sigma2: float, K: int, L_e: int) -> float:
    """Expected |W(z)|^2 on |z| = d_arg for K + L_e noise samples."""
    if d_arg <= 0:
        raise ValueError("d_arg must be positive")
    g = d_arg * d_arg
    n = K + L_e
    if abs(g - 1.0) < 1e-12:
        return sigma2 * n
    return sigma2 * (1.0 - g**n) / (1.0 - g)


def signal_scale_uncoded(rp: RadiusParam, d_arg: float) -> float:
    """Per-voter expected signal energy at a probed zero, uncoded scheme.

    This is the expectation of |P(z)|^2 at the test point on radius d_arg
    over equiprobable votes in the other slots, for a voter whose probed
    slot holds the opposite-radius zero.
    """
    K = rp.K
    da = float(d_arg)
    w = root_phases(K)[1:]
    base = rp.eta * (K + 1) * (da - 1.0 / da) ** 2 * da**K
    factors = (np.abs(1.0 - w) ** 2 + np.abs(da - w / da) ** 2) / 2.0
    return float(base * np.prod(factors))


def signal_scale_differential(rp: RadiusParam, d_arg: float) -> float:
    """Per-voter expected signal energy at an even-slot test point."""
    K = rp.K
    if K < 2 or K % 2 != 0:
        raise ValueError("differential scheme needs an even K >= 2")
    da = float(d_arg)
    w = root_phases(K)
    base = rp.eta * (K + 1) * (da - 1.0 / da) ** 2 * np.abs(1.0 - w[1]) ** 2 * da**K
    ks = np.arange(1, K // 2)
    even, odd = w[2 * ks], w[2 * ks + 1]
    factors = (
        np.abs(1.0 - even) ** 2 * np.abs(da - odd / da) ** 2
        + np.abs(1.0 - odd) ** 2 * np.abs(da - even / da) ** 2
    ) / 2.0
    return float(base * np.prod(factors))


def signal_scale_indexed(rp: RadiusParam, d_arg: float) -> float:
    """Expected signal energy at a voter's own index slot, indexed scheme."""
    K = rp.K
    if K < 2 or (K & (K - 1)) != 0:
        raise ValueError("indexed scheme needs K a power of two >= 2")
    da = float(d_arg)
    return rp.eta * (K + 1) * (da - 1.0 / da) ** 2 * da**K * K * K


def signal_scale(method: Method, rp: RadiusParam, d_arg: float) -> float:
    if method is Method.UNCODED:
        return signal_scale_uncoded(rp, d_arg)
    if method is Method.DIFFERENTIAL:
        return signal_scale_differential(rp, d_arg)
    return signal_scale_indexed(rp, d_arg)


@dataclass(frozen=True)
class DecoderContext:
    """Static receiver-side knowledge.

    Only the uncoded detector is allowed (and required) to know the delay
    profile and noise level; the other two must manage without.
    """

    method: Method
    rp: RadiusParam
    pdp: PdpConfig | None = None
    sigma2: float | None = None

    def __post_init__(self) -> None:
        self.method.validate_k(self.rp.K)
        if self.method is Method.UNCODED:
            if self.pdp is None or self.sigma2 is None:
                raise ValueError("the uncoded detector needs pdp and sigma2")
            if self.sigma2 < 0:
                raise ValueError("sigma2 must be nonnegative")
        elif self.pdp is not None or self.sigma2 is not None:
            raise ValueError(
                f"the {self.method.value} detector takes no channel or noise "
                "knowledge"
            )

    @property
    def n_votes(self) -> int:
        return self.method.votes_per_codeword(self.rp.K)


@dataclass(frozen=True, eq=False)
class CountEstimates:
    """Unbiased estimates of the positive/negative voter counts per slot."""

    u_plus: np.ndarray
    u_minus: np.ndarray


def _energies(y, points: np.ndarray) -> np.ndarray:
    # Vandermonde matmul: same evaluation as poly_eval but BLAS-friendly
    # for large trial batches.
    y2 = np.asarray(y, dtype=complex)
    powers = np.power(
        points[np.newaxis, :], np.arange(y2.shape[-1])[:, np.newaxis]
    )
    r = y2 @ powers
    return r.real**2 + r.imag**2


def estimate_counts(y, ctx: DecoderContext) -> CountEstimates:
    """De-biased voter-count estimates for the uncoded scheme.

    u_plus[l] = (|R(d w^l)|^2 - noise) / (scale(d) * channel(d)) and the
    mirror expression at radius 1/d; both are unbiased but may go negative
    under noise.
    """
    if ctx.method is not Method.UNCODED:
        raise ValueError("count estimates are defined for the uncoded detector")
    rp, pdp_cfg = ctx.rp, ctx.pdp
    K, d = rp.K, rp.d
    w = root_phases(K)
    u = []
    for da in (d, 1.0 / d):
        num = _energies(y, da * w) - noise_power(da, ctx.sigma2, K, pdp_cfg.L_e)
        den = signal_scale_uncoded(rp, da) * channel_power(da, pdp_cfg)
        u.append(num / den)
    return CountEstimates(u_plus=u[0], u_minus=u[1])


def decode_uncoded(y, ctx: DecoderContext) -> np.ndarray:
    """Majority votes from the uncoded codeword: sign of count difference."""
    est = estimate_counts(y, ctx)
    return np.sign(est.u_plus - est.u_minus).astype(int)


def decode_differential(y, ctx: DecoderContext) -> np.ndarray:
    """Majority votes from even/odd test-point energies at radius d.

    The even-slot energy grows with the positive-vote count, so the
    decision is sign(|R(even)|^2 - |R(odd)|^2); no channel or noise
    statistics enter.
    """
    if ctx.method is not Method.DIFFERENTIAL:
        raise ValueError("context is not configured for the differential detector")
    rp = ctx.rp
    mags = _energies(y, rp.d * root_phases(rp.K))
    return np.sign(mags[..., 0::2] - mags[..., 1::2]).astype(int)


def decode_indexed(y, ctx: DecoderContext) -> np.ndarray:
    """Majority votes from bit-partitioned test-point energies at radius d.

    For vote position l, the energies at slots whose index has bit l set
    are summed against the rest; each side aggregates K/2 measurements.
    """
    if ctx.method is not Method.INDEXED:
        raise ValueError("context is not configured for the indexed detector")
    rp = ctx.rp
    K = rp.K
    m = K.bit_length() - 1
    mags = _energies(y, rp.d * root_phases(K))
    signs = 2.0 * ((np.arange(K)[:, np.newaxis] >> np.arange(m)) & 1) - 1.0
    return np.sign(mags @ signs).astype(int)


def decode(y, ctx: DecoderContext) -> np.ndarray:
    """Dispatch to the detector matching the context's method."""
    if ctx.method is Method.UNCODED:
        return decode_uncoded(y, ctx)
    if ctx.method is Method.DIFFERENTIAL:
        return decode_differential(y, ctx)
    return decode_indexed(y, ctx)
