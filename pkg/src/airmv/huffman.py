"""Huffman polynomial synthesis, conversion, and evaluation.

Coefficient sequences are stored in ascending power order (c0 first). A
codeword picks, for each of the K angular slots, one member of a
conjugate-reciprocal zero pair: the inner radius 1/d or the outer radius d,
both at phase 2*pi*k/K. The leading coefficient is chosen real positive so
that the squared norm of the coefficient vector is exactly K + 1; any global
phase would be invisible to the magnitude-based detectors downstream.

The production zero-to-coefficient conversion evaluates the zero-form
polynomial on the (K+1)-point unit-circle grid and applies a direct forward
transform. The incremental expansion is kept for cross-validation only; it
accumulates rounding error one zero at a time, the grid method does not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "RadiusParam",
    "ZeroCodeword",
    "radius_param",
    "root_phases",
    "leading_coeff",
    "synthesize_coeffs",
    "zeros_to_coeffs",
    "zeros_to_coeffs_iterative",
    "poly_eval",
    "aacf",
]


@lru_cache(maxsize=None)
def root_phases(K: int) -> np.ndarray:
    """Unit phasors e^{j 2 pi k / K} for k = 0..K-1 (read-only, cached)."""
    w = np.exp(2j * np.pi * np.arange(K) / K)
    w.flags.writeable = False
    return w


@lru_cache(maxsize=None)
def _grid_points(K: int) -> np.ndarray:
    e = np.exp(2j * np.pi * np.arange(K + 1) / (K + 1))
    e.flags.writeable = False
    return e


@lru_cache(maxsize=None)
def _grid_transform(K: int) -> np.ndarray:
    # W[p, n] = e^{-j 2 pi p n / (K+1)} / (K+1), applied as a direct matmul.
    p = np.arange(K + 1)
    w = np.exp(-2j * np.pi * np.outer(p, p) / (K + 1)) / (K + 1)
    w.flags.writeable = False
    return w


@dataclass(frozen=True)
class RadiusParam:
    """Zero-pair radius d (> 1) and slot count K shared by a codebook."""

    K: int
    d: float

    def __post_init__(self) -> None:
        if not isinstance(self.K, (int, np.integer)) or self.K < 1:
            raise ValueError(f"K must be a positive integer, got {self.K!r}")
        object.__setattr__(self, "K", int(self.K))
        if not (math.isfinite(self.d) and self.d > 1.0):
            raise ValueError(f"d must be a finite real > 1, got {self.d!r}")
        object.__setattr__(self, "d", float(self.d))

    @property
    def eta(self) -> float:
        """Normalization constant 1 / (d^K + d^-K)."""
        return 1.0 / (self.d**self.K + self.d**-self.K)


def radius_param(K: int) -> RadiusParam:
    """Default radius rule d = sqrt(1 + sin(pi/K)).

    This choice maximizes the minimum distance between the candidate zeros
    of a codebook with K slots, which is what gives the magnitude detector
    its noise margin.
    """
    if not isinstance(K, (int, np.integer)) or K < 2:
        raise ValueError(f"K must be an integer >= 2, got {K!r}")
    return RadiusParam(int(K), math.sqrt(1.0 + math.sin(math.pi / K)))


@dataclass(frozen=True, eq=False)
class ZeroCodeword:
    """Per-slot radius selection: inner[k] True picks 1/d at phase 2 pi k / K."""

    inner: np.ndarray
    rp: RadiusParam

    def __post_init__(self) -> None:
        inner = np.array(self.inner, dtype=bool, copy=True)
        if inner.shape != (self.rp.K,):
            raise ValueError(
                f"codeword needs exactly {self.rp.K} radius selections, "
                f"got shape {inner.shape}"
            )
        inner.flags.writeable = False
        object.__setattr__(self, "inner", inner)

    @property
    def n_inner(self) -> int:
        return int(np.count_nonzero(self.inner))

    @property
    def zeros(self) -> np.ndarray:
        """The K encoded zeros as complex numbers."""
        d = self.rp.d
        return np.where(self.inner, 1.0 / d, d) * root_phases(self.rp.K)


def leading_coeff(codeword: ZeroCodeword) -> float:
    """Leading coefficient sqrt(eta (K+1) / prod |zeros|), real positive.

    With this scaling the synthesized coefficient vector has squared norm
    exactly K + 1. The product of zero magnitudes is d^(K - 2 * n_inner).
    """
    rp = codeword.rp
    return math.sqrt(rp.eta * (rp.K + 1)) * rp.d ** (codeword.n_inner - rp.K / 2)


def synthesize_coeffs(inner: np.ndarray, rp: RadiusParam) -> np.ndarray:
    """Convert radius selections to normalized coefficients (grid method).

    Batched: `inner` has shape (..., K) and the result (..., K+1). The
    zero-form polynomial is evaluated at the K+1 points e^{j 2 pi p/(K+1)}
    and the coefficients recovered with the forward (K+1)-point transform.
    """
    inner = np.asarray(inner, dtype=bool)
    K, d = rp.K, rp.d
    if inner.shape[-1] != K:
        raise ValueError(f"expected {K} selections on the last axis, got {inner.shape}")
    zeros = np.where(inner, 1.0 / d, d) * root_phases(K)
    n_inner = np.count_nonzero(inner, axis=-1)
    c_lead = math.sqrt(rp.eta * (K + 1)) * d ** (n_inner - K / 2)

    pts = _grid_points(K)
    vals = np.ones(inner.shape[:-1] + (K + 1,), dtype=complex)
    for k in range(K):
        vals = vals * (pts - zeros[..., k, np.newaxis])
    vals *= np.asarray(c_lead)[..., np.newaxis]
    return vals @ _grid_transform(K)


def zeros_to_coeffs(codeword: ZeroCodeword) -> np.ndarray:
    """Coefficients c0..cK of the codeword's polynomial, ascending powers."""
    return synthesize_coeffs(codeword.inner, codeword.rp)


def zeros_to_coeffs_iterative(codeword: ZeroCodeword) -> np.ndarray:
    """Reference conversion: expand prod (z - zero) one zero at a time, O(K^2)."""
    K = codeword.rp.K
    c = np.zeros(K + 1, dtype=complex)
    c[0] = 1.0
    for i, zero in enumerate(codeword.zeros):
        c[1 : i + 2] = c[0 : i + 1] - zero * c[1 : i + 2]
        c[0] = -zero * c[0]
    return c * leading_coeff(codeword)


def poly_eval(coeffs: np.ndarray, z) -> np.ndarray:
    """Evaluate sum_n c_n z^n with Horner's recursion.

    `coeffs` may carry leading batch axes (..., N); `z` is a scalar or a 1-D
    array of points. The result has shape (...,) + shape(z).
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim == 0 or c.shape[-1] == 0:
        raise ValueError("coefficient sequence must be nonempty")
    zs = np.asarray(z, dtype=complex)
    scalar_z = zs.ndim == 0
    pts = np.atleast_1d(zs)
    acc = np.zeros(c.shape[:-1] + pts.shape, dtype=complex)
    for n in range(c.shape[-1] - 1, -1, -1):
        acc = acc * pts + c[..., n, np.newaxis]
    if scalar_z:
        acc = acc[..., 0]
    return acc


def aacf(coeffs: np.ndarray) -> np.ndarray:
    """Aperiodic autocorrelation a(l) for l = -K..K; a(0) sits at index K.

    a(l) = sum_n conj(x_n) x_{n+l} for l >= 0, and a(-l) = conj(a(l)).
    """
    x = np.asarray(coeffs, dtype=complex)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("expected a nonempty 1-D coefficient sequence")
    K = x.size - 1
    out = np.empty(2 * K + 1, dtype=complex)
    for lag in range(K + 1):
        v = np.vdot(x[: x.size - lag], x[lag:])
        out[K + lag] = v
        out[K - lag] = np.conjugate(v)
    return out
