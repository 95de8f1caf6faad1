"""Poisson summation, band-limited projections and the sampling reconstructions.

The infinite sums over samples ``psi(q' + n q0)`` are replaced by their
periodic images on the torus of length ``Q = M q0``.  The image sums of both
reconstruction kernels have closed forms (partial-fraction expansions of
``cot`` and ``csc``) so no truncation of the slowly decaying ``1/x`` tails is
needed:

* ``sum_l 1/(x - l Q) = (pi/Q) cot(pi x / Q)``
* ``sum_l (-1)^l/(x - l Q) = (pi/Q) / sin(pi x / Q)``

Bands are half-open, ``[(m - 1/2) p0, (m + 1/2) p0)``.  When the band holds an
even number of momentum samples the sinc kernel picks up the phase
``exp(-i pi x / Q)`` so that the lowest band edge is reproduced exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BandOutOfRange,
    BandwidthTooLarge,
    GridMismatch,
    NonCommensurateOffset,
    OutOfRectangle,
)
from .grid import GridSpec, MomentumSignal, Signal, fourier_forward, fourier_inverse

_EXACT_TOL = 1e-12
_SINGULAR_TOL = 1e-9


@dataclass(frozen=True)
class BandSpec:
    """Momentum band ``[(m - 1/2) p0, (m + 1/2) p0)``."""

    p0: float
    m: int = 0

    def __post_init__(self):
        if not self.p0 > 0:
            raise BandOutOfRange(f"bandwidth must be positive, got {self.p0}")

    def width_index(self, g: GridSpec) -> int:
        """Band width in momentum grid steps; raises unless ``p0`` is a multiple of ``dp``."""
        K = self.p0 / g.dp
        if abs(K - round(K)) > 1e-8 * max(1.0, K):
            raise BandOutOfRange(f"p0={self.p0} is not a multiple of dp={g.dp}")
        return int(round(K))

    def indices(self, g: GridSpec) -> np.ndarray:
        """Momentum-grid indices inside the band (lower edge in, upper edge out)."""
        K = self.width_index(g)
        k = np.arange(g.N) - g.N // 2
        inside = (2 * k >= (2 * self.m - 1) * K) & (2 * k < (2 * self.m + 1) * K)
        lo2, hi2 = (2 * self.m - 1) * K, (2 * self.m + 1) * K
        if lo2 < -g.N or hi2 > g.N:
            raise BandOutOfRange(
                f"band [{(self.m - 0.5) * self.p0:.6g}, {(self.m + 0.5) * self.p0:.6g}) "
                f"exceeds the grid momentum range [{-g.N // 2 * g.dp:.6g}, {g.N // 2 * g.dp:.6g})"
            )
        return np.nonzero(inside)[0]


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Samples ``psi(q' + n q0)`` for ``n = 0 .. M-1`` taken from a signal on ``grid``."""

    grid: GridSpec
    q_offset: float
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (self.grid.M,):
            raise GridMismatch(f"expected {self.grid.M} samples, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.grid.M)

    @property
    def positions(self) -> np.ndarray:
        """Sample coordinates reduced to the centred period ``[-Q/2, Q/2)``."""
        g = self.grid
        x = self.q_offset + self.n * g.q0
        return x - g.Q * np.floor((x + g.Q / 2) / g.Q)

    def centered(self) -> tuple[np.ndarray, np.ndarray]:
        """Labels ``n`` in ``[-M/2, M/2)`` (nearest image) and the matching values."""
        M = self.grid.M
        n = np.arange(M)
        nc = np.where(n >= M // 2, n - M, n)
        order = np.argsort(nc)
        return nc[order], self.values[order]


def _index_of(g: GridSpec, x: float, err=NonCommensurateOffset) -> int:
    a = x / g.dq
    if abs(a - round(a)) > 1e-8 * max(1.0, abs(a)):
        raise err(f"{x} is not a multiple of dq={g.dq}")
    return int(round(a))


def poisson_residual(s: Signal, q: float, p: float) -> float:
    """``|LHS - RHS|`` of the Poisson summation identity at ``(q, p)`` in the Zak rectangle.

    LHS = ``q0 sum_n exp(-i n q0 p) psi(q + n q0)`` over the ``M`` position cells,
    RHS = ``sqrt(2 pi) exp(i q p) sum_n exp(2 pi i n q/q0) phi(p + 2 pi n/q0)``
    over the ``L`` momentum cells.  Both are direct sums.
    """
    g = s.grid
    eps = 1e-12
    if not (-g.q0 / 2 - eps <= q <= g.q0 / 2 + eps and -g.p_cell / 2 - eps <= p <= g.p_cell / 2 + eps):
        raise OutOfRectangle(f"({q}, {p}) lies outside R(q0) for q0={g.q0}")
    a = _index_of(g, q, OutOfRectangle)
    b = p / g.dp
    if abs(b - round(b)) > 1e-8 * max(1.0, abs(b)):
        raise OutOfRectangle(f"p={p} is not a multiple of dp={g.dp}")
    b = int(round(b))
    psi = s.wavefunction
    phi = fourier_forward(s).wavefunction
    n = np.arange(g.M)
    lhs = g.q0 * np.sum(np.exp(-1j * n * g.q0 * p) * psi[(g.N // 2 + a + n * g.L) % g.N])
    n = np.arange(g.L)
    rhs = math.sqrt(2 * math.pi) * np.exp(1j * q * p) * np.sum(
        np.exp(2j * math.pi * n * q / g.q0) * phi[(g.N // 2 + b + n * g.M) % g.N]
    )
    return float(abs(lhs - rhs))


def bandlimit_project(s: Signal, b: BandSpec) -> Signal:
    m = fourier_forward(s)
    keep = np.zeros(s.grid.N, dtype=bool)
    keep[b.indices(s.grid)] = True
    return fourier_inverse(MomentumSignal(s.grid, np.where(keep, m.values, 0)))


def extract_samples(s: Signal, q_offset: float) -> SampleSet:
    g = s.grid
    a = _index_of(g, q_offset)
    if abs(q_offset) > g.q0 / 2 + 1e-12:
        raise NonCommensurateOffset(f"offset {q_offset} outside [-q0/2, q0/2]")
    idx = (g.N // 2 + a + np.arange(g.M) * g.L) % g.N
    return SampleSet(g, a * g.dq, s.wavefunction[idx])


def _sin_pi(t: np.ndarray) -> np.ndarray:
    """``sin(pi t)`` with exact zeros at (numerically) integer ``t``."""
    r = np.rint(t)
    f = t - r
    f = np.where(np.abs(f) < _EXACT_TOL, 0.0, f)
    sign = 1.0 - 2.0 * np.mod(r, 2)
    return sign * np.sin(np.pi * f)


def _offsets(samples: SampleSet, target: GridSpec) -> np.ndarray:
    """``x_n = q - q' - n q0`` reduced to ``[-Q/2, Q/2)``; shape (N_target, M)."""
    g = samples.grid
    if abs(target.Q - g.Q) > 1e-9 * g.Q:
        raise GridMismatch(f"target period {target.Q} differs from sample period {g.Q}")
    x = target.q[:, None] - samples.q_offset - samples.n[None, :] * g.q0
    return x - g.Q * np.floor((x + g.Q / 2) / g.Q)


def sinc_kernel(x: np.ndarray, g: GridSpec, K: int) -> np.ndarray:
    """Periodised band kernel ``(q0/Q) sum_{k in band} exp(i k dp x)`` for ``p0 = K dp``.

    For odd ``K`` the half-open band is symmetric and the kernel is the real
    ``(q0/Q) sin(p0 x/2) / sin(pi x/Q)``.  For even ``K`` the band has one more
    index below zero than above, which adds the factor ``exp(-i pi x/Q)``.
    Both tend to ``(q0/pi) sin(p0 x/2) / x`` as ``Q`` grows.
    """
    Q, q0 = g.Q, g.q0
    num = _sin_pi(K * x / Q)  # sin(p0 x / 2)
    den = np.sin(np.pi * x / Q)
    small = np.abs(x) < _SINGULAR_TOL * q0
    with np.errstate(divide="ignore", invalid="ignore"):
        ker = (q0 / Q) * num / np.where(small, 1.0, den)
    ker = np.where(small, K / g.M, ker)
    if K % 2 == 0:
        ker = ker * np.exp(-1j * np.pi * x / Q)
    return ker


def reconstruct_sinc(samples: SampleSet, b: BandSpec, target_grid: GridSpec | None = None) -> Signal:
    """Band-limited interpolation from equispaced samples with bandwidth ``b.p0``."""
    g = samples.grid
    if b.m != 0:
        raise BandOutOfRange("sinc reconstruction is defined for the centred band m=0")
    if b.p0 > g.p_cell * (1 + 1e-12):
        raise BandwidthTooLarge(f"p0={b.p0:.6g} exceeds 2 pi/q0={g.p_cell:.6g}")
    target = target_grid or g
    K = b.width_index(g)
    x = _offsets(samples, target)
    psi = sinc_kernel(x, g, K) @ samples.values
    return Signal.from_wavefunction(target, psi)


def reconstruct_cauchy(samples: SampleSet, target_grid: GridSpec | None = None) -> Signal:
    """Bandwidth-free interpolation ``(q0/pi) sin(pi (q - q')/q0) sum_n (-1)^n psi_n / x_n``.

    Valid for signals band-limited strictly inside ``(-pi/q0, pi/q0)``; for
    anything else the output is meaningless.  At the sample points the
    formula collapses to the sample value itself.
    """
    g = samples.grid
    target = target_grid or g
    x = _offsets(samples, target)
    u = (target.q - samples.q_offset) / g.q0
    pref = (g.q0 / math.pi) * _sin_pi(u)
    alt = 1.0 - 2.0 * (samples.n % 2)
    small = np.abs(x) < _SINGULAR_TOL * g.q0
    with np.errstate(divide="ignore", invalid="ignore"):
        images = (math.pi / g.Q) / np.tan(math.pi * np.where(small, 1.0, x) / g.Q)
    images = np.where(small, 0.0, images)
    psi = pref * (images @ (alt * samples.values))
    hit = small.any(axis=1)
    if hit.any():
        psi = np.where(hit, samples.values[np.argmax(small, axis=1)], psi)
    return Signal.from_wavefunction(target, psi)


def consistency_coefficients(g: GridSpec, K: int) -> np.ndarray:
    """Coefficients ``c_d`` with ``psi_m = sum_n c_{m-n} psi_n`` for bandwidth ``K dp``.

    These are the band kernel at ``x = d q0``: ``c_0 = q0 p0 / (2 pi)`` and the
    sines ``sin(pi d K / M)`` are evaluated from the integer ``d K mod 2M`` so
    they vanish exactly when ``K`` is a multiple of ``M``.
    """
    M = g.M
    d = np.arange(M)
    r = np.mod(d * K, 2 * M)
    num = np.where(r % M == 0, 0.0, np.sin(np.pi * r / M))
    with np.errstate(divide="ignore", invalid="ignore"):
        c = (g.q0 / g.Q) * num / np.sin(np.pi * d / M)
    c[0] = K / M
    if K % 2 == 0:
        c = c * np.exp(-1j * np.pi * d / M)
    return c


def consistency_residual(samples: SampleSet, b: BandSpec) -> float:
    """Largest violation of the self-consistency relation among the samples."""
    g = samples.grid
    if b.p0 > g.p_cell * (1 + 1e-12):
        raise BandwidthTooLarge(f"p0={b.p0:.6g} exceeds 2 pi/q0={g.p_cell:.6g}")
    c = consistency_coefficients(g, b.width_index(g))
    n = np.arange(g.M)
    C = c[np.mod(n[:, None] - n[None, :], g.M)]
    return float(np.max(np.abs(samples.values - C @ samples.values)))


def dependence_residual(samples: SampleSet, poly_coeffs) -> float:
    """``|sum_n (-1)^n P(n q0) psi_n|`` normalised by ``sum_n |P(n q0) psi_n|``.

    ``poly_coeffs`` are in ascending order, degree at most 4.  Labels ``n`` are
    taken as nearest images in ``[-M/2, M/2)``.
    """
    coeffs = np.asarray(poly_coeffs, dtype=float)
    if coeffs.ndim != 1 or not 1 <= coeffs.size <= 5:
        raise ValueError("polynomial degree must be between 0 and 4")
    n, vals = samples.centered()
    P = np.polynomial.polynomial.polyval(n * samples.grid.q0, coeffs)
    terms = P * vals
    scale = np.sum(np.abs(terms))
    if scale == 0:
        return 0.0
    return float(abs(np.sum((1.0 - 2.0 * (n % 2)) * terms)) / scale)
