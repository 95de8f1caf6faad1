"""Concrete states used as test signals and lattice fiducials."""
from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import WindowTooSmall
from .grid import GridSpec, MomentumSignal, Signal, fourier_inverse
from .sampling import BandSpec, bandlimit_project
from .zak import Convention, ZakArray, zak_to_signal

_PI_QUARTER = math.pi ** -0.25


def _wrap(x, period):
    return x - period * np.floor((x + period / 2) / period)


def standard_cs(g: GridSpec, q: float, p: float) -> Signal:
    """Coherent state ``D(q, p)|0))`` sampled on ``g`` (periodised over ``Q``).

    ``<x|z)) = pi^{-1/4} exp(-i q p / 2 + i p x - (x - q)^2 / 2)``
    """
    d = _wrap(g.q - q, g.Q)
    tail = _PI_QUARTER * math.exp(-((g.Q / 2) ** 2) / 2)
    p_room = math.pi / g.dq - abs(p)
    ptail = _PI_QUARTER * math.exp(-(p_room**2) / 2) if p_room > 0 else 1.0
    if tail > 1e-8 or ptail > 1e-8:
        warnings.warn(
            f"coherent state at ({q:.4g}, {p:.4g}) is not contained in the grid window", WindowTooSmall, stacklevel=2
        )
    psi = _PI_QUARTER * np.exp(-0.5j * q * p + 1j * p * (q + d) - d**2 / 2)
    return Signal.from_wavefunction(g, psi)


def gaussian(g: GridSpec, center: float = 0.0, width: float = 1.0, momentum: float = 0.0) -> Signal:
    """Normalised Gaussian ``exp(-(x-c)^2 / (2 w^2) + i k x)``, periodised."""
    d = _wrap(g.q - center, g.Q)
    psi = np.exp(-(d**2) / (2 * width**2) + 1j * momentum * (center + d))
    return Signal.from_wavefunction(g, psi).normalized()


def gaussian_mixture(g: GridSpec, rng: np.random.Generator, n_components: int = 3,
                     spread: float | None = None, width: tuple[float, float] = (0.6, 1.5),
                     momentum: float = 1.0) -> Signal:
    """Random normalised superposition of Gaussians with random phases."""
    spread = g.Q / 10 if spread is None else spread
    total = np.zeros(g.N, dtype=complex)
    for _ in range(n_components):
        c = rng.uniform(-spread, spread)
        w = rng.uniform(*width)
        k = rng.uniform(-momentum, momentum)
        amp = rng.normal() + 1j * rng.normal()
        total = total + amp * gaussian(g, c, w, k).values
    return Signal(g, total).normalized()


def bandlimited_mixture(g: GridSpec, band: BandSpec, rng: np.random.Generator, n_components: int = 3) -> Signal:
    """Projected Gaussian mixture that lies in the band by construction.

    Component momentum widths are ``p0/20`` and centres stay within ``p0/8`` of
    the band centre, so the band edges carry negligible weight before the
    projection and the position tails stay small for a wide enough grid.
    """
    sigma_p = band.p0 / 20
    center = band.m * band.p0
    total = np.zeros(g.N, dtype=complex)
    for _ in range(n_components):
        c = rng.uniform(-g.Q / 10, g.Q / 10)
        k = center + rng.uniform(-band.p0 / 8, band.p0 / 8)
        amp = rng.normal() + 1j * rng.normal()
        total = total + amp * gaussian(g, c, 1.0 / sigma_p, k).values
    return bandlimit_project(Signal(g, total), band).normalized()


def comb(g: GridSpec) -> Signal:
    """Discrete comb: one unit sample per cell at ``n q0``, normalised."""
    psi = np.zeros(g.N, dtype=complex)
    psi[(g.N // 2 + np.arange(g.M) * g.L) % g.N] = 1.0
    return Signal(g, psi).normalized()


def smoothed_comb(g: GridSpec, epsilon: float) -> Signal:
    """Comb with each tooth replaced by a Gaussian of width ``epsilon``."""
    d = _wrap(g.q, g.q0)
    return Signal.from_wavefunction(g, np.exp(-(d**2) / (2 * epsilon**2))).normalized()


def box(g: GridSpec) -> Signal:
    """Indicator of the central cell ``[-q0/2, q0/2)``; its Zak transform has constant modulus."""
    psi = np.where(np.abs(g.q + g.dq / 2) < g.q0 / 2, 1.0, 0.0)
    return Signal.from_wavefunction(g, psi).normalized()


def sech_momentum(g: GridSpec, scale: float = 1.0) -> Signal:
    """State with momentum wavefunction proportional to ``sech(p / scale)``."""
    phi = 1.0 / np.cosh(g.p / scale)
    return fourier_inverse(MomentumSignal.from_wavefunction(g, phi)).normalized()


def bandlimited_fiducial(g: GridSpec, p0: float, width: float = 1.0) -> Signal:
    """Gaussian projected onto ``[-p0/2, p0/2)``; momentum vanishes outside the band."""
    return bandlimit_project(gaussian(g, 0.0, width), BandSpec(p0)).normalized()


def notched_momentum(g: GridSpec, notch: float, scale: float = 1.0) -> Signal:
    """``sech`` momentum profile with an exact zero at the grid momentum nearest ``notch``."""
    phi = 1.0 / np.cosh(g.p / scale)
    phi[g.N // 2 + int(round(notch / g.dp))] = 0.0
    return fourier_inverse(MomentumSignal.from_wavefunction(g, phi)).normalized()


def pure_phase_fiducial(g: GridSpec, theta=None, rng: np.random.Generator | None = None) -> Signal:
    """State whose angular Zak transform is ``exp(i theta) / sqrt(2 pi)``.

    ``theta`` may be an ``L x M`` array or a callable of ``(q, p)``; by default
    a smooth random phase is drawn from ``rng``.
    """
    qq = (np.arange(g.L) - g.L // 2)[:, None] * g.dq
    pp = (np.arange(g.M) - g.M // 2)[None, :] * g.dp
    if theta is None:
        rng = rng or np.random.default_rng(0)
        a, b, c = rng.normal(size=3)
        theta = a * np.cos(2 * math.pi * qq / g.q0) + b * np.sin(pp * g.q0) + c * qq * pp
    elif callable(theta):
        theta = theta(qq, pp)
    chi = np.exp(1j * np.broadcast_to(theta, (g.L, g.M))) / math.sqrt(2 * math.pi)
    return zak_to_signal(ZakArray(g, Convention.ANGULAR, chi))


def two_tone(g: GridSpec, frequency: float, width: float = 4.0) -> Signal:
    """Gaussian envelope times ``cos(frequency x)``: two tones at ``+-frequency``."""
    d = _wrap(g.q, g.Q)
    return Signal.from_wavefunction(g, np.exp(-(d**2) / (2 * width**2)) * np.cos(frequency * d)).normalized()


def cat_state(g: GridSpec, a: float, sign: int = -1) -> Signal:
    """``|cs(a, 0)> + sign |cs(-a, 0)>``, normalised."""
    return (standard_cs(g, a, 0.0) + sign * standard_cs(g, -a, 0.0)).normalized()
