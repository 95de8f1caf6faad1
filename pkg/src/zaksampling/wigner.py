"""Discrete Wigner distribution on a doubled phase-space grid.

The signal is band-limited interpolated onto ``2N`` points at spacing
``dq/2`` by zero-padding its momentum samples.  The Wigner function is then
evaluated at positions ``x_a = (a - N) dq/2`` and momenta
``p_c = (c - N) dp/2``, so half-cell points such as ``(q0/2, pi/q0)`` are grid
points.

On the torus the array carries a ghost copy:
``W(x + Q/2, p_c) = (-1)^c W(x, p_c)``.  Claims about the continuum are made on
the fundamental region ``|x| < Q/4`` only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EpsilonTooLarge
from .grid import GridSpec, MomentumSignal, Signal, fourier_forward, fourier_inverse

MAX_N = 2048


@dataclass(frozen=True, eq=False)
class WignerArray:
    grid: GridSpec
    # values[a, c] is W(x_a, p_c)
    values: np.ndarray

    @property
    def h(self) -> float:
        return self.grid.dq / 2

    @property
    def dp(self) -> float:
        return self.grid.dp / 2

    @property
    def q(self) -> np.ndarray:
        return (np.arange(2 * self.grid.N) - self.grid.N) * self.h

    @property
    def p(self) -> np.ndarray:
        return (np.arange(2 * self.grid.N) - self.grid.N) * self.dp

    def fundamental(self) -> np.ndarray:
        """Boolean mask over positions with ``|x| < Q/4``."""
        return np.abs(self.q) < self.grid.Q / 4

    def total(self) -> float:
        """Phase-space integral over the whole torus; equals the squared norm."""
        return float(self.values.sum() * self.h * self.dp)

    def at(self, q: float, p: float) -> float:
        """Value at the doubled-grid point nearest ``(q, p)``."""
        a = int(round(q / self.h)) + self.grid.N
        c = int(round(p / self.dp)) + self.grid.N
        return float(self.values[a % (2 * self.grid.N), c % (2 * self.grid.N)])


def upsample(s: Signal) -> Signal:
    """Trigonometric interpolation of ``s`` onto the grid with half the spacing."""
    g = s.grid
    fine = GridSpec(2 * g.L, g.M, g.dq / 2)
    phi = fourier_forward(s).values
    padded = np.zeros(fine.N, dtype=complex)
    padded[g.N // 2: g.N // 2 + g.N] = phi
    return fourier_inverse(MomentumSignal(fine, padded))


def wigner_transform(s: Signal) -> WignerArray:
    g = s.grid
    if g.N > MAX_N:
        raise ValueError(f"N = {g.N} exceeds {MAX_N}; the doubled grid needs 4 N^2 entries")
    two_n = 2 * g.N
    h = g.dq / 2
    psi = upsample(s).wavefunction
    a = np.arange(two_n)[:, None]
    b = np.arange(two_n)[None, :]
    corr = psi[(a - b) % two_n] * np.conj(psi[(a + b) % two_n])
    corr *= np.where(b % 2, -1.0, 1.0)
    W = (h / math.pi) * two_n * np.fft.ifft(corr, axis=1)
    return WignerArray(g, np.ascontiguousarray(W.real))


def wigner_imag_residual(s: Signal) -> float:
    """Largest imaginary part before it is discarded, relative to the peak."""
    g = s.grid
    two_n = 2 * g.N
    psi = upsample(s).wavefunction
    a = np.arange(two_n)[:, None]
    b = np.arange(two_n)[None, :]
    corr = psi[(a - b) % two_n] * np.conj(psi[(a + b) % two_n]) * np.where(b % 2, -1.0, 1.0)
    W = np.fft.ifft(corr, axis=1)
    return float(np.abs(W.imag).max() / np.abs(W).max())


def marginals(w: WignerArray) -> tuple[np.ndarray, np.ndarray]:
    """Position and momentum densities on the original ``N``-point grids.

    The position density sums ``W dp/2`` over all momenta at even ``a``.  The
    momentum density sums ``W dq/2`` over all positions at even ``c`` and halves
    the result to remove the ghost copy.  Both are exact on the grid.
    """
    pos = w.values[::2].sum(axis=1) * w.dp
    mom = w.values[:, ::2].sum(axis=0) * w.h / 2
    return pos, mom


def coherent_state_wigner(g: GridSpec, q: float = 0.0, p: float = 0.0) -> np.ndarray:
    """Closed form ``exp(-(x-q)^2 - (k-p)^2) / pi`` on the doubled grid."""
    x = (np.arange(2 * g.N) - g.N) * g.dq / 2
    k = (np.arange(2 * g.N) - g.N) * g.dp / 2
    return np.exp(-((x[:, None] - q) ** 2) - (k[None, :] - p) ** 2) / math.pi


@dataclass(frozen=True)
class CombWignerReport:
    epsilon: float
    q0: float
    block: tuple[int, ...]
    located: bool
    signs_ok: bool
    q_periodicity: float
    p_periodicity: float
    peak_ratio: float
    peaks: dict

    @property
    def periodicity(self) -> float:
        return max(self.q_periodicity, self.p_periodicity)

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "q0": self.q0,
            "block": list(self.block),
            "located": self.located,
            "signs_ok": self.signs_ok,
            "q_periodicity": self.q_periodicity,
            "p_periodicity": self.p_periodicity,
            "peak_ratio": self.peak_ratio,
            "peaks": {f"{m},{n}": v for (m, n), v in self.peaks.items()},
        }


def comb_wigner_check(epsilon: float, q0: float = math.sqrt(2 * math.pi), L: int = 64, M: int = 8,
                      block=(-2, -1, 0, 1)) -> CombWignerReport:
    """Lattice structure of the Wigner function of an ``epsilon``-smoothed comb.

    Peaks of the ideal comb sit at ``(m q0/2, n pi/q0)`` with sign ``(-1)^{mn}``.
    Periodicity is measured as the largest change under ``q -> q + q0`` and
    ``p -> p + 2 pi/q0``, relative to the peak value, over the fundamental
    region and away from the momentum edges.
    """
    from .states import smoothed_comb

    if not 0 < epsilon < q0 / 8:
        raise EpsilonTooLarge(f"epsilon must lie in (0, q0/8) = (0, {q0 / 8:.4g}), got {epsilon}")
    g = GridSpec.from_cell(q0, L, M)
    if epsilon < 2 * g.dq:
        raise ValueError(f"epsilon = {epsilon:.3g} is below two grid spacings ({2 * g.dq:.3g}); refine L")
    w = wigner_transform(smoothed_comb(g, epsilon))
    W = w.values
    N = g.N
    peak = np.abs(W).max()

    located = True
    signs_ok = True
    peaks = {}
    for m in block:
        for n in block:
            a, c = N + m * L, N + n * M
            v = W[a, c]
            peaks[(m, n)] = float(v)
            window = np.abs(W[a - 1: a + 2, c - 1: c + 2])
            if np.abs(v) < window.max() or abs(v) < 1e-3 * peak:
                located = False
            if np.sign(v) != (-1) ** (m * n):
                signs_ok = False

    fund = w.fundamental()
    inner = np.abs(w.p) < w.p[-1] / 2
    dq_shift = np.roll(W, -2 * L, axis=0) - W
    dp_shift = np.roll(W, -2 * M, axis=1) - W
    q_res = float(np.abs(dq_shift[fund][:, inner]).max() / peak)
    p_res = float(np.abs(dp_shift[fund][:, inner]).max() / peak)
    ratio = float(abs(W[N + L, N + M]) / abs(W[N, N]))
    return CombWignerReport(epsilon, q0, tuple(block), located, signs_ok, q_res, p_res, ratio, peaks)
