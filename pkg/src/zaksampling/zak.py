"""Finite Zak transform on the periodic grid.

The Zak array lives on the rectangle ``[-q0/2, q0/2) x [-pi/q0, pi/q0)``
sampled with ``L`` points in ``q`` (spacing ``dq``) and ``M`` points in ``p``
(spacing ``dp = 2 pi / (q0 M)``).  Two conventions are supported: ``ANGULAR``
sums position samples over the ``M`` cells, ``ROUND`` sums momentum samples
over the ``L`` momentum cells.  They differ pointwise by ``exp(i q p)``.

With ``L`` and ``M`` even the cell sums are exact over the torus: the phase of
the ``n``-th term is unchanged by ``n -> n + M`` so the choice of which cell is
labelled ``n = 0`` does not affect the result.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConventionMismatch, GridMismatch
from .grid import (
    GridSpec,
    MomentumSignal,
    PhasePoint,
    Signal,
    fourier_forward,
    fourier_inverse,
    lattice_indices,
)


class Convention(str, enum.Enum):
    ANGULAR = "angular"
    ROUND = "round"


@dataclass(frozen=True, eq=False)
class ZakArray:
    grid: GridSpec
    convention: Convention
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (self.grid.L, self.grid.M):
            raise GridMismatch(f"Zak array must be {self.grid.L}x{self.grid.M}, got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "convention", Convention(self.convention))

    @property
    def q(self) -> np.ndarray:
        g = self.grid
        return (np.arange(g.L) - g.L // 2) * g.dq

    @property
    def p(self) -> np.ndarray:
        g = self.grid
        return (np.arange(g.M) - g.M // 2) * g.dp

    def norm(self) -> float:
        g = self.grid
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * g.dq * g.dp))

    def to_angular(self) -> "ZakArray":
        if self.convention is Convention.ANGULAR:
            return self
        return ZakArray(self.grid, Convention.ANGULAR, self.values * geometric_phase(self.grid))

    def to_round(self) -> "ZakArray":
        if self.convention is Convention.ROUND:
            return self
        return ZakArray(self.grid, Convention.ROUND, self.values * np.conj(geometric_phase(self.grid)))


@dataclass(frozen=True)
class ZeroReport:
    location: tuple[float, float]
    index: tuple[int, int]
    min_abs: float
    max_abs: float
    winding: int
    # False when the quasi-periodic extension jumps across the cell seam, in
    # which case no zero is guaranteed.
    continuous: bool


def geometric_phase(g: GridSpec) -> np.ndarray:
    """``exp(i q_j p_k)`` on the Zak rectangle, reduced exactly modulo ``2 pi``."""
    j = np.arange(g.L) - g.L // 2
    k = np.arange(g.M) - g.M // 2
    # q_j p_k = 2 pi j k / N
    return np.exp(2j * np.pi * np.mod(np.outer(j, k), g.N) / g.N)


def _cells(v: np.ndarray, g: GridSpec) -> np.ndarray:
    """Rearrange a length-N position vector into ``A[j, n] = v(q_j + n q0)``."""
    w = np.roll(v, -(g.N // 2 - g.L // 2))
    return w.reshape(g.M, g.L).T


def _uncells(A: np.ndarray, g: GridSpec) -> np.ndarray:
    return np.roll(A.T.reshape(g.N), g.N // 2 - g.L // 2)


def _mcells(v: np.ndarray, g: GridSpec) -> np.ndarray:
    """Rearrange a length-N momentum vector into ``B[k, n] = v(p_k + n 2pi/q0)``."""
    w = np.roll(v, -(g.N // 2 - g.M // 2))
    return w.reshape(g.L, g.M).T


def _unmcells(B: np.ndarray, g: GridSpec) -> np.ndarray:
    return np.roll(B.T.reshape(g.N), g.N // 2 - g.M // 2)


def _alternating(n: int) -> np.ndarray:
    return 1.0 - 2.0 * (np.arange(n) % 2)


def zak_forward(s: Signal) -> ZakArray:
    """Angular Zak transform ``sqrt(q0/2pi) sum_n exp(-i n q0 p) psi(q + n q0)``."""
    g = s.grid
    A = _cells(s.wavefunction, g)
    # exp(-i n q0 p_k) = (-1)^n exp(-2 pi i n k / M)
    chi = math.sqrt(g.q0 / (2 * math.pi)) * np.fft.fft(A * _alternating(g.M), axis=1)
    return ZakArray(g, Convention.ANGULAR, chi)


def zak_forward_round(s: Signal) -> ZakArray:
    """Round Zak transform from momentum samples.

    ``q0^{-1/2} sum_n exp(2 pi i n q / q0) phi(p + 2 pi n / q0)`` with the sum
    running over the ``L`` momentum cells.
    """
    g = s.grid
    B = _mcells(fourier_forward(s).wavefunction, g)
    # exp(2 pi i n q_j / q0) = (-1)^n exp(2 pi i n j / L)
    chi = g.L * np.fft.ifft(B * _alternating(g.L), axis=1) / math.sqrt(g.q0)
    return ZakArray(g, Convention.ROUND, chi.T)


def zak_inverse_position(z: ZakArray) -> Signal:
    """``psi(q) = sqrt(q0/2pi) int dp exp(i q p) chi~([q], p)`` as a grid sum."""
    if z.convention is not Convention.ROUND:
        raise ConventionMismatch("zak_inverse_position expects a round-convention array")
    g = z.grid
    # exp(i (q_j + n q0) p_k) chi~ = exp(i n q0 p_k) chi, and
    # exp(i n q0 p_k) = (-1)^n exp(2 pi i n k / M)
    chi = z.values * geometric_phase(g)
    A = math.sqrt(g.q0 / (2 * math.pi)) * g.dp * g.M * np.fft.ifft(chi, axis=1) * _alternating(g.M)
    return Signal.from_wavefunction(g, _uncells(A, g))


def zak_inverse_momentum(z: ZakArray) -> MomentumSignal:
    """``phi(p) = q0^{-1/2} int dq exp(-i q p) chi(q, [p])`` as a grid sum."""
    if z.convention is not Convention.ANGULAR:
        raise ConventionMismatch("zak_inverse_momentum expects an angular-convention array")
    g = z.grid
    # exp(-i q_j (p_k + n 2pi/q0)) chi = exp(-2 pi i n q_j / q0) chi~ and
    # exp(-2 pi i n q_j / q0) = (-1)^n exp(-2 pi i n j / L)
    chit = z.values * np.conj(geometric_phase(g))
    B = g.dq * np.fft.fft(chit, axis=0) * _alternating(g.L)[:, None] / math.sqrt(g.q0)
    return MomentumSignal.from_wavefunction(g, _unmcells(B.T, g))


def zak_to_signal(z: ZakArray) -> Signal:
    if z.convention is Convention.ROUND:
        return zak_inverse_position(z)
    return fourier_inverse(zak_inverse_momentum(z))


def _direct_angular(psi: np.ndarray, g: GridSpec, j_shift: int, p: np.ndarray) -> np.ndarray:
    """Direct (matrix) evaluation of the angular sum at ``q_j + j_shift dq`` and momenta ``p``."""
    A = _cells(np.roll(psi, -j_shift), g)
    n = np.arange(g.M)
    E = np.exp(-1j * np.outer(p, n) * g.q0)
    return math.sqrt(g.q0 / (2 * math.pi)) * A @ E.T


def _direct_round(phi: np.ndarray, g: GridSpec, q: np.ndarray, k_shift: int) -> np.ndarray:
    B = _mcells(np.roll(phi, -k_shift), g)
    n = np.arange(g.L)
    E = np.exp(2j * np.pi * np.outer(q, n) / g.q0)
    return (E @ B.T) / math.sqrt(g.q0)


def quasiperiodicity_residual(z: ZakArray) -> float:
    """Largest deviation from the cell-shift phase laws.

    The defining sum is re-evaluated directly one cell beyond the rectangle in
    ``q`` and in ``p`` (including the upper edges ``q = q0/2`` and
    ``p = pi/q0``) and compared with the phase-shifted array:

    * angular: ``chi(q + q0, p) = exp(i q0 p) chi``, ``chi(q, p + 2pi/q0) = chi``
    * round: ``chi~(q + q0, p) = chi~``, ``chi~(q, p + 2pi/q0) = exp(-2 pi i q/q0) chi~``
    """
    g = z.grid
    s = zak_to_signal(z)
    q, p = z.q, z.p
    if z.convention is Convention.ANGULAR:
        psi = s.wavefunction
        shifted_q = _direct_angular(psi, g, g.L, p)
        shifted_p = _direct_angular(psi, g, 0, p + g.p_cell)
        r1 = shifted_q - np.exp(1j * g.q0 * p)[None, :] * z.values
        r2 = shifted_p - z.values
    else:
        phi = fourier_forward(s).wavefunction
        shifted_q = _direct_round(phi, g, q + g.q0, 0)
        shifted_p = _direct_round(phi, g, q, g.M)
        r1 = shifted_q - z.values
        r2 = shifted_p - np.exp(-2j * np.pi * q / g.q0)[:, None] * z.values
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))


def zak_extended(z: ZakArray, j: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Values at integer grid indices outside the rectangle via the phase laws."""
    g = z.grid
    j, k = np.asarray(j), np.asarray(k)
    a, j0 = np.divmod(j, g.L)
    b, k0 = np.divmod(k, g.M)
    base = z.values[j0, k0]
    if z.convention is Convention.ANGULAR:
        p = (k0 - g.M // 2) * g.dp
        return base * np.exp(1j * a * g.q0 * p)
    q = (j0 - g.L // 2) * g.dq
    return base * np.exp(-2j * np.pi * b * q / g.q0)


def _winding(z: ZakArray, jc: int, kc: int) -> int:
    g = z.grid
    hl, hm = g.L // 2, g.M // 2
    js = np.arange(jc - hl, jc + hl)
    ks = np.arange(kc - hm, kc + hm)
    jl, jr = jc - hl, jc + hl
    kb, kt = kc - hm, kc + hm
    # counter-clockwise: bottom edge, right edge, top edge reversed, left edge reversed
    jj = np.concatenate([js, np.full(g.M, jr), js[::-1] + 1, np.full(g.M, jl)])
    kk = np.concatenate([np.full(g.L, kb), ks, np.full(g.L, kt), ks[::-1] + 1])
    vals = zak_extended(z, jj, kk)
    vals = np.append(vals, vals[0])
    dphi = np.angle(vals[1:] / vals[:-1])
    return int(round(float(np.sum(dphi)) / (2 * np.pi)))


def locate_zero(z: ZakArray) -> ZeroReport:
    """Grid minimum of ``|chi|`` and the phase winding of a cell around it.

    The winding is summed along the boundary of a full fundamental rectangle
    centred on the minimum, so the loop stays as far from that zero as
    possible.  For a continuous Zak function the result is ``+1``.
    """
    g = z.grid
    mag = np.abs(z.values)
    j, k = np.unravel_index(int(np.argmin(mag)), mag.shape)
    winding = _winding(z, int(j), int(k)) if mag.max() > 0 else 0
    seam = np.abs(zak_extended(z, np.full(g.M, g.L), np.arange(g.M)) - z.values[-1, :])
    interior = np.abs(np.diff(z.values, axis=0))
    continuous = bool(seam.max() <= 10 * interior.max() + 1e-300) if g.L > 1 else True
    return ZeroReport(
        location=(float(z.q[j]), float(z.p[k])),
        index=(int(j), int(k)),
        min_abs=float(mag[j, k]),
        max_abs=float(mag.max()),
        winding=winding,
        continuous=continuous,
    )


def _p_derivative(chi: np.ndarray, g: GridSpec) -> np.ndarray:
    # chi(q, p_k) = sum_n c_n exp(-i n q0 p_k) with centred n in [-M/2, M/2)
    c = np.fft.ifft(chi, axis=1)
    n = np.fft.fftfreq(g.M, 1.0 / g.M)
    return np.fft.fft(c * (-1j * n * g.q0)[None, :], axis=1)


def _q_derivative(z: ZakArray) -> np.ndarray:
    g = z.grid
    if g.L < 4:
        raise GridMismatch("fourth-order q-derivative needs L >= 4")
    j = np.arange(-2, g.L + 2)
    k = np.arange(g.M)
    ext = zak_extended(z, j[:, None], k[None, :])
    f = lambda s: ext[2 + s : 2 + s + g.L]  # noqa: E731
    return (-f(2) + 8 * f(1) - 8 * f(-1) + f(-2)) / (12 * g.dq)


def zak_q_action(z: ZakArray) -> ZakArray:
    """Position operator on an angular Zak array: ``q + i d/dp``."""
    z = z.to_angular()
    vals = z.q[:, None] * z.values + 1j * _p_derivative(z.values, z.grid)
    return ZakArray(z.grid, Convention.ANGULAR, vals)


def zak_p_action(z: ZakArray) -> ZakArray:
    """Momentum operator on an angular Zak array: ``-i d/dq`` (finite differences)."""
    z = z.to_angular()
    return ZakArray(z.grid, Convention.ANGULAR, -1j * _q_derivative(z))


def position_operator(s: Signal) -> Signal:
    return Signal(s.grid, s.grid.q * s.values)


def momentum_operator(s: Signal) -> Signal:
    m = fourier_forward(s)
    return fourier_inverse(MomentumSignal(s.grid, s.grid.p * m.values))


def zak_operator_check(s: Signal) -> tuple[float, float]:
    """Compare the Zak image of ``q s`` and ``p s`` with the Zak-side differential actions."""
    z = zak_forward(s)
    rq = np.abs(zak_forward(position_operator(s)).values - zak_q_action(z).values)
    rp = np.abs(zak_forward(momentum_operator(s)).values - zak_p_action(z).values)
    return float(rq.max(initial=0.0)), float(rp.max(initial=0.0))


def frac_q(x, q0: float):
    """Reduce to ``[-q0/2, q0/2)``; ties go to ``-q0/2``."""
    return x - q0 * np.floor((x + q0 / 2) / q0)


def zak_displace(z: ZakArray, d: PhasePoint) -> ZakArray:
    """Angular Zak array of ``D(q', p') psi`` from that of ``psi``.

    A cyclic translation of the rectangle by ``(q', p')`` followed by the phase
    ``p' (q - q'/2) + (q - q' - [q - q']) (p - p')``.
    """
    z = z.to_angular()
    g = z.grid
    a, b = lattice_indices(g, d)
    qd, pd = a * g.dq, b * g.dp
    q = z.q[:, None]
    p = z.p[None, :]
    jj = np.mod(np.arange(g.L) - a, g.L)
    kk = np.mod(np.arange(g.M) - b, g.M)
    moved = z.values[np.ix_(jj, kk)]
    wrap = q - qd - frac_q(q - qd, g.q0)
    phase = pd * (q - qd / 2) + wrap * (p - pd)
    return ZakArray(g, Convention.ANGULAR, np.exp(1j * phase) * moved)


def xi_phase(q, p, qd, pd, q0: float):
    """The phase ``xi(q, p, q', p')`` as written in the displacement law for Zak bras."""
    fq = frac_q(q - qd, q0)
    fp = frac_q(p - pd, 2 * math.pi / q0)
    return q * pd - p * qd + 0.5 * (q * p + q * fp - p * fq - fq * fp)
