"""Periodic phase-space grids, sampled wavefunctions and Weyl displacements.

A :class:`GridSpec` discretises the line into ``N = L * M`` points with period
``Q = N * dq``.  ``L`` samples make up one cell of length ``q0`` and there are
``M`` cells.  Position samples sit at ``q_j = (j - N/2) dq`` and momentum
samples at ``p_k = (k - N/2) dp`` with ``dp = 2 pi / Q``.

Sample vectors carry a ``sqrt(dq)`` (``sqrt(dp)``) factor so that plain
Euclidean inner products equal continuum L2 inner products.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch, NonCommensurateDisplacement, SnapWarning

_COMMENSURATE_TOL = 1e-8


@dataclass(frozen=True)
class GridSpec:
    L: int
    M: int
    dq: float

    def __post_init__(self):
        if self.L <= 0 or self.M <= 0:
            raise GridMismatch(f"L and M must be positive, got L={self.L}, M={self.M}")
        if self.L % 2 or self.M % 2:
            raise GridMismatch(f"L and M must both be even, got L={self.L}, M={self.M}")
        if not self.dq > 0:
            raise GridMismatch(f"dq must be positive, got {self.dq}")

    @classmethod
    def from_cell(cls, q0: float, L: int, M: int) -> "GridSpec":
        """Grid with ``L`` samples per cell of length ``q0`` and ``M`` cells."""
        return cls(L=L, M=M, dq=q0 / L)

    @property
    def N(self) -> int:
        return self.L * self.M

    @property
    def q0(self) -> float:
        return self.L * self.dq

    @property
    def Q(self) -> float:
        return self.N * self.dq

    @property
    def dp(self) -> float:
        return 2 * math.pi / self.Q

    @property
    def p_cell(self) -> float:
        """Momentum period ``2 pi / q0`` of one Zak cell (equals ``M * dp``)."""
        return 2 * math.pi / self.q0

    @property
    def q(self) -> np.ndarray:
        return (np.arange(self.N) - self.N // 2) * self.dq

    @property
    def p(self) -> np.ndarray:
        return (np.arange(self.N) - self.N // 2) * self.dp

    def to_dict(self) -> dict:
        return {"N": self.N, "L": self.L, "M": self.M, "dq": self.dq}

    @classmethod
    def from_dict(cls, d: dict) -> "GridSpec":
        L, dq = int(d["L"]), float(d["dq"])
        if "M" in d:
            M = int(d["M"])
        else:
            N = int(d["N"])
            if N % L:
                raise GridMismatch(f"N={N} is not a multiple of L={L}")
            M = N // L
        if "N" in d and int(d["N"]) != L * M:
            raise GridMismatch(f"N={d['N']} != L*M={L * M}")
        return cls(L=L, M=M, dq=dq)


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Signal:
    """Position-space samples ``psi(q_j) * sqrt(dq)``."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = _frozen(self.values)
        if v.shape != (self.grid.N,):
            raise GridMismatch(f"expected {self.grid.N} samples, got shape {v.shape}")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_wavefunction(cls, grid: GridSpec, psi) -> "Signal":
        """Sample a callable (or array of wavefunction values) onto ``grid``."""
        vals = psi(grid.q) if callable(psi) else np.asarray(psi)
        return cls(grid, np.asarray(vals, dtype=complex) * math.sqrt(grid.dq))

    @property
    def wavefunction(self) -> np.ndarray:
        return self.values / math.sqrt(self.grid.dq)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def normalized(self) -> "Signal":
        return Signal(self.grid, self.values / self.norm())

    def inner(self, other: "Signal") -> complex:
        """``<self|other>``, antilinear in ``self``."""
        return complex(np.vdot(self.values, other.values))

    def __add__(self, other):
        return Signal(self.grid, self.values + other.values)

    def __sub__(self, other):
        return Signal(self.grid, self.values - other.values)

    def __mul__(self, c):
        return Signal(self.grid, self.values * c)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class MomentumSignal:
    """Momentum-space samples ``phi(p_k) * sqrt(dp)``."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = _frozen(self.values)
        if v.shape != (self.grid.N,):
            raise GridMismatch(f"expected {self.grid.N} samples, got shape {v.shape}")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_wavefunction(cls, grid: GridSpec, phi) -> "MomentumSignal":
        vals = phi(grid.p) if callable(phi) else np.asarray(phi)
        return cls(grid, np.asarray(vals, dtype=complex) * math.sqrt(grid.dp))

    @property
    def wavefunction(self) -> np.ndarray:
        return self.values / math.sqrt(self.grid.dp)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


@dataclass(frozen=True)
class PhasePoint:
    q: float
    p: float

    def __neg__(self):
        return PhasePoint(-self.q, -self.p)


def fourier_forward(s: Signal) -> MomentumSignal:
    """Unitary transform with kernel ``exp(-i q p) / sqrt(2 pi)``.

    On the centred grids ``q_j p_k = 2 pi (j - N/2)(k - N/2) / N`` so this is the
    orthonormal DFT conjugated by half-length shifts.
    """
    v = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(s.values), norm="ortho"))
    return MomentumSignal(s.grid, v)


def fourier_inverse(m: MomentumSignal) -> Signal:
    v = np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(m.values), norm="ortho"))
    return Signal(m.grid, v)


def lattice_indices(g: GridSpec, d: PhasePoint) -> tuple[int, int]:
    """Integer steps ``(a, b)`` with ``d = (a dq, b dp)``; raises if off-grid."""
    a, b = d.q / g.dq, d.p / g.dp
    ia, ib = round(a), round(b)
    if abs(a - ia) > _COMMENSURATE_TOL * max(1.0, abs(a)) or abs(b - ib) > _COMMENSURATE_TOL * max(1.0, abs(b)):
        raise NonCommensurateDisplacement(
            f"displacement ({d.q}, {d.p}) is not a multiple of (dq, dp) = ({g.dq}, {g.dp}); "
            "use snap_to_grid first"
        )
    return int(ia), int(ib)


def displace_indices(s: Signal, a: int, b: int) -> Signal:
    """``D(a dq, b dp)`` applied to ``s``.

    The wavefunction becomes ``exp(i p (x - q/2)) psi(x - q)``.  The phase is
    reduced as an integer modulo ``2N`` before exponentiating so that repeated
    displacements compose to machine precision.
    """
    N = s.grid.N
    j = np.arange(N) - N // 2
    # p (x - q/2) = pi * (2 b j - a b) / N
    k = np.mod(2 * b * j - a * b, 2 * N)
    phase = np.exp(1j * np.pi * k / N)
    return Signal(s.grid, phase * np.roll(s.values, a))


def displace(s: Signal, d: PhasePoint) -> Signal:
    a, b = lattice_indices(s.grid, d)
    return displace_indices(s, a, b)


def weyl_phase_check(s: Signal, q: float, p: float) -> float:
    """Max deviation from ``U(p) V(q) = exp(i q p) V(q) U(p)`` on ``s``."""
    a, b = lattice_indices(s.grid, PhasePoint(q, p))
    uv = displace_indices(displace_indices(s, a, 0), 0, b)
    vu = displace_indices(displace_indices(s, 0, b), a, 0)
    phase = np.exp(1j * np.pi * np.mod(2 * a * b, 2 * s.grid.N) / s.grid.N)
    return float(np.max(np.abs(uv.values - phase * vu.values), initial=0.0))


def snap_to_grid(g: GridSpec, x: PhasePoint) -> PhasePoint:
    """Nearest grid-commensurate displacement; warns when the point moved."""
    snapped = PhasePoint(round(x.q / g.dq) * g.dq, round(x.p / g.dp) * g.dp)
    moved = math.hypot(snapped.q - x.q, snapped.p - x.p)
    if moved > 0:
        warnings.warn(
            f"snapped ({x.q:.6g}, {x.p:.6g}) -> ({snapped.q:.6g}, {snapped.p:.6g})",
            SnapWarning,
            stacklevel=2,
        )
    return snapped
