"""Coherent-state lattices, smoothing operators and lattice totality tests.

A lattice is the set of displaced copies ``D(n q0, m p0) psi0`` of a
normalised fiducial state.  With ``p0 = 2 pi / q0`` it is the von Neumann
lattice, with ``p0 < 2 pi / q0`` a finer one.

Totality is assessed two ways.  The Zak criterion (``chi0`` has no zero on the
rectangle) is exact at grid resolution for von Neumann lattices.  The SVD of
the synthesis map of a truncated lattice gives frame bounds and a numerical
rank, which is only indicative because of the truncation.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IllConditioned, LatticeSpecError, NonvanishingViolated
from .grid import (
    GridSpec,
    MomentumSignal,
    PhasePoint,
    Signal,
    displace_indices,
    fourier_forward,
    fourier_inverse,
    lattice_indices,
)
from .sampling import BandSpec, bandlimit_project, reconstruct_sinc, SampleSet
from .zak import ZakArray, zak_forward

RANK_TOL = 1e-8
MAX_CONDITION = 1e10


@dataclass(frozen=True, eq=False)
class FiducialVector:
    signal: Signal
    phi: MomentumSignal = field(init=False)
    chi: ZakArray = field(init=False)

    def __post_init__(self):
        s = self.signal
        if abs(s.norm() - 1) > 1e-12:
            s = s.normalized()
            object.__setattr__(self, "signal", s)
        object.__setattr__(self, "phi", fourier_forward(s))
        object.__setattr__(self, "chi", zak_forward(s))

    @property
    def grid(self) -> GridSpec:
        return self.signal.grid


@dataclass(frozen=True)
class LatticeSpec:
    """Lattice ``(n q0, m p0)`` with inclusive index ranges."""

    q0: float
    p0: float
    n_range: tuple[int, int]
    m_range: tuple[int, int]
    check: bool = True

    def __post_init__(self):
        if self.n_range[0] > self.n_range[1] or self.m_range[0] > self.m_range[1]:
            raise LatticeSpecError(f"empty index range n={self.n_range}, m={self.m_range}")
        if self.check and self.q0 * self.p0 > 2 * math.pi * (1 + 1e-12):
            raise LatticeSpecError(
                f"q0*p0 = {self.q0 * self.p0:.6g} exceeds 2 pi: lattice coarser than von Neumann"
            )

    @property
    def ns(self) -> np.ndarray:
        return np.arange(self.n_range[0], self.n_range[1] + 1)

    @property
    def ms(self) -> np.ndarray:
        return np.arange(self.m_range[0], self.m_range[1] + 1)

    @property
    def is_von_neumann(self) -> bool:
        return abs(self.q0 * self.p0 - 2 * math.pi) < 1e-9

    def to_dict(self) -> dict:
        return {
            "q0": self.q0,
            "p0": self.p0,
            "n_min": int(self.n_range[0]),
            "n_max": int(self.n_range[1]),
            "m_min": int(self.m_range[0]),
            "m_max": int(self.m_range[1]),
        }


@dataclass(frozen=True, eq=False)
class GCSLattice:
    spec: LatticeSpec
    fiducial: FiducialVector
    # vectors[i, j] holds the samples of the state (ns[i], ms[j])
    vectors: np.ndarray

    def state(self, n: int, m: int) -> Signal:
        i = n - self.spec.n_range[0]
        j = m - self.spec.m_range[0]
        return Signal(self.fiducial.grid, self.vectors[i, j])

    def matrix(self) -> np.ndarray:
        """States as rows, ordered with ``n`` slowest."""
        return self.vectors.reshape(-1, self.fiducial.grid.N)


@dataclass(frozen=True, eq=False)
class GramReport:
    gram: np.ndarray
    singular_values: np.ndarray
    numerical_rank: int
    frame_bounds: tuple[float, float]
    condition: float
    n_states: int
    exploratory: bool
    # frame-operator bounds on signals localised inside the window, if requested
    interior_bounds: tuple[float, float] | None = None

    def to_dict(self) -> dict:
        return {
            "interior_bounds": list(self.interior_bounds) if self.interior_bounds else None,
            "n_states": self.n_states,
            "numerical_rank": self.numerical_rank,
            "frame_bounds": list(self.frame_bounds),
            "condition": self.condition,
            "sigma_max": float(self.singular_values[0]) if self.singular_values.size else 0.0,
            "sigma_min": float(self.singular_values[-1]) if self.singular_values.size else 0.0,
            "exploratory": self.exploratory,
        }


class Smoothing(str, enum.Enum):
    S1 = "S1"
    S2 = "S2"
    S_OF = "S_of"


def smoothing_apply(s: Signal, which, fiducial: FiducialVector | None = None) -> Signal:
    """Apply ``exp(-q^2/2)``, ``exp(-p^2/2)`` or ``phi0(p)`` as a diagonal operator."""
    which = Smoothing(which)
    g = s.grid
    if which is Smoothing.S1:
        return Signal(g, np.exp(-(g.q**2) / 2) * s.values)
    m = fourier_forward(s)
    if which is Smoothing.S2:
        mult = np.exp(-(g.p**2) / 2)
    else:
        if fiducial is None:
            raise ValueError("S_of needs a fiducial")
        mult = fiducial.phi.wavefunction
        if np.min(np.abs(mult)) < 1e-13:
            raise NonvanishingViolated(f"min |phi0| = {np.min(np.abs(mult)):.3g} on the grid")
    return fourier_inverse(MomentumSignal(g, mult * m.values))


def _lattice_steps(g: GridSpec, spec: LatticeSpec) -> tuple[int, int]:
    return lattice_indices(g, PhasePoint(spec.q0, spec.p0))


def build_lattice(f: FiducialVector, spec: LatticeSpec) -> GCSLattice:
    g = f.grid
    a, b = _lattice_steps(g, spec)
    vecs = np.empty((spec.ns.size, spec.ms.size, g.N), dtype=complex)
    for i, n in enumerate(spec.ns):
        for j, m in enumerate(spec.ms):
            vecs[i, j] = displace_indices(f.signal, int(n) * a, int(m) * b).values
    vecs.setflags(write=False)
    return GCSLattice(spec, f, vecs)


def totality_test(f: FiducialVector) -> tuple[bool, float]:
    """Von Neumann totality via the Zak criterion: no zero of ``chi0`` on the grid."""
    mag = np.abs(f.chi.values)
    lo = float(mag.min())
    return bool(lo > 1e-6 * mag.max()), lo


def orthonormality_test(f: FiducialVector) -> tuple[bool, float]:
    """Von Neumann orthonormality via ``|chi0| = 1/sqrt(2 pi)`` for a unit-norm state."""
    dev = float(np.max(np.abs(np.abs(f.chi.values) * math.sqrt(2 * math.pi) - 1)))
    return bool(dev < 1e-8), dev


def interior_frame_bounds(lat: GCSLattice, fraction: float = 0.5, spacing: float = 0.5,
                          tol: float = 1e-6) -> tuple[float, float]:
    """Extreme eigenvalues of the frame operator on signals inside the lattice window.

    The test subspace is spanned by coherent states on a ``spacing`` mesh over
    the central ``fraction`` of the window (per axis).  Unlike the bounds on the
    span, these are not dragged down by the redundancy of a dense finite window,
    so they compare lattices of different density over the same region.
    """
    from .states import standard_cs

    g = lat.fiducial.grid
    sp = lat.spec
    qc = (sp.n_range[0] + sp.n_range[1]) / 2 * sp.q0
    pc = (sp.m_range[0] + sp.m_range[1]) / 2 * sp.p0
    hq = (sp.n_range[1] - sp.n_range[0] + 1) * sp.q0 * fraction / 2
    hp = (sp.m_range[1] - sp.m_range[0] + 1) * sp.p0 * fraction / 2
    probes = [standard_cs(g, q, p).values
              for q in np.arange(qc - hq, qc + hq, spacing)
              for p in np.arange(pc - hp, pc + hp, spacing)]
    U, s, _ = np.linalg.svd(np.array(probes).T, full_matrices=False)
    V = U[:, s > tol * s[0]]
    TV = lat.matrix().conj() @ V
    e = np.linalg.eigvalsh(TV.conj().T @ TV)
    return float(e[0]), float(e[-1])


def gram_analysis(lat: GCSLattice, rank_tol: float = RANK_TOL, interior: bool = False) -> GramReport:
    """Gram matrix, singular values of the synthesis map and frame bounds on the span.

    With ``interior=True`` the report also carries :func:`interior_frame_bounds`.
    """
    T = lat.matrix()
    gram = T.conj() @ T.T
    sv = np.linalg.svd(T, compute_uv=False)
    sv = np.sort(sv)[::-1]
    rank = int(np.sum(sv > rank_tol * sv[0])) if sv.size and sv[0] > 0 else 0
    if rank:
        A, B = float(sv[rank - 1] ** 2), float(sv[0] ** 2)
    else:
        A = B = 0.0
    return GramReport(
        gram=gram,
        singular_values=sv,
        numerical_rank=rank,
        frame_bounds=(A, B),
        condition=B / A if A > 0 else math.inf,
        n_states=T.shape[0],
        exploratory=not lat.spec.is_von_neumann,
        interior_bounds=interior_frame_bounds(lat) if interior else None,
    )


def projected_inner_products(lat: GCSLattice, psi: Signal) -> np.ndarray:
    """``<state_nm, P_m(p0) psi>`` over the lattice index ranges."""
    out = np.empty((lat.spec.ns.size, lat.spec.ms.size), dtype=complex)
    for j, m in enumerate(lat.spec.ms):
        pm = bandlimit_project(psi, BandSpec(lat.spec.p0, int(m)))
        out[:, j] = lat.vectors[:, j].conj() @ pm.values
    return out


def _lstsq(A: np.ndarray, c: np.ndarray, rcond: float) -> tuple[np.ndarray, float]:
    U, s, Vh = np.linalg.svd(A, full_matrices=False)
    cond = float(s[0] / s[-1]) if s[-1] > 0 else math.inf
    keep = s > rcond * s[0]
    x = Vh[keep].conj().T @ ((U[:, keep].conj().T @ c) / s[keep])
    return x, cond


def projected_reconstruct(lat: GCSLattice, inner_products: np.ndarray, rcond: float = RANK_TOL,
                          max_condition: float = MAX_CONDITION) -> Signal:
    """Recover ``psi`` band by band from ``<state_nm, P_m psi>``.

    For each ``m`` the row over ``n`` is inverted by truncated-SVD least squares
    for the momentum samples of ``P_m psi``; the bands are then summed.  Bands
    outside ``m_range`` are assumed empty.
    """
    g = lat.fiducial.grid
    c = np.asarray(inner_products, dtype=complex)
    if c.shape != (lat.spec.ns.size, lat.spec.ms.size):
        raise ValueError(f"inner products must have shape {(lat.spec.ns.size, lat.spec.ms.size)}")
    out = np.zeros(g.N, dtype=complex)
    conditions = {}
    for j, m in enumerate(lat.spec.ms):
        idx = BandSpec(lat.spec.p0, int(m)).indices(g)
        mom = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(lat.vectors[:, j], axes=1), axis=1, norm="ortho"), axes=1)
        A = mom[:, idx].conj()
        x, cond = _lstsq(A, c[:, j], rcond)
        out[idx] = x
        conditions[int(m)] = cond
    result = fourier_inverse(MomentumSignal(g, out))
    bad = {m: v for m, v in conditions.items() if v > max_condition}
    if bad:
        raise IllConditioned(f"band condition numbers exceed {max_condition:.0e}: {bad}", partial=result,
                             conditions=conditions)
    return result


def st_equivalence_check(f: FiducialVector, s: Signal, p0: float,
                         max_condition: float = MAX_CONDITION) -> float:
    """Relative error of recovering band-limited ``s`` from ``<n q0, 0; psi0 | s>`` alone.

    The overlaps are samples (times ``sqrt(2 pi)``) of the band-limited state
    whose momentum wavefunction is ``conj(phi0) phi_s``.  That state is
    rebuilt by sinc interpolation and then divided by ``conj(phi0)`` on the band.
    """
    g = f.grid
    band = BandSpec(p0)
    idx = band.indices(g)
    overlaps = np.array([displace_indices(f.signal, int(n) * g.L, 0).inner(s) for n in range(g.M)])
    samples = SampleSet(g, 0.0, overlaps / math.sqrt(2 * math.pi))
    h = fourier_forward(reconstruct_sinc(samples, band)).values
    phi0 = f.phi.wavefunction[idx]
    mag = np.abs(phi0)
    cond = float(mag.max() / mag.min()) if mag.min() > 0 else math.inf
    est = np.zeros(g.N, dtype=complex)
    ok = mag > mag.max() / max_condition
    est[idx[ok]] = h[idx[ok]] / np.conj(phi0[ok])
    rec = fourier_inverse(MomentumSignal(g, est))
    err = float(np.linalg.norm(rec.values - s.values) / s.norm())
    if cond > max_condition:
        raise IllConditioned(f"phi0 nearly vanishes on the band (ratio {cond:.3g}); relative error {err:.3g}",
                             partial=rec, conditions={0: cond})
    return err


def lattice_zak_factor(f: FiducialVector, n: int, m: int) -> ZakArray:
    """Predicted Zak transform ``(-1)^{mn} exp(-i n q0 p + 2 pi i m q / q0) chi0`` of a von Neumann state."""
    g = f.grid
    z = f.chi
    phase = (-1) ** (m * n) * np.exp(-1j * n * g.q0 * z.p[None, :] + 2j * math.pi * m * z.q[:, None] / g.q0)
    return ZakArray(g, z.convention, phase * z.values)


def factorization_residual(lat: GCSLattice) -> float:
    """Largest deviation of the lattice states' Zak transforms from the factorised form."""
    if not lat.spec.is_von_neumann:
        raise LatticeSpecError("the Zak factorisation holds for von Neumann lattices only")
    f = lat.fiducial
    scale = np.abs(f.chi.values).max()
    worst = 0.0
    for n in lat.spec.ns:
        for m in lat.spec.ms:
            got = zak_forward(lat.state(int(n), int(m))).values
            want = lattice_zak_factor(f, int(n), int(m)).values
            worst = max(worst, float(np.abs(got - want).max() / scale))
    return worst
