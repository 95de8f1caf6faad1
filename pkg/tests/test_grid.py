import math
import warnings

import numpy as np
import pytest

from zaksampling import (
    GridMismatch,
    GridSpec,
    MomentumSignal,
    NonCommensurateDisplacement,
    PhasePoint,
    Signal,
    SnapWarning,
    displace,
    displace_indices,
    fourier_forward,
    fourier_inverse,
    snap_to_grid,
)
from zaksampling.grid import weyl_phase_check

from conftest import SQRT_2PI, random_signal


def test_grid_geometry():
    g = GridSpec.from_cell(2.0, 8, 4)
    assert g.N == 32
    assert g.q0 == pytest.approx(2.0)
    assert g.Q == pytest.approx(8.0)
    assert g.dp == pytest.approx(2 * math.pi / 8.0)
    assert g.p_cell == pytest.approx(g.M * g.dp)
    assert g.q[g.N // 2] == 0.0 and g.p[g.N // 2] == 0.0
    assert g.q[0] == pytest.approx(-g.Q / 2)


@pytest.mark.parametrize("L, M", [(3, 4), (4, 5), (0, 2)])
def test_grid_rejects_odd_or_empty(L, M):
    with pytest.raises(GridMismatch):
        GridSpec(L, M, 0.1)


def test_grid_dict_roundtrip():
    g = GridSpec.from_cell(SQRT_2PI, 8, 6)
    assert GridSpec.from_dict(g.to_dict()) == g
    assert GridSpec.from_dict({"N": 48, "L": 8, "dq": g.dq}) == g
    with pytest.raises(GridMismatch):
        GridSpec.from_dict({"N": 50, "L": 8, "dq": g.dq})


def test_signal_is_immutable(grid, rng):
    s = random_signal(grid, rng)
    with pytest.raises(ValueError):
        s.values[0] = 1.0


def test_signal_shape_checked(grid):
    with pytest.raises(GridMismatch):
        Signal(grid, np.zeros(grid.N + 1))


def test_fourier_is_unitary_and_invertible(grid, rng):
    s = random_signal(grid, rng)
    m = fourier_forward(s)
    assert m.norm() == pytest.approx(1.0, abs=1e-14)
    assert np.allclose(fourier_inverse(m).values, s.values, atol=1e-14)


def test_fourier_of_gaussian_is_gaussian():
    g = GridSpec.from_cell(SQRT_2PI, 32, 16)
    s = Signal.from_wavefunction(g, lambda x: math.pi ** -0.25 * np.exp(-x**2 / 2))
    phi = fourier_forward(s).wavefunction
    assert np.allclose(phi, math.pi ** -0.25 * np.exp(-g.p**2 / 2), atol=1e-12)


def test_displacement_of_plane_wave_samples(grid):
    # D(q, p) acting on the wavefunction: exp(i p (x - q/2)) psi(x - q)
    s = Signal.from_wavefunction(grid, lambda x: np.exp(-(x - 0.3) ** 2))
    a, b = 5, 3
    q, p = a * grid.dq, b * grid.dp
    got = displace(s, PhasePoint(q, p)).wavefunction
    x = grid.q
    want = np.exp(1j * p * (x - q / 2)) * np.exp(-(x - q - 0.3) ** 2)
    assert np.allclose(got, want, atol=1e-12)


def test_displacement_group_law(grid, rng):
    s = random_signal(grid, rng)
    a1, b1, a2, b2 = 3, -2, -7, 5
    lhs = displace_indices(displace_indices(s, a2, b2), a1, b1)
    # D(1) D(2) = exp(i (q2 p1 - q1 p2)/2) D(1+2) ... with q p = 2 pi a b / N
    phase = np.exp(1j * np.pi * (a2 * b1 - a1 * b2) / grid.N)
    rhs = displace_indices(s, a1 + a2, b1 + b2).values * phase
    assert np.allclose(lhs.values, rhs, atol=1e-13)


def test_displacement_inverse_and_unitarity(grid, rng):
    s = random_signal(grid, rng)
    d = PhasePoint(7 * grid.dq, -4 * grid.dp)
    t = displace(s, d)
    assert t.norm() == pytest.approx(1.0, abs=1e-14)
    assert np.allclose(displace(t, -d).values, s.values, atol=1e-14)


def test_weyl_commutation(grid, rng):
    s = random_signal(grid, rng)
    assert weyl_phase_check(s, 3 * grid.dq, 5 * grid.dp) < 1e-13


def test_noncommensurate_displacement_raises(grid, rng):
    s = random_signal(grid, rng)
    with pytest.raises(NonCommensurateDisplacement):
        displace(s, PhasePoint(0.5 * grid.dq, 0.0))


def test_snap_to_grid_warns_only_when_moved(grid):
    with pytest.warns(SnapWarning):
        x = snap_to_grid(grid, PhasePoint(0.4 * grid.dq, 1.6 * grid.dp))
    assert (x.q, x.p) == (0.0, pytest.approx(2 * grid.dp))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        snap_to_grid(grid, PhasePoint(2 * grid.dq, -grid.dp))


def test_momentum_signal_wavefunction_scaling(grid):
    m = MomentumSignal.from_wavefunction(grid, np.ones(grid.N))
    assert m.norm() == pytest.approx(math.sqrt(grid.N * grid.dp))
