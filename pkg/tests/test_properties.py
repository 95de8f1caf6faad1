import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from zaksampling import (
    BandSpec,
    GridSpec,
    Signal,
    bandlimit_project,
    displace_indices,
    extract_samples,
    fourier_forward,
    fourier_inverse,
    reconstruct_cauchy,
    reconstruct_sinc,
    zak_forward,
    zak_forward_round,
    zak_to_signal,
)
from zaksampling.zak import geometric_phase

even = st.integers(1, 6).map(lambda k: 2 * k)
grids = st.builds(lambda L, M, dq: GridSpec(L, M, dq), even, even, st.floats(0.05, 0.5))
seeds = st.integers(0, 2**32 - 1)


def _signal(g, seed):
    rng = np.random.default_rng(seed)
    return Signal(g, rng.normal(size=g.N) + 1j * rng.normal(size=g.N)).normalized()


@given(grids, seeds)
def test_fourier_unitary(g, seed):
    s = _signal(g, seed)
    m = fourier_forward(s)
    assert abs(m.norm() - 1) < 1e-12
    assert np.allclose(fourier_inverse(m).values, s.values, atol=1e-12)


@given(grids, seeds)
def test_zak_isometry_and_inverse(g, seed):
    s = _signal(g, seed)
    z = zak_forward(s)
    assert abs(z.norm() - 1) < 1e-12
    assert np.allclose(zak_to_signal(z).values, s.values, atol=1e-12)
    assert np.allclose(zak_forward_round(s).values, np.conj(geometric_phase(g)) * z.values, atol=1e-12)


@given(grids, seeds, st.integers(-50, 50), st.integers(-50, 50))
def test_displacement_is_unitary_and_invertible(g, seed, a, b):
    s = _signal(g, seed)
    d = displace_indices(s, a, b)
    assert abs(d.norm() - 1) < 1e-12
    assert np.allclose(displace_indices(d, -a, -b).values, s.values, atol=1e-12)


@given(grids, seeds, st.integers(-60, 60), st.integers(-60, 60))
def test_inner_products_preserved_by_zak(g, seed, a, b):
    s = _signal(g, seed)
    t = displace_indices(_signal(g, seed + 1), a, b)
    zs, zt = zak_forward(s), zak_forward(t)
    inner = np.vdot(zs.values, zt.values) * g.dq * g.dp
    assert abs(inner - s.inner(t)) < 1e-12


@given(st.sampled_from([8, 16, 32]), st.sampled_from([1, 2, 4]), seeds, st.data())
def test_sinc_reconstructs_any_bandlimited_signal(M, div, seed, data):
    g = GridSpec.from_cell(1.0, 4, M)
    b = BandSpec(g.p_cell / div)
    s = bandlimit_project(_signal(g, seed), b)
    j = data.draw(st.integers(-g.L // 2, g.L // 2))
    rec = reconstruct_sinc(extract_samples(s, j * g.dq), b)
    assert (rec - s).norm() < 1e-11 * max(1.0, s.norm())


@given(st.sampled_from([8, 16, 32]), seeds)
def test_cauchy_on_interior_band(M, seed):
    g = GridSpec.from_cell(1.0, 4, M)
    # symmetric band strictly inside (-pi/q0, pi/q0)
    s = bandlimit_project(_signal(g, seed), BandSpec((M - 1) * g.dp))
    rec = reconstruct_cauchy(extract_samples(s, g.dq))
    assert (rec - s).norm() < 1e-11
