import math

import numpy as np
import pytest

from zaksampling import (
    EpsilonTooLarge,
    GridSpec,
    comb_wigner_check,
    displace_indices,
    fourier_forward,
    marginals,
    wigner_transform,
)
from zaksampling.states import cat_state, gaussian_mixture, standard_cs
from zaksampling.wigner import coherent_state_wigner, upsample, wigner_imag_residual

from conftest import SQRT_2PI

G = GridSpec.from_cell(SQRT_2PI, 32, 16)


def test_upsample_keeps_samples(rng):
    s = gaussian_mixture(G, rng)
    u = upsample(s)
    assert np.allclose(u.wavefunction[::2], s.wavefunction, atol=1e-14)
    assert u.norm() == pytest.approx(s.norm(), abs=1e-14)


def test_coherent_state_closed_form():
    for q, p in [(0.0, 0.0), (1.0, -0.5)]:
        a, b = round(q / G.dq), round(p / G.dp)
        s = standard_cs(G, a * G.dq, b * G.dp)
        w = wigner_transform(s)
        fund = w.fundamental()
        want = coherent_state_wigner(G, a * G.dq, b * G.dp)
        assert np.abs(w.values - want)[fund].max() < 1e-10


def test_reality_marginals_and_total(rng):
    s = gaussian_mixture(G, rng)
    w = wigner_transform(s)
    assert wigner_imag_residual(s) < 1e-12
    pos, mom = marginals(w)
    assert np.allclose(pos, np.abs(s.wavefunction) ** 2, atol=1e-12)
    assert np.allclose(mom, np.abs(fourier_forward(s).wavefunction) ** 2, atol=1e-12)
    assert w.total() == pytest.approx(1.0, abs=1e-12)


def test_ghost_copy_sign_rule(rng):
    w = wigner_transform(gaussian_mixture(G, rng))
    N = G.N
    ghost = np.roll(w.values, -N, axis=0)
    sign = np.where(np.arange(2 * N) % 2, -1.0, 1.0)
    assert np.allclose(ghost, w.values * sign[None, :], atol=1e-12)


def test_displacement_translates_wigner(rng):
    s = gaussian_mixture(G, rng, spread=1.0)
    a, b = 6, -4
    w = wigner_transform(s).values
    wd = wigner_transform(displace_indices(s, a, b)).values
    shifted = np.roll(np.roll(w, 2 * a, axis=0), 2 * b, axis=1)
    assert np.abs(wd - shifted).max() < 1e-10


def test_odd_cat_is_negative_at_origin():
    w = wigner_transform(cat_state(G, 2.0))
    assert w.at(0.0, 0.0) == pytest.approx(-1 / math.pi, abs=1e-8)


def test_comb_lattice_signs_and_q_periodicity():
    r = comb_wigner_check(SQRT_2PI / 20)
    assert r.located
    assert r.signs_ok
    assert r.peaks[(1, 1)] < 0 < r.peaks[(0, 1)]
    assert r.q_periodicity < 1e-12


def test_comb_p_periodicity_improves_as_epsilon_shrinks():
    # the Gaussian teeth put an envelope on the momentum comb, so p-periodicity
    # only holds in the limit of sharp teeth
    wide = comb_wigner_check(0.25)
    narrow = comb_wigner_check(0.1)
    assert narrow.p_periodicity < wide.p_periodicity
    assert abs(narrow.peak_ratio - 1) < abs(wide.peak_ratio - 1)


def test_comb_epsilon_bounds():
    with pytest.raises(EpsilonTooLarge):
        comb_wigner_check(SQRT_2PI / 8)
    with pytest.raises(ValueError):
        comb_wigner_check(0.01)


def test_size_limit():
    with pytest.raises(ValueError):
        wigner_transform(standard_cs(GridSpec.from_cell(SQRT_2PI, 64, 64), 0.0, 0.0))
