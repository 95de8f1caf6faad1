import math

import numpy as np
import pytest

from zaksampling import (
    BandSpec,
    FiducialVector,
    GridSpec,
    IllConditioned,
    LatticeSpec,
    LatticeSpecError,
    NonvanishingViolated,
    Signal,
    bandlimit_project,
    displace_indices,
    build_lattice,
    factorization_residual,
    fourier_forward,
    gram_analysis,
    orthonormality_test,
    projected_inner_products,
    projected_reconstruct,
    smoothing_apply,
    st_equivalence_check,
    totality_test,
    zak_forward,
)
from zaksampling.lattice import lattice_zak_factor
from zaksampling.states import (
    bandlimited_fiducial,
    bandlimited_mixture,
    box,
    comb,
    gaussian,
    notched_momentum,
    pure_phase_fiducial,
    sech_momentum,
    standard_cs,
)

from conftest import SQRT_2PI, random_signal

G = GridSpec.from_cell(SQRT_2PI, 16, 16)
VN = 2 * math.pi / SQRT_2PI


def library(rng):
    return {
        "gaussian": gaussian(G),
        "box": box(G),
        "comb": comb(G),
        "pure_phase": pure_phase_fiducial(G, rng=rng),
        "sech": sech_momentum(G),
        "bandlimited": bandlimited_fiducial(G, G.p_cell / 2),
        "random": random_signal(G, rng),
    }


def test_spec_rejects_coarse_lattice():
    with pytest.raises(LatticeSpecError):
        LatticeSpec(SQRT_2PI, 1.01 * VN, (0, 1), (0, 1))
    with pytest.raises(LatticeSpecError):
        LatticeSpec(SQRT_2PI, VN, (2, 1), (0, 1))
    LatticeSpec(SQRT_2PI, 1.01 * VN, (0, 1), (0, 1), check=False)


def test_fiducial_is_normalised(rng):
    f = FiducialVector(random_signal(G, rng) * 3.0)
    assert f.signal.norm() == pytest.approx(1.0, abs=1e-14)
    assert np.allclose(f.chi.values, zak_forward(f.signal).values)


def test_lattice_states_are_displacements():
    f = FiducialVector(gaussian(G))
    lat = build_lattice(f, LatticeSpec(SQRT_2PI, VN, (-1, 1), (-1, 1)))
    want = standard_cs(G, SQRT_2PI, -VN)
    # D(q, p) of the ground state is the coherent state (q, p)
    assert np.allclose(lat.state(1, -1).values, want.values, atol=1e-12)


def test_zak_factorization():
    f = FiducialVector(gaussian(G, 0.2, 0.8, 0.3))
    lat = build_lattice(f, LatticeSpec(SQRT_2PI, VN, (-3, 2), (-2, 3)))
    assert factorization_residual(lat) < 1e-12
    z = lattice_zak_factor(f, 0, 0)
    assert np.allclose(z.values, f.chi.values)


def test_factorization_requires_von_neumann():
    f = FiducialVector(gaussian(G))
    lat = build_lattice(f, LatticeSpec(SQRT_2PI, VN / 2, (0, 1), (0, 1)))
    with pytest.raises(LatticeSpecError):
        factorization_residual(lat)


def test_pure_phase_fiducial_gives_orthonormal_total_lattice(rng):
    f = FiducialVector(pure_phase_fiducial(G, rng=rng))
    assert orthonormality_test(f)[0]
    assert totality_test(f)[0]
    gram = gram_analysis(build_lattice(f, LatticeSpec(SQRT_2PI, VN, (-4, 3), (-4, 3)))).gram
    assert np.abs(gram - np.eye(len(gram))).max() < 1e-12


def test_gaussian_is_not_total_on_the_grid():
    f = FiducialVector(gaussian(G))
    total, lo = totality_test(f)
    assert not total and lo < 1e-12
    # the full torus lattice loses exactly one dimension at the Zak zero
    rep = gram_analysis(build_lattice(f, LatticeSpec(SQRT_2PI, VN, (0, G.M - 1), (0, G.L - 1))))
    assert rep.numerical_rank == G.N - 1


def test_orthonormal_implies_total_across_library(rng):
    for name, s in library(rng).items():
        f = FiducialVector(s)
        ortho, _ = orthonormality_test(f)
        total, _ = totality_test(f)
        assert total or not ortho, name


def test_gram_report_marks_finer_lattices_exploratory():
    f = FiducialVector(gaussian(G))
    rep = gram_analysis(build_lattice(f, LatticeSpec(SQRT_2PI, VN / 2, (-2, 1), (-2, 1))))
    assert rep.exploratory
    assert rep.n_states == 16
    A, B = rep.frame_bounds
    assert 0 < A <= B
    assert rep.condition == pytest.approx(B / A)


def test_finer_lattice_has_better_interior_frame_bounds():
    # same phase-space window, twice and four times the density in p
    f = FiducialVector(gaussian(G))
    conds, lower = [], []
    for k in (1, 2, 4):
        spec = LatticeSpec(SQRT_2PI, VN / k, (-4, 3), (-4 * k, 4 * k - 1))
        A, B = gram_analysis(build_lattice(f, spec), interior=True).interior_bounds
        assert 0 < A <= B
        conds.append(B / A)
        lower.append(A)
    # the von Neumann window is close to the edge of being a frame
    assert lower[0] < 0.2 < 1 < lower[1] < lower[2]
    assert conds[0] > 5 * max(conds[1], conds[2])


def test_smoothing_operators(rng):
    s = random_signal(G, rng)
    assert np.allclose(smoothing_apply(s, "S1").values, np.exp(-G.q**2 / 2) * s.values)
    g2 = smoothing_apply(s, "S2")
    assert np.allclose(fourier_forward(g2).values, np.exp(-G.p**2 / 2) * fourier_forward(s).values)


def test_s_of_ground_state_is_s2():
    # coarse grid so that phi0 stays above the nonvanishing threshold at the edge
    g = GridSpec.from_cell(SQRT_2PI, 6, 16)
    s = random_signal(g, np.random.default_rng(1))
    f = FiducialVector(standard_cs(g, 0.0, 0.0))
    got = smoothing_apply(s, "S_of", f).values
    assert np.allclose(got, math.pi**-0.25 * smoothing_apply(s, "S2").values, atol=1e-12)
    with pytest.raises(NonvanishingViolated):
        smoothing_apply(s, "S_of", FiducialVector(gaussian(G)))


def test_s2_commutes_with_band_projection(rng):
    s = random_signal(G, rng)
    b = BandSpec(VN / 2, 1)
    one = bandlimit_project(smoothing_apply(s, "S2"), b)
    two = smoothing_apply(bandlimit_project(s, b), "S2")
    assert np.allclose(one.values, two.values, atol=1e-14)


def test_s2_of_delta_is_coherent_state():
    g = GridSpec.from_cell(SQRT_2PI, 32, 32)
    j = g.N // 2 + 37
    d = np.zeros(g.N, dtype=complex)
    d[j] = 1.0
    s = smoothing_apply(Signal(g, d), "S2").normalized()
    assert np.abs(s.wavefunction - standard_cs(g, g.q[j], 0.0).wavefunction).max() < 1e-12


def test_s_of_rejects_vanishing_fiducial():
    f = FiducialVector(notched_momentum(G, 0.5))
    with pytest.raises(NonvanishingViolated):
        smoothing_apply(gaussian(G), "S_of", f)


def test_lattice_covariance_phase():
    f = FiducialVector(gaussian(G, 0.3))
    p0 = VN / 2
    lat = build_lattice(f, LatticeSpec(SQRT_2PI, p0, (-2, 2), (-2, 2)))
    for n, m in [(1, 1), (-2, 1), (2, -2)]:
        # D(n q0, 0) D(0, m p0) = exp(i m n q0 p0 / 2) D(n q0, m p0)
        a, b = n * G.L, m * G.M // 2
        step = displace_indices(displace_indices(f.signal, 0, b), a, 0)
        phase = np.exp(-1j * m * n * SQRT_2PI * p0 / 2)
        assert np.allclose(step.values, phase * lat.state(n, m).values, atol=1e-12)


def test_comb_is_fixed_by_stability_subgroup():
    s = comb(G)
    assert np.allclose(displace_indices(s, G.L, 0).values, s.values, atol=1e-14)
    assert np.allclose(displace_indices(s, 0, G.M).values, s.values, atol=1e-14)


def test_comb_states_at_distinct_points_are_orthogonal():
    s = comb(G)
    ref = displace_indices(s, 0, 0)
    for a, b in [(1, 0), (0, 1), (3, 5), (G.L - 1, G.M - 1)]:
        assert abs(ref.inner(displace_indices(s, a, b))) < 1e-12


def test_coherent_state_overlap_and_displacement():
    g = GridSpec.from_cell(SQRT_2PI, 32, 16)
    zero = standard_cs(g, 0.0, 0.0)
    for q in (0.5, 1.3, 2.0):
        assert abs(zero.inner(standard_cs(g, q, 0.0))) == pytest.approx(math.exp(-q * q / 4), abs=1e-12)
    a, b = 9, -5
    d = displace_indices(zero, a, b)
    assert np.allclose(d.values, standard_cs(g, a * g.dq, b * g.dp).values, atol=1e-12)


def _multiband(rng, p0, ms):
    psi = Signal(G, np.zeros(G.N, dtype=complex))
    for m in ms:
        psi = psi + bandlimited_mixture(G, BandSpec(p0, m), rng)
    return psi.normalized()


@pytest.mark.parametrize("p0, ms", [(VN, (-1, 1)), (VN / 2, (-2, 2))])
@pytest.mark.parametrize("make", [gaussian, sech_momentum])
def test_projected_reconstruction(rng, p0, ms, make):
    f = FiducialVector(make(G))
    spec = LatticeSpec(SQRT_2PI, p0, (0, G.M - 1), ms)
    lat = build_lattice(f, spec)
    psi = _multiband(rng, p0, range(ms[0], ms[1] + 1))
    rec = projected_reconstruct(lat, projected_inner_products(lat, psi))
    assert (rec - psi).norm() < 1e-10


def test_projected_reconstruction_reports_in_band_zero(rng):
    f = FiducialVector(notched_momentum(G, 0.5))
    spec = LatticeSpec(SQRT_2PI, VN, (0, G.M - 1), (-1, 1))
    lat = build_lattice(f, spec)
    psi = _multiband(rng, VN, (-1, 0, 1))
    with pytest.raises(IllConditioned) as info:
        projected_reconstruct(lat, projected_inner_products(lat, psi))
    assert info.value.partial is not None
    assert max(info.value.conditions.values()) > 1e10


def test_projected_reconstruction_shape_checked():
    f = FiducialVector(gaussian(G))
    lat = build_lattice(f, LatticeSpec(SQRT_2PI, VN, (0, 3), (0, 1)))
    with pytest.raises(ValueError):
        projected_reconstruct(lat, np.zeros((3, 2)))


def test_st_equivalence(rng):
    g = GridSpec.from_cell(1.0, 16, 64)
    b = BandSpec(g.p_cell / 2)
    s = bandlimited_mixture(g, b, rng)
    for make in (gaussian, sech_momentum):
        assert st_equivalence_check(FiducialVector(make(g)), s, b.p0) < 1e-10
    with pytest.raises(IllConditioned):
        st_equivalence_check(FiducialVector(notched_momentum(g, 0.5)), s, b.p0)
