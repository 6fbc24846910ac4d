import numpy as np
import pytest

from spinwitness.chain import ChainSpec, build_hamiltonian
from spinwitness.entanglement import bond_correlation
from spinwitness.errors import InstanceTooLarge, MissingVectors
from spinwitness.spectra import diagonalize
from spinwitness.thermal import DensityMatrix, mean_energy, nn_reduced_density, observables, thermal_state

SPECS = [ChainSpec("1/2", 2), ChainSpec("1", 2), ChainSpec("1/2", 6), ChainSpec("1", 4), ChainSpec("3/2", 3)]


def test_spin_half_pair_crosses_at_closed_form(pair_half):
    o = observables(pair_half, 2 / np.log(3))
    assert o.E_mean == pytest.approx(-0.5, abs=1e-12)


def test_spin_one_pair_crosses_at_closed_form(pair_one):
    o = observables(pair_one, 6 / np.log(10))
    assert o.E_mean == pytest.approx(-2.0, abs=1e-12)


def test_low_temperature_limit(pair_one):
    o = observables(pair_one, 1e-3)
    assert o.E_mean == pytest.approx(-4, abs=1e-9)
    assert o.E2_mean == pytest.approx(16, abs=1e-8)
    assert o.variance == pytest.approx(0, abs=1e-9)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.describe())
def test_high_temperature_limit(spec):
    sd = diagonalize(spec)
    o = observables(sd, 1e6)
    assert abs(o.E_mean) < 1e-3 * np.abs(sd.eigenvalues).max()


def test_no_overflow_at_tiny_temperature():
    sd = diagonalize(ChainSpec("5/2", 2, 10.0))
    o = observables(sd, 1e-4)
    assert np.isfinite([o.E_mean, o.E2_mean, o.logZ_shifted]).all()


def test_rejects_bad_temperature(pair_half):
    for T in (0, -1, np.inf, np.nan):
        with pytest.raises(ValueError):
            observables(pair_half, T)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.describe())
def test_energy_monotone_in_temperature(spec):
    sd = diagonalize(spec)
    E = [observables(sd, T).E_mean for T in np.logspace(-2, 2, 200)]
    assert np.all(np.diff(E) >= -1e-12)
    o = observables(sd, 0.7)
    assert sd.eigenvalues[0] <= o.E_mean <= sd.eigenvalues[-1]


def test_variance_definition(pair_one):
    for T in (0.3, 1.0, 5.0):
        o = observables(pair_one, T)
        assert o.variance == pytest.approx(o.E2_mean - o.E_mean**2, abs=1e-10)


@pytest.mark.parametrize("c", [0.5, 2.0])
def test_coupling_covariance(c):
    sd = diagonalize(ChainSpec("1", 4, 1.0))
    sdc = diagonalize(ChainSpec("1", 4, c))
    for T in (0.2, 1.0, 3.0):
        a, b = observables(sd, T), observables(sdc, c * T)
        assert b.E_mean == pytest.approx(c * a.E_mean, abs=1e-9)
        assert b.E2_mean == pytest.approx(c * c * a.E2_mean, abs=1e-9)
        assert b.logZ_shifted == pytest.approx(a.logZ_shifted, abs=1e-9)


@pytest.mark.parametrize("spec", [ChainSpec("1/2", 2), ChainSpec("1", 3), ChainSpec("1/2", 8)],
                         ids=lambda s: s.describe())
def test_full_state_consistency(spec):
    sd = diagonalize(spec, need_vectors=True)
    H = build_hamiltonian(spec).toarray()
    for T in (0.2, 1.0, 4.0):
        rho = thermal_state(sd, T).check()
        o = observables(sd, T)
        assert np.trace(rho.matrix @ H) == pytest.approx(o.E_mean, abs=1e-8)
        assert np.trace(rho.matrix @ H @ H) == pytest.approx(o.E2_mean, abs=1e-8)
        assert rho.trace == pytest.approx(1, abs=1e-12)


def test_infinite_temperature_state_is_maximally_mixed():
    sd = diagonalize(ChainSpec("1/2", 4), need_vectors=True)
    rho = thermal_state(sd, 1e6).matrix
    assert np.abs(rho - np.eye(16) / 16).max() < 1e-6


def test_low_temperature_pair_is_singlet(pair_half):
    rho = thermal_state(pair_half, 1e-3).matrix
    singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
    assert singlet @ rho @ singlet > 1 - 1e-6


def test_state_errors():
    sd = diagonalize(ChainSpec("1/2", 4))
    with pytest.raises(MissingVectors):
        thermal_state(sd, 1.0)
    with pytest.raises(MissingVectors):
        nn_reduced_density(sd, 1.0)
    sdv = diagonalize(ChainSpec("1/2", 4), need_vectors=True)
    with pytest.raises(InstanceTooLarge):
        thermal_state(sdv, 1.0, budget=8)


def test_reduced_equals_full_for_pair(pair_half):
    for T in (1e-3, 1.0):
        np.testing.assert_allclose(
            nn_reduced_density(pair_half, T).matrix, thermal_state(pair_half, T).matrix, atol=1e-12
        )


def _partial_trace_keep01(rho, d, L):
    t = rho.reshape((d,) * (2 * L))
    # contract sites 2..L-1
    for k in range(L - 1, 1, -1):
        t = np.trace(t, axis1=k, axis2=k + t.ndim // 2)
    return t.reshape(d * d, d * d)


@pytest.mark.parametrize("spec", [ChainSpec("1/2", 4), ChainSpec("1", 3), ChainSpec("1/2", 6, 0.6)],
                         ids=lambda s: s.describe())
def test_reduced_matches_explicit_partial_trace(spec):
    sd = diagonalize(spec, need_vectors=True)
    for T in (0.3, 2.0):
        full = thermal_state(sd, T).matrix
        ref = _partial_trace_keep01(full, spec.d, spec.L)
        rho2 = nn_reduced_density(sd, T, 0).check()
        np.testing.assert_allclose(rho2.matrix, ref, atol=1e-12)


def test_reduced_high_temperature(ring4_half):
    rho = nn_reduced_density(ring4_half, 1e6).matrix
    assert np.abs(rho - np.eye(4) / 4).max() < 1e-6


def test_reduced_translation_invariant_and_energy_identity(ring4_half):
    spec = ring4_half.spec
    first = nn_reduced_density(ring4_half, 1.0, 0)
    for i in range(1, spec.L):
        assert np.abs(nn_reduced_density(ring4_half, 1.0, i).matrix - first.matrix).max() < 1e-8
    corr = bond_correlation(first, spec.spin)
    assert spec.L * spec.J * corr == pytest.approx(observables(ring4_half, 1.0).E_mean, abs=1e-8)


def test_open_chain_has_no_wrap_bond():
    sd = diagonalize(ChainSpec("1/2", 4, 1.0, periodic=False), need_vectors=True)
    with pytest.raises(ValueError):
        nn_reduced_density(sd, 1.0, 3)


def test_density_matrix_checks():
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(3), (2, 2))
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(4), (2, 2)).check()
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]), (2,)).check()
    DensityMatrix(np.eye(4) / 4, (2, 2)).check()


def test_mean_energy_helper(pair_one):
    assert mean_energy(pair_one.eigenvalues, 1.3) == pytest.approx(observables(pair_one, 1.3).E_mean)
