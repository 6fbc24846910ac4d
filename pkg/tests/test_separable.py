from fractions import Fraction
from math import comb

import numpy as np
import pytest

from spinwitness import oracles
from spinwitness.chain import ChainSpec, build_hamiltonian
from spinwitness.spectra import diagonalize, ground_energy
from spinwitness.separable import (
    ProductState,
    coherent_pair_state,
    e_min_closed_form,
    ansatz_coefficients,
    ansatz_pair_state,
    neel_product_state,
    numeric_min_product_energy,
    pair_correlation,
    product_state_energy,
    separable_bound,
    spin_expectation,
)
from spinwitness.spinalg import SpinValue

ALL_SPINS = [SpinValue(t) for t in range(1, 6)]


@pytest.mark.parametrize("spec, e", [(ChainSpec("1", 2), -2.0), (ChainSpec("1/2", 10), -2.5),
                                     (ChainSpec("1/2", 2), -0.5)])
def test_closed_form(spec, e):
    assert e_min_closed_form(spec) == e


def test_closed_form_refusals():
    for spec in (ChainSpec("1/2", 4, 1.0, False), ChainSpec("1/2", 3), ChainSpec("1/2", 4, -1.0)):
        with pytest.raises(ValueError):
            e_min_closed_form(spec)


@pytest.mark.parametrize("spin", ALL_SPINS, ids=str)
def test_coefficients_are_binomials(spin):
    C = ansatz_coefficients(spin)
    for m, c in enumerate(C):
        expected = Fraction(comb(spin.twice_s, m))
        if spin.is_integer and m == spin.twice_s // 2:
            expected /= 4  # middle state counted twice
        assert c == expected


def test_spin_half_pair():
    a, b = ansatz_pair_state("1/2")
    np.testing.assert_allclose(a, np.array([1, 1]) / np.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(b, np.array([1, -1]) / np.sqrt(2), atol=1e-15)
    assert pair_correlation(a, b, "1/2") == pytest.approx(-0.25, abs=1e-12)


def test_spin_one_pair_matches_ansatz_minimizer():
    a, b = ansatz_pair_state("1")
    np.testing.assert_allclose(a, [0.5, np.sqrt(2) / 2, 0.5], atol=1e-15)
    np.testing.assert_allclose(b, [0.5, -np.sqrt(2) / 2, 0.5], atol=1e-15)
    # -16 J a^2 b^2 at a = 1/2, b = sqrt(2)/2, with the two bonds of L = 2
    state = ProductState((a, b))
    assert product_state_energy(ChainSpec("1", 2), state) == pytest.approx(-16 * 0.25 * 0.5, abs=1e-12)


def test_spin_one_ansatz_scan():
    # brute force over the one-parameter family 2a^2 + b^2 = 1
    a = np.linspace(0, 1 / np.sqrt(2), 20001)
    b = np.sqrt(1 - 2 * a**2)
    E = -16 * a**2 * b**2
    assert a[np.argmin(E)] == pytest.approx(0.5, abs=1e-4)
    assert E.min() == pytest.approx(-2, abs=1e-8)


@pytest.mark.parametrize("spin", ALL_SPINS, ids=str)
def test_pair_states_reach_minus_s_squared(spin):
    for a, b in (ansatz_pair_state(spin), coherent_pair_state(spin)):
        assert abs(np.linalg.norm(a) - 1) < 1e-12 and abs(np.linalg.norm(b) - 1) < 1e-12
        assert abs(pair_correlation(a, b, spin) + spin.s**2) < 1e-10


@pytest.mark.parametrize("spin", ALL_SPINS, ids=str)
def test_constructions_agree_up_to_phase(spin):
    a, b = ansatz_pair_state(spin)
    c, d = coherent_pair_state(spin)
    assert abs(abs(np.vdot(a, c)) - 1) < 1e-10
    assert abs(abs(np.vdot(b, d)) - 1) < 1e-10
    np.testing.assert_allclose(spin_expectation(c, spin), [spin.s, 0, 0], atol=1e-12)
    np.testing.assert_allclose(spin_expectation(d, spin), [-spin.s, 0, 0], atol=1e-12)


def test_coherent_spin_one_components():
    c, d = coherent_pair_state("1")
    np.testing.assert_allclose(c, [0.5, np.sqrt(2) / 2, 0.5], atol=1e-12)
    np.testing.assert_allclose(d, [0.5, -np.sqrt(2) / 2, 0.5], atol=1e-12)


@pytest.mark.parametrize("spec, e", [(ChainSpec("1", 2), -2), (ChainSpec("1/2", 4), -1), (ChainSpec("1", 6), -6)])
def test_neel_energy(spec, e):
    state = neel_product_state(spec)
    assert product_state_energy(spec, state) == pytest.approx(e, abs=1e-9)


def test_neel_energy_matches_full_expectation():
    spec = ChainSpec("3/2", 4, 0.8)
    v = neel_product_state(spec).vector()
    H = build_hamiltonian(spec)
    assert np.real(np.vdot(v, H @ v)) == pytest.approx(-spec.J * 4 * 2.25, abs=1e-9)


def test_neel_refuses_odd_ring():
    with pytest.raises(ValueError, match="odd"):
        neel_product_state(ChainSpec("1/2", 5))


@pytest.mark.parametrize("L", [2, 4, 6])
@pytest.mark.parametrize("s", ["1/2", "1", "3/2"])
def test_numeric_matches_closed_form(L, s):
    spec = ChainSpec(s, L)
    bound = numeric_min_product_energy(spec, restarts=8)
    assert abs(bound.E_min - e_min_closed_form(spec)) < 1e-6
    assert bound.converged
    assert product_state_energy(spec, bound.state) == pytest.approx(bound.E_min, abs=1e-9)


def test_numeric_sweeps_monotone():
    for spec in (ChainSpec("1", 5), ChainSpec("1/2", 7), ChainSpec("3/2", 4, 2.0)):
        bound = numeric_min_product_energy(spec, restarts=3, seed=5)
        assert np.all(np.diff(bound.history) <= 1e-14)


def test_three_site_ring_oracle():
    # classical 120-degree state: 3 * (1/4) * cos(120 deg) = -3/8
    oracle = oracles.classical_ring_minimum(3, 0.5)
    assert oracle == pytest.approx(-0.375, abs=1e-12)
    bound = numeric_min_product_energy(ChainSpec("1/2", 3), restarts=16)
    assert bound.E_min == pytest.approx(oracle, abs=1e-8)
    aligned = ProductState(tuple([np.array([1.0, 0.0])] * 3))
    assert bound.E_min < product_state_energy(ChainSpec("1/2", 3), aligned)
    # still a valid upper bound on the ground energy
    assert bound.E_min > ground_energy(diagonalize(ChainSpec("1/2", 3)))


@pytest.mark.parametrize("L", [5, 7])
def test_odd_ring_against_classical_twist(L):
    bound = numeric_min_product_energy(ChainSpec("1", L), restarts=16)
    assert bound.E_min == pytest.approx(oracles.classical_ring_minimum(L, 1.0), abs=1e-7)


def test_numeric_is_reproducible():
    a = numeric_min_product_energy(ChainSpec("1/2", 5), restarts=4, seed=11)
    b = numeric_min_product_energy(ChainSpec("1/2", 5), restarts=4, seed=11)
    assert a.history == b.history


@pytest.mark.parametrize("spin", ALL_SPINS, ids=str)
def test_gap_law(spin):
    spec = ChainSpec(spin, 2, 1.3)
    gap = ground_energy(diagonalize(spec)) - e_min_closed_form(spec)
    assert abs(gap + 2 * spec.J * spin.s) < 1e-10


def test_separable_bound_dispatch():
    assert separable_bound(ChainSpec("1", 4)).method == "closed-form"
    assert separable_bound(ChainSpec("1", 3), restarts=4).method == "numeric-minimizer"


def test_product_state_validation():
    with pytest.raises(ValueError):
        ProductState((np.array([1.0, 1.0]),))
    with pytest.raises(ValueError):
        product_state_energy(ChainSpec("1/2", 3), ProductState((np.array([1.0, 0.0]),) * 2))
