import itertools

import numpy as np
import pytest
from hypothesis import example, given, settings
from hypothesis import strategies as st

from lazywalk.observables import InvalidDensityError
from lazywalk.thermo import (
    DegenerateSpectrumError,
    Spectrum3,
    ThermoDomainError,
    eigvalsh3,
    entropy_energy_slope,
    entropy_of_spectrum,
    gibbs_spectrum,
    hermitian3_eigenvalues,
    reconstruct_spectrum,
    spectrum_temperature_per_mean_energy,
    temperature_per_energy_gap,
    temperature_per_mean_energy,
    thermo_identity_residual,
    thermo_report,
    von_neumann_entropy,
)

from .conftest import chiralities, spectra
from .oracles import random_density, random_unitary

LOG2, LOG3 = np.log(2.0), np.log(3.0)


def _rotated(spec, seed=0):
    u = random_unitary(np.random.default_rng(seed))
    return u @ np.diag(spec) @ u.conj().T


# eigenvalues

def test_eigenvalues_maximally_mixed():
    assert hermitian3_eigenvalues(np.eye(3) / 3) == pytest.approx((1 / 3,) * 3, abs=1e-16)


def test_eigenvalues_pure_projector():
    v = np.array([0.6, 0.0, 0.8j])
    assert hermitian3_eigenvalues(np.outer(v, v.conj())) == pytest.approx((1, 0, 0), abs=1e-15)


def test_eigenvalues_diagonal():
    assert hermitian3_eigenvalues(np.diag([0.25, 0.5, 0.25])) == pytest.approx((0.5, 0.25, 0.25), abs=1e-16)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=9, max_size=9))
def test_eigenvalues_match_lapack(parts):
    g = np.array(parts[:9]).reshape(3, 3)
    h = g + g.T + 1j * (np.triu(g, 1) - np.triu(g, 1).T)
    ours = eigvalsh3(h)
    ref = np.linalg.eigvalsh(h)[::-1]
    assert np.abs(ours - ref).max() < 1e-13 * max(1.0, np.abs(h).max())


def test_eigenvalues_degenerate_families():
    rng = np.random.default_rng(11)
    for k in range(300):
        x = rng.random() / 2
        spec = [(x, x, 1 - 2 * x), (1, 0, 0), (1 / 3, 1 / 3, 1 / 3)][k % 3]
        rho = _rotated(spec, seed=k)
        assert np.abs(eigvalsh3(rho) - np.sort(spec)[::-1]).max() < 1e-14


def test_eigenvalues_batched():
    rng = np.random.default_rng(3)
    rhos = np.stack([random_density(rng) for _ in range(12)]).reshape(3, 4, 3, 3)
    assert np.abs(eigvalsh3(rhos) - np.linalg.eigvalsh(rhos)[..., ::-1]).max() < 1e-14


def test_eigenpair_residual():
    rng = np.random.default_rng(5)
    for _ in range(200):
        rho = random_density(rng, rank=int(rng.integers(1, 4)))
        for tau in hermitian3_eigenvalues(rho):
            # smallest singular value = min over unit v of |rho v - tau v|
            assert np.linalg.svd(rho - tau * np.eye(3), compute_uv=False)[-1] < 1e-10


def test_eigenvalues_clamp_roundoff_negatives():
    assert min(hermitian3_eigenvalues(np.diag([0.6, 0.4 + 5e-11, -5e-11]))) == 0.0


def test_eigenvalues_reject_negative():
    with pytest.raises(InvalidDensityError):
        hermitian3_eigenvalues(np.diag([0.7, 0.4, -0.1]))


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(InvalidDensityError):
        hermitian3_eigenvalues(np.array([[0.5, 0.1, 0], [0, 0.25, 0], [0, 0, 0.25]]))


# entropy

def test_entropy_anchors():
    v = np.array([1, 1j, -1]) / np.sqrt(3)
    assert von_neumann_entropy(np.outer(v, v.conj())) == pytest.approx(0.0, abs=1e-14)
    assert von_neumann_entropy(np.eye(3) / 3) == pytest.approx(LOG3, abs=1e-12)
    assert von_neumann_entropy(_rotated([0.5, 0.25, 0.25])) == pytest.approx(1.5 * LOG2, abs=1e-12)
    assert 1.5 * LOG2 == pytest.approx(1.03972, abs=5e-6)


def test_entropy_base():
    assert von_neumann_entropy(np.eye(3) / 3, base=3) == pytest.approx(1.0, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(chiralities(), chiralities(), st.floats(0, 1))
def test_entropy_bounds_and_concavity(u, v, w):
    r1 = np.outer(u, u.conj())
    r2 = w * np.outer(v, v.conj()) + (1 - w) * np.eye(3) / 3
    s1, s2 = von_neumann_entropy(r1), von_neumann_entropy(r2)
    s_mix = von_neumann_entropy(0.5 * (r1 + r2))
    for s in (s1, s2, s_mix):
        assert -1e-14 <= s <= LOG3 + 1e-12
    assert s_mix >= 0.5 * (s1 + s2) - 1e-12


def test_entropy_of_spectrum_zero_log_zero():
    assert entropy_of_spectrum([1.0, 0.0, 0.0]) == 0.0


# temperature per energy gap

def test_temperature_per_gap():
    assert temperature_per_energy_gap(0.5, 0.25) == pytest.approx(1 / LOG2, abs=1e-15)
    assert 1 / LOG2 == pytest.approx(1.44270, abs=5e-6)


@settings(max_examples=100, deadline=None)
@given(spectra())
def test_temperature_per_gap_antisymmetric(spec):
    a, b = spec[0], spec[1]
    if abs(a - b) < 1e-9:
        return
    assert temperature_per_energy_gap(a, b) == pytest.approx(-temperature_per_energy_gap(b, a), rel=1e-14)


def test_temperature_per_gap_errors():
    with pytest.raises(DegenerateSpectrumError):
        temperature_per_energy_gap(1 / 3, 1 / 3)
    with pytest.raises(ThermoDomainError):
        temperature_per_energy_gap(0.0, 0.5)


# temperature per mean energy

def test_temperature_per_mean_energy_example():
    assert temperature_per_mean_energy(np.diag([0.5, 0.25, 0.25])) == pytest.approx(-6 / LOG2, abs=1e-12)
    assert -6 / LOG2 == pytest.approx(-8.65617, abs=5e-6)


def test_temperature_per_mean_energy_errors():
    with pytest.raises(DegenerateSpectrumError):
        temperature_per_mean_energy(np.eye(3) / 3)
    with pytest.raises(ThermoDomainError):
        temperature_per_mean_energy(np.diag([0.5, 0.5, 0.0]))


@settings(max_examples=100, deadline=None)
@given(spectra(min_value=1e-4))
@example(np.array([0.33557047, 0.33221477, 0.33221477]))
def test_temperature_permutation_and_unitary_invariance(spec):
    if spec.max() - spec.min() < 1e-6:
        return
    ref = spectrum_temperature_per_mean_energy(spec)
    for perm in itertools.permutations(spec):
        assert spectrum_temperature_per_mean_energy(perm) == pytest.approx(ref, rel=1e-12)
    assert temperature_per_mean_energy(_rotated(spec, seed=1)) == pytest.approx(ref, rel=1e-6)
    assert ref < 0


# energies and the S = E/T + log Z identity

def test_reconstruct_uniform():
    assert reconstruct_spectrum((1 / 3, 1 / 3, 1 / 3), 2.7) == pytest.approx([0, 0, 0], abs=1e-15)


def test_reconstruct_example():
    eps = reconstruct_spectrum((0.5, 0.25, 0.25), 1.0)
    assert eps == pytest.approx([-np.log(4) / 3, np.log(4) / 6, np.log(4) / 6], abs=1e-15)
    assert abs(eps.sum()) < 1e-15


def test_reconstruct_round_trip_random():
    rng = np.random.default_rng(99)
    for _ in range(1000):
        spec = rng.dirichlet([1, 1, 1])
        T = rng.uniform(0.1, 10) * rng.choice([-1, 1])
        eps = reconstruct_spectrum(spec, T)
        assert abs(eps.sum()) < 1e-12 * max(1.0, np.abs(eps).max())
        assert np.abs(gibbs_spectrum(eps, T) - spec).max() < 1e-12


def test_reconstruct_errors():
    with pytest.raises(ThermoDomainError):
        reconstruct_spectrum((0.5, 0.5, 0.0), 1.0)
    with pytest.raises(ThermoDomainError):
        reconstruct_spectrum((0.5, 0.25, 0.25), 0.0)


@pytest.mark.parametrize("spec,T", [((0.5, 0.25, 0.25), 1.0), ((0.7, 0.2, 0.1), 2.0), ((1 / 3, 1 / 3, 1 / 3), 1.0)])
def test_identity_residual_examples(spec, T):
    assert thermo_identity_residual(spec, T) < 1e-12


@settings(max_examples=50, deadline=None)
@given(spectra(min_value=1e-3), st.floats(0.2, 5.0))
def test_entropy_energy_slope(spec, T):
    if spec.max() - spec.min() < 1e-3:
        return
    assert entropy_energy_slope(spec, T) == pytest.approx(1 / T, rel=1e-4)


def test_thermo_report():
    rep = thermo_report(_rotated([0.5, 0.25, 0.25]))
    assert rep.spectrum == pytest.approx((0.5, 0.25, 0.25), abs=1e-14)
    assert rep.entropy == pytest.approx(1.5 * LOG2, abs=1e-12)
    assert rep.temp_per_mean_energy == pytest.approx(-6 / LOG2, abs=1e-9)
    assert not rep.degenerate
    flat = thermo_report(np.eye(3) / 3)
    assert flat.degenerate and flat.temp_per_mean_energy is None


def test_spectrum_degenerate_flag():
    assert Spectrum3(1 / 3, 1 / 3, 1 / 3).degenerate
    assert not Spectrum3(0.5, 0.25, 0.25).degenerate
