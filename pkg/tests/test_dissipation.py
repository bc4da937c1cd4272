import numpy as np
import pytest

from gaussstab.dissipation import (
    DissipationSpec,
    GaussianState,
    QuadraticHamiltonian,
    diffusion_matrix,
    drift_matrix,
    drift_offset,
    re_im_cc,
)
from gaussstab.errors import AsymmetricMatrix, DimensionMismatch
from gaussstab.symplectic import symplectic_form

from conftest import random_spec

J1 = symplectic_form(1)


def test_single_damped_mode_cc():
    re, im = re_im_cc(DissipationSpec.damped_modes([1.0], x0=1.0))
    assert np.allclose(re, np.diag([0.5, 0.5]), atol=1e-15)
    assert np.allclose(im, 0.5 * J1, atol=1e-15)


@pytest.mark.parametrize("x0,gamma", [(0.5, 1.0), (2.0, 0.3), (1.7, 4.0)])
def test_single_damped_mode_cc_scaled(x0, gamma):
    re, im = re_im_cc(DissipationSpec.damped_modes([gamma], x0=x0))
    assert np.allclose(re, gamma / 2 * np.diag([x0**-2, x0**2]), atol=1e-14)
    assert np.allclose(im, gamma / 2 * J1, atol=1e-14)


def test_two_damped_modes_cc():
    re, im = re_im_cc(DissipationSpec.damped_modes([1.0, 1.0]))
    assert np.allclose(re, np.eye(4) / 2, atol=1e-15)
    assert np.allclose(im, symplectic_form(2) / 2, atol=1e-15)
    g = np.array([0.7, 2.0, 0.7, 2.0])
    x0 = 1.4
    re, im = re_im_cc(DissipationSpec.damped_modes([0.7, 2.0], x0=x0))
    assert np.allclose(re, 0.5 * np.diag(g * [x0**-2, x0**-2, x0**2, x0**2]), atol=1e-14)
    assert np.allclose(im, 0.5 * np.diag(g) @ symplectic_form(2), atol=1e-14)


def test_no_dissipation():
    spec = DissipationSpec(2, np.zeros((0, 4)))
    re, im = re_im_cc(spec)
    assert not re.any() and not im.any()
    assert not diffusion_matrix(spec).any()
    assert not drift_matrix(spec, QuadraticHamiltonian.zero(2)).any()


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        DissipationSpec.from_vectors([[1, 2, 3]], n_modes=1)
    with pytest.raises(DimensionMismatch):
        drift_matrix(DissipationSpec.damped_modes([1.0]), QuadraticHamiltonian.zero(2))
    with pytest.raises(DimensionMismatch):
        GaussianState(np.zeros(3), np.eye(2))
    with pytest.raises(AsymmetricMatrix):
        QuadraticHamiltonian([[0, 1], [0, 0]])


def test_drift_examples():
    spec = DissipationSpec.damped_modes([1.0])
    assert np.allclose(drift_matrix(spec, QuadraticHamiltonian.zero(1)), -np.eye(2) / 2, atol=1e-15)
    g = 1.3
    free = DissipationSpec(1, np.zeros((0, 2)))
    assert np.allclose(drift_matrix(free, QuadraticHamiltonian(np.diag([g, g]))), g * J1)


def test_diffusion_examples():
    assert np.allclose(diffusion_matrix(DissipationSpec.damped_modes([1.0])), np.diag([0.5, 0.5]))
    D = diffusion_matrix(DissipationSpec.damped_modes([1.0], x0=2.0))
    assert np.allclose(D, np.diag([2.0, 1 / 8]), atol=1e-15)


def test_entrywise_formula_matches_matrix_product(rng):
    for _ in range(200):
        n = int(rng.integers(1, 4))
        spec = random_spec(rng, n, int(rng.integers(0, 5)))
        cc = spec.coeffs.conj().T @ spec.coeffs
        re, im = re_im_cc(spec)
        assert np.allclose(re, cc.real, atol=1e-13)
        assert np.allclose(im, cc.imag, atol=1e-13)
        assert np.array_equal(re, re.T)
        assert np.array_equal(im, -im.T)


def test_gram_and_diffusion_psd(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        spec = random_spec(rng, n, int(rng.integers(0, 5)))
        re, _ = re_im_cc(spec)
        D = diffusion_matrix(spec)
        scale = max(np.abs(re).max(initial=0.0), 1.0)
        assert np.linalg.eigvalsh(re)[0] >= -1e-10 * scale
        assert np.array_equal(D, D.T)
        assert np.linalg.eigvalsh(D)[0] >= -1e-10 * scale


def test_drift_affine_in_G(rng):
    for _ in range(100):
        n = int(rng.integers(1, 4))
        spec = random_spec(rng, n, 2)
        G1, G2 = (rng.normal(size=(2 * n, 2 * n)) for _ in range(2))
        G1, G2 = G1 + G1.T, G2 + G2.T
        _, im = re_im_cc(spec)
        J = symplectic_form(n)
        lhs = drift_matrix(spec, QuadraticHamiltonian(G1 + G2))
        rhs = drift_matrix(spec, QuadraticHamiltonian(G1)) + drift_matrix(spec, QuadraticHamiltonian(G2)) - J @ im
        assert np.allclose(lhs, rhs, atol=1e-12)


@pytest.mark.parametrize("lam", [4.0, 0.25, 3.7])
def test_rate_scaling(rng, lam):
    spec = random_spec(rng, 2, 3)
    re, im = re_im_cc(spec)
    re_s, im_s = re_im_cc(spec.scaled(lam))
    assert np.allclose(re_s, lam * re, rtol=1e-14, atol=0)
    assert np.allclose(im_s, lam * im, rtol=1e-14, atol=1e-15)
    assert np.allclose(diffusion_matrix(spec.scaled(lam)), lam * diffusion_matrix(spec), rtol=1e-14, atol=0)


def test_displaced_hamiltonian_offset():
    G = np.diag([1.0, 1.0])
    xi0 = np.array([0.3, -0.2])
    spec = DissipationSpec.damped_modes([1.0])
    H = QuadraticHamiltonian(G, xi0)
    # Heisenberg: d xi/dt = J G (xi - xi0), so the offset is -J G xi0
    assert np.allclose(drift_offset(spec, H), -J1 @ G @ xi0)
    assert not drift_offset(spec, QuadraticHamiltonian(G)).any()
