import numpy as np
import pytest

from gaussstab import DissipationSpec


def random_spd(rng, dim, cond=50.0):
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    w = np.exp(rng.uniform(0, np.log(cond), size=dim)) * rng.uniform(0.2, 2.0)
    return (q * w) @ q.T


def random_physical(rng, n_modes, excess=0.5):
    """Physical covariance: a symplectic-congruent thermal state."""
    dim = 2 * n_modes
    # a symmetric random G generates a symplectic map exp(J G)
    from scipy.linalg import expm

    J = np.block([[np.zeros((n_modes, n_modes)), np.eye(n_modes)], [-np.eye(n_modes), np.zeros((n_modes, n_modes))]])
    G = rng.normal(scale=0.4, size=(dim, dim))
    S = expm(J @ (G + G.T) / 2)
    nu = 0.5 + rng.uniform(0, excess, size=n_modes)
    return S @ np.diag(np.concatenate([nu, nu])) @ S.T


def random_spec(rng, n_modes, n_ops):
    C = rng.normal(size=(n_ops, 2 * n_modes)) + 1j * rng.normal(size=(n_ops, 2 * n_modes))
    return DissipationSpec(n_modes, C)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
