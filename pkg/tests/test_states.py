import numpy as np
import pytest
from scipy.linalg import expm

from octd.classical import ClassicalState
from octd.operators import HilbertDims, boson_ladder, spin_matrices
from octd.states import (
    PureState,
    TruncationError,
    photon_coherent,
    product_state,
    spin_coherent,
)


def test_photon_coherent_moments():
    alpha = 0.7 - 0.3j
    psi = photon_coherent(alpha, 30)
    a, ad, n = boson_ladder(30)
    assert np.vdot(psi, a @ psi) == pytest.approx(alpha, abs=1e-10)
    assert np.vdot(psi, n @ psi).real == pytest.approx(abs(alpha) ** 2, abs=1e-10)
    assert np.linalg.norm(psi) == pytest.approx(1.0)


def test_photon_coherent_vacuum():
    psi = photon_coherent(0.0, 5)
    assert np.allclose(psi, [1, 0, 0, 0, 0])


def test_photon_truncation_guard():
    with pytest.raises(TruncationError):
        photon_coherent(2.0, 5)


@pytest.mark.parametrize("S", [0.5, 1.0, 2.5, 6.0])
def test_spin_coherent_matches_rotation(S):
    theta, phi = 1.1, -2.0
    Sy, Sz = spin_matrices(S)[1], spin_matrices(S)[2]
    dim = int(round(2 * S)) + 1
    top = np.zeros(dim)
    top[-1] = 1.0  # |S, S>
    ref = expm(-1j * phi * Sz) @ expm(-1j * theta * Sy) @ top
    psi = spin_coherent(theta, phi, S)
    overlap = abs(np.vdot(ref, psi))
    assert overlap == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("S", [1.0, 5.0])
def test_spin_coherent_bloch_vector(S):
    theta, phi = 0.8, 1.9
    psi = spin_coherent(theta, phi, S)
    Sx, Sy, Sz, *_ = spin_matrices(S)
    bloch = np.array([np.vdot(psi, M @ psi).real for M in (Sx, Sy, Sz)]) / S
    expected = [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    assert np.allclose(bloch, expected, atol=1e-12)


def test_spin_coherent_poles():
    psi_north = spin_coherent(0.0, 0.0, 2.0)
    assert abs(psi_north[-1]) == pytest.approx(1.0)  # m = +S
    psi_south = spin_coherent(np.pi, 0.0, 2.0)
    assert abs(psi_south[0]) == pytest.approx(1.0)  # m = -S


def test_spin_coherent_rejects_bad_theta():
    with pytest.raises(ValueError):
        spin_coherent(-0.1, 0.0, 1.0)


def test_product_state_first_moments():
    dims = HilbertDims(spin_magnitude=3.0, fock_cutoff=12)
    q = ClassicalState.from_angles(0.6, 1.0, -0.2, -0.5, 0.1 + 0.05j)
    st = product_state(q, dims)
    assert isinstance(st, PureState)
    d = dims.spin_dim
    psi = st.amplitudes.reshape(d, d, dims.fock_cutoff)
    Sz = spin_matrices(3.0)[2]
    rho1 = np.einsum("abk,cbk->ac", psi, psi.conj())
    rho2 = np.einsum("abk,adk->bd", psi, psi.conj())
    assert np.trace(Sz @ rho1).real / 3.0 == pytest.approx(0.6, abs=1e-12)
    assert np.trace(Sz @ rho2).real / 3.0 == pytest.approx(-0.2, abs=1e-12)
    a = boson_ladder(dims.fock_cutoff)[0]
    rho_ph = np.einsum("abk,abl->kl", psi, psi.conj())
    # photon amplitude is sqrt(S) * alpha in the scaled classical variables
    assert np.trace(a @ rho_ph) == pytest.approx(np.sqrt(3.0) * (0.1 + 0.05j), abs=1e-10)


def test_pure_state_norm_validation():
    dims = HilbertDims(spin_magnitude=0.5, fock_cutoff=2)
    bad = np.ones(dims.total_dim, dtype=complex)
    with pytest.raises(ValueError):
        PureState(bad, dims)
