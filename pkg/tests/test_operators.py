import numpy as np
import pytest

from octd.operators import HilbertDims, boson_ladder, embed, spin_matrices, swap_spins_operator


@pytest.mark.parametrize("S", [0.5, 1.0, 2.5, 6.0])
def test_spin_commutators(S):
    Sx, Sy, Sz, Sp, Sm = spin_matrices(S)
    assert np.allclose(Sx @ Sy - Sy @ Sx, 1j * Sz, atol=1e-12)
    assert np.allclose(Sy @ Sz - Sz @ Sy, 1j * Sx, atol=1e-12)
    assert np.allclose(Sz @ Sx - Sx @ Sz, 1j * Sy, atol=1e-12)
    assert np.allclose(Sp, Sx + 1j * Sy)
    assert np.allclose(Sm, Sx - 1j * Sy)


@pytest.mark.parametrize("S", [0.5, 1.0, 3.5])
def test_casimir(S):
    Sx, Sy, Sz, *_ = spin_matrices(S)
    S2 = Sx @ Sx + Sy @ Sy + Sz @ Sz
    assert np.allclose(S2, S * (S + 1) * np.eye(int(round(2 * S)) + 1), atol=1e-12)


def test_sz_basis_ordering_is_m_ascending():
    _, _, Sz, *_ = spin_matrices(1.5)
    assert np.allclose(np.diag(Sz), [-1.5, -0.5, 0.5, 1.5])


def test_boson_ladder():
    a, ad, n = boson_ladder(6)
    assert np.allclose(ad, a.conj().T)
    assert np.allclose(n, ad @ a)
    # canonical commutator holds below the truncation edge
    comm = a @ ad - ad @ a
    assert np.allclose(comm[:-1, :-1], np.eye(5), atol=1e-12)


def test_embed_slots_commute():
    dims = HilbertDims(spin_magnitude=1.0, fock_cutoff=3)
    Sx = spin_matrices(1.0)[0]
    a = boson_ladder(3)[0]
    A = embed(Sx, "spin1", dims)
    B = embed(Sx, "spin2", dims)
    C = embed(a, "photon", dims)
    for X, Y in [(A, B), (A, C), (B, C)]:
        assert np.allclose(X @ Y, Y @ X, atol=1e-12)
    assert A.shape == (dims.total_dim, dims.total_dim)


def test_embed_expectation_matches_slot():
    dims = HilbertDims(spin_magnitude=0.5, fock_cutoff=2)
    Sz = spin_matrices(0.5)[2]
    v1 = np.array([1.0, 0.0])  # m = -1/2
    v2 = np.array([0.0, 1.0])  # m = +1/2
    ph = np.array([1.0, 0.0])
    psi = np.kron(np.kron(v1, v2), ph)
    Z1 = embed(Sz, "spin1", dims)
    Z2 = embed(Sz, "spin2", dims)
    assert psi @ (Z1 @ psi) == pytest.approx(-0.5)
    assert psi @ (Z2 @ psi) == pytest.approx(0.5)


def test_swap_spins_operator():
    dims = HilbertDims(spin_magnitude=1.0, fock_cutoff=2)
    P = swap_spins_operator(dims)
    assert np.allclose(P @ P, np.eye(dims.total_dim))
    Sz = spin_matrices(1.0)[2]
    Z1 = embed(Sz, "spin1", dims)
    Z2 = embed(Sz, "spin2", dims)
    assert np.allclose(P @ Z1 @ P, Z2, atol=1e-12)


def test_dims_validation():
    with pytest.raises(ValueError):
        HilbertDims(spin_magnitude=0.7, fock_cutoff=4)
    with pytest.raises(ValueError):
        HilbertDims(spin_magnitude=1.0, fock_cutoff=0)
    d = HilbertDims(spin_magnitude=2.0, fock_cutoff=5)
    assert d.spin_dim == 5
    assert d.total_dim == 125
    assert d.slot_dims == (5, 5, 5)
