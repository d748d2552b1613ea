import numpy as np
import pytest

from octd.model import ModelParams, build_hamiltonian, build_lindblad, bjj_mapping_check
from octd.operators import boson_ladder, embed, spin_matrices, swap_spins_operator


def small_params(**kw):
    defaults = dict(V=0.5, lam=0.5, kappa=0.3, S=1.0, n_max=4)
    defaults.update(kw)
    return ModelParams(**defaults)


def test_params_validation():
    with pytest.raises(ValueError):
        small_params(J=2.0)
    with pytest.raises(ValueError):
        small_params(kappa=-0.1)
    with pytest.raises(ValueError):
        small_params(omega_c=0.0)
    p = small_params()
    assert p.dims.total_dim == 36


def test_params_roundtrip():
    p = small_params(V=1.8, lam=0.2)
    assert ModelParams.from_dict(p.to_dict()) == p


def test_hamiltonian_is_hermitian():
    H = build_hamiltonian(small_params())
    assert np.allclose(H, H.conj().T)


def test_hamiltonian_spin_exchange_symmetry():
    p = small_params(V=1.3, lam=0.7)
    H = build_hamiltonian(p)
    P = swap_spins_operator(p.dims)
    assert np.allclose(P @ H @ P, H, atol=1e-12)


def test_hamiltonian_matches_term_sum():
    p = small_params(V=0.9, lam=0.4, omega_c=1.2)
    dims = p.dims
    a, ad, n = boson_ladder(p.n_max)
    Sx, _, Sz, *_ = spin_matrices(p.S)
    s1x, s2x = embed(Sx, "spin1", dims), embed(Sx, "spin2", dims)
    s1z, s2z = embed(Sz, "spin1", dims), embed(Sz, "spin2", dims)
    an = embed(n, "photon", dims)
    aop = embed(a, "photon", dims)
    H_ref = (
        p.omega_c * an
        - p.J * (s1x + s2x)
        + (p.V / p.S) * (s1z @ s2z)
        + (p.lam / np.sqrt(2 * p.S)) * ((s1z + s2z) @ (aop + aop.conj().T))
    )
    assert np.allclose(build_hamiltonian(p), H_ref, atol=1e-12)


def test_lindblad_jump_operator():
    p = small_params(kappa=0.25)
    spec = build_lindblad(p)
    assert len(spec.jump_operators) == 1
    rate, L = spec.jump_operators[0]
    assert rate == pytest.approx(0.25)
    assert np.allclose(L, embed(boson_ladder(p.n_max)[0], "photon", p.dims))


def test_lindblad_closed_system_has_no_jumps():
    spec = build_lindblad(small_params(kappa=0.0))
    assert spec.jump_operators == ()


def test_dimension_cap():
    with pytest.raises(ValueError):
        build_hamiltonian(small_params(S=20.0, n_max=100))


@pytest.mark.parametrize("S", [0.5, 1.0, 2.0])
def test_bjj_mapping(S):
    report = bjj_mapping_check(S)
    assert report["ok"]
