import numpy as np
import pytest
from scipy import stats

from octd.model import ModelParams, build_hamiltonian, build_lindblad
from octd.classical import ClassicalState
from octd.observables import expectation
from octd.operators import boson_ladder, embed
from octd.quantum import (
    TrajectoryConfig,
    evolve_trajectory,
    lindblad_exact,
    run_ensemble,
    unitary_evolve,
)
from octd.states import PureState, photon_coherent, product_state, spin_coherent


def params(**kw):
    defaults = dict(V=1.4, lam=0.2, kappa=0.1, S=1.0, n_max=4)
    defaults.update(kw)
    return ModelParams(**defaults)


def generic_state(p):
    q = ClassicalState.from_angles(0.6, 1.0, -0.2, -0.5, 0.05 + 0.03j)
    return product_state(q, p.dims)


def test_trajectory_config_validation():
    with pytest.raises(ValueError):
        TrajectoryConfig(seed=0, sample_times=np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        TrajectoryConfig(seed=0, sample_times=np.array([0.0, 2.0, 1.0]))


def test_trajectory_is_deterministic_given_seed():
    p = params()
    spec = build_lindblad(p)
    psi0 = generic_state(p)
    cfg = TrajectoryConfig(seed=42, sample_times=np.linspace(0, 10, 21))
    r1 = evolve_trajectory(psi0, spec, cfg)
    r2 = evolve_trajectory(psi0, spec, cfg)
    assert np.array_equal(r1.states, r2.states)
    assert r1.jump_times == r2.jump_times


def test_states_stay_normalized():
    p = params()
    spec = build_lindblad(p)
    cfg = TrajectoryConfig(seed=7, sample_times=np.linspace(0, 20, 41))
    rec = evolve_trajectory(generic_state(p), spec, cfg)
    norms = np.linalg.norm(rec.states, axis=1)
    assert np.abs(norms - 1).max() < 1e-8


def test_closed_system_matches_unitary_evolution():
    p = params(kappa=0.0)
    spec = build_lindblad(p)
    psi0 = generic_state(p)
    times = np.linspace(0, 10, 11)
    cfg = TrajectoryConfig(seed=3, sample_times=times)
    rec = evolve_trajectory(psi0, spec, cfg)
    ref = unitary_evolve(psi0, build_hamiltonian(p), times)
    fid = np.abs(np.einsum("ti,ti->t", rec.states.conj(), ref))
    assert np.abs(fid - 1).max() < 1e-7
    assert rec.jump_times == []


def test_jump_waiting_times_are_exponential():
    # pure cavity decay from |1>: exactly one jump, waiting time ~ Exp(kappa)
    p = params(V=0.0, lam=0.0, kappa=0.4, S=0.5, n_max=3)
    dims = p.dims
    one = np.zeros(p.n_max)
    one[1] = 1.0
    spin = spin_coherent(0.0, 0.0, 0.5)
    psi0 = PureState(np.kron(np.kron(spin, spin), one).astype(complex), dims)
    spec = build_lindblad(p)
    times = np.linspace(0, 40, 2)
    waits = []
    for seed in range(400):
        rec = evolve_trajectory(psi0, spec, TrajectoryConfig(seed=seed, sample_times=times),
                                keep_states=False)
        assert len(rec.jump_times) == 1
        waits.append(rec.jump_times[0])
    _, p_value = stats.kstest(waits, "expon", args=(0, 1 / p.kappa))
    assert p_value > 0.01


def test_ensemble_mean_matches_exact_solution_quickly():
    p = params()
    spec = build_lindblad(p)
    psi0 = generic_state(p)
    times = np.linspace(0, 10, 21)
    nph = embed(boson_ladder(p.n_max)[2], "photon", p.dims)
    obs = {"n": lambda psi: float((psi.conj() @ (nph @ psi)).real)}
    ens = run_ensemble(psi0, spec, 300, 5, observables=obs, sample_times=times)
    rho0 = np.outer(psi0.amplitudes, psi0.amplitudes.conj())
    rhos = lindblad_exact(rho0, spec, times)
    exact = np.array([expectation(r, nph) for r in rhos])
    dev = np.abs(ens.mean["n"] - exact)
    limit = 4 * ens.stderr["n"] + 1e-5
    assert (dev <= limit).all()


def test_exact_solution_preserves_trace_and_hermiticity():
    p = params()
    spec = build_lindblad(p)
    psi0 = generic_state(p)
    rho0 = np.outer(psi0.amplitudes, psi0.amplitudes.conj())
    rhos = lindblad_exact(rho0, spec, np.linspace(0, 15, 16))
    for r in rhos:
        assert np.trace(r).real == pytest.approx(1.0, abs=1e-8)
        assert np.abs(r - r.conj().T).max() < 1e-8
        evals = np.linalg.eigvalsh(r)
        assert evals.min() > -1e-8


def test_exact_dimension_cap():
    p = params(S=6.0, n_max=20)
    spec = build_lindblad(p)
    rho0 = np.eye(p.dims.total_dim) / p.dims.total_dim
    with pytest.raises(ValueError):
        lindblad_exact(rho0, spec, np.linspace(0, 1, 2))


def test_accumulators_average_linear_functionals():
    p = params()
    spec = build_lindblad(p)
    psi0 = generic_state(p)
    times = np.linspace(0, 5, 6)
    acc = {"pops": lambda psi: np.abs(psi) ** 2}
    ens = run_ensemble(psi0, spec, 20, 1, sample_times=times, accumulators=acc)
    pops = ens.mean["pops"]
    assert pops.shape == (6, p.dims.total_dim)
    assert np.allclose(pops.sum(axis=1), 1.0, atol=1e-8)


def test_leakage_flag_trips_on_tight_cutoff():
    p = params(V=0.5, lam=0.8, kappa=0.3, S=1.0, n_max=3)
    spec = build_lindblad(p)
    q = ClassicalState.from_angles(0.6, 1.0, -0.2, -0.5, 0.0)
    psi0 = product_state(q, p.dims)
    ens = run_ensemble(psi0, spec, 2, 0, sample_times=np.linspace(0, 15, 16))
    assert ens.leakage_flag
    assert ens.leakage > 1e-6
