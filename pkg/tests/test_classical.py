import numpy as np
import pytest

from octd.classical import (
    ClassicalState,
    IntegrationError,
    class1_residual,
    class2_residual,
    classical_energy,
    dynamical_class_check,
    eom_jacobian,
    eom_rhs,
    integrate,
)
from octd.model import ModelParams


def params(**kw):
    defaults = dict(V=0.5, lam=0.5, kappa=0.3, S=1.0, n_max=2)
    defaults.update(kw)
    return ModelParams(**defaults)


GENERIC = ClassicalState.from_angles(0.6, 1.0, -0.2, -0.5, 0.1 + 0.05j)


def test_state_roundtrip_and_properties():
    q = GENERIC
    v = q.to_vector()
    assert v.shape == (8,)
    q2 = ClassicalState.from_vector(v)
    assert np.allclose(q2.to_vector(), v)
    assert q.z1 == pytest.approx(0.6)
    assert q.phi1 == pytest.approx(1.0)
    assert q.z2 == pytest.approx(-0.2)
    assert q.phi2 == pytest.approx(-0.5)
    assert q.alpha == pytest.approx(0.1 + 0.05j)
    assert q.n == pytest.approx(abs(0.1 + 0.05j) ** 2)


def test_swapped_exchanges_spins():
    q = GENERIC.swapped()
    assert q.z1 == pytest.approx(-0.2)
    assert q.z2 == pytest.approx(0.6)


def test_rhs_conserves_spin_norms():
    p = params(V=1.8, lam=0.2)
    v = GENERIC.to_vector()
    dv = eom_rhs(v, p)
    assert abs(v[2:5] @ dv[2:5]) < 1e-14
    assert abs(v[5:8] @ dv[5:8]) < 1e-14


def test_jacobian_matches_finite_differences():
    p = params(V=1.3, lam=0.7, kappa=0.2)
    v = GENERIC.to_vector()
    J = eom_jacobian(v, p)
    eps = 1e-7
    J_fd = np.empty((8, 8))
    for j in range(8):
        e = np.zeros(8)
        e[j] = eps
        J_fd[:, j] = (eom_rhs(v + e, p) - eom_rhs(v - e, p)) / (2 * eps)
    assert np.abs(J - J_fd).max() < 1e-6


def test_energy_conserved_without_loss():
    p = params(kappa=0.0)
    traj = integrate(GENERIC, p, 50.0, n_samples=200)
    e = np.array([classical_energy(s, p) for s in traj.states])
    assert np.abs(e - e[0]).max() < 1e-9


def test_energy_decays_with_loss():
    p = params(kappa=0.3, V=0.5, lam=1.3)
    v = GENERIC.to_vector()
    # dE/dt = -kappa * (x^2 + p^2) * omega / 2 ... verified numerically
    traj = integrate(GENERIC, p, 5.0, n_samples=500)
    e = np.array([classical_energy(s, p) for s in traj.states])
    # energy loss rate equals kappa * omega * n at each sample
    dt = traj.times[1] - traj.times[0]
    de = np.gradient(e, dt)
    model = -p.kappa * p.omega_c * traj.n
    assert np.abs(de - model).max() < 5e-2 * max(1.0, np.abs(de).max())


def test_spin_norm_preserved_along_flow():
    p = params(V=1.8, lam=0.2)
    traj = integrate(GENERIC, p, 200.0, n_samples=400)
    norms1 = np.linalg.norm(traj.states[:, 2:5], axis=1)
    norms2 = np.linalg.norm(traj.states[:, 5:8], axis=1)
    assert np.abs(norms1 - 1).max() < 1e-8
    assert np.abs(norms2 - 1).max() < 1e-8
    assert traj.spin_norm_drift < 1e-8


def test_class1_subspace_is_invariant():
    # anti-symmetric configuration with zero field stays exactly in class
    p = params(V=1.8, lam=0.6)
    q0 = ClassicalState.from_angles(0.5, 0.3, -0.5, -0.3)
    assert class1_residual(q0.to_vector()[None, :])[0] < 1e-12
    traj = integrate(q0, p, 50.0, n_samples=100)
    assert class1_residual(traj.states).max() < 1e-8


def test_class2_subspace_is_invariant():
    p = params(V=0.9, lam=0.4)
    q0 = ClassicalState.from_angles(0.4, 0.7, 0.4, 0.7, 0.2 + 0.1j)
    assert class2_residual(q0.to_vector()[None, :])[0] < 1e-12
    traj = integrate(q0, p, 50.0, n_samples=100)
    assert class2_residual(traj.states).max() < 1e-8


def test_dynamical_class_check_keys():
    p = params()
    traj = integrate(GENERIC, p, 5.0, n_samples=10)
    out = dynamical_class_check(traj)
    assert set(out) == {"times", "class1", "class2"}
    assert len(out["class1"]) == len(traj.times)


def test_trajectory_columns():
    p = params()
    traj = integrate(GENERIC, p, 5.0, n_samples=10)
    assert traj.column("z1")[0] == pytest.approx(0.6)
    assert traj.column("phi2")[0] == pytest.approx(-0.5)
    assert np.allclose(traj.column("n"), traj.n)
    with pytest.raises(KeyError):
        traj.column("bogus")


def test_integrator_rejects_bad_samples():
    p = params()
    with pytest.raises(ValueError):
        integrate(GENERIC, p, 5.0, sample_times=np.array([1.0, 0.5]))


def test_reproducibility_bitwise():
    p = params(V=1.8, lam=0.2)
    t1 = integrate(GENERIC, p, 20.0, n_samples=50)
    t2 = integrate(GENERIC, p, 20.0, n_samples=50)
    assert np.array_equal(t1.states, t2.states)
