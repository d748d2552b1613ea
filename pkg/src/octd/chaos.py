"""Transient-chaos diagnostics on the mean-field flow: photon-field
decorrelator, Poincare surfaces of section, and the long-time photon-number
saturation scan of the self-organized superradiant regime.

Decorrelator construction: a reference trajectory and an ensemble of copies
perturbed by random tangent kicks of magnitude eps on both Bloch spheres;
D_ph(t) is the ensemble mean of |alpha(t) - alpha'(t)|^2, reported without
eps^2 normalization (the growth/decay shape is the contractual content).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .classical import ClassicalState, classical_energy, eom_rhs, integrate
from .model import ModelParams

__all__ = [
    "DecorrelatorSeries",
    "decorrelator",
    "random_tangent_perturbation",
    "poincare_section",
    "PoincareResult",
    "island_dispersion",
    "saturation_distribution",
    "SaturationResult",
]


@dataclass
class DecorrelatorSeries:
    times: np.ndarray
    D_ph: np.ndarray
    epsilon: float
    ensemble_size: int


def random_tangent_perturbation(q: np.ndarray, eps: float, rng: np.random.Generator) -> np.ndarray:
    """Kick both spins by magnitude eps tangent to their Bloch spheres,
    then project back to unit norm (exact, not linearized)."""
    out = q.copy()
    for sl in (slice(2, 5), slice(5, 8)):
        s = q[sl]
        v = rng.normal(size=3)
        v -= s * (s @ v)
        nv = np.linalg.norm(v)
        if nv < 1e-14:
            continue
        s_new = s + eps * v / nv
        out[sl] = s_new / np.linalg.norm(s_new)
    return out


def decorrelator(
    q0: ClassicalState,
    p: ModelParams,
    eps: float = 1e-6,
    t_end: float = 200.0,
    ensemble: int = 100,
    n_samples: int = 400,
    seed: int = 0,
) -> DecorrelatorSeries:
    """Ensemble-averaged squared photon-field separation from eps-perturbed
    twins of the reference trajectory."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    sample_times = np.linspace(0.0, t_end, n_samples)
    ref = integrate(q0, p, t_end, sample_times=sample_times)
    alpha_ref = (ref.states[:, 0] + 1j * ref.states[:, 1]) / np.sqrt(2)
    acc = np.zeros(n_samples)
    q0v = q0.to_vector()
    for _ in range(ensemble):
        qp = random_tangent_perturbation(q0v, eps, rng)
        pert = integrate(qp, p, t_end, sample_times=sample_times)
        alpha_p = (pert.states[:, 0] + 1j * pert.states[:, 1]) / np.sqrt(2)
        acc += np.abs(alpha_ref - alpha_p) ** 2
    return DecorrelatorSeries(sample_times, acc / ensemble, eps, ensemble)


@dataclass
class PoincareResult:
    points: np.ndarray  # (n_crossings, 2) as (z1, phi1)
    energy: float
    initial_state: np.ndarray


def poincare_section(
    q0: ClassicalState | np.ndarray,
    p: ModelParams,
    t_end: float = 2000.0,
    energy_tol: float = 1e-6,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> PoincareResult:
    """Crossings of the p = 0 plane (pdot < 0 only), projected to (z1, phi1).

    Isolated system only (kappa = 0); the trajectory is rejected if it
    leaves its energy shell beyond energy_tol (relative).
    """
    if p.kappa != 0:
        raise ValueError("Poincare sections are defined for the isolated system (kappa = 0)")
    q0v = q0.to_vector() if isinstance(q0, ClassicalState) else np.asarray(q0, dtype=float)
    e0 = classical_energy(q0v, p)

    crossings: list[np.ndarray] = []

    def event(t, q):
        return q[1]

    event.terminal = False
    event.direction = -1  # pdot < 0 crossings only
    sol = solve_ivp(
        lambda t, q: eom_rhs(q, p),
        (0.0, t_end),
        q0v,
        method="DOP853",
        rtol=rtol,
        atol=atol,
        events=[event],
        dense_output=False,
    )
    if not sol.success:
        raise RuntimeError(f"section integration failed: {sol.message}")
    for qc in sol.y_events[0]:
        crossings.append(qc)
    states = np.array(crossings) if crossings else np.empty((0, 8))
    if states.size:
        e_err = max(abs(classical_energy(s, p) - e0) for s in states) / max(1.0, abs(e0))
        if e_err > energy_tol:
            raise RuntimeError(f"energy drift {e_err:.2e} on section exceeds {energy_tol:.1e}")
        pts = np.stack([states[:, 4], np.arctan2(states[:, 3], states[:, 2])], axis=1)
    else:
        pts = np.empty((0, 2))
    return PoincareResult(points=pts, energy=e0, initial_state=q0v)


def _circ_dist(a: np.ndarray, b: float) -> np.ndarray:
    d = np.abs(a - b) % (2 * np.pi)
    return np.minimum(d, 2 * np.pi - d)


def island_dispersion(result: PoincareResult, center_z: float, center_phi: float) -> dict:
    """Local return-map dispersion around a section-plane point.

    An orbit trapped on a regular island near the centre keeps all its
    crossings close; a chaotic orbit wanders over the accessible shell.
    """
    pts = result.points
    if len(pts) == 0:
        return {"n_points": 0, "max_distance": np.inf, "fraction_within": 0.0}
    dz = pts[:, 0] - center_z
    dphi = _circ_dist(pts[:, 1], center_phi)
    dist = np.sqrt(dz**2 + dphi**2)
    return {
        "n_points": int(len(pts)),
        "max_distance": float(dist.max()),
        "fraction_within": float(np.mean(dist < 0.4)),
    }


@dataclass
class SaturationResult:
    saturation_values: np.ndarray
    bin_edges: np.ndarray
    counts: np.ndarray


def saturation_distribution(
    p: ModelParams,
    ensemble: int = 100,
    t_end: float = 500.0,
    tail_fraction: float = 0.2,
    bins: int = 30,
    seed: int = 0,
    initial_states: list[ClassicalState] | None = None,
) -> SaturationResult:
    """Histogram of long-time photon numbers over random initial conditions.

    Saturation value = time average of n over the final tail_fraction of the
    run (the flow saturates well before t = 500 at the couplings of
    interest).
    """
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    n_samples = 600
    sample_times = np.linspace(0.0, t_end, n_samples)
    tail = sample_times >= (1.0 - tail_fraction) * t_end
    values = []
    if initial_states is None:
        initial_states = []
        for _ in range(ensemble):
            z1, z2 = rng.uniform(-1, 1, size=2)
            f1, f2 = rng.uniform(-np.pi, np.pi, size=2)
            alpha = (rng.normal() + 1j * rng.normal()) * 0.3
            initial_states.append(ClassicalState.from_angles(z1, f1, z2, f2, alpha))
    for q0 in initial_states:
        traj = integrate(q0, p, t_end, sample_times=sample_times)
        values.append(float(traj.n[tail].mean()))
    values = np.array(values)
    counts, edges = np.histogram(values, bins=bins)
    return SaturationResult(values, edges, counts)
