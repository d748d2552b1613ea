"""Dissipative quantum evolution: Monte Carlo wave-function unraveling of the
photon-loss master equation, a vectorized-Liouvillian integrator as an exact
oracle at small dimensions, and unitary propagation for the isolated system.

The MCWF loop integrates the non-Hermitian Schroedinger equation
d|psi~>/dt = -i H_eff |psi~>, H_eff = H - (i/2) sum_k rate_k L_k' L_k,
without per-step renormalization: the decaying norm^2 is the waiting-time
variable. A jump fires when norm^2 crosses a uniform draw r; the crossing is
localized by the integrator's dense-output root finder (well below the
configured jump_time_tolerance), the jump operator is applied, the state
renormalized, and r redrawn.

Seeding uses numpy SeedSequence(entropy=base_seed, spawn_key=(i,)) so
trajectory i is reproducible independently of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
import scipy.sparse as sp
from scipy.integrate import solve_ivp
from scipy.sparse.linalg import expm_multiply

from .model import LindbladSpec
from .states import PureState

__all__ = [
    "TrajectoryConfig",
    "TrajectoryRecord",
    "EnsembleResult",
    "evolve_trajectory",
    "run_ensemble",
    "lindblad_exact",
    "unitary_evolve",
]

Observable = Callable[[np.ndarray], float]

LEAKAGE_LIMIT = 1e-6


@dataclass(frozen=True)
class TrajectoryConfig:
    seed: int
    sample_times: np.ndarray
    dt_max: float = np.inf
    jump_time_tolerance: float = 1e-10
    rtol: float = 1e-8
    atol: float = 1e-10

    def __post_init__(self) -> None:
        t = np.asarray(self.sample_times, dtype=float)
        if t.ndim != 1 or len(t) < 1 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
            raise ValueError("sample_times must be strictly increasing and start at 0")


@dataclass
class TrajectoryRecord:
    times: np.ndarray
    states: np.ndarray | None  # (n_samples, dim), unit-normalized
    observables: dict[str, np.ndarray]
    jump_times: list[float]
    leakage: float
    leakage_flag: bool


@dataclass
class EnsembleResult:
    times: np.ndarray
    n_traj: int
    mean: dict[str, np.ndarray]
    stderr: dict[str, np.ndarray]
    rho: np.ndarray | None  # (n_samples, dim, dim) when assembled
    jump_counts: np.ndarray
    jump_times: list[list[float]]
    leakage: float
    leakage_flag: bool


def _fock_leakage(psi: np.ndarray, spec: LindbladSpec) -> float:
    """Population of the top two Fock levels of a normalized state."""
    dims = spec.dims
    block = psi.reshape(dims.spin_dim * dims.spin_dim, dims.fock_cutoff)
    if dims.fock_cutoff < 2:
        return float(np.sum(np.abs(block[:, -1:]) ** 2))
    return float(np.sum(np.abs(block[:, -2:]) ** 2))


def _effective_hamiltonian(spec: LindbladSpec) -> sp.csr_matrix:
    H = sp.csr_matrix(spec.hamiltonian)
    for rate, L in spec.jump_operators:
        Ls = sp.csr_matrix(L)
        H = H - 0.5j * rate * (Ls.conj().T @ Ls)
    return H.tocsr()


def evolve_trajectory(
    psi0: PureState,
    spec: LindbladSpec,
    cfg: TrajectoryConfig,
    observables: Mapping[str, Observable] | None = None,
    keep_states: bool = True,
) -> TrajectoryRecord:
    """One MCWF trajectory; deterministic given (psi0, spec, cfg)."""
    rng = np.random.default_rng(np.random.SeedSequence(entropy=cfg.seed))
    Heff = _effective_hamiltonian(spec)
    jumps = [(rate, sp.csr_matrix(L)) for rate, L in spec.jump_operators]
    times = np.asarray(cfg.sample_times, dtype=float)
    dim = len(psi0.amplitudes)

    def rhs(t, y):
        return -1j * (Heff @ y)

    psi = psi0.amplitudes.astype(complex).copy()
    r = rng.random()
    t = 0.0
    jump_times: list[float] = []
    sampled = np.empty((len(times), dim), dtype=complex)
    sampled[0] = psi
    next_idx = 1
    leakage = _fock_leakage(psi, spec)
    t_final = times[-1]

    # integrate per inter-jump segment; sample times inside the segment are
    # filled from the same solver pass
    while next_idx < len(times):

        def norm_event(tt, y):
            return (y.conj() @ y).real - r

        norm_event.terminal = True
        norm_event.direction = -1
        sol = solve_ivp(
            rhs,
            (t, t_final),
            psi,
            method="RK45",
            rtol=cfg.rtol,
            atol=cfg.atol,
            max_step=cfg.dt_max,
            t_eval=times[next_idx:],
            events=[norm_event] if jumps else None,
        )
        if not sol.success:
            raise RuntimeError(f"trajectory integration failed: {sol.message}")
        sol_y = np.asarray(sol.y)
        for k in range(len(sol.t)):
            nrm = np.linalg.norm(sol_y[:, k])
            sampled[next_idx] = sol_y[:, k] / nrm
            leakage = max(leakage, _fock_leakage(sampled[next_idx], spec))
            next_idx += 1
        if jumps and sol.t_events[0].size > 0:
            tj = float(sol.t_events[0][0])
            psi = sol.y_events[0][0].astype(complex)
            # select jump channel by weight rate * ||L psi||^2
            weights = np.array(
                [rate * float(np.linalg.norm(L @ psi) ** 2) for rate, L in jumps]
            )
            k = int(np.searchsorted(np.cumsum(weights / weights.sum()), rng.random()))
            k = min(k, len(jumps) - 1)
            psi = jumps[k][1] @ psi
            psi = psi / np.linalg.norm(psi)
            jump_times.append(tj)
            r = rng.random()
            t = tj
        else:
            t = t_final

    obs_out: dict[str, np.ndarray] = {}
    if observables:
        for name, fn in observables.items():
            obs_out[name] = np.array([fn(sampled[i]) for i in range(len(times))])
    return TrajectoryRecord(
        times=times,
        states=sampled if keep_states else None,
        observables=obs_out,
        jump_times=jump_times,
        leakage=leakage,
        leakage_flag=leakage > LEAKAGE_LIMIT,
    )


def run_ensemble(
    psi0: PureState,
    spec: LindbladSpec,
    n_traj: int,
    base_seed: int,
    observables: Mapping[str, Observable] | None = None,
    sample_times: np.ndarray | None = None,
    cfg: TrajectoryConfig | None = None,
    assemble_rho: bool = False,
    accumulators: Mapping[str, Callable[[np.ndarray], np.ndarray]] | None = None,
) -> EnsembleResult:
    """Seeded trajectory ensemble with per-observable mean and standard error.

    `accumulators` are linear state functionals returning arrays (e.g. joint
    phase distributions); their trajectory means are exposed through
    EnsembleResult.mean without a stderr companion.
    """
    if n_traj < 1:
        raise ValueError("n_traj must be >= 1")
    if cfg is None:
        if sample_times is None:
            raise ValueError("provide sample_times or a TrajectoryConfig")
        cfg = TrajectoryConfig(seed=base_seed, sample_times=np.asarray(sample_times))
    times = np.asarray(cfg.sample_times, dtype=float)
    nt = len(times)
    obs = dict(observables or {})
    sums = {name: np.zeros(nt) for name in obs}
    sq_sums = {name: np.zeros(nt) for name in obs}
    acc = dict(accumulators or {})
    acc_sums: dict[str, np.ndarray] = {}
    rho_sum = (
        np.zeros((nt, len(psi0.amplitudes), len(psi0.amplitudes)), dtype=complex)
        if assemble_rho
        else None
    )
    jump_counts = np.zeros(n_traj, dtype=int)
    jump_times: list[list[float]] = []
    leakage = 0.0

    for i in range(n_traj):
        seed_i = np.random.SeedSequence(entropy=base_seed, spawn_key=(i,))
        cfg_i = TrajectoryConfig(
            seed=int(seed_i.generate_state(1)[0]),
            sample_times=times,
            dt_max=cfg.dt_max,
            jump_time_tolerance=cfg.jump_time_tolerance,
            rtol=cfg.rtol,
            atol=cfg.atol,
        )
        rec = evolve_trajectory(psi0, spec, cfg_i, observables=obs, keep_states=True)
        for name in obs:
            v = rec.observables[name]
            sums[name] += v
            sq_sums[name] += v * v
        for name, fn in acc.items():
            vals = np.array([fn(rec.states[k]) for k in range(nt)])
            if name not in acc_sums:
                acc_sums[name] = np.zeros_like(vals)
            acc_sums[name] += vals
        if rho_sum is not None:
            for k in range(nt):
                rho_sum[k] += np.outer(rec.states[k], rec.states[k].conj())
        jump_counts[i] = len(rec.jump_times)
        jump_times.append(rec.jump_times)
        leakage = max(leakage, rec.leakage)

    mean = {name: sums[name] / n_traj for name in obs}
    stderr = {}
    for name in obs:
        var = np.maximum(sq_sums[name] / n_traj - mean[name] ** 2, 0.0)
        stderr[name] = np.sqrt(var / max(n_traj - 1, 1))
    for name in acc_sums:
        mean[name] = acc_sums[name] / n_traj
    rho = rho_sum / n_traj if rho_sum is not None else None
    return EnsembleResult(
        times=times,
        n_traj=n_traj,
        mean=mean,
        stderr=stderr,
        rho=rho,
        jump_counts=jump_counts,
        jump_times=jump_times,
        leakage=leakage,
        leakage_flag=leakage > LEAKAGE_LIMIT,
    )


LIOUVILLIAN_DIM_CAP = 150


def lindblad_exact(
    rho0: np.ndarray,
    spec: LindbladSpec,
    sample_times: np.ndarray,
    rtol: float = 1e-9,
    atol: float = 1e-12,
) -> np.ndarray:
    """Direct integration of vec(rho_dot) = L vec(rho); small dims only.

    Column-stacking convention: vec(A rho B) = (B^T kron A) vec(rho).
    Returns rho at the sample times, shape (n_samples, dim, dim).
    """
    dim = rho0.shape[0]
    if dim > LIOUVILLIAN_DIM_CAP:
        raise ValueError(f"dimension {dim} exceeds exact-Liouvillian cap {LIOUVILLIAN_DIM_CAP}")
    H = sp.csr_matrix(spec.hamiltonian)
    I = sp.identity(dim, format="csr", dtype=complex)
    L = -1j * (sp.kron(I, H) - sp.kron(H.T, I))
    for rate, Lk in spec.jump_operators:
        Lk = sp.csr_matrix(Lk)
        LdL = (Lk.conj().T @ Lk).tocsr()
        L = L + rate * (
            sp.kron(Lk.conj(), Lk) - 0.5 * (sp.kron(I, LdL) + sp.kron(LdL.T, I))
        )
    L = L.tocsr()
    times = np.asarray(sample_times, dtype=float)
    sol = solve_ivp(
        lambda t, v: L @ v,
        (times[0], times[-1]),
        rho0.astype(complex).flatten(order="F"),
        t_eval=times,
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise RuntimeError(f"Liouvillian integration failed: {sol.message}")
    return np.stack([sol.y[:, k].reshape(dim, dim, order="F") for k in range(len(times))])


def unitary_evolve(
    psi0: PureState, H: np.ndarray, sample_times: np.ndarray
) -> np.ndarray:
    """Krylov propagation exp(-i H dt) between sample times (H Hermitian)."""
    if np.abs(H - H.conj().T).max() > 1e-10:
        raise ValueError("Hamiltonian must be Hermitian")
    Hs = sp.csr_matrix(H)
    times = np.asarray(sample_times, dtype=float)
    out = np.empty((len(times), len(psi0.amplitudes)), dtype=complex)
    psi = psi0.amplitudes.astype(complex)
    t_prev = times[0]
    if times[0] != 0.0:
        psi = expm_multiply(-1j * times[0] * Hs, psi)
    out[0] = psi
    for k in range(1, len(times)):
        dt = times[k] - t_prev
        psi = expm_multiply(-1j * dt * Hs, psi)
        out[k] = psi
        t_prev = times[k]
    return out
