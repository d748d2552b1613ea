"""Measured quantities: expectations, reduced density matrices, survival
probability and branch overlaps, discrete phase distributions and their
moments, spin Husimi distributions, and Fourier spectra.

The discrete phase basis on a spin-S sector is
    |phi_m> = (2S+1)^(-1/2) sum_n exp(-i n phi_m) |n>,   n = -S..S,
    phi_m = -pi + 2 pi m / (2S+1),   m = 0..2S,
with |n> the Sz eigenstates (population-imbalance eigenstates of the
equivalent Josephson junction). The sign in the exponent matches the
coherent-state rotation convention used in `states`: the distribution of a
spin coherent state peaks at its Bloch azimuth. Phase moments are plain
arithmetic averages
over phi_m in [-pi, pi), exactly as used for the fluctuation diagnostics;
branch-cut pathologies near +/-pi are documented, not corrected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import HilbertDims
from .states import spin_coherent

__all__ = [
    "expectation",
    "reduce_state",
    "survival_probability",
    "branch_overlaps",
    "PhaseBasis",
    "phase_distribution",
    "phase_moments",
    "HusimiGrid",
    "husimi",
    "fourier_spectrum",
]


def _as_rho(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state)
    if state.ndim == 1:
        return np.outer(state, state.conj())
    return state


def expectation(state: np.ndarray, op: np.ndarray) -> complex | float:
    """<O> for a pure state vector or a density matrix.

    Hermitian operators yield a real result (imaginary part < 1e-10 asserted).
    """
    state = np.asarray(state)
    if op.shape[0] != (state.shape[0]):
        raise ValueError("operator/state dimension mismatch")
    if state.ndim == 1:
        val = complex(state.conj() @ (op @ state))
    else:
        val = complex(np.trace(op @ state))
    if np.abs(op - op.conj().T).max() < 1e-12:
        assert abs(val.imag) < 1e-10, f"Hermitian expectation has imag part {val.imag}"
        return val.real
    return val


_SLOT_AXES = {"spin1": 0, "spin2": 1, "photon": 2, "spins": (0, 1)}


def reduce_state(state: np.ndarray, keep: str, dims: HilbertDims) -> np.ndarray:
    """Partial trace keeping one slot (or 'spins' for the two-spin sector)."""
    if keep not in _SLOT_AXES:
        raise ValueError(f"unknown subsystem {keep!r}")
    d = dims.slot_dims
    state = np.asarray(state)
    if state.ndim == 1:
        psi = state.reshape(d)
        if keep == "spins":
            M = psi.reshape(d[0] * d[1], d[2])
            return M @ M.conj().T
        axes = [0, 1, 2]
        ax = _SLOT_AXES[keep]
        axes.remove(ax)
        M = np.moveaxis(psi, ax, 0).reshape(d[ax], -1)
        return M @ M.conj().T
    rho = state.reshape(*d, *d)
    if keep == "spins":
        red = np.einsum("abkcdk->abcd", rho)
        return red.reshape(d[0] * d[1], d[0] * d[1])
    if keep == "spin1":
        return np.einsum("abkcbk->ac", rho)
    if keep == "spin2":
        return np.einsum("abkadk->bd", rho)
    return np.einsum("abkabl->kl", rho)


def survival_probability(rho_t: np.ndarray, psi0: np.ndarray) -> float:
    """Tr(rho(t) |psi0><psi0|); for a pure trajectory state this is
    |<psi0|psi(t)>|^2."""
    rho_t = np.asarray(rho_t)
    if rho_t.ndim == 1:
        return float(np.abs(np.vdot(psi0, rho_t)) ** 2)
    return float((psi0.conj() @ (rho_t @ psi0)).real)


def branch_overlaps(
    rho_series: np.ndarray, psi_c1: np.ndarray, psi_c2: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Overlaps F1(t), F2(t) with the two branch states for a state series
    (either pure-state vectors or density matrices, leading time axis)."""
    f1 = np.array([survival_probability(r, psi_c1) for r in rho_series])
    f2 = np.array([survival_probability(r, psi_c2) for r in rho_series])
    return f1, f2


@dataclass(frozen=True)
class PhaseBasis:
    """Discrete phase states of one spin-S sector, columns of `matrix`."""

    S: float
    phases: np.ndarray
    matrix: np.ndarray  # (2S+1, 2S+1), column m is |phi_m> in the Sz basis

    @classmethod
    def build(cls, S: float) -> "PhaseBasis":
        dim = int(round(2 * S)) + 1
        m = np.arange(dim)
        phases = -np.pi + 2 * np.pi * m / dim
        n = -S + np.arange(dim)
        matrix = np.exp(-1j * np.outer(n, phases)) / np.sqrt(dim)
        return cls(S, phases, matrix)


def phase_distribution(rho_spins: np.ndarray, basis: PhaseBasis) -> np.ndarray:
    """Joint distribution p(phi_m1, phi_m2) of the two-spin reduced state."""
    dim = basis.matrix.shape[0]
    if rho_spins.shape != (dim * dim, dim * dim):
        raise ValueError("rho dimension does not match a two-spin sector")
    U = np.kron(basis.matrix, basis.matrix)
    p = np.einsum("im,ij,jm->m", U.conj(), rho_spins, U).real
    return p.reshape(dim, dim)


def phase_distribution_pure(psi: np.ndarray, basis: PhaseBasis, dims: HilbertDims) -> np.ndarray:
    """Joint phase distribution directly from a composite pure state
    (photon traced out implicitly)."""
    d = dims.spin_dim
    t = psi.reshape(d, d, dims.fock_cutoff)
    t = np.tensordot(basis.matrix.conj().T, t, axes=(1, 0))
    t = np.tensordot(basis.matrix.conj().T, t.transpose(1, 0, 2), axes=(1, 0)).transpose(1, 0, 2)
    return np.sum(np.abs(t) ** 2, axis=2)


def phase_moments(p: np.ndarray, basis: PhaseBasis) -> dict[str, float]:
    """Arithmetic moments of the joint phase distribution: means and
    fluctuations of phi_+ = (phi1+phi2)/2 and phi_- = (phi1-phi2)/2, plus the
    single-species fluctuation (Delta phi_1)^2."""
    phi = basis.phases
    P1, P2 = np.meshgrid(phi, phi, indexing="ij")
    plus = (P1 + P2) / 2
    minus = (P1 - P2) / 2
    total = p.sum()
    mean_plus = float((plus * p).sum() / total)
    mean_minus = float((minus * p).sum() / total)
    var_plus = float((((plus - mean_plus) ** 2) * p).sum() / total)
    var_minus = float((((minus - mean_minus) ** 2) * p).sum() / total)
    p1 = p.sum(axis=1) / total
    mean1 = float((phi * p1).sum())
    var1 = float((((phi - mean1) ** 2) * p1).sum())
    return {
        "phi_plus": mean_plus,
        "var_phi_plus": var_plus,
        "phi_minus": mean_minus,
        "var_phi_minus": var_minus,
        "phi_1": mean1,
        "var_phi_1": var1,
    }


@dataclass
class HusimiGrid:
    """Husimi density of a single-spin state on a (z, phi) grid.

    `raw` holds <z,phi|rho|z,phi>; `normalized` is scaled so the discrete
    sphere integral (measure dz dphi) equals 1.
    """

    z: np.ndarray
    phi: np.ndarray
    raw: np.ndarray  # (n_z, n_phi)
    normalization: float

    @property
    def normalized(self) -> np.ndarray:
        return self.raw * self.normalization


def _coherent_amplitude_grid(S: float, z: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Stack of spin coherent states for all (z, phi) grid points,
    shape (n_z, n_phi, 2S+1)."""
    dim = int(round(2 * S)) + 1
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    out = np.empty((len(z), len(phi), dim), dtype=complex)
    m = -S + np.arange(dim)
    phase = np.exp(-1j * np.outer(phi, m))  # (n_phi, dim)
    for i, th in enumerate(theta):
        base = spin_coherent(th, 0.0, S)  # real amplitudes
        out[i] = phase * base[None, :]
    return out


def husimi(rho_spin: np.ndarray, S: float, grid_res: int = 201) -> HusimiGrid:
    """Husimi distribution Q(z, phi) of a single-spin reduced state."""
    z = np.linspace(-1.0, 1.0, grid_res)
    phi = np.linspace(-np.pi, np.pi, grid_res, endpoint=False)
    coh = _coherent_amplitude_grid(S, z, phi)
    raw = np.einsum("zpi,ij,zpj->zp", coh.conj(), rho_spin, coh).real
    raw = np.maximum(raw, 0.0)
    dz = z[1] - z[0]
    dphi = phi[1] - phi[0]
    integral = raw.sum() * dz * dphi
    # analytic value of the integral is 4*pi/(2S+1); use the numerical one so
    # the stored grid integrates to 1 exactly
    norm = 1.0 / integral if integral > 0 else 0.0
    return HusimiGrid(z=z, phi=phi, raw=raw, normalization=norm)


def fourier_spectrum(series: np.ndarray, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Power spectrum of a detrended, uniformly sampled real series."""
    series = np.asarray(series, dtype=float)
    if series.ndim != 1:
        raise ValueError("series must be one-dimensional")
    detrended = series - series.mean()
    power = np.abs(np.fft.rfft(detrended)) ** 2
    freq = np.fft.rfftfreq(len(series), d=dt)
    return freq, power


def dominant_frequency(series: np.ndarray, dt: float) -> float:
    freq, power = fourier_spectrum(series, dt)
    return float(freq[np.argmax(power)])
