"""Initial quantum states: photon and spin coherent states and product
states seeded from classical phase-space points.

Spin coherent states use the rotation convention
    |theta, phi> = exp(-i phi Sz) exp(-i theta Sy) |S, S>,
which makes <S>/S exactly the Bloch vector (sin t cos f, sin t sin f, cos t).
The photon amplitude of a product state is sqrt(S) * alpha because the
classical field is the scaled expectation <a>/sqrt(S).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .classical import ClassicalState
from .operators import HilbertDims

__all__ = ["PureState", "photon_coherent", "spin_coherent", "product_state", "TruncationError"]


class TruncationError(ValueError):
    """Fock cutoff too small for the requested coherent amplitude."""


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray
    dims: HilbertDims

    def __post_init__(self) -> None:
        if self.amplitudes.shape != (self.dims.total_dim,):
            raise ValueError("amplitude vector length does not match dims")
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm {norm} deviates from 1 beyond 1e-12")


def photon_coherent(alpha: complex, n_max: int) -> np.ndarray:
    """Truncated coherent state, amplitudes ~ alpha^n / sqrt(n!)."""
    n = np.arange(n_max)
    log_mag = n * np.log(np.abs(alpha)) - 0.5 * gammaln(n + 1) if alpha != 0 else np.where(n == 0, 0.0, -np.inf)
    phase = np.exp(1j * n * np.angle(alpha)) if alpha != 0 else np.ones(n_max)
    amps = np.exp(log_mag - 0.5 * np.abs(alpha) ** 2) * phase
    norm = np.linalg.norm(amps)
    amps = amps / norm
    if np.abs(amps[-1]) ** 2 >= 1e-8:
        raise TruncationError(
            f"coherent state |alpha|={abs(alpha):.3g} leaks {np.abs(amps[-1])**2:.2e} "
            f"into the top Fock level at n_max={n_max}"
        )
    return amps


def spin_coherent(theta: float, phi: float, S: float) -> np.ndarray:
    """Spin-S coherent state in the m = -S..+S basis.

    Amplitudes follow from the Wigner d-matrix column of the highest-weight
    state: <m| e^{-i theta Sy} |S> = sqrt(C(2S, S+m)) cos(t/2)^(S+m)
    (-sin(t/2))^(S-m), with the phase rotation e^{-i phi m} applied after.
    """
    if not (0.0 <= theta <= np.pi):
        raise ValueError("theta must lie in [0, pi]")
    dim = int(round(2 * S)) + 1
    m = -S + np.arange(dim)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    log_binom = gammaln(2 * S + 1) - gammaln(S + m + 1) - gammaln(S - m + 1)
    with np.errstate(divide="ignore"):
        log_c = np.where(S + m > 0, (S + m) * np.log(np.maximum(c, 1e-300)), 0.0)
        log_s = np.where(S - m > 0, (S - m) * np.log(np.maximum(s, 1e-300)), 0.0)
    amps = np.exp(0.5 * log_binom + log_c + log_s).astype(complex)
    amps *= np.exp(-1j * phi * m)
    return amps / np.linalg.norm(amps)


def product_state(q: ClassicalState, dims: HilbertDims) -> PureState:
    """Product of two spin coherent states and a photon coherent state
    matching the classical seed's first moments."""
    S = dims.spin_magnitude

    def angles(s):
        z = min(1.0, max(-1.0, s[2]))
        return np.arccos(z), np.arctan2(s[1], s[0])

    t1, f1 = angles(q.s1)
    t2, f2 = angles(q.s2)
    spin1 = spin_coherent(t1, f1, S)
    spin2 = spin_coherent(t2, f2, S)
    photon = photon_coherent(np.sqrt(S) * q.alpha, dims.fock_cutoff)
    amps = np.kron(np.kron(spin1, spin2), photon)
    amps = amps / np.linalg.norm(amps)
    return PureState(amps, dims)
