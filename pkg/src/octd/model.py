"""Model assembly: coupling parameters, the two-spin/cavity Hamiltonian,
and the photon-loss dissipator specification.

Energy (time) is measured in units of J (1/J): J is kept as an explicit field
so the unit convention is self-documenting, but the public surface fixes J=1.

The model is realizable as a cavity-coupled two-component Bose-Josephson
junction; `bjj_mapping_check` verifies the Schwinger-boson correspondence on
small dimensions as a documentation-grade consistency check (the two-mode
bosonic Hamiltonian is not a runtime simulation path).
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from .operators import HilbertDims, boson_ladder, embed, spin_matrices

__all__ = ["ModelParams", "LindbladSpec", "build_hamiltonian", "build_lindblad", "bjj_mapping_check"]

# Guard against accidentally gigantic dense operator construction.
MAX_TOTAL_DIM = 20_000


@dataclass(frozen=True)
class ModelParams:
    """All couplings and Hilbert-space sizes for one run.

    omega_c: photon frequency; V: spin-spin coupling; lam: spin-cavity
    coupling; kappa: photon loss rate; S: spin magnitude; n_max: Fock cutoff.
    All energies in units of J = 1.
    """

    V: float
    lam: float
    kappa: float
    S: float
    n_max: int
    omega_c: float = 1.0
    J: float = field(default=1.0)

    def __post_init__(self) -> None:
        if self.omega_c <= 0:
            raise ValueError("omega_c must be positive")
        if self.kappa < 0:
            raise ValueError("kappa must be non-negative")
        if self.J != 1.0:
            raise ValueError("J is the unit of energy and must stay 1")
        # validates S half-integer > 0 and n_max >= 1
        self.dims  # noqa: B018

    @property
    def dims(self) -> HilbertDims:
        return HilbertDims(self.S, self.n_max)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ModelParams":
        return cls(**d)


@dataclass(frozen=True)
class LindbladSpec:
    """Hamiltonian plus jump operators (rate, operator) pairs."""

    hamiltonian: np.ndarray
    jump_operators: tuple[tuple[float, np.ndarray], ...]
    dims: HilbertDims

    def __post_init__(self) -> None:
        H = self.hamiltonian
        if np.abs(H - H.conj().T).max() > 1e-10:
            raise ValueError("Hamiltonian is not Hermitian")
        for rate, _ in self.jump_operators:
            if rate < 0:
                raise ValueError("jump rates must be non-negative")


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """H = omega_c a'a - J(S1x + S2x) + (V/S) S1z S2z
         + (lam/sqrt(2S)) (S1z + S2z)(a + a').
    """
    dims = p.dims
    if dims.total_dim > MAX_TOTAL_DIM:
        raise ValueError(f"total dimension {dims.total_dim} exceeds cap {MAX_TOTAL_DIM}")
    sx, _, sz, _, _ = spin_matrices(p.S)
    a, a_dag, n = boson_ladder(p.n_max)

    s1x = embed(sx, "spin1", dims)
    s2x = embed(sx, "spin2", dims)
    s1z = embed(sz, "spin1", dims)
    s2z = embed(sz, "spin2", dims)
    n_ph = embed(n, "photon", dims)
    x_ph = embed(a + a_dag, "photon", dims)

    H = (
        p.omega_c * n_ph
        - p.J * (s1x + s2x)
        + (p.V / p.S) * (s1z @ s2z)
        + (p.lam / np.sqrt(2 * p.S)) * ((s1z + s2z) @ x_ph)
    )
    return H


def build_lindblad(p: ModelParams) -> LindbladSpec:
    """Photon loss at rate kappa through the single jump operator a."""
    H = build_hamiltonian(p)
    a, _, _ = boson_ladder(p.n_max)
    a_full = embed(a, "photon", p.dims)
    jumps: tuple[tuple[float, np.ndarray], ...]
    if p.kappa == 0:
        jumps = ()
    else:
        jumps = ((p.kappa, a_full),)
    return LindbladSpec(hamiltonian=H, jump_operators=jumps, dims=p.dims)


def bjj_mapping_check(S: float) -> dict:
    """Verify the Schwinger-boson correspondence on the fixed-N two-mode sector.

    Builds S- = aR' aL and Sz = (nL - nR)/2 from two bosonic modes restricted
    to N = 2S particles and checks they reproduce the spin-S algebra and the
    direct spin matrices in the m-ascending basis. Returns a report dict with
    maximal deviations.
    """
    N = int(round(2 * S))
    # two-mode Fock states |nL, nR> with nL + nR = N, ordered so that
    # m = (nL - nR)/2 ascends: nL = 0..N
    dim = N + 1
    nL = np.arange(dim)
    nR = N - nL
    # S- = aR' aL : |nL, nR> -> sqrt(nL (nR+1)) |nL-1, nR+1>, i.e. m -> m-1
    sm = np.zeros((dim, dim), dtype=complex)
    sm[np.arange(dim - 1), np.arange(1, dim)] = np.sqrt(nL[1:] * (nR[1:] + 1))
    sz = np.diag((nL - nR) / 2).astype(complex)
    sp = sm.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j

    sx_ref, sy_ref, sz_ref, _, _ = spin_matrices(S)
    comm = sx @ sy - sy @ sx - 1j * sz
    report = {
        "S": S,
        "commutator_deviation": float(np.abs(comm).max()),
        "sz_spectrum": np.diag(sz).real.tolist(),
        "matches_spin_matrices": float(
            max(np.abs(sx - sx_ref).max(), np.abs(sy - sy_ref).max(), np.abs(sz - sz_ref).max())
        ),
        "casimir_deviation": float(
            np.abs(sx @ sx + sy @ sy + sz @ sz - S * (S + 1) * np.eye(dim)).max()
        ),
    }
    report["ok"] = report["commutator_deviation"] < 1e-12 and report["matches_spin_matrices"] < 1e-12
    return report
