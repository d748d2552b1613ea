"""Hilbert-space construction: spin-S matrices, bosonic ladder operators,
and tensor-product embedding on the composite space spin1 (x) spin2 (x) photon.

Basis conventions (all serialized states depend on these):
  * spin basis ordered by magnetic quantum number m = -S .. +S (ascending),
  * Fock basis ordered n = 0 .. n_max-1 (ascending),
  * composite slot order spin1, spin2, photon (Kronecker product in that order).

All operators are dense complex numpy arrays; totals stay below ~10^4 at the
scales this package targets (S <= 8, n_max <~ 40), so sparsity is an internal
optimization of the evolution code, not part of this layer's contract.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "HilbertDims",
    "spin_matrices",
    "boson_ladder",
    "embed",
    "swap_spins_operator",
]


def _check_half_integer(S: float) -> None:
    two_s = 2 * S
    if two_s < 0 or abs(two_s - round(two_s)) > 1e-12:
        raise ValueError(f"spin magnitude must be a non-negative half-integer, got S={S}")


@dataclass(frozen=True)
class HilbertDims:
    """Dimensions of the composite Hilbert space."""

    spin_magnitude: float
    fock_cutoff: int

    def __post_init__(self) -> None:
        _check_half_integer(self.spin_magnitude)
        if self.spin_magnitude <= 0:
            raise ValueError("spin magnitude must be positive")
        if self.fock_cutoff < 1:
            raise ValueError("Fock cutoff must be >= 1")

    @property
    def spin_dim(self) -> int:
        return int(round(2 * self.spin_magnitude)) + 1

    @property
    def total_dim(self) -> int:
        return self.spin_dim * self.spin_dim * self.fock_cutoff

    @property
    def slot_dims(self) -> tuple[int, int, int]:
        return (self.spin_dim, self.spin_dim, self.fock_cutoff)


def spin_matrices(S: float) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return (Sx, Sy, Sz, Sp, Sm) for spin magnitude S, basis m = -S..+S.

    Sp acts as Sp|S,m> = sqrt(S(S+1) - m(m+1)) |S,m+1>.
    """
    _check_half_integer(S)
    dim = int(round(2 * S)) + 1
    m = -S + np.arange(dim)
    sz = np.diag(m).astype(complex)
    # raising operator: <m+1| Sp |m>
    c = np.sqrt(S * (S + 1) - m[:-1] * (m[:-1] + 1))
    sp = np.zeros((dim, dim), dtype=complex)
    sp[np.arange(1, dim), np.arange(dim - 1)] = c
    sm = sp.conj().T
    sx = (sp + sm) / 2
    sy = (sp - sm) / 2j
    return sx, sy, sz, sp, sm


def boson_ladder(n_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (a, a_dag, n) on the truncated Fock space |0>..|n_max-1>.

    The commutator [a, a_dag] equals identity except at the (n_max-1, n_max-1)
    entry, a truncation artifact; adequacy is gated by the leakage monitor in
    the evolution code.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a = np.zeros((n_max, n_max), dtype=complex)
    ns = np.arange(1, n_max)
    a[ns - 1, ns] = np.sqrt(ns)
    a_dag = a.conj().T
    n = a_dag @ a
    return a, a_dag, n


_SLOTS = ("spin1", "spin2", "photon")


def embed(op: np.ndarray, slot: str, dims: HilbertDims) -> np.ndarray:
    """Embed a single-slot operator into the composite space.

    Kronecker product with identities in the other slots, slot order
    spin1 (x) spin2 (x) photon.
    """
    if slot not in _SLOTS:
        raise ValueError(f"unknown slot {slot!r}, expected one of {_SLOTS}")
    slot_dims = dims.slot_dims
    idx = _SLOTS.index(slot)
    if op.shape != (slot_dims[idx], slot_dims[idx]):
        raise ValueError(
            f"operator shape {op.shape} does not match slot {slot!r} dimension {slot_dims[idx]}"
        )
    factors = [np.eye(d, dtype=complex) for d in slot_dims]
    factors[idx] = op.astype(complex)
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def swap_spins_operator(dims: HilbertDims) -> np.ndarray:
    """Permutation operator exchanging the two spin slots."""
    d = dims.spin_dim
    n_max = dims.fock_cutoff
    total = dims.total_dim
    P = np.zeros((total, total))
    idx = np.arange(total)
    i1, rem = np.divmod(idx, d * n_max)
    i2, k = np.divmod(rem, n_max)
    swapped = i2 * d * n_max + i1 * n_max + k
    P[swapped, idx] = 1.0
    return P
