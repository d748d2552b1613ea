"""Closed-form fixed points of the mean-field flow, their linear stability,
and the coupling-plane phase diagram.

Catalog (J = 1, omega = omega_c):
  NP1    : alpha = 0, both spins along +x.
  NP2+/- : alpha = 0, s_ix = J/V, s_1z = -s_2z = +/- sqrt(1 - (J/V)^2).
  FSR1+/-: superradiant, spins parallel, phi_i = 0,
           z = +/- sqrt(1 - J^2 (k^2+4w^2)^2 / (8 w lam^2 - (k^2+4w^2) V)^2),
           x = -8 w lam z / (k^2+4w^2),  p = kappa x / (2 w).
  FSR2+/-: same z, x, p closed form with phi_i = pi (spin x-components
           negated); exists on the opposite side of the superradiance
           balance, where (k^2+4w^2) V > 8 w lam^2.

Stability works in the full 8 Cartesian coordinates. The conserved spin norms
make the two radial directions exact left null vectors of the Jacobian, so
the spectrum is evaluated on the 6-dimensional physical complement and two
exact zeros are appended for the norm modes.

Classification note: the two decaying modes of a dissipative fixed point
hybridize with further modes at finite spin-cavity coupling, so the number of
eigenvalues with strictly negative real part is 2 only in the lam -> 0 limit
and is generically 4. A partial attractor is therefore classified as: no
growing modes, at least one decaying pair, and at least one centre pair
surviving on the dissipation-free subspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import ClassicalState, eom_jacobian, eom_rhs
from .model import ModelParams

__all__ = [
    "FixedPoint",
    "StabilityReport",
    "fixed_point_catalog",
    "stability",
    "phase_diagram",
    "classify_point",
    "REGION_NONE",
]

FP_LABELS = ("NP1", "NP2+", "NP2-", "FSR1+", "FSR1-", "FSR2+", "FSR2-")

REGION_NONE = 0  # no partial attractor found


@dataclass(frozen=True)
class FixedPoint:
    label: str
    exists: bool
    state: ClassicalState | None

    def vector(self) -> np.ndarray:
        if self.state is None:
            raise ValueError(f"fixed point {self.label} does not exist at these parameters")
        return self.state.to_vector()


@dataclass(frozen=True)
class StabilityReport:
    """Jacobian spectrum at a fixed point.

    eigenvalues: all 8, sorted by real part (the two appended norm-mode
    zeros included); counts use the given tolerance on real parts.
    """

    eigenvalues: np.ndarray
    negative_count: int
    zero_count: int
    positive_count: int
    classification: str
    tol: float

    @property
    def max_real(self) -> float:
        return float(self.eigenvalues.real.max())


def _np_states(p: ModelParams) -> list[FixedPoint]:
    out = [FixedPoint("NP1", True, ClassicalState(0.0, 0.0, (1.0, 0.0, 0.0), (1.0, 0.0, 0.0)))]
    ratio = p.J / p.V if p.V != 0 else np.inf
    if abs(ratio) <= 1.0:
        z = float(np.sqrt(1.0 - ratio * ratio))
        for sign, label in ((+1.0, "NP2+"), (-1.0, "NP2-")):
            out.append(
                FixedPoint(
                    label,
                    True,
                    ClassicalState(0.0, 0.0, (ratio, 0.0, sign * z), (ratio, 0.0, -sign * z)),
                )
            )
    else:
        out.append(FixedPoint("NP2+", False, None))
        out.append(FixedPoint("NP2-", False, None))
    return out


def _fsr_states(p: ModelParams) -> list[FixedPoint]:
    w, kap, lam, V, J = p.omega_c, p.kappa, p.lam, p.V, p.J
    g = kap * kap + 4 * w * w
    den = 8 * w * lam * lam - g * V
    out: list[FixedPoint] = []
    for family, sperp_sign in (("FSR1", +1.0), ("FSR2", -1.0)):
        # the transverse spin component sqrt(1-z^2) must be non-negative,
        # which fixes the admissible sign of the denominator per family
        exists = False
        z = None
        if den != 0:
            radicand = 1.0 - (J * g / den) ** 2
            den_ok = den > 0 if family == "FSR1" else den < 0
            if den_ok and 0.0 <= radicand <= 1.0:
                exists = True
                z = float(np.sqrt(radicand))
        if not exists:
            out.append(FixedPoint(f"{family}+", False, None))
            out.append(FixedPoint(f"{family}-", False, None))
            continue
        sperp = float(np.sqrt(1.0 - z * z))
        for sign, branch in ((+1.0, "+"), (-1.0, "-")):
            zz = sign * z
            x = -8 * w * lam * zz / g
            px = kap * x / (2 * w)
            s = (sperp_sign * sperp, 0.0, zz)
            out.append(FixedPoint(f"{family}{branch}", True, ClassicalState(x, px, s, s)))
    return out


def fixed_point_catalog(p: ModelParams) -> list[FixedPoint]:
    """All seven labeled candidates with existence flags, in FP_LABELS order."""
    by_label = {fp.label: fp for fp in _np_states(p) + _fsr_states(p)}
    return [by_label[label] for label in FP_LABELS]


def _physical_basis(q: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the 6-dim complement of the two spin radial
    directions at state q (columns)."""
    r1 = np.zeros(8)
    r1[2:5] = q[2:5]
    r1 /= np.linalg.norm(r1)
    r2 = np.zeros(8)
    r2[5:8] = q[5:8]
    r2 /= np.linalg.norm(r2)
    basis = []
    for v in np.eye(8):
        v = v - r1 * (r1 @ v) - r2 * (r2 @ v)
        for b in basis:
            v = v - b * (b @ v)
        nv = np.linalg.norm(v)
        if nv > 1e-10:
            basis.append(v / nv)
    B = np.array(basis).T
    assert B.shape == (8, 6)
    return B


def stability(fp: FixedPoint, p: ModelParams, tol: float = 1e-8) -> StabilityReport:
    """Linear stability spectrum at a fixed point."""
    if not fp.exists:
        raise ValueError(f"fixed point {fp.label} does not exist at these parameters")
    q = fp.vector()
    Jm = eom_jacobian(q, p)
    B = _physical_basis(q)
    ev6 = np.linalg.eigvals(B.T @ Jm @ B)
    ev = np.concatenate([ev6, [0.0, 0.0]])
    ev = ev[np.argsort(ev.real)]
    re = ev.real
    neg = int(np.sum(re < -tol))
    pos = int(np.sum(re > tol))
    zero = int(np.sum(np.abs(re) <= tol))
    if pos > 0:
        cls = "unstable"
    elif neg == 0:
        cls = "center"
    elif zero >= 2:
        cls = "partial_attractor"
    else:
        cls = "attractor"
    return StabilityReport(ev, neg, zero, pos, cls, tol)


def residual(fp: FixedPoint, p: ModelParams) -> float:
    """Max-abs of the EOM right-hand side at the fixed point."""
    return float(np.abs(eom_rhs(fp.vector(), p)).max())


def classify_point(lam: float, V: float, p_base: ModelParams) -> dict:
    """Stability classes of all fixed points at one coupling pair, plus the
    region label: 1 = NP1 partial attractor, 2 = NP2 (with NP1 unstable),
    3 = FSR1, 0 = none. FSR2 is also classified at kappa = 0 for the
    isolated-stability overlay."""
    from dataclasses import replace

    p = replace(p_base, lam=lam, V=V)
    p0 = replace(p, kappa=0.0)
    catalog = {fp.label: fp for fp in fixed_point_catalog(p)}
    catalog0 = {fp.label: fp for fp in fixed_point_catalog(p0)}

    def cls_of(fp: FixedPoint, params: ModelParams) -> str:
        return stability(fp, params).classification if fp.exists else "absent"

    out = {
        "lambda": lam,
        "V": V,
        "np1_class": cls_of(catalog["NP1"], p),
        "np2_class": cls_of(catalog["NP2+"], p),
        "fsr1_class": cls_of(catalog["FSR1+"], p),
        "fsr2_kappa0_class": cls_of(catalog0["FSR2+"], p0),
    }
    if out["np1_class"] == "partial_attractor":
        region = 1
    elif out["np2_class"] == "partial_attractor" and out["np1_class"] == "unstable":
        region = 2
    elif out["fsr1_class"] == "partial_attractor":
        region = 3
    else:
        region = REGION_NONE
    out["region"] = region
    return out


def phase_diagram(
    lam_values: np.ndarray, V_values: np.ndarray, p_base: ModelParams
) -> list[dict]:
    """Region map over the coupling grid; one record per (lambda, V) cell."""
    return [classify_point(float(l), float(V), p_base) for V in V_values for l in lam_values]
