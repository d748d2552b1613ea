"""Run orchestration: named experiment recipes, strict config parsing,
artifact output (CSV/JSON) and reproducibility manifests.

Config files are INI-style with two sections:

    [model]
    omega_c = 1.0
    V = 0.5
    lambda = 0.5
    kappa = 0.3
    S = 6
    n_max = 16

    [run]
    t_end = 150
    ...

Unknown keys are errors: silent typos in physics parameters are the failure
mode this layer exists to prevent.
"""

from __future__ import annotations

import configparser
import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .classical import (
    ClassicalState,
    class1_residual,
    integrate,
)
from .chaos import (
    decorrelator,
    island_dispersion,
    poincare_section,
    random_tangent_perturbation,
    saturation_distribution,
)
from .fixed_points import (
    fixed_point_catalog,
    phase_diagram,
    residual,
    stability,
)
from .model import ModelParams, build_lindblad
from .observables import (
    PhaseBasis,
    husimi,
    phase_distribution_pure,
    phase_moments,
    reduce_state,
    survival_probability,
)
from .operators import boson_ladder, embed, spin_matrices
from .quantum import run_ensemble
from .states import product_state

__all__ = ["RunConfig", "ConfigError", "run", "list_recipes", "RECIPES", "load_config"]

EXPERIMENTS = (
    "fixed-points",
    "phase-diagram",
    "classical-evolve",
    "decorrelator",
    "poincare",
    "saturation",
    "quantum-evolve",
    "scar-np1",
    "scar-fsr2",
    "sync-observables",
)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    experiment: str
    params: ModelParams
    options: dict
    out_dir: Path
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")


_MODEL_KEYS = {"omega_c", "v", "lambda", "kappa", "s", "n_max"}

_RUN_KEYS: dict[str, set[str]] = {
    "fixed-points": set(),
    "phase-diagram": {"lambda_min", "lambda_max", "lambda_steps", "v_min", "v_max", "v_steps"},
    "classical-evolve": {"z1", "phi1", "z2", "phi2", "alpha_re", "alpha_im", "t_end", "n_samples"},
    "decorrelator": {"z1", "phi1", "z2", "phi2", "alpha_re", "alpha_im", "eps", "t_end",
                     "ensemble", "n_samples"},
    "poincare": {"t_end", "n_orbits", "offset"},
    "saturation": {"ensemble", "t_end", "bins"},
    "quantum-evolve": {"z1", "phi1", "z2", "phi2", "alpha_re", "alpha_im", "t_end",
                       "n_samples", "n_traj"},
    "sync-observables": {"z1", "phi1", "z2", "phi2", "alpha_re", "alpha_im", "t_end",
                         "n_samples", "n_traj"},
    "scar-np1": {"t_end", "n_samples", "n_traj", "husimi_times", "husimi_res",
                 "generic_z1", "generic_phi1", "generic_z2", "generic_phi2"},
    "scar-fsr2": {"t_end", "n_samples", "n_traj", "husimi_times", "husimi_res"},
}


def load_config(path: str | Path, experiment: str, out_dir: str | Path,
                seed: int = 0, threads: int = 1) -> RunConfig:
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ConfigError(f"config file {path} not found or unreadable")
    if set(cp.sections()) - {"model", "run"}:
        raise ConfigError(f"unknown config sections: {set(cp.sections()) - {'model', 'run'}}")
    if "model" not in cp:
        raise ConfigError("missing [model] section")
    model_items = {k.lower(): v for k, v in cp["model"].items()}
    unknown = set(model_items) - _MODEL_KEYS
    if unknown:
        raise ConfigError(f"unknown [model] keys: {sorted(unknown)}")
    try:
        params = ModelParams(
            omega_c=float(model_items.get("omega_c", 1.0)),
            V=float(model_items["v"]),
            lam=float(model_items["lambda"]),
            kappa=float(model_items["kappa"]),
            S=float(model_items["s"]),
            n_max=int(model_items["n_max"]),
        )
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"invalid [model] section: {exc}") from exc
    run_items = {k.lower(): v for k, v in cp["run"].items()} if "run" in cp else {}
    allowed = _RUN_KEYS[experiment]
    unknown = set(run_items) - allowed
    if unknown:
        raise ConfigError(f"unknown [run] keys for {experiment}: {sorted(unknown)}")
    return RunConfig(experiment, params, run_items, Path(out_dir), seed=seed, threads=threads)


# -- recipes: frozen parameter sets per paper-figure panel family ------------

@dataclass(frozen=True)
class Recipe:
    name: str
    experiment: str
    description: str
    model: dict
    run: dict


RECIPES: dict[str, Recipe] = {
    r.name: r
    for r in [
        Recipe("fig1b-phase-diagram", "phase-diagram",
               "coupling-plane region map, kappa=0.3",
               {"V": 1.0, "lambda": 0.5, "kappa": 0.3, "S": 1, "n_max": 2},
               {"lambda_min": 0.0, "lambda_max": 1.5, "lambda_steps": 101,
                "v_min": 0.0, "v_max": 2.5, "v_steps": 101}),
        Recipe("fig1d-decorrelator", "decorrelator",
               "photon decorrelator, transient chaos in region II",
               {"V": 1.8, "lambda": 0.2, "kappa": 0.3, "S": 1, "n_max": 2},
               {"z1": 0.6, "phi1": 1.0, "z2": -0.2, "phi2": -0.5,
                "alpha_re": 0.1, "alpha_im": 0.05,
                "eps": 1e-6, "t_end": 250, "ensemble": 100, "n_samples": 500}),
        Recipe("fig2-regionI", "quantum-evolve",
               "single-trajectory synchronization, region I",
               {"V": 0.5, "lambda": 0.5, "kappa": 0.3, "S": 6, "n_max": 16},
               {"z1": 0.6, "phi1": 1.0, "z2": -0.2, "phi2": -0.5,
                "alpha_re": 0.1, "alpha_im": 0.05,
                "t_end": 150, "n_samples": 301, "n_traj": 1}),
        Recipe("fig2-regionII", "quantum-evolve",
               "single-trajectory synchronization, region II",
               {"V": 1.8, "lambda": 0.2, "kappa": 0.3, "S": 6, "n_max": 16},
               {"z1": 0.6, "phi1": 1.0, "z2": -0.2, "phi2": -0.5,
                "alpha_re": 0.1, "alpha_im": 0.05,
                "t_end": 400, "n_samples": 401, "n_traj": 1}),
        Recipe("fig3a-np1-scar", "scar-np1",
               "dissipation-protected survival revivals of the normal saddle",
               {"V": 1.5, "lambda": 0.5, "kappa": 0.1, "S": 5, "n_max": 16},
               {"t_end": 50, "n_samples": 251, "n_traj": 64,
                "husimi_times": "0,6,12", "husimi_res": 201,
                "generic_z1": 0.55, "generic_phi1": 2.1,
                "generic_z2": -0.35, "generic_phi2": -1.2}),
        Recipe("fig3e-fsr2-scar", "scar-fsr2",
               "dissipative superradiant-branch scar and collective tunneling",
               {"V": 1.4, "lambda": 0.2, "kappa": 0.1, "S": 5, "n_max": 12},
               {"t_end": 60, "n_samples": 301, "n_traj": 64,
                "husimi_times": "0,30,60", "husimi_res": 201}),
        Recipe("figS1-regionI", "classical-evolve",
               "classical synchronization, region I",
               {"V": 0.5, "lambda": 0.5, "kappa": 0.3, "S": 1, "n_max": 2},
               {"z1": 0.6, "phi1": 1.0, "z2": -0.2, "phi2": -0.5,
                "alpha_re": 0.1, "alpha_im": 0.05, "t_end": 300, "n_samples": 3000}),
        Recipe("figS1-regionII", "classical-evolve",
               "classical transient chaos, region II",
               {"V": 1.8, "lambda": 0.2, "kappa": 0.3, "S": 1, "n_max": 2},
               {"z1": 0.6, "phi1": 1.0, "z2": -0.2, "phi2": -0.5,
                "alpha_re": 0.1, "alpha_im": 0.05, "t_end": 600, "n_samples": 6000}),
        Recipe("figS2-saturation", "saturation",
               "self-organized superradiant saturation distribution",
               {"V": 0.5, "lambda": 1.3, "kappa": 0.3, "S": 1, "n_max": 2},
               {"ensemble": 100, "t_end": 500, "bins": 30}),
        Recipe("figS3-regionI", "sync-observables",
               "ensemble phase/imbalance fluctuations, region I",
               {"V": 0.5, "lambda": 0.5, "kappa": 0.3, "S": 6, "n_max": 16},
               {"z1": 0.6, "phi1": 1.0, "z2": -0.2, "phi2": -0.5,
                "alpha_re": 0.1, "alpha_im": 0.05,
                "t_end": 150, "n_samples": 301, "n_traj": 200}),
        Recipe("figS3-regionII", "sync-observables",
               "ensemble phase/imbalance fluctuations, region II",
               {"V": 1.8, "lambda": 0.2, "kappa": 0.3, "S": 6, "n_max": 16},
               {"z1": 0.6, "phi1": 1.0, "z2": -0.2, "phi2": -0.5,
                "alpha_re": 0.1, "alpha_im": 0.05,
                "t_end": 400, "n_samples": 401, "n_traj": 200}),
        Recipe("figS4-coherent-oscillations", "quantum-evolve",
               "per-trajectory oscillations sharing one frequency, region I",
               {"V": 0.5, "lambda": 0.5, "kappa": 0.3, "S": 6, "n_max": 16},
               {"z1": 0.6, "phi1": 1.0, "z2": -0.2, "phi2": -0.5,
                "alpha_re": 0.1, "alpha_im": 0.05,
                "t_end": 150, "n_samples": 601, "n_traj": 1}),
        Recipe("figS5-nointeraction", "sync-observables",
               "synchronization without direct spin-spin coupling",
               {"V": 0.0, "lambda": 0.5, "kappa": 0.3, "S": 6, "n_max": 16},
               {"z1": 0.6, "phi1": 1.0, "z2": -0.2, "phi2": -0.5,
                "alpha_re": 0.1, "alpha_im": 0.05,
                "t_end": 150, "n_samples": 301, "n_traj": 200}),
        Recipe("figS6-stable-fsr2", "scar-fsr2",
               "stable superradiant branch, isolated: localization",
               {"V": 2.0, "lambda": 0.2, "kappa": 0.0, "S": 8, "n_max": 12},
               {"t_end": 50, "n_samples": 251, "n_traj": 1,
                "husimi_times": "0,50", "husimi_res": 201}),
        Recipe("figS6-poincare", "poincare",
               "section at the stable-branch energy: regular islands",
               {"V": 2.0, "lambda": 0.2, "kappa": 0.0, "S": 8, "n_max": 12},
               {"t_end": 3000, "n_orbits": 8, "offset": 0.05}),
        Recipe("figS7-unstable-fsr2", "scar-fsr2",
               "unstable superradiant branch, isolated: tunneling revivals",
               {"V": 1.4, "lambda": 0.2, "kappa": 0.0, "S": 8, "n_max": 12},
               {"t_end": 80, "n_samples": 401, "n_traj": 1,
                "husimi_times": "0,30,60", "husimi_res": 201}),
        Recipe("figS7-poincare", "poincare",
               "section at the unstable-branch energy: submerged in chaos",
               {"V": 1.4, "lambda": 0.2, "kappa": 0.0, "S": 8, "n_max": 12},
               {"t_end": 3000, "n_orbits": 8, "offset": 0.05}),
        Recipe("figS7-dissipative-fsr2", "scar-fsr2",
               "unstable superradiant branch with photon loss: no late revival",
               {"V": 1.4, "lambda": 0.2, "kappa": 0.1, "S": 8, "n_max": 12},
               {"t_end": 80, "n_samples": 401, "n_traj": 32,
                "husimi_times": "30", "husimi_res": 201}),
    ]
}


def list_recipes() -> list[dict]:
    return [
        {"name": r.name, "experiment": r.experiment, "description": r.description,
         "model": r.model, "run": r.run}
        for r in RECIPES.values()
    ]


def config_from_recipe(name: str, out_dir: str | Path, seed: int = 0, threads: int = 1) -> RunConfig:
    if name not in RECIPES:
        raise ConfigError(f"unknown recipe {name!r}; see `octd recipes`")
    r = RECIPES[name]
    m = {k.lower(): v for k, v in r.model.items()}
    params = ModelParams(
        omega_c=float(m.get("omega_c", 1.0)), V=float(m["v"]), lam=float(m["lambda"]),
        kappa=float(m["kappa"]), S=float(m["s"]), n_max=int(m["n_max"]),
    )
    options = {k.lower(): str(v) for k, v in r.run.items()}
    return RunConfig(r.experiment, params, options, Path(out_dir), seed=seed, threads=threads)


# -- helpers -----------------------------------------------------------------

def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _initial_state(opt: dict) -> ClassicalState:
    return ClassicalState.from_angles(
        float(opt.get("z1", 0.6)),
        float(opt.get("phi1", 1.0)),
        float(opt.get("z2", -0.2)),
        float(opt.get("phi2", -0.5)),
        complex(float(opt.get("alpha_re", 0.1)), float(opt.get("alpha_im", 0.05))),
    )


def standard_observables(p: ModelParams, psi_ref: np.ndarray | None = None) -> dict:
    """Registered scalar observables for quantum runs: photon number, the
    symmetric/antisymmetric scaled imbalances, the collective phases, and
    optionally the survival probability against a reference state."""
    dims = p.dims
    nph = embed(boson_ladder(p.n_max)[2], "photon", dims)
    sz = spin_matrices(p.S)[2]
    s1z = embed(sz, "spin1", dims)
    s2z = embed(sz, "spin2", dims)
    zp = (s1z + s2z) / (2 * p.S)
    zm = (s1z - s2z) / (2 * p.S)
    basis = PhaseBasis.build(p.S)
    phi = basis.phases
    P1, P2 = np.meshgrid(phi, phi, indexing="ij")
    w_plus = (P1 + P2) / 2
    w_minus = (P1 - P2) / 2

    def phase_mean(weights):
        def fn(psi):
            prob = phase_distribution_pure(psi, basis, dims)
            return float((weights * prob).sum() / prob.sum())

        return fn

    obs = {
        "n": lambda psi: float((psi.conj() @ (nph @ psi)).real),
        "z_plus": lambda psi: float((psi.conj() @ (zp @ psi)).real),
        "z_minus": lambda psi: float((psi.conj() @ (zm @ psi)).real),
        "phi_plus": phase_mean(w_plus),
        "phi_minus": phase_mean(w_minus),
    }
    if psi_ref is not None:
        obs["survival"] = lambda psi: survival_probability(psi, psi_ref)
    return obs


def _manifest(cfg: RunConfig, extra: dict, t_start: float) -> dict:
    return {
        "experiment": cfg.experiment,
        "params": cfg.params.to_dict(),
        "options": cfg.options,
        "seed": cfg.seed,
        "threads": cfg.threads,
        "version": __version__,
        "wall_time_s": round(time.time() - t_start, 3),
        **extra,
    }


# -- experiment implementations ----------------------------------------------

def _run_fixed_points(cfg: RunConfig) -> dict:
    p = cfg.params
    rows = []
    for fp in fixed_point_catalog(p):
        if fp.exists:
            rep = stability(fp, p)
            q = fp.vector()
            rows.append([fp.label, 1, *q, residual(fp, p), rep.classification,
                         rep.negative_count, rep.zero_count, rep.positive_count, rep.max_real])
        else:
            rows.append([fp.label, 0] + [float("nan")] * 9 + ["absent", 0, 0, 0, float("nan")])
    header = ["label", "exists", "x", "p", "s1x", "s1y", "s1z", "s2x", "s2y", "s2z",
              "residual", "classification", "n_neg", "n_zero", "n_pos", "max_re"]
    _write_csv(cfg.out_dir / "fixed_points.csv", header, rows)
    return {"artifacts": ["fixed_points.csv"]}


def _run_phase_diagram(cfg: RunConfig) -> dict:
    opt = cfg.options
    lams = np.linspace(float(opt.get("lambda_min", 0.0)), float(opt.get("lambda_max", 1.5)),
                       int(opt.get("lambda_steps", 101)))
    vs = np.linspace(float(opt.get("v_min", 0.0)), float(opt.get("v_max", 2.5)),
                     int(opt.get("v_steps", 101)))
    records = phase_diagram(lams, vs, cfg.params)
    header = ["lambda", "V", "region", "np1_class", "np2_class", "fsr1_class", "fsr2_kappa0_class"]
    rows = [[r["lambda"], r["V"], r["region"], r["np1_class"], r["np2_class"],
             r["fsr1_class"], r["fsr2_kappa0_class"]] for r in records]
    _write_csv(cfg.out_dir / "phase_diagram.csv", header, rows)
    return {"artifacts": ["phase_diagram.csv"], "grid": [len(lams), len(vs)]}


def _run_classical_evolve(cfg: RunConfig) -> dict:
    opt = cfg.options
    q0 = _initial_state(opt)
    t_end = float(opt.get("t_end", 300.0))
    traj = integrate(q0, cfg.params, t_end, n_samples=int(opt.get("n_samples", 3000)))
    res1 = class1_residual(traj.states)
    header = ["t", "x", "p", "n", "s1x", "s1y", "s1z", "s2x", "s2y", "s2z",
              "z1", "phi1", "z2", "phi2", "class1_residual"]
    rows = [
        [traj.times[i], *traj.states[i, :2], traj.n[i], *traj.states[i, 2:],
         traj.column("z1")[i], traj.column("phi1")[i],
         traj.column("z2")[i], traj.column("phi2")[i], res1[i]]
        for i in range(len(traj.times))
    ]
    _write_csv(cfg.out_dir / "trajectory.csv", header, rows)
    return {"artifacts": ["trajectory.csv"],
            "spin_norm_drift": traj.spin_norm_drift, "energy_drift": traj.energy_drift}


def _run_decorrelator(cfg: RunConfig) -> dict:
    opt = cfg.options
    series = decorrelator(
        _initial_state(opt), cfg.params,
        eps=float(opt.get("eps", 1e-6)),
        t_end=float(opt.get("t_end", 250.0)),
        ensemble=int(opt.get("ensemble", 100)),
        n_samples=int(opt.get("n_samples", 500)),
        seed=cfg.seed,
    )
    _write_csv(cfg.out_dir / "decorrelator.csv", ["t", "D_ph"],
               zip(series.times, series.D_ph))
    return {"artifacts": ["decorrelator.csv"], "eps": series.epsilon,
            "ensemble": series.ensemble_size}


def _run_poincare(cfg: RunConfig) -> dict:
    opt = cfg.options
    p = cfg.params
    catalog = {fp.label: fp for fp in fixed_point_catalog(p)}
    branches = [catalog.get("FSR2+"), catalog.get("FSR2-")]
    if not (branches[0] and branches[0].exists):
        raise ConfigError("poincare experiment requires existing FSR2 branches")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=cfg.seed))
    t_end = float(opt.get("t_end", 3000.0))
    n_orbits = int(opt.get("n_orbits", 8))
    offset = float(opt.get("offset", 0.05))
    rows = []
    islands = {}
    orbit = 0
    for fp in branches:
        q_star = fp.vector()
        for k in range(max(1, n_orbits // 2)):
            q0 = random_tangent_perturbation(q_star, offset * (k + 1), rng)
            sec = poincare_section(q0, p, t_end=t_end)
            for z1, ph1 in sec.points:
                rows.append([orbit, fp.label, z1, ph1])
            if k == 0:
                st = fp.state
                islands[fp.label] = island_dispersion(sec, st.z1, st.phi1)
            orbit += 1
    _write_csv(cfg.out_dir / "poincare.csv", ["orbit", "branch", "z1", "phi1"], rows)
    with open(cfg.out_dir / "islands.json", "w") as fh:
        json.dump(islands, fh, indent=2)
    return {"artifacts": ["poincare.csv", "islands.json"], "islands": islands}


def _run_saturation(cfg: RunConfig) -> dict:
    opt = cfg.options
    result = saturation_distribution(
        cfg.params,
        ensemble=int(opt.get("ensemble", 100)),
        t_end=float(opt.get("t_end", 500.0)),
        bins=int(opt.get("bins", 30)),
        seed=cfg.seed,
    )
    _write_csv(cfg.out_dir / "saturation_values.csv", ["member", "n_saturation"],
               enumerate(result.saturation_values))
    _write_csv(
        cfg.out_dir / "saturation_histogram.csv",
        ["bin_left", "bin_right", "count"],
        zip(result.bin_edges[:-1], result.bin_edges[1:], result.counts),
    )
    return {"artifacts": ["saturation_values.csv", "saturation_histogram.csv"]}


def _ensemble_run(cfg: RunConfig, psi0, observables, accumulators=None):
    opt = cfg.options
    p = cfg.params
    t_end = float(opt.get("t_end", 150.0))
    n_samples = int(opt.get("n_samples", 301))
    n_traj = int(opt.get("n_traj", 1))
    if p.kappa == 0:
        n_traj = 1  # closed system: trajectories are identical
    spec = build_lindblad(p)
    times = np.linspace(0.0, t_end, n_samples)
    ens = run_ensemble(
        psi0, spec, n_traj, cfg.seed, observables=observables,
        sample_times=times, accumulators=accumulators,
    )
    return ens


def _write_ensemble_csv(path: Path, ens, names: list[str]) -> None:
    header = ["t"]
    for n in names:
        header += [f"{n}_mean", f"{n}_stderr"]
    rows = []
    for i, t in enumerate(ens.times):
        row = [t]
        for n in names:
            row += [ens.mean[n][i], ens.stderr[n][i]]
        rows.append(row)
    _write_csv(path, header, rows)


def _run_quantum_evolve(cfg: RunConfig) -> dict:
    q0 = _initial_state(cfg.options)
    psi0 = product_state(q0, cfg.params.dims)
    obs = standard_observables(cfg.params, psi_ref=psi0.amplitudes)
    ens = _ensemble_run(cfg, psi0, obs)
    names = sorted(obs)
    _write_ensemble_csv(cfg.out_dir / "observables.csv", ens, names)
    return {"artifacts": ["observables.csv"], "n_traj": ens.n_traj,
            "leakage": ens.leakage, "leakage_flag": bool(ens.leakage_flag)}


def _run_sync_observables(cfg: RunConfig) -> dict:
    p = cfg.params
    q0 = _initial_state(cfg.options)
    psi0 = product_state(q0, p.dims)
    obs = standard_observables(p)
    basis = PhaseBasis.build(p.S)

    def joint_phase(psi):
        return phase_distribution_pure(psi, basis, p.dims).ravel()

    ens = _ensemble_run(cfg, psi0, obs, accumulators={"joint_phase": joint_phase})
    names = sorted(obs)
    _write_ensemble_csv(cfg.out_dir / "observables.csv", ens, names)
    dim = basis.matrix.shape[0]
    fluct_rows = []
    for i, t in enumerate(ens.times):
        mom = phase_moments(ens.mean["joint_phase"][i].reshape(dim, dim), basis)
        fluct_rows.append([t, mom["phi_plus"], mom["var_phi_plus"], mom["phi_minus"],
                           mom["var_phi_minus"], mom["var_phi_1"]])
    _write_csv(
        cfg.out_dir / "phase_fluctuations.csv",
        ["t", "phi_plus", "var_phi_plus", "phi_minus", "var_phi_minus", "var_phi_1"],
        fluct_rows,
    )
    return {"artifacts": ["observables.csv", "phase_fluctuations.csv"],
            "n_traj": ens.n_traj, "leakage": ens.leakage,
            "leakage_flag": bool(ens.leakage_flag)}


def _husimi_csv(path: Path, grid) -> None:
    rows = []
    for i, z in enumerate(grid.z):
        for j, ph in enumerate(grid.phi):
            rows.append([z, ph, grid.normalized[i, j]])
    _write_csv(path, ["z", "phi", "Q"], rows)


def _scar_run(cfg: RunConfig, psi0, ref_states: dict[str, np.ndarray]) -> dict:
    """Shared machinery of the two scarring experiments: overlap series with
    the reference states plus Husimi snapshots of spin 1."""
    p = cfg.params
    opt = cfg.options
    husimi_times = [float(s) for s in str(opt.get("husimi_times", "")).split(",") if s]
    res = int(opt.get("husimi_res", 201))
    obs = {
        name: (lambda psi, ref=ref: survival_probability(psi, ref))
        for name, ref in ref_states.items()
    }
    obs.update(standard_observables(p))
    d = p.dims.spin_dim

    def rho1(psi):
        return reduce_state(psi, "spin1", p.dims).ravel()

    ens = _ensemble_run(cfg, psi0, obs, accumulators={"rho_spin1": rho1})
    names = sorted(set(obs))
    _write_ensemble_csv(cfg.out_dir / "observables.csv", ens, names)
    artifacts = ["observables.csv"]
    for t_h in husimi_times:
        idx = int(np.argmin(np.abs(ens.times - t_h)))
        rho = ens.mean["rho_spin1"][idx].reshape(d, d)
        grid = husimi(rho, p.S, grid_res=res)
        fname = f"husimi_t{ens.times[idx]:g}.csv"
        _husimi_csv(cfg.out_dir / fname, grid)
        artifacts.append(fname)
    return {"artifacts": artifacts, "n_traj": ens.n_traj,
            "leakage": ens.leakage, "leakage_flag": bool(ens.leakage_flag)}


def _run_scar_np1(cfg: RunConfig) -> dict:
    p = cfg.params
    opt = cfg.options
    catalog = {fp.label: fp for fp in fixed_point_catalog(p)}
    np1 = catalog["NP1"].state
    psi_np1 = product_state(np1, p.dims)
    out = _scar_run(cfg, psi_np1, {"survival": psi_np1.amplitudes})
    # contrast run from a generic phase-space seed, same budget
    generic = ClassicalState.from_angles(
        float(opt.get("generic_z1", 0.55)), float(opt.get("generic_phi1", 2.1)),
        float(opt.get("generic_z2", -0.35)), float(opt.get("generic_phi2", -1.2)),
    )
    psi_gen = product_state(generic, p.dims)
    obs = {"survival": lambda psi: survival_probability(psi, psi_gen.amplitudes)}
    ens = _ensemble_run(cfg, psi_gen, obs)
    _write_ensemble_csv(cfg.out_dir / "observables_generic.csv", ens, ["survival"])
    out["artifacts"].append("observables_generic.csv")
    return out


def _run_scar_fsr2(cfg: RunConfig) -> dict:
    p = cfg.params
    catalog = {fp.label: fp for fp in fixed_point_catalog(p)}
    fp1, fp2 = catalog["FSR2+"], catalog["FSR2-"]
    if not (fp1.exists and fp2.exists):
        raise ConfigError("scar-fsr2 requires existing FSR2 branches at these couplings")
    psi1 = product_state(fp1.state, p.dims)
    psi2 = product_state(fp2.state, p.dims)
    return _scar_run(cfg, psi1, {"F1": psi1.amplitudes, "F2": psi2.amplitudes})


_RUNNERS = {
    "fixed-points": _run_fixed_points,
    "phase-diagram": _run_phase_diagram,
    "classical-evolve": _run_classical_evolve,
    "decorrelator": _run_decorrelator,
    "poincare": _run_poincare,
    "saturation": _run_saturation,
    "quantum-evolve": _run_quantum_evolve,
    "sync-observables": _run_sync_observables,
    "scar-np1": _run_scar_np1,
    "scar-fsr2": _run_scar_fsr2,
}


def run(cfg: RunConfig) -> dict:
    """Dispatch a run; writes artifacts plus manifest.json into out_dir."""
    t_start = time.time()
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    extra = _RUNNERS[cfg.experiment](cfg)
    manifest = _manifest(cfg, extra, t_start)
    with open(cfg.out_dir / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2)
    return manifest
