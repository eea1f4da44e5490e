"""Command line front end.

    vibcav run      --config run.yaml --out results/
    vibcav sweep    --config sweep.yaml --out results/
    vibcav validate --config run.yaml

A configuration is a YAML mapping::

    trajectory: {kind: sinusoidal, L: 3.141592653589793, delta_L: 0.031415926535897934,
                 k_drive: 2, periods: 50}
    backend: grid                 # grid | asymptotic | lawwu_exact
    eval_after_motion: [1.3]      # offsets added to T_motion
    eval_times: []                # absolute times
    tolerances: {tol_moore: 1.0e-10, quad_atol: 1.0e-10, rel_tol: 1.0e-6, l_max: 32}
    outputs:
      - {type: energy, path: energy.csv}
      - {type: profile, path: profile.csv, n: 1001}
      - {type: density2d, path: density.csv, nx: 65, nt: 65}
      - {type: spectrum, path: spectrum.csv}
      - {type: beta, path: beta.csv, max_index: 16}
      - {type: sum_rule}
      - {type: symmetry_check}
    seed_moebius: [1.0, 0.3, 0.0, 1.0]
    sweep: {parameter: periods, values: [10, 20, 30, 40, 50], workers: 2}

Lengths are in units where ``c = hbar = 1``.  ``tol_moore`` and
``quad_atol`` are relative to ``L`` and ``omega`` respectively.

Exit status: 0 on success, 2 for configuration errors, 3 for numerical
failures (the failing stage is named in the JSON diagnostic on stderr).
"""
from __future__ import annotations

import argparse
import concurrent.futures
import copy
import csv
import hashlib
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import yaml

from . import __version__
from .errors import CavityError, ConfigError, ParameterError
from .moebius import MoebiusElement, conformal_compose
from .observables import (
    EnergyProfile,
    energy_profile,
    lawwu_energy_law,
    profile,
    resonance_energy_law,
    total_energy,
)
from .particles import spectrum, sum_rule_check
from .phase import (
    PhaseFunction,
    build_sinusoidal_asymptotic,
    lawwu_exact,
    max_moore_residual,
    solve_phase,
)
from .trajectory import TrajectoryKind, WallTrajectory, validate_trajectory

__all__ = ["RunConfig", "OutputSpec", "load_config", "run", "emit_profile_csv", "main",
           "EXIT_OK", "EXIT_CONFIG", "EXIT_NUMERICAL"]

log = logging.getLogger("vibcav")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3

OUTPUT_TYPES = ("profile", "density2d", "energy", "spectrum", "beta", "sum_rule", "symmetry_check")
SPECTRAL_OUTPUTS = {"spectrum", "beta", "sum_rule", "symmetry_check"}
BACKENDS = ("grid", "asymptotic", "lawwu_exact")
SWEEP_PARAMETERS = ("L", "delta_L", "k_drive", "periods", "T_motion")
_KINDS = {"static": TrajectoryKind.STATIC, "sinusoidal": TrajectoryKind.SINUSOIDAL,
          "lawwu": TrajectoryKind.LAWWU}
_DEFAULT_PATHS = {"energy": "energy.csv", "profile": "profile.csv", "density2d": "density2d.csv", "spectrum": "spectrum.csv",
                  "beta": "beta.csv"}


class NumericalStageError(Exception):
    def __init__(self, stage, point, exc):
        super().__init__(f"{stage}: {exc}")
        self.stage, self.point, self.exc = stage, point, exc


def _fmt(x) -> str:
    return format(float(x), ".17g")


# ----------------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------------

@dataclass
class OutputSpec:
    type: str
    path: Optional[str] = None
    options: dict = field(default_factory=dict)


@dataclass
class RunConfig:
    """Parsed and type-checked run configuration."""

    trajectory: dict
    backend: str = "grid"
    eval_times: list = field(default_factory=list)
    eval_after_motion: list = field(default_factory=list)
    sweep: Optional[dict] = None
    tolerances: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    seed_moebius: Optional[MoebiusElement] = None
    workers: int = 1
    summary: str = "summary.json"
    raw: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_dict(cls, d) -> "RunConfig":
        if not isinstance(d, dict):
            raise ConfigError("configuration must be a mapping")
        known = {"trajectory", "backend", "eval_times", "eval_after_motion", "sweep", "tolerances",
                 "outputs", "seed_moebius", "summary"}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown configuration keys: {sorted(extra)}", field=sorted(extra)[0])
        traj = d.get("trajectory")
        if not isinstance(traj, dict):
            raise ConfigError("'trajectory' mapping is required", field="trajectory")
        traj = dict(traj)
        kind = str(traj.get("kind", "")).lower()
        if kind not in _KINDS:
            raise ConfigError(f"trajectory.kind must be one of {sorted(_KINDS)}", field="trajectory.kind")
        allowed = {"kind", "L", "delta_L", "k_drive", "periods", "T_motion"}
        if set(traj) - allowed:
            raise ConfigError(f"unknown trajectory keys: {sorted(set(traj) - allowed)}", field="trajectory")
        if "L" not in traj:
            raise ConfigError("trajectory.L is required", field="trajectory.L")
        if "periods" in traj and "T_motion" in traj:
            raise ConfigError("give either trajectory.periods or trajectory.T_motion", field="trajectory")

        backend = str(d.get("backend", "grid")).lower()
        if backend not in BACKENDS:
            raise ConfigError(f"backend must be one of {BACKENDS}", field="backend")

        def num_list(key):
            v = d.get(key, [])
            if not isinstance(v, list) or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                                                  for x in v):
                raise ConfigError(f"'{key}' must be a list of numbers", field=key)
            return [float(x) for x in v]

        eval_times = num_list("eval_times")
        after = num_list("eval_after_motion")
        if not eval_times and not after:
            raise ConfigError("at least one evaluation time is required (eval_times or eval_after_motion)",
                              field="eval_times")

        tol = {"tol_moore": 1e-10, "quad_atol": 1e-10, "rel_tol": 1e-6, "l_max": 32, "n_probes": 1000}
        user_tol = d.get("tolerances", {}) or {}
        if not isinstance(user_tol, dict) or set(user_tol) - set(tol):
            raise ConfigError(f"tolerances accepts only {sorted(tol)}", field="tolerances")
        for k, v in user_tol.items():
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not v > 0:
                raise ConfigError(f"tolerances.{k} must be a positive number", field=f"tolerances.{k}")
        tol.update(user_tol)
        tol["l_max"] = int(tol["l_max"])
        tol["n_probes"] = int(tol["n_probes"])

        outputs = []
        raw_out = d.get("outputs", [{"type": "energy"}])
        if not isinstance(raw_out, list) or not raw_out:
            raise ConfigError("'outputs' must be a non-empty list", field="outputs")
        for o in raw_out:
            if isinstance(o, str):
                o = {"type": o}
            if not isinstance(o, dict) or o.get("type") not in OUTPUT_TYPES:
                raise ConfigError(f"each output needs a type in {OUTPUT_TYPES}", field="outputs")
            o = dict(o)
            typ = o.pop("type")
            path = o.pop("path", _DEFAULT_PATHS.get(typ))
            outputs.append(OutputSpec(typ, path, o))

        seed = d.get("seed_moebius")
        m = None
        if seed is not None:
            try:
                if isinstance(seed, dict):
                    seed = [seed[k] for k in "ABCD"]
                m = MoebiusElement(*map(float, seed))
            except (TypeError, KeyError, ValueError) as exc:
                raise ConfigError(f"seed_moebius must be [A, B, C, D] with AD - BC > 0 ({exc})",
                                  field="seed_moebius") from None
        if any(o.type == "symmetry_check" for o in outputs) and m is None:
            raise ConfigError("symmetry_check output needs seed_moebius", field="seed_moebius")

        sweep = d.get("sweep")
        workers = 1
        if sweep is not None:
            if not isinstance(sweep, dict) or sweep.get("parameter") not in SWEEP_PARAMETERS:
                raise ConfigError(f"sweep.parameter must be one of {SWEEP_PARAMETERS}", field="sweep.parameter")
            vals = sweep.get("values")
            if not isinstance(vals, list) or not vals:
                raise ConfigError("sweep.values must be a non-empty list", field="sweep.values")
            workers = int(sweep.get("workers", 1))
            if workers < 1:
                raise ConfigError("sweep.workers must be >= 1", field="sweep.workers")
            sweep = {"parameter": sweep["parameter"], "values": list(vals)}

        cfg = cls(traj, backend, eval_times, after, sweep, tol, outputs, m, workers,
                  str(d.get("summary", "summary.json")), copy.deepcopy(d))
        cfg.validate()
        return cfg

    # --- sweep points -------------------------------------------------------

    def points(self, use_sweep=True):
        """``[(label, sweep_value, trajectory_parameters)]``."""
        if not use_sweep or self.sweep is None:
            return [("base", None, dict(self.trajectory))]
        out = []
        for i, v in enumerate(self.sweep["values"]):
            p = dict(self.trajectory)
            name = self.sweep["parameter"]
            if name in ("periods", "T_motion"):
                p.pop("periods", None)
                p.pop("T_motion", None)
            p[name] = v
            out.append((f"point_{i:03d}", v, p))
        return out

    @staticmethod
    def build_trajectory(p) -> WallTrajectory:
        kind = _KINDS[str(p["kind"]).lower()]
        try:
            L = float(p["L"])
            if kind is TrajectoryKind.STATIC:
                return WallTrajectory(kind, L)
            dL = float(p.get("delta_L", 0.0))
            k = p.get("k_drive", 1)
            if "periods" in p:
                T = float(p["periods"]) * 2 * L / float(k)
            else:
                T = float(p.get("T_motion", 0.0))
            return WallTrajectory(kind, L, T, dL, k)
        except (ParameterError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid trajectory {p}: {exc}", field="trajectory") from None

    def times_for(self, traj):
        return sorted(set(self.eval_times) | {traj.T_motion + x for x in self.eval_after_motion})

    def validate(self):
        spectral = any(o.type in SPECTRAL_OUTPUTS for o in self.outputs)
        for label, _, p in self.points():
            traj = self.build_trajectory(p)
            bad = validate_trajectory(traj)
            if bad:
                raise ConfigError(f"{label}: trajectory violates invariants: {'; '.join(map(str, bad))}",
                                  field="trajectory")
            if self.backend == "asymptotic" and traj.kind is not TrajectoryKind.SINUSOIDAL:
                raise ConfigError("backend 'asymptotic' needs a sinusoidal trajectory", field="backend")
            if self.backend == "lawwu_exact" and traj.kind is not TrajectoryKind.LAWWU:
                raise ConfigError("backend 'lawwu_exact' needs a lawwu trajectory", field="backend")
            times = self.times_for(traj)
            if self.backend != "asymptotic" and any(t < 0 for t in times):
                raise ConfigError(f"{label}: evaluation times must be non-negative", field="eval_times")
            if spectral and any(not t > traj.T_motion for t in times):
                raise ConfigError(f"{label}: spectral outputs need every evaluation time > T_motion = "
                                  f"{traj.T_motion:.17g}", field="eval_times")

    def hash(self) -> str:
        blob = json.dumps(self.raw, sort_keys=True, separators=(",", ":"), default=str)
        return hashlib.sha256(blob.encode()).hexdigest()


def load_config(path) -> RunConfig:
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read configuration: {exc}", field="--config") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"configuration is not valid YAML: {exc}", field="--config") from None
    return RunConfig.from_dict(data)


# ----------------------------------------------------------------------------
# output files
# ----------------------------------------------------------------------------

def _write_csv(path, header, rows):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([v if isinstance(v, (int, np.integer)) else _fmt(v) for v in r])


def emit_profile_csv(prof: EnergyProfile, path) -> None:
    """Write ``tau,rho`` rows sorted by ``tau`` with 17 significant digits."""
    if prof is None or len(prof) == 0:
        raise ParameterError("refusing to write an empty profile")
    order = np.argsort(prof.tau, kind="stable")
    _write_csv(path, ["tau", "rho"], zip(prof.tau[order], prof.rho[order]))


# ----------------------------------------------------------------------------
# one sweep point
# ----------------------------------------------------------------------------

def _build_phase(backend, traj, t_final, tol_moore) -> PhaseFunction:
    if backend == "asymptotic":
        return build_sinusoidal_asymptotic(traj, traj.T_motion)
    if backend == "lawwu_exact":
        return lawwu_exact(traj)
    return solve_phase(traj, t_final, tol=tol_moore * traj.L, n_probes=0)


def _reference_energy(traj):
    if traj.kind is TrajectoryKind.SINUSOIDAL:
        return resonance_energy_law(traj)
    if traj.kind is TrajectoryKind.LAWWU:
        return lawwu_energy_law(traj)
    return -traj.omega / 24


def _suffix(path, i, n):
    if n == 1:
        return path
    root, ext = os.path.splitext(path)
    return f"{root}_t{i}{ext}"


def run_point(cfg: RunConfig, label, value, params):
    """Scalars and file payloads for one sweep point (no files are written here)."""
    traj = cfg.build_trajectory(params)
    tol = cfg.tolerances
    L = traj.L
    times = cfg.times_for(traj)
    types = {o.type for o in cfg.outputs}
    opts = {o.type: o for o in cfg.outputs}

    t_first = times[0]
    prof_range = opts["profile"].options.get("tau_range") if "profile" in opts else None
    prof_range = [float(x) for x in (prof_range or [t_first - L, t_first + L])]
    dens_range = opts["density2d"].options.get("t_range") if "density2d" in opts else None
    dens_range = [float(x) for x in (dens_range or [t_first, t_first + 2 * L])]
    t_final = max(times + [prof_range[1], dens_range[1] + traj.length_bounds()[1] - L])

    stage = "solve"
    try:
        R = _build_phase(cfg.backend, traj, t_final, tol["tol_moore"])
        stage = "moore_residual"
        rtraj = R.trajectory
        res = max_moore_residual(R, rtraj, n_probes=tol["n_probes"], rng=np.random.default_rng(0))
        if res > tol["tol_moore"] * L:
            raise CavityError(f"Moore residual {res:.3g} exceeds {tol['tol_moore'] * L:.3g}")
        out = {"label": label, "sweep_value": value, "T_motion": traj.T_motion, "backend": R.backend,
               "moore_residual_max": res, "E_reference": _reference_energy(traj), "times": []}
        files = []
        energy_rows = []
        spectral = bool(types & SPECTRAL_OUTPUTS)
        for i, t in enumerate(times):
            stage = f"energy(t={t:.17g})"
            rec = {"t": t}
            te = t if cfg.backend != "asymptotic" else t - traj.T_motion + L
            etraj = traj if cfg.backend != "asymptotic" else rtraj
            rep = total_energy(R, etraj, te, atol=tol["quad_atol"] * traj.omega)
            rec.update(E_total=rep.E_total, E_subcasimir=rep.E_subcasimir, E_schwarzian=rep.E_schwarzian)
            energy_rows.append((t, rep.E_total, rep.E_subcasimir, rep.E_schwarzian))
            if spectral:
                stage = f"spectrum(t={t:.17g})"
                spec = spectrum(R, te, l_max=tol["l_max"], rel_tol=tol["rel_tol"])
                rec.update(N_total=spec.N_total, l_max=spec.l_max, tail_estimate=spec.tail_estimate,
                           truncation_warning=spec.warning,
                           unitarity_max_dev=float(np.max(np.abs(spec.unitarity - 1))))
                if "spectrum" in types:
                    files.append((_suffix(opts["spectrum"].path, i, len(times)), ["k", "n_k"],
                                  [(k, n) for k, n in zip(spec.modes, spec.n_k)]))
                if "beta" in types:
                    mi = min(int(opts["beta"].options.get("max_index", spec.l_max)), spec.l_max)
                    rows = [(k + 1, l + 1, spec.beta[k, l].real, spec.beta[k, l].imag)
                            for k in range(mi) for l in range(mi)]
                    files.append((_suffix(opts["beta"].path, i, len(times)), ["k", "l", "re", "im"], rows))
                if "sum_rule" in types:
                    lhs, rhs, rel = sum_rule_check(spec, rep)
                    rec["sum_rule"] = {"lhs": lhs, "rhs": rhs, "rel_err": rel}
                if "symmetry_check" in types:
                    stage = f"symmetry_check(t={t:.17g})"
                    Rc = conformal_compose(R, cfg.seed_moebius)
                    rep_c = total_energy(Rc, etraj, te, atol=tol["quad_atol"] * traj.omega)
                    spec_c = spectrum(Rc, te, l_max=tol["l_max"], rel_tol=tol["rel_tol"])
                    kk = min(16, spec.l_max, spec_c.l_max)
                    dn = np.abs(spec_c.n_k[:kk] - spec.n_k[:kk]) / np.maximum(spec.n_k[:kk], 1e-12)
                    rec["symmetry"] = {
                        "E_rel_diff": abs(rep_c.E_total - rep.E_total) / max(abs(rep.E_total), 1e-300),
                        "n_k_max_rel_diff": float(dn.max()),
                    }
            out["times"].append(rec)
        if "energy" in types and opts["energy"].path:
            files.append((opts["energy"].path, ["t", "E_total", "E_subcasimir", "E_schwarzian"], energy_rows))
        if "profile" in types:
            stage = "profile"
            a, b = prof_range
            if cfg.backend == "asymptotic":
                a, b = a - traj.T_motion + L, b - traj.T_motion + L
            prof = energy_profile(R, (a, b), int(opts["profile"].options.get("n", 1001)))
            if len(prof) == 0:
                raise ParameterError("empty profile requested")
            files.append((opts["profile"].path, None, prof))
        if "density2d" in types:
            stage = "density2d"
            o = opts["density2d"].options
            nx, nt = int(o.get("nx", 65)), int(o.get("nt", 65))
            ts = np.linspace(dens_range[0], dens_range[1], nt)
            rows = []
            for tt in ts:
                Lt = float(traj.derivatives(np.array([tt]))[0][0])
                xs = np.linspace(0.0, Lt, nx)
                ta = tt if cfg.backend != "asymptotic" else tt - traj.T_motion + L
                dens = profile(R, ta + xs) + profile(R, ta - xs)
                rows.extend((x, tt, d) for x, d in zip(xs, dens))
            files.append((opts["density2d"].path, ["x", "t", "T00"], rows))
        return out, files
    except ParameterError:
        raise
    except CavityError as exc:
        raise NumericalStageError(stage, label, exc) from exc


def _worker(args):
    raw, label, value, params = args
    cfg = RunConfig.from_dict(raw)
    return run_point(cfg, label, value, params)


def _power_law(xs, ys):
    xs, ys = np.asarray(xs, float), np.asarray(ys, float)
    if xs.size < 2 or np.any(xs <= 0) or np.any(ys <= 0):
        return None
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def run(cfg: RunConfig, out_dir, use_sweep=True, quiet=False) -> dict:
    """Execute every point and write all artifacts; returns the summary."""
    pts = cfg.points(use_sweep)
    jobs = [(cfg.raw, label, value, params) for label, value, params in pts]
    if use_sweep and cfg.workers > 1 and len(jobs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            results = list(ex.map(_worker, jobs))
    else:
        results = []
        for j in jobs:
            if not quiet:
                log.info("point %s", j[1])
            results.append(run_point(cfg, *j[1:]))

    # single collector: files in a fixed order
    os.makedirs(out_dir, exist_ok=True)
    multi = len(pts) > 1
    for (label, _, _), (_, files) in zip(pts, results):
        base = os.path.join(out_dir, label) if multi else out_dir
        for path, header, payload in files:
            full = os.path.join(base, path)
            if isinstance(payload, EnergyProfile):
                emit_profile_csv(payload, full)
            else:
                _write_csv(full, header, payload)

    points = [r for r, _ in results]
    summary = {
        "version": __version__,
        "config_hash": cfg.hash(),
        "tolerances": cfg.tolerances,
        "backend": cfg.backend,
        "sweep": cfg.sweep if use_sweep else None,
        "points": points,
        "max_moore_residual": max(p["moore_residual_max"] for p in points),
    }
    if use_sweep and cfg.sweep and cfg.sweep["parameter"] in ("periods", "T_motion") and len(points) > 1:
        w = math.pi / float(cfg.trajectory["L"])
        excess = [p["times"][0]["E_total"] + w / 24 for p in points]
        summary["fit"] = {"x": "T_motion", "y": "E_total + omega/24",
                          "power_law_exponent": _power_law([p["T_motion"] for p in points], excess)}
    with open(os.path.join(out_dir, cfg.summary), "w") as fh:
        json.dump(_clean(summary), fh, sort_keys=True, indent=2)
        fh.write("\n")
    return summary


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


# ----------------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------------

def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH", help="YAML run configuration")
    common.add_argument("--out", default=".", metavar="DIR", help="output directory (default: .)")
    common.add_argument("--quiet", action="store_true", help="only report errors")
    p = argparse.ArgumentParser(prog="vibcav", description="Vacuum energy and photon creation in a vibrating cavity.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="evaluate the base configuration (sweep ignored)")
    sub.add_parser("sweep", parents=[common], help="evaluate every sweep point")
    sub.add_parser("validate", parents=[common], help="check the configuration and exit")
    return p


def _diag(status, **kw):
    sys.stderr.write(json.dumps({"status": status, **kw}, sort_keys=True) + "\n")


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config)
        if args.command == "sweep" and cfg.sweep is None:
            raise ConfigError("'sweep' command needs a sweep section", field="sweep")
    except (ConfigError, ParameterError) as exc:
        _diag("config_error", error=str(exc), field=getattr(exc, "field", None))
        return EXIT_CONFIG
    if args.command == "validate":
        if not args.quiet:
            print(json.dumps({"status": "ok", "points": len(cfg.points()), "config_hash": cfg.hash()},
                             sort_keys=True))
        return EXIT_OK
    try:
        summary = run(cfg, args.out, use_sweep=args.command == "sweep", quiet=args.quiet)
    except NumericalStageError as exc:
        _diag("numerical_error", stage=exc.stage, point=exc.point, error=str(exc.exc))
        return EXIT_NUMERICAL
    except ParameterError as exc:
        _diag("config_error", error=str(exc))
        return EXIT_CONFIG
    except OSError as exc:
        _diag("io_error", error=str(exc))
        return EXIT_CONFIG
    if not args.quiet:
        print(os.path.join(args.out, cfg.summary))
        for p in summary["points"]:
            for rec in p["times"]:
                line = f"{p['label']} t={rec['t']:.6g} E={rec['E_total']:.12g}"
                if "N_total" in rec:
                    line += f" N={rec['N_total']:.6g}"
                print(line)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
