"""Command-line front end: config parsing, run orchestration, file output.

Subcommands:

    synth     solve the Riccati synthesis and write the certificate JSON
    simulate  integrate one closed-loop run; trajectory CSV + summary JSON
    certify   run the full stability check battery; report JSON + table
    sweep     epsilon and amplitude sweeps; plot-ready CSVs

Every output file embeds the fully resolved configuration and a content
hash, and contains no timestamps, so identical config + seed reproduces
identical bytes.  Exit codes: 0 all checks pass, 1 a mandatory check
failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import copy
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import certify as cert_mod
from .disturbance import DisturbanceSignal, sup_norm
from .output_dynamics import OutputDims, build_fg
from .plants import (
    DisturbedClosedLoop,
    HopfPlant,
    MechClosedLoop,
    MechPlant,
    converse_constants,
)
from .riccati import certificate
from .simulator import integrate, to_csv_rows, ultimate_bound

DEFAULT_ALPHA = [0.0, 0.1, 0.3, 0.3, 0.1, 0.0]

DEFAULT_CONFIG = {
    "k1": 0,
    "k2": 1,
    "Q": "identity",
    "eps": 0.1,
    "eps_bar": 0.1,
    "controller": "min_norm_plus_us",
    "sigma": None,  # None -> choose_sigma from the certificate and plant constants
    "plant": {
        "kind": "hopf",
        "omega": 1.0,
        "lambda_h": 1.0,
        "r0": 1.0,
        "coupling": 0.2,
        "y1_rate": 1.0,
        "annulus_fraction": 0.5,
        # mech-only fields
        "q1_minus": 0.0,
        "q1_plus": 1.0,
        "alpha": DEFAULT_ALPHA,
        "v_d": 1.0,
    },
    "disturbance": {
        "kind": "sinusoid",
        "amplitude": 0.002,
        "frequency": 0.5,
        "dwell": 0.5,
        "seed": None,  # None -> the top-level seed
    },
    "integrator": {"dt": 0.001, "horizon": 20.0},
    "initial": {"eta": None, "z": None, "x": None},  # None -> dims-aware defaults
    "sweep": {
        "eps_grid": [0.5, 0.2, 0.1, 0.05],
        "amplitude_grid": [0.0, 0.01, 0.02, 0.04],
    },
    "settle_fraction": 0.5,
    "seed": 0,
    "out": "runs",
}


class ConfigError(ValueError):
    """Invalid run configuration (exit code 2)."""


# ---------------------------------------------------------------------------
# config handling


def _merge_validate(defaults: dict, given: dict, path: str = "") -> dict:
    merged = copy.deepcopy(defaults)
    for key, value in given.items():
        where = f"{path}.{key}" if path else key
        if key not in defaults:
            raise ConfigError(f"unknown config key: {where}")
        if isinstance(defaults[key], dict) and isinstance(value, dict):
            merged[key] = _merge_validate(defaults[key], value, where)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def load_config(path: str | None, overrides: list[str], seed: int | None,
                out: str | None) -> dict:
    """Resolve defaults <- file <- overrides <- flags into a validated config."""
    given: dict = {}
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
        try:
            given = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"malformed config JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
        if not isinstance(given, dict):
            raise ConfigError("config root must be a JSON object")
    config = _merge_validate(DEFAULT_CONFIG, given)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        key, _, raw = item.partition("=")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        node = config
        parts = key.split(".")
        for part in parts[:-1]:
            if part not in node or not isinstance(node[part], dict):
                raise ConfigError(f"unknown config key: {key}")
            node = node[part]
        if parts[-1] not in node:
            raise ConfigError(f"unknown config key: {key}")
        node[parts[-1]] = value
    if seed is not None:
        config["seed"] = seed
    if out is not None:
        config["out"] = out
    _validate(config)
    return config


def _validate(config: dict) -> None:
    try:
        OutputDims(k1=int(config["k1"]), k2=int(config["k2"]))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad dims: {exc}") from exc
    if config["Q"] != "identity" and not isinstance(config["Q"], list):
        raise ConfigError('Q must be "identity" or a row-major matrix')
    if not (0.0 < float(config["eps"]) <= 1.0):
        raise ConfigError("eps must lie in (0, 1]")
    if not (0.0 < float(config["eps_bar"]) <= 1.0):
        raise ConfigError("eps_bar must lie in (0, 1]")
    if config["controller"] not in ("min_norm", "min_norm_plus_us"):
        raise ConfigError(f'unknown controller {config["controller"]!r}')
    if config["plant"]["kind"] not in ("hopf", "mech"):
        raise ConfigError(f'unknown plant kind {config["plant"]["kind"]!r}')
    dist = config["disturbance"]
    if dist["kind"] not in ("zero", "constant", "sinusoid",
                            "piecewise_constant_random", "phase_error_driven"):
        raise ConfigError(f'unknown disturbance kind {dist["kind"]!r}')
    integ = config["integrator"]
    if float(integ["dt"]) <= 0.0 or float(integ["horizon"]) < float(integ["dt"]):
        raise ConfigError("integrator needs dt > 0 and horizon >= dt")
    if not (0.0 < float(config["settle_fraction"]) < 1.0):
        raise ConfigError("settle_fraction must lie in (0, 1)")


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def embeddable(config: dict) -> dict:
    # the output directory is a disposition flag, not run semantics; keeping it
    # out of the provenance block makes identical runs byte-identical
    return {k: v for k, v in config.items() if k != "out"}


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_json(embeddable(config)).encode()).hexdigest()


# ---------------------------------------------------------------------------
# run assembly


def q_matrix(config: dict, n: int) -> np.ndarray:
    if config["Q"] == "identity":
        return np.eye(n)
    Q = np.asarray(config["Q"], dtype=float)
    if Q.shape != (n, n):
        raise ConfigError(f"Q has shape {Q.shape}, expected ({n}, {n})")
    return 0.5 * (Q + Q.T)


def build_certificate(config: dict):
    dims = OutputDims(k1=int(config["k1"]), k2=int(config["k2"]))
    dyn = build_fg(dims)
    return dyn, certificate(dyn, q_matrix(config, dims.n_eta), float(config["eps"]))


def build_plant(config: dict, dims: OutputDims):
    p = config["plant"]
    if p["kind"] == "hopf":
        coupling = p["coupling"]
        if isinstance(coupling, (int, float)):
            coupling = np.full((2, dims.n_eta), float(coupling))
        else:
            coupling = np.asarray(coupling, dtype=float)
        return HopfPlant(dims=dims, omega=float(p["omega"]), lambda_h=float(p["lambda_h"]),
                         r0=float(p["r0"]), coupling=coupling, y1_rate=float(p["y1_rate"]))
    plant = MechPlant(alpha=np.asarray(p["alpha"], dtype=float),
                      q1_minus=float(p["q1_minus"]), q1_plus=float(p["q1_plus"]),
                      v_d=None if p["v_d"] is None else float(p["v_d"]))
    if plant.dims != dims:
        raise ConfigError(
            f"mech plant implies dims (k1={plant.dims.k1}, k2={plant.dims.k2}); "
            f"config says (k1={dims.k1}, k2={dims.k2})")
    return plant


def build_signal(config: dict, dims: OutputDims, amplitude: float | None = None) -> DisturbanceSignal:
    d = config["disturbance"]
    amp = float(d["amplitude"]) if amplitude is None else float(amplitude)
    kind = d["kind"] if amp != 0.0 else "zero"
    seed = config["seed"] if d["seed"] is None else d["seed"]
    return DisturbanceSignal(kind=kind, dim=dims.n_mu, amplitude=amp,
                             frequency=float(d["frequency"]), dwell=float(d["dwell"]),
                             seed=int(seed))


def resolve_sigma(config: dict, cert, plant) -> float:
    if config["sigma"] is not None:
        return float(config["sigma"])
    if isinstance(plant, HopfPlant):
        consts = converse_constants(plant, float(config["plant"]["annulus_fraction"]))
        return cert_mod.choose_sigma(cert, consts, plant.lipschitz_q)
    return 1.0


def initial_state(config: dict, plant, dims: OutputDims) -> np.ndarray:
    init = config["initial"]
    if isinstance(plant, HopfPlant):
        eta0 = init["eta"]
        if eta0 is None:
            eta0 = np.full(dims.n_eta, 0.5 / np.sqrt(dims.n_eta))
        z0 = init["z"]
        if z0 is None:
            z0 = [1.2 * plant.r0, 0.0]
        return np.concatenate([np.asarray(eta0, dtype=float), np.asarray(z0, dtype=float)])
    x0 = init["x"]
    if x0 is None:
        tau0 = 0.1
        q1 = plant.q1_minus + tau0 * plant.delta
        x0 = [q1, plant.y2d(tau0) + 0.05, plant.v_d if plant.v_d is not None else 1.0, 0.0]
    return np.asarray(x0, dtype=float)


def build_closed_loop(config: dict, amplitude: float | None = None, eps: float | None = None):
    """(closed_loop, cert, plant, x0) assembled from the config."""
    cfg = copy.deepcopy(config)
    if eps is not None:
        cfg["eps"] = float(eps)
    dyn, cert = build_certificate(cfg)
    dims = dyn.dims
    plant = build_plant(cfg, dims)
    signal = build_signal(cfg, dims, amplitude)
    if isinstance(plant, HopfPlant):
        if signal.kind == "phase_error_driven":
            raise ConfigError("phase_error_driven disturbances require the mech plant")
        sigma = resolve_sigma(cfg, cert, plant)
        loop = DisturbedClosedLoop(plant=plant, cert=cert, controller=cfg["controller"],
                                   signal=None if signal.kind == "zero" else signal,
                                   eps_bar=float(cfg["eps_bar"]), sigma=sigma)
    else:
        if signal.kind not in ("zero", "phase_error_driven"):
            raise ConfigError("the mech plant takes zero or phase_error_driven disturbances")
        loop = MechClosedLoop(plant=plant, cert=cert,
                              signal=None if signal.kind == "zero" else signal)
    return loop, cert, plant, initial_state(cfg, plant, dims)


# ---------------------------------------------------------------------------
# output helpers


def _write_json(path: Path, config: dict, payload: dict) -> None:
    body = {
        "config": embeddable(config),
        "config_hash": config_hash(config),
        "content_hash": hashlib.sha256(canonical_json(payload).encode()).hexdigest(),
        "payload": payload,
    }
    path.write_text(json.dumps(body, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _write_record_csv(path: Path, config: dict, record) -> None:
    headers, data = to_csv_rows(record)
    rows = [",".join(format(v, ".17g") for v in row) for row in data]
    content_hash = hashlib.sha256("\n".join(rows).encode()).hexdigest()
    lines = [
        f"# config={canonical_json(embeddable(config))}",
        f"# config_hash={config_hash(config)}",
        f"# content_hash={content_hash}",
        ",".join(headers),
    ]
    path.write_text("\n".join(lines + rows) + "\n", encoding="utf-8")


def _rows_csv(path: Path, config: dict, headers: list[str], rows: list[list[float]]) -> None:
    body = [",".join(format(float(v), ".17g") for v in row) for row in rows]
    content_hash = hashlib.sha256("\n".join(body).encode()).hexdigest()
    lines = [
        f"# config={canonical_json(embeddable(config))}",
        f"# config_hash={config_hash(config)}",
        f"# content_hash={content_hash}",
        ",".join(headers),
    ]
    path.write_text("\n".join(lines + body) + "\n", encoding="utf-8")


def _summary(record, settle: float) -> dict:
    return {
        "samples": len(record),
        "dt": record.dt,
        "horizon": float(record.t[-1]),
        "eta_ultimate": ultimate_bound(record, settle),
        "final_orbit_distance": float(record.dist[-1]),
        "max_v_eps": float(np.max(record.v_eps)),
        "max_mu_norm": float(np.max(np.linalg.norm(record.mu, axis=1))),
        "max_us_norm": float(np.max(np.linalg.norm(record.u_s, axis=1))),
        "meta": record.meta,
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_synth(config: dict, out_dir: Path) -> int:
    dyn, cert = build_certificate(config)
    _write_json(out_dir / "certificate.json", config, cert.to_dict())
    print(f"gamma = {cert.gamma:.12g}")
    print(f"c1    = {cert.c1:.12g}")
    print(f"c2    = {cert.c2:.12g}")
    print(f"CARE residual        = {cert.care_residual:.3e}")
    print(f"scaled CARE residual = {cert.scaled_residual:.3e}")
    print(f"wrote {out_dir / 'certificate.json'}")
    return 0


def cmd_simulate(config: dict, out_dir: Path) -> int:
    loop, cert, plant, x0 = build_closed_loop(config)
    record = integrate(loop, x0, T=float(config["integrator"]["horizon"]),
                       dt=float(config["integrator"]["dt"]))
    _write_record_csv(out_dir / "trajectory.csv", config, record)
    _write_json(out_dir / "summary.json", config, _summary(record, float(config["settle_fraction"])))
    print(f"simulated {len(record)} samples over {record.t[-1]:g} s")
    print(f"ultimate ||eta|| = {ultimate_bound(record, float(config['settle_fraction'])):.6g}")
    print(f"wrote {out_dir / 'trajectory.csv'} and {out_dir / 'summary.json'}")
    return 0


def run_certify(config: dict, out_dir: Path | None = None) -> tuple[cert_mod.IssReport, dict]:
    """Execute the full check battery; returns (report, artifacts)."""
    if config["plant"]["kind"] != "hopf":
        raise ConfigError("certify requires the hopf plant (the mech plant has no "
                          "closed-form orbit); use simulate for mech runs")
    settle = float(config["settle_fraction"])
    dt = float(config["integrator"]["dt"])
    horizon = float(config["integrator"]["horizon"])

    loop, cert, plant, x0 = build_closed_loop(config)
    consts = converse_constants(plant, float(config["plant"]["annulus_fraction"]))
    sigma = loop.sigma
    L_q = plant.lipschitz_q
    sigma_ok, sigma_margin = cert_mod.sigma_condition(cert, consts, L_q, sigma)

    main_sig = build_signal(config, cert.dims)
    d_inf = 0.0 if main_sig.kind == "zero" else sup_norm(main_sig, horizon)
    main_rec = integrate(loop, x0, T=horizon, dt=dt)
    eta_ult = ultimate_bound(main_rec, settle)
    l3 = cert_mod.min_norm_ultimate_bound(cert, d_inf)
    min_norm_bound_ok = bool(eta_ult <= l3) if d_inf > 0.0 else True
    with_us = config["controller"] == "min_norm_plus_us"
    l4 = cert_mod.damped_ultimate_bound(cert, float(config["eps_bar"]), d_inf) if with_us else None
    damped_bound_ok = bool(eta_ult <= l4) if (with_us and d_inf > 0.0) else (True if with_us else None)
    vc_ok, eiss_form_ok, vc_details = cert_mod.check_iss_lyapunov(
        main_rec, cert, sigma, d_inf, float(config["eps_bar"]))
    sandwich_ok = cert_mod.check_composite_sandwich(main_rec, cert, sigma, consts, plant)

    zero_loop, _, _, _ = build_closed_loop(config, amplitude=0.0)
    zero_rec = integrate(zero_loop, x0, T=horizon, dt=dt)
    zs_ok, zs_rate = cert_mod.check_zero_stability(zero_rec)
    delta1, delta2 = cert_mod.fit_eiss_envelope(zero_rec)

    amp_grid = sorted(float(a) for a in config["sweep"]["amplitude_grid"])
    dist_ults, eta_ults = [], []
    for amp in amp_grid:
        if amp == 0.0:
            rec = zero_rec
        else:
            lp, *_ = build_closed_loop(config, amplitude=amp)
            rec = integrate(lp, x0, T=horizon, dt=dt)
        start = int(np.ceil(settle * (len(rec) - 1)))
        dist_ults.append(float(np.max(rec.dist[start:])))
        eta_ults.append(ultimate_bound(rec, settle))
    ag_gain, ag_intercept, ag_ok = cert_mod.check_asymptotic_gain(
        np.array(amp_grid), np.array(dist_ults))
    eta_gain, _, _ = cert_mod.check_asymptotic_gain(np.array(amp_grid), np.array(eta_ults))
    eta_gain_ok = bool(eta_gain <= 4.0 * cert.c2 / (cert.gamma * cert.c1 * cert.eps))

    report = cert_mod.IssReport(
        eps=cert.eps, eps_bar=float(config["eps_bar"]), d_inf=d_inf,
        eta_ultimate_measured=eta_ult, eta_bound_min_norm=l3, eta_bound_damped=l4,
        min_norm_bound_ok=min_norm_bound_ok, damped_bound_ok=damped_bound_ok,
        sigma=sigma, sigma_condition_ok=sigma_ok, sigma_margin=sigma_margin,
        zs_ok=zs_ok, zs_rate=zs_rate,
        ag_gain_estimate=ag_gain, ag_intercept=ag_intercept, ag_ok=ag_ok,
        eta_gain_estimate=eta_gain, eta_gain_ok=eta_gain_ok,
        iss_ok=bool(zs_ok and ag_ok),
        vc_decrease_ok=vc_ok, eiss_form_ok=eiss_form_ok, sandwich_ok=sandwich_ok,
        e_iss_rate_measured=delta2,
        extras={
            "gamma": cert.gamma, "c1": cert.c1, "c2": cert.c2,
            "care_residual": cert.care_residual, "scaled_residual": cert.scaled_residual,
            "converse_constants": {"c4": consts.c4, "c5": consts.c5,
                                   "c6": consts.c6, "c7": consts.c7, "r": consts.r},
            "L_q": L_q,
            "eiss_delta1": delta1,
            "composite_bounds": list(cert_mod.composite_bounds(cert, sigma, consts)),
            "vc_details": vc_details,
            "amplitude_grid": amp_grid,
            "dist_ultimates": dist_ults,
            "eta_ultimates": eta_ults,
        },
    )
    artifacts = {"main_record": main_rec, "zero_record": zero_rec}
    if out_dir is not None:
        _write_record_csv(out_dir / "certify_main.csv", config, main_rec)
        _write_record_csv(out_dir / "certify_zero.csv", config, zero_rec)
        _write_json(out_dir / "report.json", config, report.to_dict())
    return report, artifacts


_TABLE_ROWS = (
    ("zero stability (ZS)", "zs_ok", "zs_rate"),
    ("asymptotic gain (AG)", "ag_ok", "ag_gain_estimate"),
    ("ISS = ZS and AG", "iss_ok", None),
    ("ultimate bound, min-norm", "min_norm_bound_ok", "eta_bound_min_norm"),
    ("ultimate bound, with damping", "damped_bound_ok", "eta_bound_damped"),
    ("eta gain <= bound coefficient", "eta_gain_ok", "eta_gain_estimate"),
    ("sigma rule margin 0.5", "sigma_condition_ok", "sigma_margin"),
    ("composite V_c decrease", "vc_decrease_ok", None),
    ("strict e-ISS inequality", "eiss_form_ok", None),
    ("composite sandwich", "sandwich_ok", None),
)


def print_report(report: cert_mod.IssReport) -> None:
    print(f"eps = {report.eps:g}   eps_bar = {report.eps_bar:g}   "
          f"|d|inf = {report.d_inf:g}   sigma = {report.sigma:.6g}")
    print(f"measured ultimate ||eta|| = {report.eta_ultimate_measured:.6g}   "
          f"e-ISS rate = {report.e_iss_rate_measured:.4g}")
    print(f"{'check':34s} {'status':7s} value")
    for label, flag, value_key in _TABLE_ROWS:
        flag_val = getattr(report, flag)
        if flag_val is None:
            status = "n/a"
        else:
            status = "PASS" if flag_val else "FAIL"
        value = "" if value_key is None else getattr(report, value_key)
        value_s = "" if value in (None, "") else f"{value:.6g}"
        print(f"{label:34s} {status:7s} {value_s}")


def cmd_certify(config: dict, out_dir: Path) -> int:
    report, _ = run_certify(config, out_dir)
    print_report(report)
    ok = report.mandatory_ok()
    print(f"overall: {'PASS' if ok else 'FAIL'}  (report at {out_dir / 'report.json'})")
    return 0 if ok else 1


def cmd_sweep(config: dict, out_dir: Path) -> int:
    settle = float(config["settle_fraction"])
    dt = float(config["integrator"]["dt"])
    horizon = float(config["integrator"]["horizon"])
    d = config["disturbance"]

    eps_rows = []
    for eps in sorted(float(e) for e in config["sweep"]["eps_grid"]):
        loop, cert, _, x0 = build_closed_loop(config, eps=eps)
        rec = integrate(loop, x0, T=horizon, dt=dt)
        sig = build_signal(config, cert.dims)
        d_inf = 0.0 if sig.kind == "zero" else sup_norm(sig, horizon)
        eps_rows.append([eps, ultimate_bound(rec, settle),
                         cert_mod.min_norm_ultimate_bound(cert, d_inf)])
    amp_rows = []
    for amp in sorted(float(a) for a in config["sweep"]["amplitude_grid"]):
        loop, cert, _, x0 = build_closed_loop(config, amplitude=amp)
        rec = integrate(loop, x0, T=horizon, dt=dt)
        amp_rows.append([amp, ultimate_bound(rec, settle),
                         cert_mod.min_norm_ultimate_bound(cert, amp)])

    _rows_csv(out_dir / "sweep_eps.csv", config,
              ["eps", "eta_ultimate", "theory_bound"], eps_rows)
    _rows_csv(out_dir / "sweep_amplitude.csv", config,
              ["amplitude", "eta_ultimate", "theory_bound"], amp_rows)

    ults = [row[1] for row in eps_rows]
    monotone_ok = all(ults[i] < ults[i + 1] for i in range(len(ults) - 1))
    zero_rows = [row for row in amp_rows if row[0] == 0.0]
    zero_ok = all(row[1] <= 1e-6 for row in zero_rows)
    bounds_ok = all(row[1] <= row[2] for row in amp_rows if row[0] > 0.0)
    payload = {
        "eps_rows": eps_rows, "amplitude_rows": amp_rows,
        "monotone_in_eps_ok": monotone_ok, "zero_amplitude_ok": zero_ok,
        "bounds_all_ok": bounds_ok,
    }
    _write_json(out_dir / "sweep_report.json", config, payload)
    for row in eps_rows:
        print(f"eps={row[0]:<6g} ultimate={row[1]:.6g} bound={row[2]:.6g}")
    for row in amp_rows:
        print(f"amp={row[0]:<6g} ultimate={row[1]:.6g} bound={row[2]:.6g}")
    ok = monotone_ok and zero_ok and bounds_ok
    print(f"sweep checks: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitclf",
        description="RES-CLF synthesis and phase-to-state stability certification")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("synth", cmd_synth), ("simulate", cmd_simulate),
                     ("certify", cmd_certify), ("sweep", cmd_sweep)):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="JSON config path")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="seed override (u64)")
        p.add_argument("--override", action="append", default=[], metavar="KEY=VALUE",
                       help="dotted-path config override, may repeat")
        p.set_defaults(fn=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        config = load_config(args.config, args.override, args.seed, args.out)
        out_dir = Path(config["out"])
        out_dir.mkdir(parents=True, exist_ok=True)
        return args.fn(config, out_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
