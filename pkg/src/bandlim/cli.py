"""Command-line experiments with JSON reports and CSV side tables.

Subcommands: ``density``, ``approx``, ``sharpness``, ``width``,
``concentration``, ``theorem2``, ``bound-check``, ``pipeline``.  Parameters
come from ``--config <json>`` merged with per-command flags (flags win);
unknown config keys are rejected before any computation starts.  Reports are
JSON on stdout (and ``--out``), deterministic for a fixed config and seed up
to the ``timing_s`` field.  Exit codes: 0 success, 2 configuration error,
3 internal certificate violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, fields

import numpy as np
import scipy.linalg

from . import __version__, approx, concentration, constructions, gram, lattice, width
from . import spectrum as spectrum_mod
from .errors import CertificateError

PI = math.pi


class ConfigError(ValueError):
    """Invalid or inconsistent experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    params: dict
    out: str | None = None
    seed: int = 0
    verbose: bool = False


@dataclass(frozen=True)
class Report:
    payload: dict

    def to_json(self) -> str:
        return json.dumps(self.payload, sort_keys=True, indent=2)


def _log(config: ExperimentConfig, message: str):
    if config.verbose:
        print(message, file=sys.stderr)


def _merge_params(defaults: dict, *layers: dict) -> dict:
    """Overlay config-file and flag values onto defaults, rejecting unknown keys."""
    merged = dict(defaults)
    for layer in layers:
        for key, value in layer.items():
            if key not in defaults:
                raise ConfigError(f"unknown config key {key!r}; "
                                  f"known keys: {sorted(defaults)}")
            if value is not None:
                merged[key] = value
    return merged


def _require(params: dict, *keys: str):
    missing = [k for k in keys if params[k] is None]
    if missing:
        raise ConfigError(f"missing required parameter(s): {missing}")


def _spectrum_from(value) -> spectrum_mod.SpectrumSet:
    if isinstance(value, str):
        value = json.loads(value)
    try:
        return spectrum_mod.SpectrumSet.from_pairs(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad spectrum literal {value!r}: {exc}") from exc


def _float_list(value) -> list[float]:
    if isinstance(value, str):
        value = json.loads(value) if value.strip().startswith("[") else value.split(",")
    return [float(v) for v in value]


def _write_csv(path: str, header: list[str], rows):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


# ---------------------------------------------------------------------------
# Subcommand implementations.  Each returns a plain results dict.

_DENSITY_DEFAULTS = {
    "points": None,
    "r": None,
    "curve_points": 40,
    "curve_csv": None,
}


def _run_density(params: dict, config: ExperimentConfig) -> dict:
    _require(params, "points", "r")
    lam = lattice.from_spec(params["points"])
    r = float(params["r"])
    report = lattice.density_report(lam, r)
    curve = lattice.density_star_curve(lam, int(params["curve_points"]))
    if params["curve_csv"]:
        _write_csv(params["curve_csv"], ["a", "density_star"], curve)
    results = {
        "count": len(lam),
        "separation": lam.separation,
        "r": report.r,
        "dplus": report.dplus,
        "dminus": report.dminus,
        "dstar": report.dstar,
        "window_count": report.window_count,
    }
    if not params["curve_csv"]:
        results["density_star_curve"] = [[a, v] for a, v in curve]
    return results


_APPROX_DEFAULTS = {
    "spectrum": None,
    "points": None,
    "xi": None,
    "budget": None,
    "mu_grid": None,
    "window_center": 0.0,
    "window_radius": None,
    "include_coefficients": False,
    "curve_csv": None,
}


def _approx_window(params: dict) -> tuple[lattice.DiscreteSet, gram.GramMatrix]:
    spec = _spectrum_from(params["spectrum"])
    lam = lattice.from_spec(params["points"])
    if params["window_radius"] is not None:
        lam = lattice.window(lam, float(params["window_center"]), float(params["window_radius"]))
        if len(lam) == 0:
            raise ConfigError("window contains no points")
    return lam, gram.build(lam, spec)


def _run_approx(params: dict, config: ExperimentConfig) -> dict:
    _require(params, "spectrum", "points", "xi")
    if (params["budget"] is None) == (params["mu_grid"] is None):
        raise ConfigError("provide exactly one of budget or mu_grid")
    lam, gmat = _approx_window(params)
    xi = int(params["xi"])
    if params["budget"] is not None:
        sol = approx.min_error_with_budget(gmat, xi, float(params["budget"]))
        results = {
            "window_size": len(lam),
            "xi": xi,
            "error": sol.error,
            "error_sq": sol.error**2,
            "norm": sol.norm,
            "mu": sol.mu,
            "rank_deficient": sol.rank_deficient,
        }
        if params["include_coefficients"]:
            results["coefficients"] = [[c.real, c.imag] for c in sol.coefficients]
        return results
    mu_grid = _float_list(params["mu_grid"])
    curve = approx.tradeoff(gmat, xi, mu_grid)
    rows = [[mu, err, nrm] for mu, err, nrm in curve.entries]
    if params["curve_csv"]:
        _write_csv(params["curve_csv"], ["mu", "error", "norm"], rows)
    return {"window_size": len(lam), "xi": xi, "tradeoff": rows}


_SHARPNESS_DEFAULTS = {"a": None, "K": 100000}


def _run_sharpness(params: dict, config: ExperimentConfig) -> dict:
    _require(params, "a")
    a = float(params["a"])
    k_max = int(params["K"])
    analytic = constructions.sharp_error(a)
    numeric = constructions.sharp_error_numeric(a, k_max)
    return {
        "a": a,
        "K": k_max,
        "analytic_error_sq": analytic,
        "numeric_error_sq": numeric,
        "tail_bound": constructions.sharp_error_tail_bound(k_max),
        "abs_difference": abs(analytic - numeric),
    }


_WIDTH_DEFAULTS = {
    "n": None,
    "d": None,
    "alpha": None,
    "trials": 10,
    "family": "random",
}


def _run_width(params: dict, config: ExperimentConfig) -> dict:
    _require(params, "n", "d", "alpha")
    n, d, alpha = int(params["n"]), float(params["d"]), float(params["alpha"])
    family = str(params["family"])
    if family not in ("random", "drift"):
        raise ConfigError(f"unknown trial family {family!r}; use 'random' or 'drift'")
    rng = np.random.default_rng(config.seed)
    make = width.saturated_random_basis if family == "random" else width.saturated_drift_basis
    trials = []
    for index in range(int(params["trials"])):
        basis = make(n, d, rng)
        cert = width.extract_subspace(basis, alpha)
        bound = 1.0 - 1.0 / alpha
        trials.append(
            {
                "trial": index,
                "k": cert.k,
                "sigma_k": cert.certified_sigma,
                "bound": bound,
                "dim_bound": (1 - alpha**2 * d**2) * n - 1,
                "pass": bool(cert.certified_sigma >= bound and cert.k > (1 - alpha**2 * d**2) * n - 1),
            }
        )
    passed = sum(1 for t in trials if t["pass"])
    return {
        "n": n,
        "d": d,
        "alpha": alpha,
        "family": family,
        "trials": trials,
        "passes": f"{passed}/{len(trials)}",
        "all_pass": passed == len(trials),
    }


_CONCENTRATION_DEFAULTS = {
    "spectrum": None,
    "window": None,
    "c_grid": None,
    "nodes": None,
    "eigenvalue_csv": None,
}


def _run_concentration(params: dict, config: ExperimentConfig) -> dict:
    _require(params, "spectrum", "window")
    band = _spectrum_from(params["spectrum"])
    time_set = _spectrum_from(params["window"])
    c_grid = (
        tuple(_float_list(params["c_grid"]))
        if params["c_grid"] is not None
        else concentration.DEFAULT_C_GRID
    )
    nodes = int(params["nodes"]) if params["nodes"] is not None else None
    problem = concentration.ConcentrationProblem(band, time_set, nodes_per_interval=nodes)
    spec_out = concentration.spectrum_of(problem, c_grid=c_grid)
    checks = [
        concentration.check_lemma1(problem, c, spec_out).__dict__ for c in c_grid
    ]
    if params["eigenvalue_csv"]:
        _write_csv(
            params["eigenvalue_csv"],
            ["index", "eigenvalue"],
            list(enumerate(spec_out.eigenvalues.tolist())),
        )
    expected = (
        spectrum_mod.measure(band) * spectrum_mod.measure(time_set) / (2 * PI)
    )
    results = {
        "node_count": int(len(problem.nodes)),
        "trace": spec_out.trace,
        "expected_trace": expected,
        "trace_rel_err": abs(spec_out.trace - expected) / expected,
        "eigencount_checks": checks,
        "all_satisfied": all(c["satisfied"] for c in checks),
        "top_eigenvalues": spec_out.eigenvalues[:20].tolist(),
    }
    if not results["all_satisfied"]:
        raise CertificateError("concentration eigencount exceeded its dimension bound")
    return results


_THEOREM2_DEFAULTS = {
    "eps": None,
    "R": None,
    "n_max": 3,
    "K": 24,
    "matrix_csv": None,
    "support_check": True,
}


def _run_theorem2(params: dict, config: ExperimentConfig) -> dict:
    _require(params, "eps", "R")
    fam = constructions.Theorem2Family(
        epsilon=float(params["eps"]), growth=float(params["R"]), n_max=int(params["n_max"])
    )
    k_max = int(params["K"])
    spec = fam.spectrum_set()
    per_n = []
    matrix_rows = []
    for n in range(-fam.n_max, fam.n_max + 1):
        ks, resid = constructions.t2_residuals(fam, n, k_max)
        values = resid.copy()
        values[ks == n] += 1.0
        matrix_rows.extend([int(n), int(k), float(v)] for k, v in zip(ks, values))
        window_deviation = max(
            abs(constructions.t2_value_at(fam, n, n) - 1.0),
            max(
                (abs(constructions.t2_value_at(fam, n, int(k))) for k in ks
                 if abs(k) <= 2 * abs(n) and k != n),
                default=0.0,
            ),
        )
        entry = {
            "n": n,
            "window_error": float(np.linalg.norm(resid)),
            "interp_max_dev": window_deviation,
            "growth_proxy": constructions.t2_growth_proxy(fam, n, k_max),
        }
        if params["support_check"]:
            entry["support_mass_outside"] = constructions.spectral_mass_outside(
                lambda x: constructions.t2_eval(fam, n, x), spec
            )
        per_n.append(entry)
    if params["matrix_csv"]:
        _write_csv(params["matrix_csv"], ["n", "k", "value"], matrix_rows)
    return {
        "eps": fam.epsilon,
        "R": fam.growth,
        "n_max": fam.n_max,
        "K": k_max,
        "m_S": spectrum_mod.measure(spec),
        "per_n": per_n,
    }


_BOUND_CHECK_DEFAULTS = {"measure": None, "d_sq": None, "density": None}


def _run_bound_check(params: dict, config: ExperimentConfig) -> dict:
    _require(params, "measure", "d_sq", "density")
    m = float(params["measure"])
    d_sq = float(params["d_sq"])
    density = float(params["density"])
    if not 0 < d_sq < 1:
        raise ConfigError(f"d_sq must lie in (0, 1), got {d_sq}")
    if not m > 0:
        raise ConfigError("measure must be positive")
    rhs = 2 * PI * (1 - d_sq) * density
    margin = m - rhs
    results = {
        "measure_S": m,
        "density": density,
        "d": math.sqrt(d_sq),
        "d_sq": d_sq,
        "rhs": rhs,
        "margin": margin,
        "satisfied": bool(margin >= -1e-9),
    }
    # re-derive from raw fields so a formatting slip cannot ship a bad verdict
    if abs((results["measure_S"] - results["rhs"]) - results["margin"]) > 1e-12:
        raise CertificateError("bound-check arithmetic failed to re-verify")
    return results


_PIPELINE_DEFAULTS = {
    "spectrum": None,
    "points": None,
    "d_sq": None,
    "alpha": None,
    "delta": None,
    "eps_conc": None,
    "r": None,
    "center": 0.0,
    "support_tol": 1e-6,
    "grid_halfwidth": 640.0,
    "grid_step": 0.5,
    "inner_samples": 14081,
}


def pipeline_theorem1(params: dict, config: ExperimentConfig) -> dict:
    """Finite-scale re-enactment of the measure-density argument.

    Stages: build delta-approximants on the window at error d; localise them
    with the Fejer factor (support certificate); extract a well-conditioned
    subspace (width certificate); measure its concentration on the slightly
    larger interval (concentration certificate); check the dimension count
    and emit the implied density inequality with every slack factor itemised.
    """
    _require(params, "spectrum", "points", "d_sq", "alpha", "delta", "eps_conc", "r")
    spec = _spectrum_from(params["spectrum"])
    lam_full = lattice.from_spec(params["points"])
    d_sq = float(params["d_sq"])
    alpha = float(params["alpha"])
    delta = float(params["delta"])
    eps_conc = float(params["eps_conc"])
    r = float(params["r"])
    center = float(params["center"])
    if not 0 < d_sq < 1:
        raise ConfigError("d_sq must lie in (0, 1)")
    d = math.sqrt(d_sq)
    if not 1 < alpha < 1 / d:
        raise ConfigError(f"alpha must lie in (1, 1/d) = (1, {1 / d:.4f})")
    if not 0 < eps_conc < 1:
        raise ConfigError("eps_conc must lie in (0, 1)")

    lam = lattice.window(lam_full, center, r)
    n_window = len(lam)
    if n_window < 4:
        raise ConfigError("window too small for a meaningful pipeline run")
    _log(config, f"pipeline: window holds {n_window} points")
    gmat = gram.build(lam, spec)
    localizer = constructions.FejerLocalizer(delta)
    pts = lam.points

    # Stage 1: delta approximants of minimal norm at error d, Fejer-localised.
    coefs = np.zeros((n_window, n_window), dtype=complex)
    vectors = np.zeros((n_window, n_window), dtype=complex)
    max_err = 0.0
    max_norm = 0.0
    for j in range(n_window):
        sol = approx.min_norm_with_error(gmat, j, d)
        coefs[:, j] = sol.coefficients
        samples = gmat.entries @ sol.coefficients
        vectors[:, j] = samples * localizer(pts - pts[j])
        deviation = vectors[:, j].copy()
        deviation[j] -= 1.0
        max_err = max(max_err, float(np.linalg.norm(deviation)))
        max_norm = max(max_norm, sol.norm)
    approx_ok = max_err <= d * (1 + 1e-9)
    _log(config, f"pipeline: max localized window error {max_err:.6f} (target {d:.6f})")

    # Stage 2: spectral support of the localised atom at the window centre.
    dilated = spectrum_mod.dilate(spec, delta)
    j_mid = int(np.argmin(np.abs(pts - center)))

    def center_atom(x):
        kvals = spectrum_mod.kernel(spec, x[:, None] - pts[None, :])
        return (kvals @ coefs[:, j_mid]) * localizer(x - pts[j_mid])

    support_mass = constructions.spectral_mass_outside(center_atom, dilated)
    support_ok = support_mass <= float(params["support_tol"])
    _log(config, f"pipeline: out-of-band mass {support_mass:.3e}")

    # Stage 3: width extraction.
    basis = width.PerturbedBasis(vectors, d)
    cert = width.extract_subspace(basis, alpha)
    width_ok = cert.certified_sigma >= 1 - 1 / alpha and cert.k > (1 - alpha**2 * d_sq) * n_window - 1

    # Stage 4: concentration of the extracted span on the widened interval.
    def atoms_on(x):
        kvals = spectrum_mod.kernel(spec, x[:, None] - pts[None, :])
        return (kvals @ coefs) * localizer(x[:, None] - pts[None, :])

    half = float(params["grid_halfwidth"])
    step = float(params["grid_step"])
    grid = np.arange(-half, half + step, step) + center
    phi_full = atoms_on(grid)
    gram_full = step * (phi_full.conj().T @ phi_full)
    inner_lo, inner_hi = center - r * (1 + delta), center + r * (1 + delta)
    inner_n = int(params["inner_samples"]) | 1  # Simpson needs an odd count
    inner = np.linspace(inner_lo, inner_hi, inner_n)
    h = inner[1] - inner[0]
    weights = np.ones(inner_n)
    weights[1:-1:2], weights[2:-1:2] = 4.0, 2.0
    weights *= h / 3.0
    phi_inner = atoms_on(inner)
    gram_inner = phi_inner.conj().T * weights @ phi_inner
    x_basis = cert.basis
    a_x = x_basis.conj().T @ gram_inner @ x_basis
    b_x = x_basis.conj().T @ gram_full @ x_basis
    levels = scipy.linalg.eigh(a_x, b_x, eigvals_only=True)
    conc_level = float(levels.min())
    conc_ok = conc_level >= 1 - eps_conc
    _log(config, f"pipeline: concentration level {conc_level:.6f} (need {1 - eps_conc})")

    # Stage 5: dimension count and the implied density inequality.
    m_s = spectrum_mod.measure(spec)
    m_sd = spectrum_mod.measure(dilated)
    inner_len = 2 * r * (1 + delta)
    count_bound = m_sd * inner_len / (2 * PI * (1 - eps_conc))
    count_ok = cert.k <= count_bound
    denom = 1 - alpha**2 * d_sq
    implied_cap = (1 + delta) * m_sd / (2 * PI * (1 - eps_conc) * denom) + 1 / (2 * r * denom)
    ideal_cap = m_s / (2 * PI * (1 - d_sq))
    window_density = n_window / (2 * r)
    implied_ok = window_density <= implied_cap
    consistent = implied_cap >= ideal_cap

    stages = {
        "approximation": bool(approx_ok),
        "localization_support": bool(support_ok),
        "width_bound": bool(width_ok),
        "concentration_level": bool(conc_ok),
        "dimension_count": bool(count_ok),
        "implied_inequality": bool(implied_ok and consistent),
    }
    results = {
        "window_points": n_window,
        "max_window_error": max_err,
        "max_function_norm": max_norm,
        "support_mass_outside": support_mass,
        "support_tol": float(params["support_tol"]),
        "subspace_dim": cert.k,
        "dim_bound": denom * n_window - 1,
        "certified_sigma": cert.certified_sigma,
        "sigma_bound": 1 - 1 / alpha,
        "concentration_level": conc_level,
        "concentration_requirement": 1 - eps_conc,
        "count_bound": count_bound,
        "window_density": window_density,
        "implied_density_cap": implied_cap,
        "ideal_density_cap": ideal_cap,
        "slack_factors": {
            "widened_interval": 1 + delta,
            "dilated_measure_ratio": m_sd / m_s,
            "concentration_loss": 1 / (1 - eps_conc),
            "width_loss": 1 / denom,
            "boundary_term": 1 / (2 * r * denom),
        },
        "stages": stages,
        "all_stages_pass": all(stages.values()),
    }
    if not results["all_stages_pass"]:
        failed = [name for name, ok in stages.items() if not ok]
        raise CertificateError(f"pipeline stage(s) failed: {failed}")
    return results


_COMMANDS = {
    "density": (_DENSITY_DEFAULTS, _run_density),
    "approx": (_APPROX_DEFAULTS, _run_approx),
    "sharpness": (_SHARPNESS_DEFAULTS, _run_sharpness),
    "width": (_WIDTH_DEFAULTS, _run_width),
    "concentration": (_CONCENTRATION_DEFAULTS, _run_concentration),
    "theorem2": (_THEOREM2_DEFAULTS, _run_theorem2),
    "bound-check": (_BOUND_CHECK_DEFAULTS, _run_bound_check),
    "pipeline": (_PIPELINE_DEFAULTS, pipeline_theorem1),
}


def run(config: ExperimentConfig) -> Report:
    """Validate, dispatch, and wrap the results in a report envelope."""
    if config.command not in _COMMANDS:
        raise ConfigError(f"unknown command {config.command!r}")
    defaults, handler = _COMMANDS[config.command]
    params = _merge_params(defaults, config.params)
    started = time.perf_counter()
    results = handler(params, config)
    payload = {
        "command": config.command,
        "version": __version__,
        "seed": config.seed,
        "config": {k: params[k] for k in sorted(params)},
        "results": results,
        "timing_s": round(time.perf_counter() - started, 6),
    }
    return Report(payload=payload)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="JSON file with experiment parameters")
    parser.add_argument("--out", help="also write the JSON report to this path")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--verbose", action="store_true")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandlim",
        description="Experiments on band-limited approximation of deltas over discrete point sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="finite-window density statistics of a point set")
    _add_common(p)
    p.add_argument("--points")
    p.add_argument("--r", type=float)
    p.add_argument("--curve-csv", dest="curve_csv")

    p = sub.add_parser("approx", help="delta approximation on a window")
    _add_common(p)
    p.add_argument("--spectrum")
    p.add_argument("--points")
    p.add_argument("--xi", type=int)
    p.add_argument("--budget", type=float)
    p.add_argument("--mu-grid", dest="mu_grid")
    p.add_argument("--window", dest="window_radius", type=float)
    p.add_argument("--curve-csv", dest="curve_csv")

    p = sub.add_parser("sharpness", help="exact vs summed sharp-example error")
    _add_common(p)
    p.add_argument("--a", type=float)
    p.add_argument("--K", type=int)

    p = sub.add_parser("width", help="randomized subspace-extraction trials")
    _add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--family", choices=["random", "drift"])

    p = sub.add_parser("concentration", help="time-frequency concentration spectrum")
    _add_common(p)
    p.add_argument("--spectrum")
    p.add_argument("--window")
    p.add_argument("--c-grid", dest="c_grid")
    p.add_argument("--nodes", type=int)
    p.add_argument("--eigenvalue-csv", dest="eigenvalue_csv")

    p = sub.add_parser("theorem2", help="two-sideband interpolation family diagnostics")
    _add_common(p)
    p.add_argument("--eps", type=float)
    p.add_argument("--R", type=float, dest="R")
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--K", type=int)
    p.add_argument("--matrix-csv", dest="matrix_csv")

    p = sub.add_parser("bound-check", help="measure vs density inequality arithmetic")
    _add_common(p)
    p.add_argument("--measure", type=float)
    p.add_argument("--d-sq", dest="d_sq", type=float)
    p.add_argument("--density", type=float)

    p = sub.add_parser("pipeline", help="end-to-end finite-scale proof re-enactment")
    _add_common(p)
    p.add_argument("--spectrum")
    p.add_argument("--points")
    p.add_argument("--d-sq", dest="d_sq", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--eps-conc", dest="eps_conc", type=float)
    p.add_argument("--r", type=float)

    return parser


_COMMON_KEYS = {"command", "config", "out", "seed", "verbose"}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    flag_params = {
        k: v for k, v in vars(args).items() if k not in _COMMON_KEYS and v is not None
    }
    try:
        file_params = {}
        if args.config:
            with open(args.config) as handle:
                file_params = json.load(handle)
            if not isinstance(file_params, dict):
                raise ConfigError("config file must hold a JSON object")
        defaults, _ = _COMMANDS[args.command]
        params = _merge_params(defaults, file_params, flag_params)
        config = ExperimentConfig(
            command=args.command,
            params=params,
            out=args.out,
            seed=args.seed,
            verbose=args.verbose,
        )
        report = run(config)
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CertificateError as exc:
        print(f"certificate violation: {exc}", file=sys.stderr)
        return 3
    text = report.to_json()
    print(text)
    if config.out:
        with open(config.out, "w") as handle:
            handle.write(text + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
