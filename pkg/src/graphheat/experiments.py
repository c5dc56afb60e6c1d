"""Declarative experiment harness: configs, runners, CSV/SVG/manifest output.

Seven experiment kinds cover the studies this package exists for: Laplacian
spectra against the sphere, prior regularity versus smoothness, a full
posterior run with its closed-form check, the two acceptance-rate sweeps,
the graph-versus-continuum consistency trend, and plain prior draws.

Seed conventions, shared by every kind so runs are comparable: replicate r
of a config with base seed ``seed`` uses cloud seed 100+seed+r, data-noise
seed 500+seed+r, chain seed 900+seed+r, and prior-draw seed 700+seed+r.
Point clouds sampled at different n with the same seed are nested (the
smaller cloud is a prefix of the larger), so sweep points at a fixed
replicate share geometry and, when the labeled set is a prefix, share data.

All result files are byte-deterministic for a given config.  The manifest
additionally records wall time and library versions, so only the manifest
differs between identical runs.
"""

import dataclasses
import json
import math
import os
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .cloud import sample_sphere
from .forward import design_matrix, first_p_design
from .graph import build_eps_graph, default_eps, laplacian, sphere_calibration
from .interpolate import knn_interpolate, sphere_mc_grid, l2_distance
from .likelihood import NoiseModel, potential_from_design_matrix, synthesize_data
from .oracle import continuum_posterior, graph_posterior
from .prior import PriorSpec, regularity_experiment, sample_graph_prior
from .sampler import (
    SamplerConfig,
    acceptance_rate,
    integrated_autocorr_time,
    pcn,
    posterior_mean,
)
from .spectral import ContinuumBasis, eigendecompose

SCHEMA_VERSION = 1

KINDS = (
    "spectra",
    "regularity",
    "posterior",
    "acceptance-sweep",
    "supervised-sweep",
    "oracle-compare",
    "prior-sample",
)

# Ground truth for synthetic data: a fixed band-limited combination of
# spherical harmonics, degrees 1 through 3.  Chosen once and documented
# here; every posterior-style experiment uses it.
DEFAULT_TRUTH = (
    ((1, 0), 1.0),
    ((1, 1), 0.5),
    ((2, -1), 0.7),
    ((2, 2), 0.4),
    ((3, 0), 0.3),
    ((3, 3), 0.2),
)

DEFAULT_N_GRID = (300, 600, 900, 1200, 1500, 2000)


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    n: int = 1000
    n_grid: tuple = DEFAULT_N_GRID
    p: int = 200
    m: int = 2
    eps_multiplier: float = 2.0
    eps_multipliers: tuple = (1.0, 2.0, 3.0)
    alpha: float = 1.0
    s: float = 5.0
    k_n: object = 16          # positive int, or "auto" for the built-in rule
    t: float = 0.1
    sigma: float = 0.1
    noise: str = "gaussian"
    beta: float = 0.01
    iterations: int = 100000
    burn_in: int = 10000
    thinning: int = 1
    seed: int = 0
    replicates: int = 1
    l_max: int = 6
    s_grid: tuple = (2, 3, 4, 5, 6, 7, 8)
    draws: int = 100
    calibration: object = "sphere"   # "sphere" for the S^2 rate, or a number
    grid_size: int = 10000
    knn_k: int = 1
    out: str = "results"

    def to_json(self):
        d = {"schema": SCHEMA_VERSION}
        d.update(dataclasses.asdict(self))
        return json.dumps(d, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        if "config" in d and isinstance(d["config"], dict):
            d = d["config"]          # accept a manifest as a config source
        schema = d.pop("schema", SCHEMA_VERSION)
        if schema != SCHEMA_VERSION:
            raise ValueError("unsupported config schema %r" % (schema,))
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ValueError("unknown config fields: %s" % ", ".join(unknown))
        for key in ("n_grid", "eps_multipliers", "s_grid"):
            if key in d:
                d[key] = tuple(d[key])
        return cls(**d)


def validate_config(cfg):
    """Field-level problems with a config, empty when it is runnable."""
    errs = []
    if cfg.kind not in KINDS:
        import difflib

        near = difflib.get_close_matches(str(cfg.kind), KINDS, n=1)
        hint = "; did you mean %r" % near[0] if near else ""
        errs.append("kind: unknown %r%s (catalog: %s)"
                    % (cfg.kind, hint, ", ".join(KINDS)))
        return errs
    sweep = cfg.kind in ("acceptance-sweep", "supervised-sweep", "oracle-compare")
    sizes = cfg.n_grid if sweep else (cfg.n,)
    if not sizes:
        errs.append("n_grid: must not be empty")
        sizes = (cfg.n,)
    if any(int(n) < 2 for n in sizes):
        errs.append("n: every cloud size must be at least 2")
    if cfg.m < 1:
        errs.append("m: intrinsic dimension must be at least 1")
    if cfg.eps_multiplier <= 0:
        errs.append("eps_multiplier: must be positive")
    if cfg.kind == "spectra" and (not cfg.eps_multipliers
                                  or any(x <= 0 for x in cfg.eps_multipliers)):
        errs.append("eps_multipliers: need a nonempty list of positive values")
    if cfg.alpha < 0:
        errs.append("alpha: must be nonnegative")
    needs_prior = cfg.kind in ("posterior", "acceptance-sweep",
                               "supervised-sweep", "oracle-compare",
                               "prior-sample")
    if needs_prior and cfg.s <= cfg.m:
        errs.append("s: must exceed the intrinsic dimension m=%d" % cfg.m)
    if cfg.k_n != "auto" and (not isinstance(cfg.k_n, int) or cfg.k_n < 1):
        errs.append('k_n: must be a positive integer or "auto"')
    chain = cfg.kind in ("posterior", "acceptance-sweep", "supervised-sweep")
    if chain:
        if not 0.0 < cfg.beta <= 1.0:
            errs.append("beta: must lie in (0, 1]")
        if cfg.iterations < 1:
            errs.append("iterations: must be positive")
        if not 0 <= cfg.burn_in < cfg.iterations:
            errs.append("burn_in: must lie in [0, iterations)")
        if cfg.thinning < 1:
            errs.append("thinning: must be at least 1")
    if cfg.kind in ("posterior", "acceptance-sweep", "oracle-compare"):
        if cfg.p < 1:
            errs.append("p: must be positive")
        elif any(cfg.p > int(n) for n in sizes):
            errs.append("p: exceeds the smallest cloud size in the sweep")
    if cfg.kind in ("posterior", "acceptance-sweep", "supervised-sweep",
                    "oracle-compare"):
        if cfg.sigma <= 0:
            errs.append("sigma: must be positive")
        if cfg.noise not in ("gaussian", "probit"):
            errs.append('noise: must be "gaussian" or "probit"')
        if cfg.t < 0:
            errs.append("t: must be nonnegative")
        truth_degree = max(l for (l, _), _ in DEFAULT_TRUTH)
        if cfg.l_max < truth_degree:
            errs.append("l_max: must be at least %d to carry the ground truth"
                        % truth_degree)
    if cfg.kind == "oracle-compare" and cfg.noise == "probit":
        errs.append("noise: oracle-compare requires the gaussian model")
    if cfg.kind == "regularity":
        if not cfg.s_grid:
            errs.append("s_grid: must not be empty")
        if cfg.draws < 1:
            errs.append("draws: must be at least 1")
    if cfg.kind == "prior-sample" and cfg.draws < 1:
        errs.append("draws: must be at least 1")
    if cfg.replicates < 1:
        errs.append("replicates: must be at least 1")
    if cfg.calibration != "sphere":
        try:
            ok = float(cfg.calibration) > 0
        except (TypeError, ValueError):
            ok = False
        if not ok:
            errs.append('calibration: must be "sphere" or a positive number')
    if cfg.grid_size < 1:
        errs.append("grid_size: must be positive")
    if cfg.knn_k < 1:
        errs.append("knn_k: must be at least 1")
    return errs


def catalog():
    """One-line description per experiment kind."""
    return {
        "spectra": "graph Laplacian eigenvalues vs the sphere spectrum, "
                   "one CSV per bandwidth multiplier",
        "regularity": "max oscillation of seminorm-normalized prior draws "
                      "over a smoothness grid",
        "posterior": "one full pCN run with closed-form cross-check and "
                     "pushforward field",
        "acceptance-sweep": "pCN acceptance rate and nodal IACT over a "
                            "cloud-size grid at fixed p",
        "supervised-sweep": "same sweep with every point labeled (p = n)",
        "oracle-compare": "graph posterior mean vs continuum posterior mean "
                          "on a Monte Carlo grid, over a cloud-size grid",
        "prior-sample": "raw prior draws as nodal fields",
    }


# --- shared pieces -------------------------------------------------------


def _calibration(cfg, n):
    if cfg.calibration == "sphere":
        return sphere_calibration(n)
    return float(cfg.calibration)


def _cloud(cfg, n, replicate):
    return sample_sphere(n, seed=100 + cfg.seed + replicate)


def _basis(cfg, cl, k):
    eps = default_eps(cl.n, cfg.m, cfg.eps_multiplier)
    g = build_eps_graph(cl, eps)
    lap = laplacian(g, calibration=_calibration(cfg, cl.n))
    return eigendecompose(lap, k), eps


def _truncation(cfg, n):
    if cfg.k_n == "auto":
        from .prior import default_truncation

        return default_truncation(n, default_eps(n, cfg.m, cfg.eps_multiplier),
                                  cfg.m)
    return min(int(cfg.k_n), n)


def truth_coefficients(cont):
    """DEFAULT_TRUTH as a coefficient vector in the given harmonic basis."""
    coeffs = np.zeros(cont.count)
    for label, value in DEFAULT_TRUTH:
        coeffs[cont.labels.index(label)] = value
    return coeffs


def _posterior_chain(cfg, n, p, replicate):
    """Build one sweep point end to end; returns diagnostics and pieces."""
    cl = _cloud(cfg, n, replicate)
    kn = _truncation(cfg, n)
    basis, _ = _basis(cfg, cl, kn)
    cont = ContinuumBasis(cfg.l_max)
    design = first_p_design(p)
    model = NoiseModel(cfg.noise, cfg.sigma)
    data = synthesize_data(truth_coefficients(cont), cont, cfg.t, design, cl,
                           model, seed=500 + cfg.seed + replicate)
    spec = PriorSpec(alpha=cfg.alpha, s=cfg.s, k_n=kn, m=cfg.m)
    mat = design_matrix(basis, cfg.t, design, cl)
    phi = potential_from_design_matrix(mat, data, model)
    sc = SamplerConfig(beta=cfg.beta, iterations=cfg.iterations,
                       burn_in=cfg.burn_in, thinning=cfg.thinning,
                       seed=900 + cfg.seed + replicate)
    chain = pcn(basis, spec, phi, sc)
    return cl, basis, spec, data, chain


def _sweep_point(cfg, n, supervised, replicate):
    p = n if supervised else cfg.p
    _, basis, _, _, chain = _posterior_chain(cfg, n, p, replicate)
    trace = chain.samples @ basis.eigenvectors[0, :]
    return {
        "acceptance": acceptance_rate(chain),
        "iact": integrated_autocorr_time(trace),
    }


def _sweep_jobs(cfg, supervised):
    return [(n, r) for n in cfg.n_grid for r in range(cfg.replicates)]


def _seed_record(cfg, n, replicate):
    return {
        "n": int(n),
        "replicate": int(replicate),
        "cloud_seed": 100 + cfg.seed + replicate,
        "data_seed": 500 + cfg.seed + replicate,
        "chain_seed": 900 + cfg.seed + replicate,
    }


# Top level so a process pool can pickle it.
def _sweep_worker(args):
    cfg_json, n, supervised, replicate = args
    cfg = ExperimentConfig.from_json(cfg_json)
    return (n, replicate), _sweep_point(cfg, n, supervised, replicate)


def _run_jobs(worker, args, jobs):
    if jobs <= 1 or len(args) <= 1:
        return [worker(a) for a in args]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, args))


# --- CSV / SVG formatting ------------------------------------------------


def _fmt(x):
    if isinstance(x, float):
        return "%.17g" % x
    return str(x)


def _csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def _svg_line_plot(title, xlabel, ylabel, series):
    """Tiny line plot over (label, xs, ys) triples.  Quick-look only.

    Hand-rolled so byte-identical reruns need nothing beyond the stdlib;
    every coordinate is formatted with a fixed precision.
    """
    width, height = 480, 320
    left, right, top, bottom = 56, 16, 28, 40
    pw, ph = width - left - right, height - top - bottom
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def px(x):
        return left + pw * (x - x0) / (x1 - x0)

    def py(y):
        return top + ph * (1.0 - (y - y0) / (y1 - y0))

    palette = ("#1f5fa8", "#c44e52", "#55a868", "#8172b2")
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">'
        % (width, height),
        '<rect width="%d" height="%d" fill="white"/>' % (width, height),
        '<text x="%d" y="18" font-size="13" text-anchor="middle">%s</text>'
        % (width // 2, title),
        '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
        % (left, top + ph, left + pw, top + ph),
        '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
        % (left, top, left, top + ph),
        '<text x="%d" y="%d" font-size="11" text-anchor="middle">%s</text>'
        % (left + pw // 2, height - 8, xlabel),
        '<text x="14" y="%d" font-size="11" text-anchor="middle" '
        'transform="rotate(-90 14 %d)">%s</text>'
        % (top + ph // 2, top + ph // 2, ylabel),
    ]
    for tick in (x0, 0.5 * (x0 + x1), x1):
        parts.append(
            '<text x="%.2f" y="%d" font-size="10" text-anchor="middle">'
            "%.4g</text>" % (px(tick), top + ph + 14, tick))
    for tick in (y0, 0.5 * (y0 + y1), y1):
        parts.append(
            '<text x="%d" y="%.2f" font-size="10" text-anchor="end">'
            "%.4g</text>" % (left - 4, py(tick) + 3, tick))
    for i, (label, xs, ys) in enumerate(series):
        color = palette[i % len(palette)]
        pts = " ".join("%.2f,%.2f" % (px(x), py(y)) for x, y in zip(xs, ys))
        parts.append('<polyline points="%s" fill="none" stroke="%s" '
                     'stroke-width="1.5"/>' % (pts, color))
        if label:
            parts.append(
                '<text x="%d" y="%d" font-size="10" fill="%s">%s</text>'
                % (left + pw - 90, top + 14 + 13 * i, color, label))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# --- experiment bodies ---------------------------------------------------
# Each returns (files: name -> text, metrics, per-job seed records).


def _run_spectra(cfg, jobs):
    files, metrics = {}, {}
    count = min(50, cfg.n)
    cl = _cloud(cfg, cfg.n, 0)
    cont = ContinuumBasis(12)
    lam_cont = cont.eigenvalues
    reference = np.array([2.0] * 3 + [6.0] * 5)
    errs = {}
    for mult in cfg.eps_multipliers:
        eps = default_eps(cfg.n, cfg.m, mult)
        g = build_eps_graph(cl, eps)
        lap = laplacian(g, calibration=_calibration(cfg, cfg.n))
        basis = eigendecompose(lap, min(count, cfg.n))
        rows = [(i + 1, float(basis.eigenvalues[i]),
                 float(lam_cont[i]) if i < lam_cont.size else math.nan)
                for i in range(basis.count)]
        files["spectra_eps%g.csv" % mult] = _csv(
            ("index", "graph_lambda", "continuum_lambda"), rows)
        if basis.count >= 9:
            errs["%g" % mult] = float(np.mean(
                np.abs(basis.eigenvalues[1:9] / reference - 1.0)))
    metrics["mean_rel_error_modes_2_9"] = errs
    series = []
    for mult in cfg.eps_multipliers:
        rows = files["spectra_eps%g.csv" % mult].strip().split("\n")[1:]
        xs = [float(r.split(",")[0]) for r in rows]
        ys = [float(r.split(",")[1]) for r in rows]
        series.append(("eps x%g" % mult, xs, ys))
    rows0 = files["spectra_eps%g.csv" % cfg.eps_multipliers[0]]
    n_rows = len(rows0.strip().split("\n")) - 1
    series.append(("sphere", list(range(1, n_rows + 1)),
                   [float(lam_cont[i]) for i in range(n_rows)]))
    files["spectra.svg"] = _svg_line_plot(
        "graph vs sphere spectrum (n=%d)" % cfg.n, "index", "eigenvalue",
        series)
    return files, metrics, [_seed_record(cfg, cfg.n, 0)]


def _run_regularity(cfg, jobs):
    cl = _cloud(cfg, cfg.n, 0)
    eps = default_eps(cfg.n, cfg.m, cfg.eps_multiplier)
    g = build_eps_graph(cl, eps)
    lap = laplacian(g, calibration=_calibration(cfg, cfg.n))
    basis = eigendecompose(lap, cfg.n)
    table = regularity_experiment(basis, cl, eps, cfg.s_grid, cfg.draws,
                                  700 + cfg.seed, alpha=cfg.alpha)
    rows = [(s, mx, float(np.log(mx)) if mx > 0 else -math.inf)
            for s, mx in table]
    files = {"regularity.csv": _csv(("s", "max_osc", "log_max_osc"), rows)}
    xs = [s for s, _ in table]
    files["regularity.svg"] = _svg_line_plot(
        "max oscillation of normalized prior draws (n=%d)" % cfg.n,
        "s", "log max osc", [("", xs, [r[2] for r in rows])])
    inversions = sum(1 for i in range(len(table) - 1)
                     if table[i + 1][1] > table[i][1])
    return files, {"inversions": inversions}, [_seed_record(cfg, cfg.n, 0)]


def _run_posterior(cfg, jobs):
    cl, basis, spec, data, chain = _posterior_chain(cfg, cfg.n, cfg.p, 0)
    mean_fn = posterior_mean(chain, basis)
    trace = chain.samples @ basis.eigenvectors[0, :]
    metrics = {
        "acceptance": acceptance_rate(chain),
        "iact_u_x1": integrated_autocorr_time(trace),
    }
    header = ["x", "y", "z", "chain_mean"]
    cols = [cl.points[:, 0], cl.points[:, 1], cl.points[:, 2], mean_fn.values]
    if cfg.noise == "gaussian":
        orc = graph_posterior(data, basis, spec, cfg.t, cfg.sigma)
        header += ["oracle_mean", "oracle_sd"]
        cols += [orc.mean, np.sqrt(orc.variance)]
        ref = float(np.sqrt(np.mean(orc.mean ** 2)))
        err = float(np.sqrt(np.mean((mean_fn.values - orc.mean) ** 2)))
        metrics["rel_l2_mean_error_vs_oracle"] = err / ref if ref else math.nan
    else:
        # probit: classify by the sign of the posterior mean, zero -> +1
        header += ["class"]
        cols += [np.where(mean_fn.values >= 0.0, 1, -1)]
    rows = list(zip(*[np.asarray(c, dtype=float) for c in cols]))
    files = {"posterior_mean.csv": _csv(header, rows)}
    grid = sphere_mc_grid(cfg.grid_size)
    push = knn_interpolate(mean_fn, cl, 4, grid.points)   # k=4 for fields
    files["pushforward.csv"] = _csv(
        ("x", "y", "z", "value"),
        list(zip(grid.points[:, 0], grid.points[:, 1], grid.points[:, 2],
                 push)))
    return files, metrics, [_seed_record(cfg, cfg.n, 0)]


def _run_sweep(cfg, jobs, supervised):
    pairs = _sweep_jobs(cfg, supervised)
    args = [(cfg.to_json(), n, supervised, r) for n, r in pairs]
    results = dict(_run_jobs(_sweep_worker, args, jobs))
    run_rows, acc_rows, iact_rows = [], [], []
    acc_med, iact_med = {}, {}
    for n in cfg.n_grid:
        accs = [results[(n, r)]["acceptance"] for r in range(cfg.replicates)]
        iacts = [results[(n, r)]["iact"] for r in range(cfg.replicates)]
        for r in range(cfg.replicates):
            run_rows.append((r, n, accs[r], iacts[r]))
        acc_med[n] = float(np.median(accs))
        iact_med[n] = float(np.median(iacts))
        acc_rows.append((n, acc_med[n]))
        iact_rows.append((n, iact_med[n]))
    files = {
        "acceptance.csv": _csv(("n", "acceptance"), acc_rows),
        "iact.csv": _csv(("n", "iact"), iact_rows),
        "acceptance_runs.csv": _csv(("replicate", "n", "acceptance", "iact"),
                                    run_rows),
    }
    files["acceptance.svg"] = _svg_line_plot(
        "pCN acceptance rate" + (" (p = n)" if supervised else " (p = %d)"
                                 % cfg.p),
        "n", "acceptance",
        [("", [float(n) for n, _ in acc_rows], [a for _, a in acc_rows])])
    metrics = {"acceptance": {str(n): acc_med[n] for n in cfg.n_grid},
               "iact": {str(n): iact_med[n] for n in cfg.n_grid}}
    seeds = [_seed_record(cfg, n, r) for n, r in pairs]
    return files, metrics, seeds


# Top level for pickling.
def _compare_worker(args):
    cfg_json, n, replicate = args
    cfg = ExperimentConfig.from_json(cfg_json)
    cl = _cloud(cfg, n, replicate)
    kn = _truncation(cfg, n)
    basis, _ = _basis(cfg, cl, kn)
    cont = ContinuumBasis(cfg.l_max)
    design = first_p_design(cfg.p)
    model = NoiseModel(cfg.noise, cfg.sigma)
    data = synthesize_data(truth_coefficients(cont), cont, cfg.t, design, cl,
                           model, seed=500 + cfg.seed + replicate)
    spec = PriorSpec(alpha=cfg.alpha, s=cfg.s, k_n=kn, m=cfg.m)
    orc = graph_posterior(data, basis, spec, cfg.t, cfg.sigma)
    grid = sphere_mc_grid(cfg.grid_size)
    push = knn_interpolate(orc.mean, cl, cfg.knn_k, grid.points)
    # Continuum prior truncated at the same harmonic count as the graph
    # prior, so the two posteriors see matching model classes.
    l_cont = 0
    while (l_cont + 2) ** 2 <= kn and l_cont < cfg.l_max:
        l_cont += 1
    co = continuum_posterior(data, ContinuumBasis(l_cont), spec, cfg.t,
                             cfg.sigma, grid.points, cl)
    return (n, replicate), float(l2_distance(push, co.mean))


def _run_compare(cfg, jobs):
    pairs = [(n, r) for n in cfg.n_grid for r in range(cfg.replicates)]
    args = [(cfg.to_json(), n, r) for n, r in pairs]
    results = dict(_run_jobs(_compare_worker, args, jobs))
    rows = [(r, n, results[(n, r)]) for n, r in pairs]
    medians = {n: float(np.median([results[(n, r)]
                                   for r in range(cfg.replicates)]))
               for n in cfg.n_grid}
    files = {"consistency.csv": _csv(("replicate", "n", "distance"), rows)}
    files["consistency.svg"] = _svg_line_plot(
        "graph vs continuum posterior mean", "n", "L2 distance",
        [("", [float(n) for n in cfg.n_grid],
          [medians[n] for n in cfg.n_grid])])
    metrics = {"median_distance": {str(n): medians[n] for n in cfg.n_grid}}
    return files, metrics, [_seed_record(cfg, n, r) for n, r in pairs]


def _run_prior_sample(cfg, jobs):
    cl = _cloud(cfg, cfg.n, 0)
    kn = _truncation(cfg, cfg.n)
    basis, _ = _basis(cfg, cl, kn)
    spec = PriorSpec(alpha=cfg.alpha, s=cfg.s, k_n=kn, m=cfg.m)
    draws = [sample_graph_prior(basis, spec, 700 + cfg.seed + j)
             for j in range(cfg.draws)]
    header = ["x", "y", "z"] + ["draw_%d" % j for j in range(cfg.draws)]
    cols = [cl.points[:, 0], cl.points[:, 1], cl.points[:, 2]]
    cols += [d.values for d in draws]
    files = {"prior_draws.csv": _csv(header, list(zip(*cols)))}
    return files, {}, [_seed_record(cfg, cfg.n, 0)]


_RUNNERS = {
    "spectra": _run_spectra,
    "regularity": _run_regularity,
    "posterior": _run_posterior,
    "acceptance-sweep": lambda cfg, jobs: _run_sweep(cfg, jobs, False),
    "supervised-sweep": lambda cfg, jobs: _run_sweep(cfg, jobs, True),
    "oracle-compare": _run_compare,
    "prior-sample": _run_prior_sample,
}


def run_experiment(cfg, out_dir=None, jobs=1):
    """Run one experiment; returns the manifest path.

    Results are computed fully before anything is written.  If writing
    fails partway, files written by this call are removed again.
    """
    errs = validate_config(cfg)
    if errs:
        raise ValueError("invalid config:\n  " + "\n  ".join(errs))
    out = out_dir if out_dir is not None else cfg.out
    start = time.time()
    files, metrics, seeds = _RUNNERS[cfg.kind](cfg, jobs)
    manifest = {
        "schema": SCHEMA_VERSION,
        "config": json.loads(cfg.to_json()),
        "kind": cfg.kind,
        "outputs": sorted(files),
        "seeds": seeds,
        "metrics": metrics,
        "versions": _versions(),
        "wall_time_s": round(time.time() - start, 3),
    }
    os.makedirs(out, exist_ok=True)
    written = []
    try:
        for name in sorted(files):
            path = os.path.join(out, name)
            written.append(path)       # before open: creation counts
            with open(path, "w") as fh:
                fh.write(files[name])
        path = os.path.join(out, "manifest.json")
        written.append(path)
        with open(path, "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except BaseException:
        for path in written:
            try:
                os.remove(path)
            except OSError:
                pass
        raise
    return os.path.join(out, "manifest.json")


def _versions():
    import platform

    import scipy

    return {
        "package": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
    }
