"""Noise models, misfit potentials, data synthesis, and growth-condition checks.

Two observation models:
  gaussian  phi(w) = |y - w|^2 / (2 sigma^2)
  probit    phi(w) = -sum_i log Psi(y_i w_i; sigma),  Psi the N(0, sigma^2) CDF
The full potential is the misfit composed with the forward map G.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr

from . import forward

GAUSSIAN = "gaussian"
PROBIT = "probit"


@dataclass(frozen=True)
class NoiseModel:
    kind: str
    sigma: float

    def __post_init__(self):
        if self.kind not in (GAUSSIAN, PROBIT):
            raise ValueError("kind must be %r or %r" % (GAUSSIAN, PROBIT))
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")


@dataclass(frozen=True)
class LabeledData:
    """Label vector with the design and synthesis parameters it came from."""

    y: np.ndarray
    design: forward.ObservationDesign
    t: float
    kind: str
    sigma: float
    seed: int = None

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float)
        y.setflags(write=False)
        object.__setattr__(self, "y", y)
        if y.shape != (self.design.p,):
            raise ValueError("label vector length must match the design")
        if self.kind == PROBIT and not np.all(np.abs(y) == 1.0):
            raise ValueError("probit labels must be exactly +-1")


def potential(w, data, model):
    """Misfit phi^y(w) of predicted observations w against the labels.

    The probit branch evaluates log Psi through a stable log-CDF, so very
    negative margins give large finite potentials instead of overflowing.
    """
    w = np.asarray(w, dtype=float)
    y = data.y
    if w.shape != y.shape:
        raise ValueError("prediction/label dimension mismatch")
    if model.kind == GAUSSIAN:
        r = y - w
        return float(r @ r) / (2.0 * model.sigma**2)
    return float(-np.sum(log_ndtr(y * w / model.sigma)))


def full_potential(u, basis, data, model, cloud):
    """Phi(u) = phi^y(G(u)) with G = observation after heat flow at data.t."""
    w = forward.forward_observe(u, basis, data.t, data.design, cloud)
    return potential(w, data, model)


def potential_from_design_matrix(mat, data, model):
    """Closure a -> phi^y(M a) for coefficient-space samplers.

    mat is the p x k design matrix of G; this is the fast path the chains use.
    """
    if model.kind == GAUSSIAN:
        y = data.y
        inv_two_sigma2 = 1.0 / (2.0 * model.sigma**2)

        def phi(a):
            r = y - mat @ a
            return float(r @ r) * inv_two_sigma2

        return phi

    y_over_sigma = data.y / model.sigma

    def phi(a):
        return float(-np.sum(log_ndtr(y_over_sigma * (mat @ a))))

    return phi


def synthesize_data(u_truth, carrier, t, design, cloud, model, seed):
    """Draw labels from the model at the forward image of a ground truth.

    gaussian: y = G(u) + eta, eta ~ N(0, sigma^2 I).  probit: y is the sign of
    the same noisy vector, with exact zeros mapped to +1.  u_truth is a
    CloudFunction when carrier is a graph basis, or a harmonic coefficient
    vector when carrier is a continuum basis.
    """
    if hasattr(carrier, "labels"):  # continuum basis
        w = forward.forward_observe_continuum(u_truth, carrier, t, design, cloud)
    else:
        w = forward.forward_observe(u_truth, carrier, t, design, cloud)
    rng = np.random.default_rng(seed)
    noisy = w + model.sigma * rng.standard_normal(w.shape[0])
    if model.kind == GAUSSIAN:
        y = noisy
    else:
        y = np.where(noisy >= 0.0, 1.0, -1.0)
    return LabeledData(y, design, float(t), model.kind, model.sigma, seed)


@dataclass
class AssumptionReport:
    """Numeric evidence for the growth conditions the sampler theory assumes.

    part1_c: the smallest observed phi(v) - phi(w) over proposal-coupled pairs
    |w - sqrt(1-beta^2) v| <= K (finite c is the requirement).  part2_L: the
    largest observed ratio |phi(v1)-phi(v2)| / (max(|v1|,|v2|,1)|v1-v2|).
    violations collects non-finite evaluations.
    """

    part1_c: float
    part2_L: float
    samples: int
    violations: int


def check_assumptions(data, model, beta, k_bound=5.0, v_scale=5.0,
                      samples=2000, seed=0):
    """Randomized-grid check of the local-Lipschitz growth conditions."""
    if not 0 < beta <= 1:
        raise ValueError("beta must be in (0, 1]")
    rng = np.random.default_rng(seed)
    p = data.design.p
    contraction = np.sqrt(1.0 - beta**2)
    part1 = np.inf
    part2 = 0.0
    violations = 0
    for _ in range(samples):
        v = v_scale * rng.standard_normal(p)
        shift = rng.standard_normal(p)
        shift *= rng.uniform(0.0, k_bound) / max(np.linalg.norm(shift), 1e-300)
        w = contraction * v + shift
        pv, pw = potential(v, data, model), potential(w, data, model)
        if not (np.isfinite(pv) and np.isfinite(pw)):
            violations += 1
            continue
        part1 = min(part1, pv - pw)
        v2 = v_scale * rng.standard_normal(p)
        pv2 = potential(v2, data, model)
        gap = np.linalg.norm(v - v2)
        if gap > 1e-12 and np.isfinite(pv2):
            grow = max(np.linalg.norm(v), np.linalg.norm(v2), 1.0)
            part2 = max(part2, abs(pv - pv2) / (grow * gap))
    return AssumptionReport(float(part1), float(part2), samples, violations)
