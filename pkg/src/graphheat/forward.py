"""Heat-semigroup forward maps and observation maps; their composition G = O o F.

The heat map damps KL coefficients by exp(-lambda_i t) and acts only on the
retained eigenspan; inputs with components outside it are projected first and
the residual recorded.  Observations are pointwise evaluation at the labeled
points (the default) or averages over closed delta-balls.
"""

from dataclasses import dataclass, field

import numpy as np

from .cloud import neighbors_within
from .prior import CloudFunction

POINTWISE = "pointwise"
BALL = "ball"


@dataclass(frozen=True)
class ObservationDesign:
    """Which nodes are labeled and how they are observed.

    labeled holds distinct node indices (the convention throughout is that
    labeled points come first in the cloud); mode is "pointwise" or "ball";
    delta is the ball radius, required in ball mode.
    """

    labeled: tuple
    mode: str = POINTWISE
    delta: float = None

    def __post_init__(self):
        object.__setattr__(self, "labeled", tuple(int(i) for i in self.labeled))
        if len(self.labeled) < 1:
            raise ValueError("need at least one labeled index")
        if len(set(self.labeled)) != len(self.labeled):
            raise ValueError("labeled indices must be distinct")
        if any(i < 0 for i in self.labeled):
            raise ValueError("labeled indices must be nonnegative")
        if self.mode not in (POINTWISE, BALL):
            raise ValueError("mode must be %r or %r" % (POINTWISE, BALL))
        if self.mode == BALL and (self.delta is None or self.delta <= 0):
            raise ValueError("ball mode needs delta > 0")

    @property
    def p(self):
        return len(self.labeled)


def first_p_design(p, mode=POINTWISE, delta=None):
    """The default design: the first p cloud indices are labeled."""
    return ObservationDesign(tuple(range(p)), mode=mode, delta=delta)


def heat_graph(u, basis, t):
    """Apply exp(-t * Laplacian) on the retained span: a_i -> exp(-lambda_i t) a_i.

    Nodal-only inputs are projected onto the basis first; the projection
    residual norm (in L^2(gamma_n)) is stored on the result.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if u.coefficients is not None and u.basis is basis:
        coeffs = u.coefficients
        residual = 0.0
    else:
        coeffs = basis.project(u.values)
        recon = basis.synthesize(coeffs)
        residual = float(np.sqrt(np.mean((u.values - recon) ** 2)))
    damped = coeffs * np.exp(-basis.eigenvalues[: coeffs.shape[0]] * t)
    out = CloudFunction.from_coefficients(basis, damped)
    out.projection_residual = residual
    return out


def heat_continuum(coeffs, cont, t):
    """Damp harmonic coefficients by exp(-l(l+1) t)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    coeffs = np.asarray(coeffs, dtype=float)
    return coeffs * np.exp(-cont.eigenvalues[: coeffs.shape[0]] * t)


def observation_matrix(design, cloud):
    """The p x n matrix of the observation map O on nodal values.

    Pointwise rows are indicator rows; ball rows average the nodal values over
    the closed delta-ball around each labeled point (the center is always in
    its own ball, so rows are never empty).
    """
    p, n = design.p, cloud.n
    if any(i >= n for i in design.labeled):
        raise ValueError("labeled index out of range for cloud of size %d" % n)
    mat = np.zeros((p, n))
    if design.mode == POINTWISE:
        for row, j in enumerate(design.labeled):
            mat[row, j] = 1.0
    else:
        for row, j in enumerate(design.labeled):
            ball = neighbors_within(cloud, j, design.delta)
            mat[row, ball] = 1.0 / len(ball)
    return mat


def observe(u, design, cloud):
    """Apply the observation map to a cloud function: a p-vector of reals."""
    values = u.values if isinstance(u, CloudFunction) else np.asarray(u, dtype=float)
    if design.mode == POINTWISE:
        idx = list(design.labeled)
        if max(idx) >= values.shape[0]:
            raise ValueError("labeled index out of range")
        return values[idx]
    return observation_matrix(design, cloud) @ values


def _cap_samples(center, delta, n_samples, rng):
    # rejection-sample uniform sphere points within ambient distance delta
    accepted = []
    need = n_samples
    # chord delta corresponds to cap fraction delta^2/4 of the sphere area
    frac = min(1.0, delta * delta / 4.0)
    while need > 0:
        batch = max(1000, int(1.2 * need / max(frac, 1e-6)))
        g = rng.standard_normal((batch, 3))
        g /= np.linalg.norm(g, axis=1)[:, None]
        keep = g[np.linalg.norm(g - center, axis=1) <= delta]
        if keep.shape[0] > need:
            keep = keep[:need]
        accepted.append(keep)
        need -= keep.shape[0]
    return np.concatenate(accepted, axis=0)


def observe_continuum(coeffs, cont, design, cloud, seed=0, n_samples=10**4,
                      with_stderr=False):
    """Observe a harmonic expansion at the labeled cloud points.

    Pointwise mode evaluates the expansion exactly.  Ball mode Monte Carlo
    averages it over uniform samples of the spherical cap B_delta(x_j) (the
    normalized-integral observation); the standard error of each average is
    returned when with_stderr is set.
    """
    pts = cloud.points[list(design.labeled)]
    if design.mode == POINTWISE:
        vals = cont.synthesize(coeffs, pts)
        return (vals, np.zeros_like(vals)) if with_stderr else vals
    rng = np.random.default_rng(seed)
    vals = np.empty(design.p)
    errs = np.empty(design.p)
    for row in range(design.p):
        samples = _cap_samples(pts[row], design.delta, n_samples, rng)
        f = cont.synthesize(coeffs, samples)
        vals[row] = f.mean()
        errs[row] = f.std(ddof=1) / np.sqrt(n_samples)
    return (vals, errs) if with_stderr else vals


def design_matrix(basis, t, design, cloud):
    """The p x k matrix M with M[j, i] = exp(-lambda_i t) * (O psi_i)_j.

    Composing observation with the heat map, so that G(u) = M a for KL
    coefficient vectors a.  Computed once and shared by all chains.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    obs = observation_matrix(design, cloud) @ basis.eigenvectors
    return obs * np.exp(-basis.eigenvalues * t)[None, :]


def forward_observe(u, basis, t, design, cloud):
    """The forward map G(u) = O(F^t u) on the graph side."""
    return observe(heat_graph(u, basis, t), design, cloud)


def forward_observe_continuum(coeffs, cont, t, design, cloud, **kw):
    """The forward map G(u) = O(F^t u) on the continuum side."""
    return observe_continuum(heat_continuum(coeffs, cont, t), cont, design, cloud, **kw)
