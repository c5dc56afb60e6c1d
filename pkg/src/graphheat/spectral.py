"""Low-spectrum eigendecomposition of graph Laplacians and the sphere reference.

Graph eigenpairs are normalized in L^2(gamma_n), the empirical-measure pairing
<u, v> = (1/n) sum_i u_i v_i, so that coefficient conventions line up with the
continuum side.  The continuum reference is the unit 2-sphere: eigenvalues
l(l+1) with multiplicity 2l+1, real spherical harmonics normalized against the
uniform probability measure.
"""

import numpy as np
from scipy import linalg, sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh
from scipy.special import gammaln, lpmv


class SpectralBasis:
    """k ascending eigenpairs (lambda_i, psi_i) of a graph Laplacian.

    Eigenvectors are columns of a (n, k) array, orthonormal under the
    (1/n)-weighted pairing (Euclidean norm sqrt(n)).  Sign convention: the
    entry of largest magnitude in each eigenvector is positive, ties broken
    by lowest index.
    """

    def __init__(self, eigenvalues, eigenvectors):
        self.eigenvalues = np.asarray(eigenvalues, dtype=float)
        self.eigenvectors = np.asarray(eigenvectors, dtype=float)
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    @property
    def count(self):
        return self.eigenvalues.shape[0]

    @property
    def n(self):
        return self.eigenvectors.shape[0]

    def project(self, values):
        """Coefficients a_i = <u, psi_i> in L^2(gamma_n)."""
        return self.eigenvectors.T @ np.asarray(values, dtype=float) / self.n

    def synthesize(self, coeffs):
        """Nodal values sum_i a_i psi_i for a coefficient vector of length <= k."""
        coeffs = np.asarray(coeffs, dtype=float)
        k = coeffs.shape[0]
        if k > self.count:
            raise ValueError("coefficient vector longer than basis")
        return self.eigenvectors[:, :k] @ coeffs


def _fix_signs(vecs):
    # largest-magnitude entry positive; np.argmax takes the lowest index on ties
    for j in range(vecs.shape[1]):
        lead = np.argmax(np.abs(vecs[:, j]))
        if vecs[lead, j] < 0:
            vecs[:, j] = -vecs[:, j]
    return vecs


def eigendecompose(lap, k, method="dense"):
    """The k smallest eigenpairs of a graph Laplacian, L^2(gamma_n)-orthonormal.

    method="dense" (default) runs a full symmetric solver on the dense matrix,
    which is exact and fast at n <= 3000.  method="iterative" uses shift-invert
    Lanczos and is cross-checked against the dense path in the test suite.
    """
    n = lap.n
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n, got k=%d n=%d" % (k, n))
    if method == "dense" or k == n:
        vals, vecs = linalg.eigh(lap.dense(), subset_by_index=[0, k - 1])
    elif method == "iterative":
        a = lap.matrix.tocsc()
        # shift below zero keeps A - sigma*I positive definite despite the null mode
        scale = a.diagonal().sum() / n
        sigma = -1e-3 * (scale + 1.0)
        try:
            vals, vecs = eigsh(a, k=k, sigma=sigma, which="LM")
        except ArpackNoConvergence as err:
            raise RuntimeError(
                "iterative eigensolver converged only %d of %d pairs"
                % (len(err.eigenvalues), k)
            ) from err
        order = np.argsort(vals)
        vals = vals[order]
        vecs = vecs[:, order]
    else:
        raise ValueError("unknown method %r" % (method,))
    # snap solver noise around the null modes to exact zero
    tiny = 1e-12 * max(1.0, float(abs(vals[-1])))
    vals = np.where(np.abs(vals) < tiny, 0.0, vals)
    vecs = _fix_signs(vecs * np.sqrt(n))
    return SpectralBasis(vals, vecs)


def sphere_eigenvalue(l):
    """Laplace-Beltrami eigenvalue and multiplicity on S^2: (l(l+1), 2l+1)."""
    if l < 0:
        raise ValueError("degree l must be >= 0")
    return float(l * (l + 1)), 2 * l + 1


def _harmonic_norm(l, order):
    m = abs(order)
    if m == 0:
        return np.sqrt(2.0 * l + 1.0)
    return np.sqrt(2.0 * (2 * l + 1) * np.exp(gammaln(l - m + 1) - gammaln(l + m + 1)))


def _eval_harmonic(l, order, z, phi):
    m = abs(order)
    p = lpmv(m, l, z)
    if order > 0:
        return _harmonic_norm(l, order) * p * np.cos(m * phi)
    if order < 0:
        return _harmonic_norm(l, order) * p * np.sin(m * phi)
    return _harmonic_norm(l, 0) * p


def _check_on_sphere(pts):
    norms = np.linalg.norm(pts, axis=-1)
    if np.any(np.abs(norms - 1.0) > 1e-9):
        raise ValueError("point not on the unit sphere (|norm - 1| > 1e-9)")


def sphere_harmonic(l, order, point):
    """Real spherical harmonic at a unit 3-vector, unit norm in L^2(gamma).

    gamma is the uniform probability measure, so these are the standard
    orthonormal harmonics scaled by sqrt(4*pi); the degree-0 function is
    identically 1.
    """
    if abs(order) > l:
        raise ValueError("|order| must be <= l")
    pt = np.asarray(point, dtype=float)
    _check_on_sphere(pt)
    z = np.clip(pt[..., 2], -1.0, 1.0)
    phi = np.arctan2(pt[..., 1], pt[..., 0])
    return float(_eval_harmonic(l, order, z, phi))


class ContinuumBasis:
    """All real spherical harmonics up to degree l_max, flattened by degree.

    labels[i] = (l, order) with orders -l..l inside each degree; eigenvalues
    are l(l+1) repeated 2l+1 times, ascending.
    """

    def __init__(self, l_max):
        if l_max < 0:
            raise ValueError("l_max must be >= 0")
        self.l_max = int(l_max)
        self.labels = [
            (l, order) for l in range(l_max + 1) for order in range(-l, l + 1)
        ]
        self.eigenvalues = np.array([float(l * (l + 1)) for l, _ in self.labels])
        self.eigenvalues.setflags(write=False)

    @property
    def count(self):
        return len(self.labels)

    def evaluate(self, points):
        """Matrix of harmonic values, one row per point, one column per label."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        _check_on_sphere(pts)
        z = np.clip(pts[:, 2], -1.0, 1.0)
        phi = np.arctan2(pts[:, 1], pts[:, 0])
        out = np.empty((pts.shape[0], self.count))
        for i, (l, order) in enumerate(self.labels):
            out[:, i] = _eval_harmonic(l, order, z, phi)
        return out

    def synthesize(self, coeffs, points):
        """Evaluate sum_i a_i psi_i at the given sphere points."""
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape[0] != self.count:
            raise ValueError("expected %d coefficients" % self.count)
        return self.evaluate(points) @ coeffs


def spectral_error(basis, cont, count):
    """Relative eigenvalue errors |1 - lambda_i^n / lambda_i| for i = 2..count.

    Index 1 is excluded since both sides have a zero eigenvalue there.  Counts
    are 1-based to match the ascending eigenvalue numbering.
    """
    if count > basis.count or count > cont.count:
        raise ValueError("count exceeds available eigenvalues")
    lam_graph = basis.eigenvalues[1:count]
    lam_cont = cont.eigenvalues[1:count]
    return np.abs(1.0 - lam_graph / lam_cont)
