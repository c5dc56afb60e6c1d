"""Graph-based Bayesian semi-supervised learning on manifold point clouds.

Pipeline: sample or load a point cloud, build an epsilon-graph and its
Laplacian, truncate the spectrum, place a Gaussian series prior on the
retained eigenvectors, push it through a heat-equation forward map, observe
a few labels, and sample the posterior with pCN.  For Gaussian noise the
posterior is also available in closed form, which the sampler is checked
against.  The experiments module wraps the recurring studies behind JSON
configs and a CLI.
"""

__version__ = "0.1.0"

from .cloud import PointCloud, knn, load_csv, neighbors_within, sample_sphere, save_csv
from .graph import (
    GeometricGraph,
    GraphLaplacian,
    build_eps_graph,
    default_eps,
    kernel_weight,
    laplacian,
    sphere_calibration,
    unit_ball_volume,
)
from .spectral import (
    ContinuumBasis,
    SpectralBasis,
    eigendecompose,
    sphere_eigenvalue,
    sphere_harmonic,
    spectral_error,
)
from .prior import (
    UNTRUNCATED,
    CloudFunction,
    PriorSpec,
    default_truncation,
    dirichlet_energy_identity_factor,
    hs_seminorm,
    kl_tail_mass,
    oscillation,
    p_laplacian_energy,
    regularity_experiment,
    sample_continuum_prior,
    sample_graph_prior,
)
from .forward import (
    ObservationDesign,
    design_matrix,
    first_p_design,
    forward_observe,
    forward_observe_continuum,
    heat_continuum,
    heat_graph,
    observation_matrix,
    observe,
    observe_continuum,
)
from .likelihood import (
    AssumptionReport,
    LabeledData,
    NoiseModel,
    check_assumptions,
    full_potential,
    potential,
    potential_from_design_matrix,
    synthesize_data,
)
from .sampler import (
    ChainResult,
    SamplerConfig,
    acceptance_rate,
    empirical_average,
    iact,
    integrated_autocorr_time,
    pcn,
    posterior_mean,
    rwm,
)
from .oracle import (
    CovarianceKernels,
    ErrorReport,
    PosteriorSummary,
    compare,
    continuum_posterior,
    graph_posterior,
)
from .interpolate import (
    knn_interpolate,
    l2_distance,
    pushforward_chain,
    pushforward_summary,
    sphere_mc_grid,
)
from .experiments import (
    DEFAULT_TRUTH,
    ExperimentConfig,
    run_experiment,
    truth_coefficients,
    validate_config,
)
