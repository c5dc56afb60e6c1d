import numpy as np
import pytest
from hypothesis import settings

from graphheat import (
    PointCloud,
    build_eps_graph,
    default_eps,
    eigendecompose,
    laplacian,
    sample_sphere,
)

settings.register_profile("ci", deadline=None, max_examples=50)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def sphere120():
    return sample_sphere(120, seed=3)


@pytest.fixture(scope="session")
def graph120(sphere120):
    return build_eps_graph(sphere120, default_eps(120, 2, 2.0))


@pytest.fixture(scope="session")
def basis120(graph120):
    # k=20 keeps every eigensolve in the suite cheap
    return eigendecompose(laplacian(graph120), 20)


@pytest.fixture(scope="session")
def line_cloud():
    # three collinear points, spacings 1 and 2; handy for hand-checked
    # neighborhoods
    pts = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [3.0, 0.0, 0.0]])
    return PointCloud(pts, 1)
