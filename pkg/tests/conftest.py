import numpy as np
import pytest

from sewi.spectral import Grid, SpectralField


def random_field(grid: Grid, rng, decay: float = 2.0) -> SpectralField:
    """Random field with algebraically decaying spectrum (smooth-ish)."""
    weights = 1.0
    for l in grid.mode_numbers:
        w = (1.0 + np.abs(l, dtype=float)) ** (-decay)
        weights = np.multiply.outer(weights, w) if np.ndim(weights) else w
    if grid.dims == 2 and np.ndim(weights) == 1:
        weights = np.multiply.outer(weights, weights)
    c = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    return SpectralField(grid, c * weights)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def grid1d():
    return Grid(-16.0, 16.0, 64)


@pytest.fixture
def grid2d():
    return Grid((-8.0, -8.0), (8.0, 8.0), (16, 16))
