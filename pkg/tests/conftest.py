from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pytest
from scipy.stats import norm

from maxcorr.screen import Observation


def pytest_addoption(parser):
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="Run long Monte Carlo and timing checks.",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@dataclass(frozen=True)
class ReferenceResult():
    psi_hat: float
    sigma_bar: float
    ci_lower: float
    ci_upper: float
    k: int
    m: int


def _pair_stats(x: np.ndarray, y: np.ndarray, var_floor: float):
    mean_x, mean_y = x.mean(axis=0), y.mean()
    var_x = ((x - mean_x) ** 2).mean(axis=0)
    var_y = ((y - mean_y) ** 2).mean()
    cov = ((x - mean_x) * (y - mean_y)[:, None]).mean(axis=0)
    corr = np.zeros(x.shape[1])
    if var_y > var_floor:
        usable = var_x > var_floor
        corr[usable] = cov[usable] / np.sqrt(var_x[usable] * var_y)
    return mean_x, mean_y, var_x, var_y, np.clip(corr, -1.0, 1.0)


def _reference_chunks(ell_n: int, n: int, chunk_count: int | None):
    if chunk_count is None:
        return [(j, j + 1) for j in range(ell_n, n)]
    count = min(chunk_count, n - ell_n)
    size = (n - ell_n) // count
    starts = [ell_n + i * size for i in range(count)]
    return list(zip(starts, starts[1:] + [n]))


def reference_est_psi(
    x: np.ndarray,
    y: np.ndarray,
    ell_n: int,
    alpha: float = 0.05,
    chunk_count: int | None = None,
    sigma_floor_sq: float = 1e-4,
    var_floor: float = 1e-12,
) -> ReferenceResult:
    """
    Recompute every quantity from the raw rows at each refit: centered
    moments, the selected index, and the gradient variance as the plain
    average of squared gradients over the rows seen so far. Quadratic in n.
    """
    numerator = 0.0
    inv_sigma = 0.0
    terms = 0
    k = m = None
    for start, stop in _reference_chunks(ell_n, x.shape[0], chunk_count):
        xs, ys = x[:start], y[:start]
        mean_x, mean_y, var_x, var_y, corr = _pair_stats(xs, ys, var_floor)
        k = int(np.argmax(np.abs(corr)))
        m = -1 if corr[k] < 0 else 1
        degenerate = var_x[k] <= var_floor or var_y <= var_floor
        sd_x, sd_y, rho = np.sqrt(var_x[k]), np.sqrt(var_y), corr[k]

        def gradient(xk, yv):
            if degenerate:
                return np.zeros_like(np.asarray(xk, dtype=float))
            dx = (xk - mean_x[k]) / sd_x
            dy = (yv - mean_y) / sd_y
            return m * (dx * dy - 0.5 * rho * (dx * dx + dy * dy))

        second_moment = float(np.mean(gradient(xs[:, k], ys) ** 2))
        sigma_hat = np.sqrt(max(second_moment, sigma_floor_sq))
        plug_in = m * rho
        for i in range(start, stop):
            numerator += (plug_in + float(gradient(x[i, k], y[i]))) / sigma_hat
            inv_sigma += 1.0 / sigma_hat
            terms += 1
    psi_hat = numerator / inv_sigma
    sigma_bar = terms / inv_sigma
    half_width = norm.ppf(1 - alpha / 2) * sigma_bar / np.sqrt(terms)
    return ReferenceResult(
        psi_hat,
        sigma_bar,
        psi_hat - half_width,
        psi_hat + half_width,
        k,
        m,
    )


def observations(x: np.ndarray, y: np.ndarray):
    for row, outcome in zip(x, y):
        yield Observation(row, float(outcome))


def make_dataset(
    rng: np.random.Generator,
    n: int,
    p: int,
    signal: float = 0.0,
) -> tuple[np.ndarray, np.ndarray]:
    x = rng.standard_normal((n, p))
    y = signal * x[:, 0] + rng.standard_normal(n)
    return x, y


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def reference():
    return reference_est_psi


@pytest.fixture
def stream_of():
    return observations


@pytest.fixture
def dataset():
    return make_dataset


@pytest.fixture
def write_csv(tmp_path):
    def write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text)
        return path

    return write
