from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from maxcorr.estimator.normal import normal_quantile, normal_upper_tail
from maxcorr.exceptions import InvalidParameterError


@dataclass(frozen=True)
class EstimatorAccumulator():
    """
    Running sums of the stabilized one-step estimator.

    The estimate is `sum_weighted / sum_inv_sigma` and the harmonic-mean
    scale is `terms / sum_inv_sigma`, so weights never need to be stored.
    """
    sum_weighted: float = 0.0
    sum_inv_sigma: float = 0.0
    terms: int = 0


@dataclass(frozen=True)
class EstimateInterval():
    """Point estimate with its two-sided Wald-type interval."""
    psi_hat: float
    sigma_bar: float
    ci_lower: float
    ci_upper: float
    alpha: float
    terms: int
    z: float
    p_value: float

    @property
    def half_width(self) -> float:
        return (self.ci_upper - self.ci_lower) / 2.0


def accumulate(
    acc: EstimatorAccumulator,
    plug_in: float,
    gradient_at_next: float,
    sigma_hat: float,
) -> EstimatorAccumulator:
    """
    Add one bias-corrected term to the running sums.

    Args:
        acc (EstimatorAccumulator): Current sums.
        plug_in (float): Plug-in estimate from the first j observations.
        gradient_at_next (float): Gradient at the first j observations,
            evaluated at observation j + 1.
        sigma_hat (float): Estimated standard deviation of the gradient,
            already floored above zero.

    Raises:
        InvalidParameterError: Raised if any input is non-finite or
            `sigma_hat` is not positive.

    Returns:
        EstimatorAccumulator: The updated sums.
    """
    if not (
        math.isfinite(plug_in)
        and math.isfinite(gradient_at_next)
        and math.isfinite(sigma_hat)
    ):
        raise InvalidParameterError(
            "Accumulator inputs must be finite, got: "
            f"{plug_in}, {gradient_at_next}, {sigma_hat}"
        )
    if sigma_hat <= 0.0:
        raise InvalidParameterError(f"sigma_hat must be positive: {sigma_hat}")
    return EstimatorAccumulator(
        acc.sum_weighted + (plug_in + gradient_at_next) / sigma_hat,
        acc.sum_inv_sigma + 1.0 / sigma_hat,
        acc.terms + 1,
    )


def finalize(acc: EstimatorAccumulator, alpha: float) -> EstimateInterval:
    """
    Turn running sums into the estimate and its 1 - `alpha` interval.

    Args:
        acc (EstimatorAccumulator): Sums with at least one term.
        alpha (float): Two-sided miscoverage level in (0, 1).

    Raises:
        InvalidParameterError: Raised if there are no terms or `alpha` is
            out of range.

    Returns:
        EstimateInterval: Estimate, harmonic-mean scale, interval, and the
            one-sided p-value for a non-positive parameter.
    """
    if acc.terms < 1:
        raise InvalidParameterError("Cannot finalize an empty accumulator.")
    if not 0.0 < alpha < 1.0:
        raise InvalidParameterError(f"Alpha must be in (0, 1): {alpha}")
    psi_hat = acc.sum_weighted / acc.sum_inv_sigma
    sigma_bar = acc.terms / acc.sum_inv_sigma
    root_terms = math.sqrt(acc.terms)
    z = normal_quantile(1.0 - alpha / 2.0)
    half_width = z * sigma_bar / root_terms
    return EstimateInterval(
        psi_hat=psi_hat,
        sigma_bar=sigma_bar,
        ci_lower=psi_hat - half_width,
        ci_upper=psi_hat + half_width,
        alpha=alpha,
        terms=acc.terms,
        z=z,
        p_value=normal_upper_tail(root_terms * psi_hat / sigma_bar),
    )


def weights(sigma_hats: Iterable[float]) -> np.ndarray:
    """
    Explicit per-term weights `sigma_bar / sigma_hat_j`; they sum to the
    number of terms.
    """
    inv = 1.0 / np.asarray(list(sigma_hats), dtype=float)
    sigma_bar = inv.size / inv.sum()
    return sigma_bar * inv
