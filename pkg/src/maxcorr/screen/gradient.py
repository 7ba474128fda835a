from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from maxcorr.constants import DEFAULT_SIGMA_FLOOR_SQ, DEFAULT_VAR_FLOOR
from maxcorr.exceptions import InvalidParameterError
from maxcorr.screen.moments import (
    MomentState,
    Observation,
    correlations,
)


LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Index():
    """
    Target of the screen: predictor position `k` (0-based) and sign `m`.
    The indexed parameter is `m * Corr(X_k, Y)`.
    """
    k: int
    m: int = 1

    def __post_init__(self) -> None:
        if self.k < 0:
            raise InvalidParameterError(
                f"Predictor index is negative: {self.k}"
            )
        if self.m not in (-1, 1):
            raise InvalidParameterError(f"Sign must be -1 or 1, got: {self.m}")


@dataclass(frozen=True)
class CorrelationSummary():
    """
    Means, standard deviations and correlation of one (X_k, Y) pair. This is
    all the gradient and the remainder need from a distribution.
    """
    mean_x: float
    mean_y: float
    sd_x: float
    sd_y: float
    corr: float
    degenerate: bool = False

    def psi(self, m: int) -> float:
        return m * self.corr

    def gradient(self, m: int, x_k, y):
        """
        Canonical gradient of `m * Corr(X_k, Y)` at this distribution,
        evaluated at `(x_k, y)`. Accepts scalars or equal-length arrays.
        Zero when the summary is degenerate.
        """
        if self.degenerate:
            return 0.0 * (np.asarray(x_k) + np.asarray(y))
        dx = (x_k - self.mean_x) / self.sd_x
        dy = (y - self.mean_y) / self.sd_y
        return m * (dx * dy - 0.5 * self.corr * (dx * dx + dy * dy))


def select_index(corr: np.ndarray) -> Index:
    """
    Index maximizing `m * corr[k]`: largest absolute correlation, first
    position on ties, positive sign when the correlation is zero.
    """
    k = int(np.argmax(np.abs(corr)))
    return Index(k, -1 if corr[k] < 0 else 1)


def maximizer(h: MomentState, var_floor: float = DEFAULT_VAR_FLOOR) -> Index:
    """
    Index with the largest signed correlation under the state `h`.

    Args:
        h (MomentState): Moment state with j >= 2.
        var_floor (float, optional): Degeneracy threshold on variances.
            Defaults to 1e-12.

    Returns:
        Index: The selected `(k, m)`.
    """
    return select_index(correlations(h, var_floor).corr)


def summarize(
    h: MomentState,
    k: int,
    var_floor: float = DEFAULT_VAR_FLOOR,
) -> CorrelationSummary:
    """Read the (X_k, Y) summary out of a moment state in O(1)."""
    mean_x = h.moment(1, 0, k)
    mean_y = h.mean_y
    var_x = h.moment(2, 0, k) - mean_x * mean_x
    var_y = h.moment(0, 2, k) - mean_y * mean_y
    degenerate = var_x <= var_floor or var_y <= var_floor
    sd_x = math.sqrt(max(var_x, 0.0))
    sd_y = math.sqrt(max(var_y, 0.0))
    corr = 0.0
    if not degenerate:
        cov = h.moment(1, 1, k) - mean_x * mean_y
        corr = min(max(cov / (sd_x * sd_y), -1.0), 1.0)
    return CorrelationSummary(mean_x, mean_y, sd_x, sd_y, corr, degenerate)


def calc_d(
    h: MomentState,
    d: Index,
    o: Observation,
    var_floor: float = DEFAULT_VAR_FLOOR,
) -> float:
    """
    Canonical gradient of the parameter indexed by `d`, taken at the
    empirical distribution held by `h` and evaluated at observation `o`.

    Args:
        h (MomentState): Moment state of the first j observations.
        d (Index): Selected index.
        o (Observation): Point to evaluate at, usually observation j + 1.
        var_floor (float, optional): Degeneracy threshold on variances.
            Defaults to 1e-12.

    Returns:
        float: Gradient value, or 0.0 when X_k or Y has (near) zero variance.
    """
    summary = summarize(h, d.k, var_floor)
    if summary.degenerate:
        LOGGER.debug(f"Degenerate variance for predictor {d.k} at j={h.j}.")
        return 0.0
    return float(summary.gradient(d.m, float(o.x[d.k]), float(o.y)))


def _central_moment(
    h: MomentState,
    k: int,
    a: int,
    b: int,
    mean_x: float,
    mean_y: float,
) -> float:
    # E[(X_k - mean_x)^a (Y - mean_y)^b] expanded binomially over raw moments.
    total = 0.0
    for r in range(a + 1):
        for s in range(b + 1):
            total += (
                math.comb(a, r) * math.comb(b, s)
                * h.moment(r, s, k)
                * (-mean_x) ** (a - r) * (-mean_y) ** (b - s)
            )
    return total


def gradient_second_moment(
    h: MomentState,
    k: int,
    var_floor: float = DEFAULT_VAR_FLOOR,
) -> float:
    """
    P_j D^d(P_j)^2 for d = (k, +/-1), computed in O(1) from the stored
    moments. The gradient has mean zero under P_j, so this is its variance.
    Returns 0.0 for degenerate variances.
    """
    summary = summarize(h, k, var_floor)
    if summary.degenerate:
        return 0.0
    mean_x, mean_y = summary.mean_x, summary.mean_y
    sd_x, sd_y, rho = summary.sd_x, summary.sd_y, summary.corr
    var_x, var_y = sd_x * sd_x, sd_y * sd_y

    def central(a: int, b: int) -> float:
        return _central_moment(h, k, a, b, mean_x, mean_y)

    return (
        (2.0 + rho * rho) / (2.0 * var_x * var_y) * central(2, 2)
        + rho * rho / 4.0 * (
            central(4, 0) / (var_x * var_x) + central(0, 4) / (var_y * var_y)
        )
        - rho / (sd_x ** 3 * sd_y) * central(3, 1)
        - rho / (sd_x * sd_y ** 3) * central(1, 3)
    )


def calc_sig_hat(
    h: MomentState,
    d: Index,
    sigma_floor_sq: float = DEFAULT_SIGMA_FLOOR_SQ,
    var_floor: float = DEFAULT_VAR_FLOOR,
) -> float:
    """
    Estimated standard deviation of the gradient for index `d` under the
    empirical distribution held by `h`, floored at `sqrt(sigma_floor_sq)`.

    Args:
        h (MomentState): Moment state with j >= 2.
        d (Index): Selected index; the sign doesn't affect the result.
        sigma_floor_sq (float, optional): Lower truncation of the variance.
            Defaults to 1e-4.
        var_floor (float, optional): Degeneracy threshold on variances.
            Defaults to 1e-12.

    Returns:
        float: sqrt(max(P_j D^2, sigma_floor_sq)).
    """
    second_moment = gradient_second_moment(h, d.k, var_floor)
    if second_moment < sigma_floor_sq:
        LOGGER.debug(
            f"Gradient variance {second_moment} floored at {sigma_floor_sq}"
            f" (j={h.j}, k={d.k})."
        )
    return math.sqrt(max(second_moment, sigma_floor_sq))


def remainder(
    p_summary: CorrelationSummary,
    p0_summary: CorrelationSummary,
    d: Index,
) -> float:
    """
    Exact second-order remainder of the first-order expansion of
    `m * Corr(X_k, Y)` around `P` (summarized by `p_summary`), with truth
    `P_0` (summarized by `p0_summary`), so that
    Psi(P) - Psi(P_0) + E_{P_0}[D(P)] == remainder(P, P_0, d).

    Args:
        p_summary (CorrelationSummary): Summary of the estimate P.
        p0_summary (CorrelationSummary): Summary of the truth P_0.
        d (Index): Index; only the sign `m` is used, both summaries are
            already for predictor `d.k`.

    Raises:
        InvalidParameterError: Raised if `p_summary` has a zero standard
            deviation.

    Returns:
        float: The remainder.
    """
    if p_summary.sd_x <= 0.0 or p_summary.sd_y <= 0.0:
        raise InvalidParameterError(
            "Remainder needs positive standard deviations under P."
        )
    sd_x, sd_y, rho = p_summary.sd_x, p_summary.sd_y, p_summary.corr
    sd0_x, sd0_y, rho0 = p0_summary.sd_x, p0_summary.sd_y, p0_summary.corr
    shift_x = p_summary.mean_x - p0_summary.mean_x
    shift_y = p_summary.mean_y - p0_summary.mean_y
    scale = sd_x * sd_y
    value = (
        (scale - sd0_x * sd0_y) * (rho - rho0) / scale
        + shift_x * shift_y / scale
        - rho / 2.0 * (
            shift_x * shift_x / (sd_x * sd_x)
            + shift_y * shift_y / (sd_y * sd_y)
        )
        - rho / (2.0 * scale * scale) * (sd_x * sd0_y - sd0_x * sd_y) ** 2
    )
    return d.m * value
