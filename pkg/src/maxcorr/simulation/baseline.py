import numpy as np
from scipy.stats import t as t_dist

from maxcorr.exceptions import InvalidParameterError
from maxcorr.screen import MomentState, correlations


def correlation_p_values(corr: np.ndarray, n: int) -> np.ndarray:
    """
    Two-sided p-values of the usual t-test for zero correlation,
    t = r sqrt((n - 2) / (1 - r^2)) on n - 2 degrees of freedom.
    A zero correlation (including degenerate columns) gets p-value 1.
    """
    r = np.abs(np.asarray(corr, dtype=float))
    df = n - 2
    p_values = np.zeros_like(r)
    usable = r < 1.0
    t_stat = r[usable] * np.sqrt(df / (1.0 - r[usable] ** 2))
    p_values[usable] = np.minimum(2.0 * t_dist.sf(t_stat, df), 1.0)
    return p_values


def bonferroni_from_correlations(
    corr: np.ndarray,
    n: int,
    alpha: float,
) -> bool:
    """Reject if any correlation's p-value is at most `alpha / p`."""
    if n < 3:
        raise InvalidParameterError(f"Need at least 3 rows, got: {n}")
    p_values = correlation_p_values(corr, n)
    return bool(p_values.min() <= alpha / p_values.shape[0])


def bonferroni_t_test(data: np.ndarray, alpha: float) -> bool:
    """
    Bonferroni-corrected t-test of no correlation between the outcome and
    any predictor.

    Args:
        data (np.ndarray): Matrix of shape (n, p + 1), outcome in the last
            column.
        alpha (float): Family-wise level.

    Raises:
        InvalidParameterError: Raised if there are fewer than 3 rows or no
            predictors.

    Returns:
        bool: True if the null is rejected.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[1] < 2:
        raise InvalidParameterError(
            f"Expected an (n, p + 1) matrix, got shape {data.shape}"
        )
    if data.shape[0] < 3:
        raise InvalidParameterError(
            f"Need at least 3 rows, got: {data.shape[0]}"
        )
    moments = MomentState.from_arrays(data[:, :-1], data[:, -1])
    return bonferroni_from_correlations(
        correlations(moments).corr,
        data.shape[0],
        alpha,
    )
