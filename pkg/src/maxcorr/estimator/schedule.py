import math

from maxcorr.constants import DEFAULT_EPSILON, MIN_SAMPLE_SIZE
from maxcorr.exceptions import InvalidParameterError


def compute_ell_n(n: int, p: int, epsilon: float = DEFAULT_EPSILON) -> int:
    """
    Burn-in length: how many observations are absorbed into the moment state
    before the first estimator term is accumulated.

    Uses max{(log max{n, p})^(1+eps), n exp(-beta_n^(-2+eps))} with
    beta_n^2 = log(p) / sqrt(n), rounded up and clamped to [2, n - 2] so
    the moment state has two observations and at least one term remains.

    Args:
        n (int): Sample size, at least 4.
        p (int): Number of predictors, at least 1.
        epsilon (float, optional): Growth exponent in (0, 2).
            Defaults to 0.5.

    Raises:
        InvalidParameterError: Raised if any argument is out of range.

    Returns:
        int: The burn-in length.
    """
    if n < MIN_SAMPLE_SIZE:
        raise InvalidParameterError(
            f"Sample size must be at least {MIN_SAMPLE_SIZE}, got: {n}"
        )
    if p < 1:
        raise InvalidParameterError(f"Need at least one predictor, got: {p}")
    if not 0.0 < epsilon < 2.0:
        raise InvalidParameterError(f"Epsilon must be in (0, 2): {epsilon}")
    log_term = math.log(max(n, p)) ** (1.0 + epsilon)
    # log(1) = 0 makes beta_n zero and the exponential branch vanish.
    exp_term = 0.0
    if p > 1:
        beta_sq = math.log(p) / math.sqrt(n)
        exp_term = n * math.exp(-beta_sq ** ((epsilon - 2.0) / 2.0))
    ell_n = math.ceil(max(log_term, exp_term))
    return min(max(ell_n, 2), n - 2)
