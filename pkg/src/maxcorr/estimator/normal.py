import math

from scipy.stats import norm

from maxcorr.exceptions import InvalidParameterError


def normal_quantile(q: float) -> float:
    """
    Standard normal quantile function.

    Args:
        q (float): Probability, strictly between 0 and 1.

    Raises:
        InvalidParameterError: Raised if `q` is not in (0, 1).

    Returns:
        float: The value z with Phi(z) = q.
    """
    if not math.isfinite(q) or not 0.0 < q < 1.0:
        raise InvalidParameterError(f"Quantile level must be in (0, 1): {q}")
    return float(norm.ppf(q))


def normal_upper_tail(z: float) -> float:
    """Standard normal survival function, 1 - Phi(z)."""
    return float(norm.sf(z))
