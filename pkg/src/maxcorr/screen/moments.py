from __future__ import annotations

from typing import NamedTuple

import numpy as np

from maxcorr.constants import DEFAULT_VAR_FLOOR
from maxcorr.exceptions import DataError, DimensionError


# (r, s) exponents of the per-predictor monomials x_k^r y^s that are stored.
# Pure y-moments are shared across predictors and kept separately.
MONOMIALS = (
    (1, 0), (1, 1), (1, 2), (1, 3),
    (2, 0), (2, 1), (2, 2),
    (3, 0), (3, 1),
    (4, 0),
)
MONOMIAL_ROWS = {exponents: row for row, exponents in enumerate(MONOMIALS)}
_X_POWERS = np.array([r for r, _ in MONOMIALS])
_Y_POWERS = np.array([s for _, s in MONOMIALS])


class Observation(NamedTuple):
    """One data row: predictor vector `x` and outcome `y`."""
    x: np.ndarray
    y: float


class Correlations(NamedTuple):
    corr: np.ndarray
    var_x: np.ndarray
    var_y: float


def _monomials(x: np.ndarray, y: float) -> tuple[np.ndarray, np.ndarray]:
    x_powers = np.empty((5, x.shape[0]))
    x_powers[0] = 1.0
    x_powers[1] = x
    np.multiply(x, x, out=x_powers[2])
    np.multiply(x_powers[2], x, out=x_powers[3])
    np.multiply(x_powers[3], x, out=x_powers[4])
    y_powers = np.array([1.0, y, y * y, y * y * y, y * y * y * y])
    mixed = x_powers[_X_POWERS] * y_powers[_Y_POWERS][:, None]
    return mixed, y_powers[1:]


def _checked(o: Observation, p: int | None = None) -> tuple[np.ndarray, float]:
    x = np.asarray(o.x, dtype=float)
    y = float(o.y)
    if x.ndim != 1:
        raise DimensionError(f"Predictors must be a flat vector: {x.shape}")
    if p is not None and x.shape[0] != p:
        raise DimensionError(
            f"Observation has {x.shape[0]} predictors, expected {p}."
        )
    if not (np.isfinite(y) and np.isfinite(x).all()):
        raise DataError("Observation contains non-finite values.")
    return x, y


class MomentState():
    def __init__(self, mixed: np.ndarray, outcome: np.ndarray, j: int) -> None:
        """
        Empirical moments E[X_k^r Y^s], r + s <= 4, of the first `j`
        observations. Size is O(p) regardless of `j`.

        Args:
            mixed (np.ndarray): Array of shape (10, p); row i holds the
                moments for the exponents `MONOMIALS[i]`.
            outcome (np.ndarray): E[Y^s] for s = 1..4.
            j (int): Number of observations absorbed.
        """
        self.mixed = mixed
        self.outcome = outcome
        self.j = j

    def __repr__(self) -> str:
        return f"<MomentState (j={self.j}, p={self.p}) at {id(self)}>"

    @property
    def p(self) -> int:
        return self.mixed.shape[1]

    @classmethod
    def from_arrays(cls, x: np.ndarray, y: np.ndarray) -> MomentState:
        """
        Batch constructor: average every monomial over the rows of `x`
        and `y`.

        Args:
            x (np.ndarray): Predictors, shape (j, p).
            y (np.ndarray): Outcomes, shape (j,).

        Returns:
            MomentState: State equal to streaming the rows one by one.
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        mixed = np.stack([
            np.mean(x ** r * (y ** s)[:, None], axis=0) for r, s in MONOMIALS
        ])
        outcome = np.array([np.mean(y ** s) for s in range(1, 5)])
        return cls(mixed, outcome, x.shape[0])

    def moment(self, r: int, s: int, k: int) -> float:
        """E[X_k^r Y^s] for any r + s <= 4."""
        if r == 0:
            return 1.0 if s == 0 else float(self.outcome[s - 1])
        return float(self.mixed[MONOMIAL_ROWS[(r, s)], k])

    def column(self, r: int, s: int) -> np.ndarray:
        """E[X_k^r Y^s] for every predictor k, r >= 1."""
        return self.mixed[MONOMIAL_ROWS[(r, s)]]

    @property
    def mean_y(self) -> float:
        return float(self.outcome[0])

    def copy(self) -> MomentState:
        return MomentState(self.mixed.copy(), self.outcome.copy(), self.j)


def initialize_h(o1: Observation, o2: Observation) -> MomentState:
    """
    Build the moment state from the first two observations.

    Raises:
        DimensionError: Raised if the observations differ in length.
        DataError: Raised if either has non-finite entries.

    Returns:
        MomentState: State with j = 2.
    """
    x1, y1 = _checked(o1)
    x2, y2 = _checked(o2, x1.shape[0])
    mixed_1, outcome_1 = _monomials(x1, y1)
    mixed_2, outcome_2 = _monomials(x2, y2)
    return MomentState(
        (mixed_1 + mixed_2) / 2.0,
        (outcome_1 + outcome_2) / 2.0,
        2,
    )


def update_h(h: MomentState, o: Observation) -> MomentState:
    """
    Absorb one more observation with the stable mean recursion
    P_{j+1} f = P_j f + (f(o) - P_j f) / (j + 1). Updates `h` in place.

    Args:
        h (MomentState): State after j observations.
        o (Observation): Observation j + 1.

    Raises:
        DimensionError: Raised if `o` has the wrong number of predictors.
        DataError: Raised if `o` has non-finite entries.

    Returns:
        MomentState: The same object, now holding j + 1 observations.
    """
    x, y = _checked(o, h.p)
    mixed, outcome = _monomials(x, y)
    step = 1.0 / (h.j + 1)
    mixed -= h.mixed
    mixed *= step
    h.mixed += mixed
    h.outcome += (outcome - h.outcome) * step
    h.j += 1
    return h


def correlations(
    h: MomentState,
    var_floor: float = DEFAULT_VAR_FLOOR,
) -> Correlations:
    """
    Per-predictor correlation with the outcome under the empirical
    distribution held by `h`.

    Variances are population-style (divide by j). A predictor whose variance,
    or the outcome's, is at most `var_floor` gets correlation 0.

    Args:
        h (MomentState): Moment state with j >= 2.
        var_floor (float, optional): Degeneracy threshold on variances.
            Defaults to 1e-12.

    Returns:
        Correlations: `corr` and `var_x` vectors of length p, and `var_y`.
    """
    mean_x = h.column(1, 0)
    mean_y = h.mean_y
    var_x = h.column(2, 0) - mean_x * mean_x
    var_y = float(h.outcome[1] - mean_y * mean_y)
    cov = h.column(1, 1) - mean_x * mean_y
    corr = np.zeros(h.p)
    if var_y > var_floor:
        usable = var_x > var_floor
        corr[usable] = cov[usable] / np.sqrt(var_x[usable] * var_y)
        np.clip(corr, -1.0, 1.0, out=corr)
    return Correlations(corr, var_x, var_y)
