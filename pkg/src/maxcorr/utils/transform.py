import numpy as np


def sigmoid(values):
    """
    Map the real line onto (-1, 1) with 2 / (1 + exp(-z)) - 1.

    The null of zero maximal correlation is invariant under this strictly
    increasing map, so it can be used to bring unbounded data into range.
    """
    return np.tanh(np.asarray(values, dtype=float) / 2.0)


def out_of_range(x: np.ndarray, y: float, bound: float = 1.0) -> bool:
    """True if any predictor or the outcome lies outside [-bound, bound]."""
    return abs(y) > bound or bool(np.any(np.abs(x) > bound))
