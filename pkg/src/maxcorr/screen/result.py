from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from maxcorr.constants import SCHEMA_VERSION
from maxcorr.screen.gradient import Index


@dataclass(frozen=True)
class ScreenResult():
    """
    Outcome of one pass of the stabilized one-step screen.

    `reject_null` is True when the interval's lower bound is above zero,
    i.e. the data support a non-zero maximal absolute correlation. `seed`
    echoes the configured seed of simulated input, None otherwise.
    """
    psi_hat: float
    sigma_bar: float
    ci_lower: float
    ci_upper: float
    alpha: float
    n: int
    ell_n: int
    reject_null: bool
    p_value: float
    selected: Index
    top_correlations: tuple[tuple[int, float], ...] = ()
    degenerate_steps: int = 0
    chunk_count: int = 0
    seed: int | None = None

    def covers(self, value: float) -> bool:
        return self.ci_lower <= value <= self.ci_upper

    def to_dict(self, column_names: Sequence[str] | None = None) -> dict:
        """
        Plain-dict form used by the JSON and CSV writers.

        Args:
            column_names (Sequence[str] | None, optional): Predictor names to
                report alongside positions. Defaults to None.

        Returns:
            dict: Versioned result record.
        """
        def name(k: int) -> str | None:
            return column_names[k] if column_names else None

        return {
            "schema": SCHEMA_VERSION,
            "psi_hat": self.psi_hat,
            "sigma_bar": self.sigma_bar,
            "ci_lower": self.ci_lower,
            "ci_upper": self.ci_upper,
            "alpha": self.alpha,
            "n": self.n,
            "ell_n": self.ell_n,
            "reject_null": self.reject_null,
            "p_value": self.p_value,
            "selected": {
                "k": self.selected.k,
                "m": self.selected.m,
                "name": name(self.selected.k),
            },
            "top_correlations": [
                {"k": k, "name": name(k), "corr": corr}
                for k, corr in self.top_correlations
            ],
            "degenerate_steps": self.degenerate_steps,
            "chunk_count": self.chunk_count,
            "seed": self.seed,
        }
