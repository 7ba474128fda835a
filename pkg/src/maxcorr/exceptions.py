class BaseMaxcorrException(Exception):
    """Base exception for maxcorr."""
    pass


class InvalidParameterError(BaseMaxcorrException, ValueError):
    """A tuning parameter or estimator input is out of its valid range."""
    pass


class DimensionError(BaseMaxcorrException, ValueError):
    """Observation length doesn't match the configured predictor count."""
    pass


class DataError(BaseMaxcorrException, ValueError):
    """Observed data can't be used as given."""
    pass


class StreamExhaustedError(DataError):
    """Observation stream ended before the requested sample size."""
    def __init__(self, expected: int, received: int) -> None:
        super().__init__(
            f"Stream ended after {received} observations, expected {expected}."
        )
        self.expected = expected
        self.received = received


class CsvFormatError(DataError):
    """CSV input is malformed."""
    pass


class ScenarioError(BaseMaxcorrException, ValueError):
    """Simulation scenario is invalid or one of its replications failed."""
    pass
