from maxcorr.screen.driver import (  # noqa
    ScreenConfig,
    StreamingScreen,
    chunk_bounds,
    est_psi,
    far_from_zero,
    top_correlations,
)
from maxcorr.screen.gradient import (  # noqa
    CorrelationSummary,
    Index,
    calc_d,
    calc_sig_hat,
    gradient_second_moment,
    maximizer,
    remainder,
    select_index,
    summarize,
)
from maxcorr.screen.moments import (  # noqa
    MONOMIALS,
    Correlations,
    MomentState,
    Observation,
    correlations,
    initialize_h,
    update_h,
)
from maxcorr.screen.result import ScreenResult  # noqa
