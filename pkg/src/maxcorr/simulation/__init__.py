from maxcorr.simulation.baseline import (  # noqa
    bonferroni_from_correlations,
    bonferroni_t_test,
    correlation_p_values,
)
from maxcorr.simulation.design import (  # noqa
    MODELS,
    OutcomeModel,
    derive_seed,
    gen_design_row,
    gen_outcome,
    generate_stream,
    get_model,
    make_rng,
    population_max_correlation,
)
from maxcorr.simulation.study import (  # noqa
    CoverageResult,
    PowerRow,
    PowerStudy,
    ScenarioSpec,
    power_table,
    run_coverage_study,
    run_power_study,
    run_replication,
    write_power_table,
)
