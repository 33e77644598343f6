"""Portfolio optimization with VQE, QAOA, and an exact classical solver.

Thin python layer over the C++ core; everything of substance lives in
``poqa._core``.
"""

from poqa._core import (  # noqa: F401
    Algorithm,
    AnsatzConfig,
    AssetStatistics,
    Entangler,
    ExactBaseline,
    ExperimentRecord,
    Gate,
    GateKind,
    GroundState,
    IsingHamiltonian,
    MatchRate,
    MinimizeResult,
    OptMethod,
    OptimizerOptions,
    ParamCircuit,
    PortfolioProblem,
    PriceSeries,
    Qubo,
    Rotation,
    RunManifest,
    SolveResult,
    Statevector,
    Structure,
    SweepGrid,
    SweepReport,
    __version__,
    bits_to_index,
    build_portfolio_qubo,
    build_qaoa_circuit,
    build_two_local,
    cell_seed,
    compute_returns,
    config_from_label,
    current_timestamp,
    cx,
    cz,
    default_grid,
    default_penalty,
    energy_table,
    entanglement_pairs,
    estimate_statistics,
    evaluate_bitstring,
    evaluate_index,
    exact_ground_state,
    generate_synthetic,
    h,
    index_to_bits,
    ising_energy_index,
    load_prices,
    manifest_from_json,
    match_rates,
    minimize,
    motivational_subset,
    parameter_shift_gradient,
    prices_to_csv,
    qaoa_solve,
    qubo_to_ising,
    render_match_table,
    render_svg,
    report_from_json,
    report_to_csv,
    report_to_json,
    run_sweep,
    rx,
    ry,
    rz,
    rzz,
    simulate,
    standard_configs,
    vqe_solve,
    write_prices_csv,
)
