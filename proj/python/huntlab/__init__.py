from ._core import (
    AB,
    ConfigError,
    DomainError,
    RepresentationError,
    SignedCF,
    CounterexampleSpec,
    CxMode,
    ExponentValue,
    Form,
    GaugeFunction,
    LevyTriplet,
    MeasureComponent,
    PowerBand,
    Side,
    StableTail,
    ab,
    build_spec,
    divergence_witness,
    eval_psi,
    exit_code,
    kf_ratio_profile,
    log_grid,
    make_signed,
    minimal_n1,
    one_energy,
    polya_eval,
    rao_check,
    recursion_residual,
    run_config,
    theta,
    verify_window,
    __version__,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
