"""Constrained DTW, linear-time lower bounds, and NN-search benchmark tooling."""

from .core import (
    ABSOLUTE,
    SQUARED,
    CostFunction,
    CostFunctionInadmissible,
    DtwBoundsError,
    EmptyTrainingSet,
    InvalidFraction,
    InvalidK,
    LengthMismatch,
    NonFiniteValue,
    ParseError,
    RaggedRow,
    SeriesTooShort,
    TimeSeries,
    Window,
    WindowZeroRejected,
    as_series,
    custom_cost,
    delta,
    validate_pair,
)
from .dtw import DtwResult, dtw, dtw_early_abandon
from .envelope_bounds import (
    BandSpec,
    BoundResult,
    band_cells,
    band_min,
    lb_enhanced,
    lb_improved,
    lb_keogh,
)
from .envelopes import (
    DerivedEnvelopes,
    EnvelopePair,
    Projection,
    compute_envelopes,
    compute_projection,
    derived_envelopes,
)
from .search import (
    BoundSelector,
    CandidateEntry,
    CandidateIndex,
    SearchReport,
    evaluate_bound,
    search_random_order,
    search_sorted,
)
from .tight_bounds import (
    FreenessFlags,
    compute_freeness,
    lb_petitjean,
    lb_petitjean_nolr,
    lb_webb,
    lb_webb_enhanced,
    lb_webb_nolr,
    lb_webb_star,
    min_lr_paths,
)
from .ucr import (
    Absolute,
    Dataset,
    Fraction,
    LabeledSeries,
    dump_split_file,
    load_dataset,
    load_window_sidecar,
    parse_split_file,
    resolve_window,
    znormalize,
)
from .bench import (
    RunConfig,
    SearchSummary,
    TightnessRecord,
    run_search_experiment,
    run_selftest,
    run_tightness,
    write_search_csv,
    write_tightness_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ABSOLUTE",
    "SQUARED",
    "Absolute",
    "BandSpec",
    "BoundResult",
    "BoundSelector",
    "CandidateEntry",
    "CandidateIndex",
    "CostFunction",
    "CostFunctionInadmissible",
    "Dataset",
    "DerivedEnvelopes",
    "DtwBoundsError",
    "DtwResult",
    "EmptyTrainingSet",
    "EnvelopePair",
    "Fraction",
    "FreenessFlags",
    "InvalidFraction",
    "InvalidK",
    "LabeledSeries",
    "LengthMismatch",
    "NonFiniteValue",
    "ParseError",
    "Projection",
    "RaggedRow",
    "RunConfig",
    "SearchReport",
    "SearchSummary",
    "SeriesTooShort",
    "TightnessRecord",
    "TimeSeries",
    "Window",
    "WindowZeroRejected",
    "as_series",
    "band_cells",
    "band_min",
    "compute_envelopes",
    "compute_freeness",
    "compute_projection",
    "custom_cost",
    "delta",
    "derived_envelopes",
    "dtw",
    "dtw_early_abandon",
    "dump_split_file",
    "evaluate_bound",
    "lb_enhanced",
    "lb_improved",
    "lb_keogh",
    "lb_petitjean",
    "lb_petitjean_nolr",
    "lb_webb",
    "lb_webb_enhanced",
    "lb_webb_nolr",
    "lb_webb_star",
    "load_dataset",
    "load_window_sidecar",
    "min_lr_paths",
    "parse_split_file",
    "resolve_window",
    "run_search_experiment",
    "run_selftest",
    "run_tightness",
    "search_random_order",
    "search_sorted",
    "validate_pair",
    "write_search_csv",
    "write_tightness_csv",
    "znormalize",
]
