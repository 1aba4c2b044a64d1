"""Analog 8-PAM demapper models: reference LLRs, cell synthesis, calibration,
GMI and BER evaluation, and the transient model."""

from ._core import (
    AffineMap,
    AnalogDemapper,
    CalibratedAnalogDemapper,
    ChannelParams,
    Constellation,
    DemapError,
    build_analog_demapper,
    build_pam8,
    calibrate,
    energy_per_bit,
    evaluate_paired,
    exact_llr,
    fit_output_map,
    gmi,
    hard_decide,
    input_map,
    maxlog_llr,
    mi_bitwise,
    rate_penalty,
    run_experiment,
    simulate_transient,
)

__all__ = [
    "AffineMap",
    "AnalogDemapper",
    "CalibratedAnalogDemapper",
    "ChannelParams",
    "Constellation",
    "DemapError",
    "build_analog_demapper",
    "build_pam8",
    "calibrate",
    "energy_per_bit",
    "evaluate_paired",
    "exact_llr",
    "fit_output_map",
    "gmi",
    "hard_decide",
    "input_map",
    "maxlog_llr",
    "mi_bitwise",
    "rate_penalty",
    "run_experiment",
    "simulate_transient",
]
