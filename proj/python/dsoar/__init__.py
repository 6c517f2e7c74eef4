"""Extremum-seeking dynamic soaring simulator.

Python veneer over the C++ core: run the built-in scenarios, validate
augmented-loop compensator designs, and evaluate the wind models. Rows come
back as plain lists so they drop straight into numpy or pandas.
"""

from ._core import (
    ConfigError,
    ImproperTransferFunctionError,
    SingularStateError,
    TransferFunction,
    list_scenarios,
    record_csv,
    run_case,
    run_config,
    scenario_json,
    validate_case,
    wind_gradient,
    wind_speed,
)

__all__ = [
    "ConfigError",
    "ImproperTransferFunctionError",
    "SingularStateError",
    "TransferFunction",
    "list_scenarios",
    "record_csv",
    "run_case",
    "run_config",
    "scenario_json",
    "validate_case",
    "wind_gradient",
    "wind_speed",
]
