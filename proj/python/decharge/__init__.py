from decharge._core import (
    InfeasibleSelection,
    ParseError,
    Request,
    Scenario,
    Station,
    ValidationError,
    config_hash,
    generate,
    load_scenario,
    report_columns,
    run,
)

METHODS = ("decharge", "greedy", "doc", "sic", "mgm", "cohda")

__all__ = [
    "InfeasibleSelection",
    "METHODS",
    "ParseError",
    "Request",
    "Scenario",
    "Station",
    "ValidationError",
    "config_hash",
    "generate",
    "load_scenario",
    "report_columns",
    "run",
]
