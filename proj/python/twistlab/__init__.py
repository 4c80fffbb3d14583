from ._twistlab import (
    ConfigError,
    hilbert,
    incidence_counts,
    point_table,
    resolve_primes,
    run,
    tower_reduce,
    validate,
)

COMPONENTS = ("C0", "C1", "C2", "C3", "E1", "E2", "E3")

__all__ = [
    "COMPONENTS",
    "ConfigError",
    "hilbert",
    "incidence_counts",
    "point_table",
    "resolve_primes",
    "run",
    "tower_reduce",
    "validate",
]
