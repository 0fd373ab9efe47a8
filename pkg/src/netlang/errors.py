"""Exception hierarchy. The CLI maps each family to an exit code."""


class NetlangError(Exception):
    """Base class for all package errors."""


class ConfigError(NetlangError, ValueError):
    """Invalid parameters or configuration (CLI exit code 2)."""


class DataError(NetlangError, ValueError):
    """Input data violates a contract, e.g. a malformed edge list (exit code 3)."""


class DisconnectedGraphError(DataError):
    def __init__(self, component_count: int):
        self.component_count = component_count
        super().__init__(f"graph has {component_count} components")


class InsufficientDataError(DataError):
    """Too few usable histogram bins for a degree-distribution fit."""

    def __init__(self, usable_bins: int, required: int):
        self.usable_bins = usable_bins
        self.required = required
        super().__init__(
            f"insufficient support for fit: {usable_bins} usable bins, need at least {required}"
        )


class GenerationError(NetlangError, RuntimeError):
    """A generator could not satisfy its connectivity contract."""

    def __init__(self, family: str, attempts: int):
        self.family = family
        self.attempts = attempts
        super().__init__(f"{family}: no connected graph after {attempts} attempts")
