"""Exception hierarchy shared by all planning modules."""


class PlanningError(Exception):
    """Base class for every error raised by vranplan."""


class ConfigError(PlanningError, ValueError):
    """A parameter lies outside its admissible domain."""


class UnclassifiableBandError(PlanningError, ValueError):
    pass


class InvalidHoldingError(PlanningError, ValueError):
    """Spectrum blocks overlap or are otherwise malformed."""


class OversizedDemandError(PlanningError, ValueError):
    def __init__(self, cc_id, constraint, message=None):
        self.cc_id = cc_id
        self.constraint = constraint
        super().__init__(message or f"demand {cc_id!r} exceeds per-DU ceiling {constraint}")


class InfeasiblePackingError(PlanningError):
    """MIN_DUS could not place every demand within the DU budget."""

    def __init__(self, constraint, du_budget, message=None):
        self.constraint = constraint
        self.du_budget = du_budget
        super().__init__(message or f"demands do not fit in {du_budget} DU(s); binding constraint: {constraint}")


class InstanceTooLargeError(PlanningError, ValueError):
    pass


class FieldRangeError(PlanningError, ValueError):
    def __init__(self, field, value, lo, hi):
        self.field = field
        self.value = value
        super().__init__(f"{field}={value!r} outside [{lo}, {hi}]")


class IdParseError(PlanningError, ValueError):
    pass


class PrefixOverflowError(PlanningError, ValueError):
    pass


class SuffixOverflowError(PlanningError, ValueError):
    pass


class ConvergenceError(PlanningError):
    """Dual ascent hit ``max_iter``; ``last`` holds the final iterate."""

    def __init__(self, message, last=None):
        self.last = last
        super().__init__(message)


class DomainError(PlanningError, ValueError):
    pass
