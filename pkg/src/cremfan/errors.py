"""Exception taxonomy shared across modules (and mapped to CLI exit codes)."""


class InputError(ValueError):
    """Malformed or invalid input (CLI exit code 2)."""


class BudgetExceeded(RuntimeError):
    """An enumeration exceeded its configured budget (CLI exit code 3)."""


class InvariantError(RuntimeError):
    """An internal theorem check failed — indicates a bug (CLI exit code 4)."""
