"""Shared exception types.

Exit-code mapping for the CLI: InputError -> 2, ResourceLimitError -> 3.
A negative analysis result (property false, with witness) is *not* an
exception; functions report it as a value.
"""


class InputError(ValueError):
    """Malformed or inconsistent input (unknown ids, non-poset relation, ...)."""


class ContractError(RuntimeError):
    """A documented precondition of an operation was violated by the caller."""


class ResourceLimitError(RuntimeError):
    """A configured ceiling (cell count, piece count) was exceeded."""
