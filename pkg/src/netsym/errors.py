"""Exception hierarchy shared across the package.

Exit codes mirror the CLI contract: 1 generic, 2 parse error,
3 contract violation, 4 internal consistency error.
"""


class NetsymError(Exception):
    exit_code = 1


class ParseError(NetsymError):
    """Malformed external input (edge lists, generator files, containers)."""

    exit_code = 2


class ContractError(NetsymError):
    """A documented precondition was violated by the caller."""

    exit_code = 3


class InternalError(NetsymError):
    """An internal consistency check failed; signals a bug upstream."""

    exit_code = 4
