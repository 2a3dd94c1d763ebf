"""Shared error base; every package error carries a stable module-qualified code."""


class ToolError(ValueError):
    """Base class for all errors raised by this package.

    `code` identifies the failing module and condition (e.g. "polyring.parse")
    so the CLI can report machine-readable error origins.
    """

    code = "error"
