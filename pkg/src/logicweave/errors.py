"""Shared exception base so callers (and the CLI) can catch package errors."""


class LogicweaveError(Exception):
    """Base class for every error raised by logicweave."""
