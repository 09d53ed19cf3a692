"""Exception types shared across the package."""

from __future__ import annotations


class UepError(Exception):
    """Base class for errors raised by this package."""


class CodebookFormatError(UepError):
    """A codebook file could not be parsed."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
            if line is not None:
                where += f"{line}:"
            where += " "
        super().__init__(f"{where}{message}")


class ConfigError(UepError):
    """A configuration file or value is invalid."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
            if line is not None:
                where += f"{line}:"
            where += " "
        super().__init__(f"{where}{message}")


class InfeasibleConstructionError(UepError):
    """Greedy codebook construction could not fill every slot."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))
