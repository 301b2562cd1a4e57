"""Exception hierarchy; the CLI maps each family to an exit code."""


class TS3CError(Exception):
    """Base class for errors raised by this package."""


class DataFormatError(TS3CError, ValueError):
    """Input file could not be parsed (bad token, ragged rows, non-finite values)."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class DegeneratePartitionError(TS3CError, ValueError):
    """A validity index is undefined for the given partition."""

    def __init__(self, index, reason):
        self.index = index
        self.reason = reason
        super().__init__(f"{index}: {reason}")


class PipelineError(TS3CError, RuntimeError):
    """The sweep produced nothing selectable."""
