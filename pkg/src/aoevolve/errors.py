"""Exception hierarchy shared by all modules."""


class AoEvolveError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(AoEvolveError):
    """Bad input location or option (missing directory, unreadable file)."""


class UsageError(AoEvolveError):
    """Invalid request: empty version list, malformed counts file, bad labels."""


class ParseError(AoEvolveError):
    """Raised in strict mode when the tolerant scanner had to recover."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        msg = str(first) if first else "parse error"
        if len(self.diagnostics) > 1:
            msg += f" (+{len(self.diagnostics) - 1} more)"
        super().__init__(msg)


class OutputError(AoEvolveError):
    """An output file or directory could not be written."""
