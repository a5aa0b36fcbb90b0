"""Exception types shared across the package."""


class FreeJoinError(Exception):
    """Base class for all errors raised by freejoin."""


class AlphabetMismatchError(FreeJoinError, ValueError):
    """A symbol lies outside the alphabet an operation was asked to act on."""


class IdentityWordError(FreeJoinError, ValueError):
    """An operation that needs a nontrivial word received the identity."""


class WordSyntaxError(FreeJoinError, ValueError):
    """Malformed word, scalar or element text.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class IntertwiningError(FreeJoinError, ValueError):
    """A factor map does not commute with the dynamics."""


class ContextError(FreeJoinError, ValueError):
    """Bad factor index, wrong number of factors, or similar."""


class ThresholdError(FreeJoinError, ValueError):
    """A k-mixing threshold cannot be computed in closed form."""


class ConfigError(FreeJoinError, ValueError):
    """Invalid configuration; ``path`` locates the offending entry."""

    def __init__(self, path: str, message: str, position: int | None = None):
        where = f" (token position {position})" if position is not None else ""
        super().__init__(f"{path}: {message}{where}")
        self.path = path
        self.message = message
        self.position = position
