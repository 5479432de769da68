"""
Shared exception root and source positions
"""
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Position:
    """A location in an s-expression source"""
    source: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.source}:{self.line}:{self.column}"


class ComposerError(Exception):
    """Base class of every error raised by the engine"""

    def __init__(self, message: str, position: Optional[Position] = None):
        super().__init__(message)
        self.message = message
        self.position = position

    def describe(self) -> str:
        """Render the error as `source:line:col: message` when a position is known"""
        if self.position is None:
            return f"{type(self).__name__}: {self.message}"
        return f"{self.position}: {type(self).__name__}: {self.message}"
