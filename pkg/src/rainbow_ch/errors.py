from __future__ import annotations

import enum


class Indeterminate(Exception):
    """A search ran out of its node budget before reaching a verdict."""

    def __init__(self, message: str, *, nodes: int = 0, bounds: tuple | None = None):
        super().__init__(message)
        self.nodes = nodes
        self.bounds = bounds


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    INDETERMINATE = "indeterminate"


DEFAULT_NODE_BUDGET = 10**8
