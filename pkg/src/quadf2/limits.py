"""Dimension guards for exhaustive enumeration."""

from __future__ import annotations

DEFAULT_BOUND = 8
DEFAULT_APEX_BOUND = 10


class EnumerationLimitError(ValueError):
    """Raised when an exhaustive operation would exceed its dimension bound."""

    def __init__(self, what: str, dim: int, bound: int):
        super().__init__(f"{what}: dimension {dim} exceeds enumeration bound {bound}")
        self.what = what
        self.dim = dim
        self.bound = bound


def check_bound(what: str, dim: int, bound: int | None = None) -> None:
    limit = DEFAULT_BOUND if bound is None else bound
    if dim > limit:
        raise EnumerationLimitError(what, dim, limit)
