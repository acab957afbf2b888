"""Free groups of finite rank.

Every retract of ``F_k`` is free of rank at most ``k`` and each such rank
occurs, so all invariants reduce to rank arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

MAX_RANK = 2**31 - 1


@dataclass(frozen=True)
class FreeGroup:
    rank: int

    def __post_init__(self):
        if not 0 <= self.rank <= MAX_RANK:
            raise ValueError(f"rank must lie in [0, {MAX_RANK}], got {self.rank}")

    def render(self) -> str:
        return f"F_{self.rank}"

    def __str__(self):
        return self.render()


def capacity(F: FreeGroup) -> int:
    return F.rank + 1


def strong_capacity(F: FreeGroup) -> int:
    return F.rank


def depth(F: FreeGroup) -> int:
    return F.rank + 1


def strong_depth(F: FreeGroup) -> int:
    return F.rank + 1


def dominated_classes(F: FreeGroup) -> Iterator[FreeGroup]:
    for r in range(F.rank + 1):
        yield FreeGroup(r)


def witness_chain(F: FreeGroup) -> list[FreeGroup]:
    """``[F_0, F_1, ..., F_k]``, each a free factor of the next."""
    return list(dominated_classes(F))
