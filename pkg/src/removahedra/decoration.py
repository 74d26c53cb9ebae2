"""Node decorations over the alphabet o (none), d (down), u (up), x (updown)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

ALPHABET = "odux"
# none < {down, up} < updown
_RANK = {"o": 0, "d": 1, "u": 1, "x": 2}


@dataclass(frozen=True, order=True)
class Decoration:
    """A word over ``odux``; positions are 1-indexed throughout the package."""

    letters: str

    def __post_init__(self):
        if not self.letters:
            raise ValueError("decoration must have at least one letter")
        bad = set(self.letters) - set(ALPHABET)
        if bad:
            raise ValueError(f"invalid decoration letters {sorted(bad)!r}; use o/d/u/x")

    @classmethod
    def parse(cls, text: str) -> "Decoration":
        return cls(text.strip())

    @classmethod
    def all(cls, n: int):
        for word in itertools.product(ALPHABET, repeat=n):
            yield cls("".join(word))

    @property
    def n(self) -> int:
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, k: int) -> str:
        if not 1 <= k <= self.n:
            raise IndexError(k)
        return self.letters[k - 1]

    def __str__(self):
        return self.letters

    @cached_property
    def down(self) -> frozenset:
        """Positions carrying a wall below them (d or x)."""
        return frozenset(k + 1 for k, c in enumerate(self.letters) if c in "dx")

    @cached_property
    def up(self) -> frozenset:
        """Positions carrying a wall above them (u or x)."""
        return frozenset(k + 1 for k, c in enumerate(self.letters) if c in "ux")

    def refines(self, other: "Decoration") -> bool:
        """Coordinatewise ``self <= other`` in the order o < {d, u} < x."""
        if self.n != other.n:
            raise ValueError("decorations of different lengths")
        for a, b in zip(self.letters, other.letters):
            if a == b:
                continue
            if _RANK[a] >= _RANK[b]:
                return False
        return True

    def interior(self) -> str:
        """Letters at positions 2..n-1 (the boundary letters never matter)."""
        return self.letters[1:-1]
