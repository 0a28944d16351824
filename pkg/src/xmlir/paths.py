"""Element paths: step-addressed identifiers for nodes within one XML document.

A path is an ordered sequence of (tag, index) steps where the index is the
node's 1-based position among same-tag siblings, written as
``/article[1]/bdy[1]/sec[2]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

PathStep = tuple[str, int]
SequenceKey = tuple[int, ...]

_STEP_RE = re.compile(r"([^/\[\]]+)\[([0-9]+)\]")


@dataclass(frozen=True)
class ElementPath:
    steps: tuple[PathStep, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("element path needs at least the root step")
        for tag, index in self.steps:
            if not tag or index < 1:
                raise ValueError(f"bad path step ({tag!r}, {index!r})")

    @classmethod
    def root(cls, tag: str) -> "ElementPath":
        return cls(((tag, 1),))

    @classmethod
    def from_string(cls, text: str) -> "ElementPath":
        """Parse the /tag[i]/tag[j] notation; raises ValueError on malformed input."""
        if not text.startswith("/"):
            raise ValueError(f"element path must start with '/': {text!r}")
        steps = []
        for part in text[1:].split("/"):
            m = _STEP_RE.fullmatch(part)
            if m is None:
                raise ValueError(f"bad path step {part!r} in {text!r}")
            steps.append((m.group(1), int(m.group(2))))
        return cls(tuple(steps))

    def __str__(self) -> str:
        return "".join(f"/{tag}[{index}]" for tag, index in self.steps)

    @property
    def depth(self) -> int:
        return len(self.steps)

    @property
    def tag(self) -> str:
        return self.steps[-1][0]

    def sequence(self) -> SequenceKey:
        """Index projection of the steps, compared lexicographically."""
        return tuple(index for _, index in self.steps)

    def child(self, tag: str, index: int) -> "ElementPath":
        return ElementPath(self.steps + ((tag, index),))

    def parent(self) -> "ElementPath | None":
        if len(self.steps) == 1:
            return None
        return ElementPath(self.steps[:-1])

    def is_ancestor_of(self, other: "ElementPath") -> bool:
        """True iff self.steps is a proper prefix of other.steps."""
        return (
            len(self.steps) < len(other.steps)
            and other.steps[: len(self.steps)] == self.steps
        )

    def is_descendant_of(self, other: "ElementPath") -> bool:
        return other.is_ancestor_of(self)

    def ancestors(self) -> list["ElementPath"]:
        """Proper ancestors, from the root down to the parent."""
        return [ElementPath(self.steps[:n]) for n in range(1, len(self.steps))]
