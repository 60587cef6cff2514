"""Audit log of colouring decisions."""

from __future__ import annotations


class Trace:
    """Ordered decision log.

    ``labels`` maps internal vertex ids to the user's labels for output.
    """

    def __init__(self, labels=None):
        self.labels = labels
        self.lines: list[str] = []

    def label(self, v):
        return str(self.labels[v]) if self.labels is not None else str(v)

    def decision(self, lemma, case, vertex, color, reason):
        self.lines.append(
            f"LEMMA {lemma} CASE {case} vertex {self.label(vertex)} color {color} reason {reason}"
        )

    def note(self, text):
        self.lines.append(text)

    def extend(self, lines):
        self.lines.extend(lines)

    def __len__(self):
        return len(self.lines)

    def dump(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")
