"""Check reports: named identities with pass/fail and a witness on failure."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .kernel import Matrix


@dataclass(frozen=True)
class CheckEntry:
    name: str
    passed: bool
    witness_index: int | None = None
    witness_label: str | None = None
    # rhs - lhs evaluated on the witness basis vector, as formatted scalars
    residual: tuple[str, ...] | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        d: dict = {"name": self.name, "status": "pass" if self.passed else "fail"}
        if not self.passed and self.witness_index is not None:
            d["witness"] = {"index": self.witness_index, "label": self.witness_label,
                            "residual": list(self.residual or ())}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class CheckReport:
    entries: list[CheckEntry] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> CheckEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(e.name == name for e in self.entries)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def add(self, entry: CheckEntry) -> CheckEntry:
        self.entries.append(entry)
        return entry

    def extend(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for e in other.entries:
            self.entries.append(CheckEntry(prefix + e.name, e.passed, e.witness_index, e.witness_label,
                                           e.residual, e.note))
        return self

    def to_dict(self) -> dict:
        return {"ok": self.ok, "metadata": dict(sorted(self.metadata.items())),
                "entries": [e.to_dict() for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def format(self) -> str:
        lines = []
        for e in self.entries:
            line = f"{'PASS' if e.passed else 'FAIL'}  {e.name}"
            if not e.passed and e.witness_label is not None:
                line += f"  at {e.witness_label}  residual [{', '.join(e.residual or ())}]"
            if e.note:
                line += f"  ({e.note})"
            lines.append(line)
        return "\n".join(lines)


def compare(name: str, lhs: Matrix, rhs: Matrix, labels: Sequence[str] | None = None) -> CheckEntry:
    """Entry for the identity ``lhs == rhs`` between two maps with the same domain.

    On failure the witness is the first domain basis vector (column) where the
    two sides differ, with residual ``rhs - lhs`` evaluated there.
    """
    if lhs.shape != rhs.shape:
        raise ValueError(f"{name}: sides have shapes {lhs.shape} and {rhs.shape}")
    if lhs == rhs:
        return CheckEntry(name, True)
    diff = rhs - lhs
    j = next(j for j in range(diff.cols) if any(diff.col_values(j)))
    fmt = lhs.field.format
    label = labels[j] if labels is not None else str(j)
    return CheckEntry(name, False, j, label, tuple(fmt(x) for x in diff.col_values(j)))


def verdict(name: str, passed: bool, note: str | None = None) -> CheckEntry:
    return CheckEntry(name, bool(passed), note=note)
