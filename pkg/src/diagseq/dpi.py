"""Diagnosis problem instances and their on-disk text format.

A DPI bundles four sentence collections: K (retractable component
axioms, uniquely labeled), B (background knowledge), P (positive
measurements) and N (negative measurements).

File format (UTF-8, '#' starts a comment line)::

    [K]
    ax1: (implies A B)      # labels optional, auto-assigned ax1..axk
    [B]
    (or C D)
    [P]
    [N]
    B

All four section headers are required; sections may be empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DuplicateLabel, MissingSection, ParseError
from .formula import Formula, format_formula, parse_formula

_SECTIONS = ("K", "B", "P", "N")
_LABEL_PREFIX = {"K": "ax", "B": "b", "P": "p", "N": "n"}


@dataclass(frozen=True)
class SentenceSet:
    """Ordered labeled sentences; labels unique within the set."""

    labels: tuple[str, ...]
    formulas: tuple[Formula, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.formulas):
            raise ValueError("labels and formulas must align")
        if len(set(self.labels)) != len(self.labels):
            dupes = sorted({l for l in self.labels if self.labels.count(l) > 1})
            raise DuplicateLabel(f"duplicate labels: {', '.join(dupes)}")

    @staticmethod
    def from_pairs(pairs) -> "SentenceSet":
        labels, formulas = [], []
        for label, f in pairs:
            labels.append(label)
            formulas.append(f)
        return SentenceSet(tuple(labels), tuple(formulas))

    @staticmethod
    def auto(formulas, prefix: str = "ax") -> "SentenceSet":
        formulas = tuple(formulas)
        return SentenceSet(tuple(f"{prefix}{i}" for i in range(1, len(formulas) + 1)), formulas)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(zip(self.labels, self.formulas))

    def formula_of(self, label: str) -> Formula:
        return self.mapping[label]

    @property
    def mapping(self) -> dict[str, Formula]:
        return dict(zip(self.labels, self.formulas))

    def restrict(self, labels) -> tuple[Formula, ...]:
        wanted = set(labels)
        return tuple(f for l, f in self if l in wanted)


@dataclass(frozen=True)
class DPI:
    k: SentenceSet
    b: SentenceSet = field(default_factory=lambda: SentenceSet((), ()))
    p: SentenceSet = field(default_factory=lambda: SentenceSet((), ()))
    n: SentenceSet = field(default_factory=lambda: SentenceSet((), ()))

    def with_positive(self, f: Formula) -> "DPI":
        labels = self.p.labels + (f"p{len(self.p) + 1}",)
        return DPI(self.k, self.b, SentenceSet(labels, self.p.formulas + (f,)), self.n)

    def with_negative(self, f: Formula) -> "DPI":
        labels = self.n.labels + (f"n{len(self.n) + 1}",)
        return DPI(self.k, self.b, self.p, SentenceSet(labels, self.n.formulas + (f,)))


def parse_dpi_text(text: str) -> DPI:
    """Parse the DPI file format; labels in [K] are auto-assigned when absent."""
    sections: dict[str, list[tuple[str | None, Formula]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SECTIONS:
                raise ParseError(f"unknown section [{name}]", line=lineno)
            if name in sections:
                raise ParseError(f"section [{name}] appears twice", line=lineno)
            sections[name] = []
            current = name
            continue
        if current is None:
            raise ParseError("content before first section header", line=lineno)
        label = None
        body = line
        if current == "K" and ":" in line:
            head, _, rest = line.partition(":")
            label, body = head.strip(), rest.strip()
        try:
            f = parse_formula(body)
        except ParseError as e:
            raise ParseError(f"bad formula: {e}", line=lineno) from e
        sections[current].append((label, f))

    missing = [s for s in _SECTIONS if s not in sections]
    if missing:
        raise MissingSection(f"missing sections: {', '.join(f'[{s}]' for s in missing)}")

    out: dict[str, SentenceSet] = {}
    for name in _SECTIONS:
        prefix = _LABEL_PREFIX[name]
        labels, formulas = [], []
        auto = 1
        for label, f in sections[name]:
            if label is None:
                label = f"{prefix}{auto}"
            auto += 1
            labels.append(label)
            formulas.append(f)
        if len(set(labels)) != len(labels):
            dupes = sorted({l for l in labels if labels.count(l) > 1})
            raise DuplicateLabel(f"duplicate labels in [{name}]: {', '.join(dupes)}")
        out[name] = SentenceSet(tuple(labels), tuple(formulas))
    return DPI(out["K"], out["B"], out["P"], out["N"])


def format_dpi(dpi: DPI) -> str:
    lines: list[str] = []
    lines.append("[K]")
    for label, f in dpi.k:
        lines.append(f"{label}: {format_formula(f)}")
    for name, ss in (("B", dpi.b), ("P", dpi.p), ("N", dpi.n)):
        lines.append(f"[{name}]")
        for _, f in ss:
            lines.append(format_formula(f))
    return "\n".join(lines) + "\n"


def load_dpi(path) -> DPI:
    with open(path, encoding="utf-8") as fh:
        return parse_dpi_text(fh.read())


def save_dpi(dpi: DPI, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_dpi(dpi))
