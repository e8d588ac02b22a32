"""Science-map basemap bundles.

A bundle is a directory holding ``categories.txt`` (one label per line),
``cosine.csv`` (square matrix, header row = labels), ``layout.csv``
(``label,x,y``) and optionally ``journal_categories.csv``
(``journal,categories`` with categories separated by semicolons).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .diversity import cognitive_distances


class BasemapError(ValueError):
    def __init__(self, issues):
        super().__init__("; ".join(str(i) for i in issues))
        self.issues = issues


@dataclass(frozen=True)
class Issue:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass
class Basemap:
    labels: tuple[str, ...]
    cosine: np.ndarray
    layout: dict[str, tuple[float, float]]
    journal_categories: dict[str, tuple[str, ...]] = field(default_factory=dict)
    name: str = ""

    def distances(self):
        return cognitive_distances(self.cosine, self.labels)

    def categories_of(self, record):
        """Record's own categories, else those listed for its journal."""
        if record.categories:
            return record.categories
        return self.journal_categories.get(" ".join(record.journal.split()).upper(), ())


def _read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return [row for row in csv.reader(fh) if row]


def _read_raw(directory):
    directory = Path(directory)
    issues = []
    labels = cos_labels = None
    cosine = None
    layout = {}

    try:
        text = (directory / "categories.txt").read_text(encoding="utf-8")
        labels = [line.strip() for line in text.splitlines() if line.strip()]
    except OSError as exc:
        issues.append(Issue("missing-file", f"categories.txt ({exc.strerror})"))

    try:
        rows = _read_csv(directory / "cosine.csv")
        cos_labels = [c.strip() for c in rows[0]] if rows else []
        cosine = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float)
        if cosine.size == 0:
            cosine = cosine.reshape(0, len(cos_labels))
        if cosine.shape != (len(cos_labels), len(cos_labels)):
            issues.append(Issue("shape", f"cosine.csv is {cosine.shape}, expected "
                                         f"{len(cos_labels)}x{len(cos_labels)}"))
            cosine = None
    except OSError as exc:
        issues.append(Issue("missing-file", f"cosine.csv ({exc.strerror})"))
    except ValueError as exc:
        issues.append(Issue("parse", f"cosine.csv: {exc}"))

    try:
        rows = _read_csv(directory / "layout.csv")
        if rows and [c.strip().lower() for c in rows[0]] == ["label", "x", "y"]:
            rows = rows[1:]
        for r in rows:
            try:
                layout[r[0].strip()] = (float(r[1]), float(r[2]))
            except (ValueError, IndexError):
                issues.append(Issue("parse", f"layout.csv row {r!r}"))
    except OSError as exc:
        issues.append(Issue("missing-file", f"layout.csv ({exc.strerror})"))

    return labels, cos_labels, cosine, layout, issues


def validate_basemap(directory, tol=1e-9):
    """List every inconsistency in a basemap bundle; empty means ok."""
    labels, cos_labels, cosine, layout, issues = _read_raw(directory)
    if labels is not None:
        if len(set(labels)) != len(labels):
            issues.append(Issue("duplicate-label", "categories.txt has repeated labels"))
        if cos_labels is not None and cos_labels != labels:
            missing = [x for x in labels if x not in cos_labels]
            extra = [x for x in cos_labels if x not in labels]
            for x in missing:
                issues.append(Issue("label-missing", f"{x!r} absent from cosine.csv"))
            for x in extra:
                issues.append(Issue("label-extra", f"{x!r} in cosine.csv but not categories.txt"))
            if not missing and not extra:
                issues.append(Issue("label-order", "cosine.csv header order differs from categories.txt"))
        if layout is not None:
            for x in labels:
                if x not in layout:
                    issues.append(Issue("label-missing", f"{x!r} absent from layout.csv"))
            for x in layout:
                if x not in labels:
                    issues.append(Issue("label-extra", f"{x!r} in layout.csv but not categories.txt"))
    if cosine is not None and cos_labels is not None:
        n = len(cos_labels)
        for i in range(n):
            if abs(cosine[i, i] - 1.0) > tol:
                issues.append(Issue("diagonal", f"{cos_labels[i]!r} has self-similarity {cosine[i, i]}"))
            for j in range(n):
                v = cosine[i, j]
                if not (-tol <= v <= 1 + tol):
                    issues.append(Issue("range", f"({cos_labels[i]!r}, {cos_labels[j]!r}) = {v}"))
                if j > i and abs(v - cosine[j, i]) > tol:
                    issues.append(Issue("asymmetric", f"({cos_labels[i]!r}, {cos_labels[j]!r}): "
                                                      f"{v} vs {cosine[j, i]}"))
    return issues


def load_basemap(directory):
    """Load a bundle, raising :class:`BasemapError` if it does not validate."""
    issues = validate_basemap(directory)
    if issues:
        raise BasemapError(issues)
    directory = Path(directory)
    labels, _, cosine, layout, _ = _read_raw(directory)
    journals = {}
    jpath = directory / "journal_categories.csv"
    if jpath.exists():
        rows = _read_csv(jpath)
        if rows and [c.strip().lower() for c in rows[0]] == ["journal", "categories"]:
            rows = rows[1:]
        for r in rows:
            if len(r) >= 2:
                cats = tuple(c.strip() for c in r[1].split(";") if c.strip())
                journals[" ".join(r[0].split()).upper()] = cats
    return Basemap(tuple(labels), cosine, layout, journals, name=directory.name)
