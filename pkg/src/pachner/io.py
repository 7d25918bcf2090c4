"""Facet-list text files and the structured JSON document."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Union

from .core import Complex
from .errors import FormatError

PathLike = Union[str, Path]


def parse_facet_list(text: str) -> Complex:
    """One facet per line, whitespace-separated labels; ``#`` starts a comment."""
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            facets.append([int(t) for t in line.split()])
        except ValueError:
            raise FormatError(f"line {lineno}: expected integer labels, got {line!r}") from None
    return Complex(facets)


def format_facet_list(C: Complex) -> str:
    return "".join(" ".join(map(str, f)) + "\n" for f in C.sorted_facets)


def to_document(C: Complex) -> dict:
    doc = {"dim": C.dim, "facets": [list(f) for f in C.sorted_facets]}
    if C.names:
        doc["names"] = {str(k): v for k, v in sorted(C.names.items())}
    return doc


def from_document(doc: dict) -> Complex:
    try:
        dim = int(doc["dim"])
        facets = doc["facets"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"structured document lacks a valid field: {exc}") from None
    names = {int(k): v for k, v in (doc.get("names") or {}).items()}
    C = Complex(facets, names=names)
    if C.dim != dim:
        raise FormatError(f"declared dim {dim} but facets have dim {C.dim}")
    return C


def dumps_json(C: Complex) -> str:
    return json.dumps(to_document(C), sort_keys=True) + "\n"


def loads_json(text: str) -> Complex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return from_document(doc)


def loads(text: str) -> Complex:
    """Parse either format; a document starting with ``{`` is JSON."""
    if text.lstrip().startswith("{"):
        return loads_json(text)
    return parse_facet_list(text)


def load(path: PathLike) -> Complex:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def save(C: Complex, path: PathLike) -> None:
    p = Path(path)
    p.write_text(dumps_json(C) if p.suffix == ".json" else format_facet_list(C))


def facet_digest(C: Complex) -> str:
    return hashlib.sha256(format_facet_list(C).encode()).hexdigest()

