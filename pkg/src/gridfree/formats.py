"""Readers and writers for trihyper-v1 (JSON and text), pattern-v1 and the
core catalog directory."""

from __future__ import annotations

import json
from pathlib import Path

from .cores import CoreCatalog, CoreEntry
from .detect import BUILTIN_PATTERNS
from .hypergraph import PARTS, Pattern, TripartiteHypergraph, canonical_form

TRIHYPER = "trihyper-v1"
PATTERN = "pattern-v1"
CATALOG = "core-catalog-v1"


class FormatError(ValueError):
    pass


# -- trihyper-v1 -------------------------------------------------------------


def hypergraph_to_dict(H: TripartiteHypergraph) -> dict:
    return {
        "format": TRIHYPER,
        "p": H.p,
        "construction": H.provenance.get("construction"),
        "parts": {name: list(side) for name, side in H.parts.items()},
        "edges": [list(e) for e in H.edges],
        "provenance": H.provenance,
    }


def hypergraph_from_dict(doc: dict) -> TripartiteHypergraph:
    if doc.get("format") != TRIHYPER:
        raise FormatError(f"expected format {TRIHYPER}, got {doc.get('format')!r}")
    try:
        parts = [doc["parts"][name] for name in PARTS]
        edges = [tuple(e) for e in doc["edges"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed {TRIHYPER} document: {exc}") from None
    prov = dict(doc.get("provenance") or {})
    if doc.get("construction") is not None:
        prov.setdefault("construction", doc["construction"])
    return TripartiteHypergraph(*(tuple(s) for s in parts), tuple(edges), doc.get("p"), prov)


def dumps_json(H: TripartiteHypergraph) -> str:
    return json.dumps(hypergraph_to_dict(H)) + "\n"


def dumps_text(H: TripartiteHypergraph) -> str:
    lines = [f"# format: {TRIHYPER}", f"# p: {H.p if H.p is not None else '-'}",
             f"# provenance: {json.dumps(H.provenance, sort_keys=True)}"]
    for name, side in H.parts.items():
        lines.append(f"# {name}: " + " ".join(str(v) for v in side))
    lines.extend(f"{x} {y} {z}" for x, y, z in H.edges)
    return "\n".join(lines) + "\n"


def loads_text(text: str) -> TripartiteHypergraph:
    header, edges = {}, []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            header[key.strip()] = val.strip()
            continue
        vals = line.split()
        if len(vals) != 3:
            raise FormatError(f"edge line needs three values: {raw!r}")
        edges.append(tuple(int(v) for v in vals))
    if header.get("format") != TRIHYPER:
        raise FormatError("missing '# format: trihyper-v1' header")
    p = header.get("p", "-")
    prov = json.loads(header.get("provenance", "{}"))
    if all(name in header for name in PARTS):
        parts = [tuple(int(v) for v in header[name].split()) for name in PARTS]
        return TripartiteHypergraph(*parts, tuple(edges), None if p == "-" else int(p), prov)
    return TripartiteHypergraph.from_edges(edges, None if p == "-" else int(p), prov)


def loads(text: str) -> TripartiteHypergraph:
    if text.lstrip().startswith("{"):
        return hypergraph_from_dict(json.loads(text))
    return loads_text(text)


def save_hypergraph(H: TripartiteHypergraph, path) -> None:
    """JSON for *.json paths, the plain-text edge list otherwise."""
    path = Path(path)
    path.write_text(dumps_json(H) if path.suffix == ".json" else dumps_text(H))


def load_hypergraph(path) -> TripartiteHypergraph:
    return loads(Path(path).read_text())


# -- pattern-v1 --------------------------------------------------------------


def pattern_to_dict(F: Pattern) -> dict:
    return {"format": PATTERN, "name": F.name, "vertices": F.n,
            "edges": [list(e) for e in F.edges]}


def pattern_from_dict(doc: dict) -> Pattern:
    if doc.get("format") != PATTERN:
        raise FormatError(f"expected format {PATTERN}, got {doc.get('format')!r}")
    return Pattern(int(doc["vertices"]), tuple(tuple(e) for e in doc["edges"]), doc.get("name", ""))


def load_pattern(ref) -> Pattern:
    """A built-in pattern name or a pattern-v1 file."""
    if str(ref) in BUILTIN_PATTERNS:
        return BUILTIN_PATTERNS[str(ref)]
    return pattern_from_dict(json.loads(Path(ref).read_text()))


def load_host(path):
    """A trihyper-v1 hypergraph, or a pattern-v1 file used as a host."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        if doc.get("format") == PATTERN:
            return pattern_from_dict(doc)
        return hypergraph_from_dict(doc)
    return loads_text(text)


# -- catalog directory -------------------------------------------------------


def save_catalog(catalog: CoreCatalog, directory) -> Path:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    index = {"format": CATALOG, "max_vertices": catalog.max_vertices, "entries": []}
    for c in catalog:
        (d / f"{c.name}.json").write_text(json.dumps(pattern_to_dict(c.pattern)) + "\n")
        index["entries"].append({"name": c.name, "v": c.v, "e": c.e,
                                 "canonical": c.canonical.hex(), "flags": c.flags()})
    (d / "index.json").write_text(json.dumps(index, indent=1) + "\n")
    return d / "index.json"


def load_catalog(directory) -> CoreCatalog:
    """Read a catalog directory and re-validate every entry."""
    d = Path(directory)
    index = json.loads((d / "index.json").read_text())
    if index.get("format") != CATALOG:
        raise FormatError(f"expected format {CATALOG}")
    entries = []
    for row in index["entries"]:
        F = pattern_from_dict(json.loads((d / f"{row['name']}.json").read_text()))
        form = bytes.fromhex(row["canonical"])
        if canonical_form(F) != form:
            raise FormatError(f"{row['name']}: canonical form does not match pattern")
        flags = row["flags"]
        entries.append(CoreEntry(row["name"], F, form, flags["contains_triangle"],
                                 flags["is_grid"], flags["contains_grid"], flags["minimal"]))
    cat = CoreCatalog(entries, index["max_vertices"])
    cat.validate()
    return cat
