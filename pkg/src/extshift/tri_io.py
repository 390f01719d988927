"""Reading and writing triangulation text files.

Format: one triangle per line as three space-separated positive integers.
Lines starting with ``#`` are comments.  A file may hold several
triangulations separated by blank lines; each entry may begin with an
optional ``name: <string>`` header line.
"""

from __future__ import annotations

from .simplicial import Face


class TriFormatError(ValueError):
    """Raised when a .tri document cannot be parsed."""


def parse_triangulations(text: str) -> list[tuple[str | None, tuple[Face, ...]]]:
    """Parse a .tri document into (name, triangles) entries."""
    entries: list[tuple[str | None, tuple[Face, ...]]] = []
    name: str | None = None
    triangles: list[Face] = []

    def flush() -> None:
        nonlocal name, triangles
        if triangles:
            entries.append((name, tuple(triangles)))
        elif name is not None:
            raise TriFormatError(f"entry {name!r} has no triangles")
        name = None
        triangles = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            flush()
            continue
        if line.startswith("name:"):
            if triangles:
                raise TriFormatError(f"line {lineno}: name header after triangles")
            name = line[len("name:"):].strip()
            continue
        parts = line.split()
        if len(parts) != 3:
            raise TriFormatError(f"line {lineno}: expected 3 vertices, got {len(parts)}")
        try:
            verts = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise TriFormatError(f"line {lineno}: non-integer vertex") from exc
        if any(v < 1 for v in verts) or len(set(verts)) != 3:
            raise TriFormatError(f"line {lineno}: invalid triangle {parts}")
        triangles.append(tuple(sorted(verts)))
    flush()
    return entries


def read_triangulations(path) -> list[tuple[str | None, tuple[Face, ...]]]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_triangulations(fh.read())


def read_single_triangulation(path) -> tuple[Face, ...]:
    """Read a file expected to contain exactly one triangulation."""
    entries = read_triangulations(path)
    if not entries:
        raise TriFormatError(f"{path}: no triangulation found")
    if len(entries) > 1:
        raise TriFormatError(f"{path}: expected one triangulation, found {len(entries)}")
    return entries[0][1]


def format_triangulations(
    entries: list[tuple[str | None, tuple[Face, ...]]],
    header: str | None = None,
) -> str:
    lines: list[str] = []
    if header:
        for row in header.splitlines():
            lines.append(f"# {row}".rstrip())
    for index, (name, triangles) in enumerate(entries):
        if index or header:
            lines.append("")
        if name is not None:
            lines.append(f"name: {name}")
        for tri in triangles:
            lines.append(" ".join(str(v) for v in tri))
    return "\n".join(lines) + "\n"


def write_triangulations(path, entries, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_triangulations(entries, header=header))
