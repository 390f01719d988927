"""Relabeling-invariant canonical codes for surface triangulations.

The code is the minimum, over every starting directed edge and both
rotation directions, of a breadth-first traversal of the rotation system:
vertices are renamed 1, 2, 3, ... in discovery order and the encoding lists
each vertex's link walk in the induced labels.  Two triangulations get the
same code exactly when they are connected by a relabeling.
"""

from __future__ import annotations

from collections import deque

from .surfaces import SurfaceTriangulation


def _walk_link(
    T: SurfaceTriangulation, center: int, start: int, apex: int
) -> list[int]:
    """Neighbors of ``center`` in rotation order, starting at ``start``.

    ``apex`` selects the first triangle (center, start, apex) and thereby the
    direction of the walk.
    """
    seq = [start]
    prev, cur = start, apex
    while cur != start:
        seq.append(cur)
        edge = (center, cur) if center < cur else (cur, center)
        a, b = T.edge_opposites[edge]
        prev, cur = cur, (b if a == prev else a)
    return seq


def _code_from(
    T: SurfaceTriangulation, root: int, second: int, apex: int
) -> tuple[tuple[int, ...], ...]:
    labels = {root: 1, second: 2}
    entry = {root: (second, apex), second: (root, apex)}
    order = deque([root, second])
    walks: list[tuple[int, ...]] = []
    while order:
        x = order.popleft()
        start, side = entry[x]
        seq = _walk_link(T, x, start, side)
        for pos in range(1, len(seq)):
            q = seq[pos]
            if q not in labels:
                labels[q] = len(labels) + 1
                entry[q] = (x, seq[pos - 1])
                order.append(q)
        walks.append(tuple(labels[q] for q in seq))
    return tuple(walks)


def canonical_form(T: SurfaceTriangulation) -> bytes:
    """Canonical code of ``T``; equal codes iff relabel-equivalent."""
    degrees = {v: len(cycle) for v, cycle in T.link_cycles.items()}
    min_degree = min(degrees.values())
    best: tuple[tuple[int, ...], ...] | None = None
    # The root's own walk is always (2, 3, ..., deg+1), so only minimum-degree
    # roots can reach the minimum code.
    for root, cycle in sorted(T.link_cycles.items()):
        if degrees[root] != min_degree:
            continue
        for second in cycle:
            edge = (root, second) if root < second else (second, root)
            for apex in T.edge_opposites[edge]:
                code = _code_from(T, root, second, apex)
                if best is None or code < best:
                    best = code
    assert best is not None
    return _encode(best)


def _encode(walks: tuple[tuple[int, ...], ...]) -> bytes:
    out = bytearray()
    for walk in walks:
        for label in walk:
            out += label.to_bytes(2, "big")
        out += b"\x00\x00"
    return bytes(out)


def canonical_hex(T: SurfaceTriangulation) -> str:
    return canonical_form(T).hex()
