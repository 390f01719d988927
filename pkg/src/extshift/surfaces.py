"""Closed-surface triangulations: validation, topology, local moves.

A :class:`SurfaceTriangulation` wraps a pure 2-dimensional complex whose
every edge lies in exactly two triangles and whose every vertex link is a
single cycle, together with cached adjacency structure (edge -> opposite
vertices, vertex -> link cycle) that the reduction algorithms hit hard.

Local moves: edge contraction (for contractible edges, i.e. those in no
missing triangle), vertex splitting (the inverse operation), and diagonal
flips (used only by the offline catalog generator).  Cycle separation
walks the dual graph from both sides of a cycle simultaneously so that
the common case — a short cycle cutting off a small disk — costs time
proportional to the small side.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .simplicial import (
    Face,
    InvalidComplexError,
    SimplicialComplex,
    build_complex,
    contract_edge,
)


class NotClosedSurfaceError(InvalidComplexError):
    """The complex is not a closed connected 2-manifold."""


class UnsupportedTopologyError(ValueError):
    """The surface's topology is outside what the caller supports."""


_TOPOLOGY_NAMES = {
    (2, True): "sphere",
    (0, True): "torus",
    (1, False): "projective-plane",
    (0, False): "klein-bottle",
}


@dataclass(frozen=True)
class Topology:
    name: str
    euler_characteristic: int
    orientable: bool


class SurfaceTriangulation:
    """A validated closed-surface triangulation with adjacency caches."""

    __slots__ = ("complex", "topology", "edge_opposites", "link_cycles",
                 "neighbors")

    def __init__(self, complex: SimplicialComplex, topology: Topology,
                 edge_opposites: dict[Face, tuple[int, int]],
                 link_cycles: dict[int, tuple[int, ...]]) -> None:
        self.complex = complex
        self.topology = topology
        self.edge_opposites = edge_opposites
        self.link_cycles = link_cycles
        self.neighbors: dict[int, frozenset[int]] = {
            v: frozenset(cycle) for v, cycle in link_cycles.items()
        }

    @property
    def n(self) -> int:
        return self.complex.n

    @property
    def triangles(self) -> tuple[Face, ...]:
        return self.complex.faces(2)

    @property
    def edges(self) -> tuple[Face, ...]:
        return self.complex.faces(1)

    def degree(self, v: int) -> int:
        return len(self.link_cycles[v])

    def star_triangles(self, v: int) -> tuple[Face, ...]:
        cycle = self.link_cycles[v]
        k = len(cycle)
        return tuple(
            tuple(sorted((v, cycle[i], cycle[(i + 1) % k]))) for i in range(k)
        )

    def __repr__(self) -> str:
        return (f"SurfaceTriangulation(n={self.n}, "
                f"topology={self.topology.name!r})")


def _link_cycle(v: int, link_edges: list[tuple[int, int]]) -> tuple[int, ...]:
    """Assemble link edges into one cycle; raise if the link is not one."""
    adjacency: dict[int, list[int]] = {}
    for a, b in link_edges:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    for w, nbrs in adjacency.items():
        if len(nbrs) != 2 or len(set(nbrs)) != 2:
            raise NotClosedSurfaceError(
                f"link of vertex {v} is not a cycle (at link vertex {w})"
            )
    start = min(adjacency)
    second = min(adjacency[start])
    cycle = [start, second]
    while True:
        prev, cur = cycle[-2], cycle[-1]
        a, b = adjacency[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        cycle.append(nxt)
    if len(cycle) != len(adjacency):
        raise NotClosedSurfaceError(
            f"link of vertex {v} has more than one component"
        )
    return tuple(cycle)


def _edge_direction(triangle: Face, u: int, v: int) -> int:
    """+1 if u -> v agrees with the cyclic order (a, b, c) of the sorted
    triangle, -1 otherwise."""
    a, b, c = triangle
    if (u, v) in ((a, b), (b, c), (c, a)):
        return 1
    return -1


def _orientable(triangles: Iterable[Face],
                edge_faces: dict[Face, tuple[Face, ...]],
                blocked: frozenset[Face] = frozenset()) -> bool:
    """Can the triangles be coherently oriented without crossing blocked
    edges?  (Connectivity across non-blocked edges is assumed.)"""
    orient: dict[Face, int] = {}
    for seed in triangles:
        if seed in orient:
            continue
        orient[seed] = 1
        stack = [seed]
        while stack:
            t = stack.pop()
            for u, v in combinations(t, 2):
                edge = (u, v)
                if edge in blocked:
                    continue
                for t2 in edge_faces.get(edge, ()):
                    if t2 == t:
                        continue
                    required = -orient[t] * _edge_direction(t, u, v) \
                        * _edge_direction(t2, u, v)
                    if t2 in orient:
                        if orient[t2] != required:
                            return False
                    else:
                        orient[t2] = required
                        stack.append(t2)
    return True


def classify_surface(K: SimplicialComplex) -> SurfaceTriangulation:
    """Validate that K triangulates a closed connected surface.

    Returns the wrapped triangulation with adjacency caches filled in.

    Raises:
        NotClosedSurfaceError: if K is not pure 2-dimensional, some edge is
            not in exactly two triangles, some vertex link is not a single
            cycle, or K is disconnected.
    """
    if K.dim != 2:
        raise NotClosedSurfaceError(f"expected a 2-complex, got dimension {K.dim}")
    triangles = K.faces(2)

    edge_faces: dict[Face, list[Face]] = {}
    for t in triangles:
        for e in combinations(t, 2):
            edge_faces.setdefault(e, []).append(t)
    if set(edge_faces) != set(K.faces(1)):
        raise NotClosedSurfaceError("some edge lies in no triangle")
    for e, faces in edge_faces.items():
        if len(faces) != 2:
            raise NotClosedSurfaceError(
                f"edge {e} lies in {len(faces)} triangles, expected 2"
            )

    link_cycles: dict[int, tuple[int, ...]] = {}
    star_edges: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, K.n + 1)}
    for a, b, c in triangles:
        star_edges[a].append((b, c))
        star_edges[b].append((a, c))
        star_edges[c].append((a, b))
    for v in range(1, K.n + 1):
        if not star_edges[v]:
            raise NotClosedSurfaceError(f"vertex {v} lies in no triangle")
        link_cycles[v] = _link_cycle(v, star_edges[v])

    # Vertex links being single cycles makes the complex a closed manifold;
    # connectivity still needs its own check.
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in link_cycles[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != K.n:
        raise NotClosedSurfaceError("complex is not connected")

    chi = K.euler_characteristic()
    frozen_edge_faces = {e: tuple(fs) for e, fs in edge_faces.items()}
    orientable = _orientable(triangles, frozen_edge_faces)
    name = _TOPOLOGY_NAMES.get((chi, orientable), "other")
    opposites: dict[Face, tuple[int, int]] = {}
    for e, (f1, f2) in frozen_edge_faces.items():
        o1 = next(x for x in f1 if x not in e)
        o2 = next(x for x in f2 if x not in e)
        opposites[e] = (min(o1, o2), max(o1, o2))

    return SurfaceTriangulation(
        K, Topology(name, chi, orientable), opposites, link_cycles
    )


def surface_from_triangles(triangles: Iterable[Iterable[int]]) -> SurfaceTriangulation:
    """Convenience: build + classify in one step (labels compacted)."""
    return classify_surface(build_complex(triangles))


def missing_triangles(T: SurfaceTriangulation) -> tuple[Face, ...]:
    """3-cliques of the edge graph that are not faces, in lex order."""
    out = []
    face_set = T.complex.face_set(2)
    for u in range(1, T.n + 1):
        nbrs = sorted(w for w in T.neighbors[u] if w > u)
        for i, v in enumerate(nbrs):
            for w in nbrs[i + 1:]:
                if w in T.neighbors[v] and (u, v, w) not in face_set:
                    out.append((u, v, w))
    return tuple(out)


def contractible_edges(T: SurfaceTriangulation) -> tuple[Face, ...]:
    """Edges lying in no missing triangle (the link condition).

    The boundary-of-a-tetrahedron special case has none: contracting any
    edge there would collapse the sphere to a single triangle.
    """
    if T.n == 4:
        return ()
    out = []
    for e in T.edges:
        u, v = e
        if len(T.neighbors[u] & T.neighbors[v]) == 2:
            out.append(e)
    return tuple(out)


def contract_surface_edge(T: SurfaceTriangulation, edge: Iterable[int]) -> SurfaceTriangulation:
    """Contract a contractible edge and revalidate.

    Raises:
        InvalidComplexError: if the edge is absent or not contractible.
    """
    e = tuple(sorted(edge))
    u, v = e
    if not T.complex.has_face(e):
        raise InvalidComplexError(f"{e} is not an edge")
    if T.n == 4 or len(T.neighbors[u] & T.neighbors[v]) != 2:
        raise InvalidComplexError(f"edge {e} is not contractible")
    result = classify_surface(contract_edge(T.complex, e))
    if result.topology != T.topology:
        raise AssertionError(
            "contraction changed the topology; this cannot happen for a "
            "contractible edge"
        )
    return result


def split_vertex(T: SurfaceTriangulation, v: int, u: int, w: int) -> SurfaceTriangulation:
    """Split vertex v along link vertices u and w; inverse of contraction.

    The link cycle of v is cut at u and w.  Star triangles on the arc from
    u to w (in the stored cycle orientation) keep v; the rest move to a
    new vertex labeled n+1; two new triangles (v, n+1, u) and (v, n+1, w)
    fill the cut.  Swapping u and w selects the other assignment.
    """
    cycle = T.link_cycles[v]
    if u == w or u not in cycle or w not in cycle:
        raise InvalidComplexError(
            f"split endpoints must be two distinct link vertices of {v}"
        )
    k = len(cycle)
    i, j = cycle.index(u), cycle.index(w)
    fresh = T.n + 1

    keep_positions = set()
    t = i
    while t != j:
        keep_positions.add(t)
        t = (t + 1) % k
    new_triangles: list[Face] = []
    for pos in range(k):
        a, b = cycle[pos], cycle[(pos + 1) % k]
        center = v if pos in keep_positions else fresh
        new_triangles.append(tuple(sorted((center, a, b))))
    new_triangles.append(tuple(sorted((v, fresh, u))))
    new_triangles.append(tuple(sorted((v, fresh, w))))

    others = [t for t in T.triangles if v not in t]
    return classify_surface(build_complex(others + new_triangles))


def flip_edge(T: SurfaceTriangulation, edge: Iterable[int]) -> SurfaceTriangulation | None:
    """Diagonal flip: replace edge {u,v} by the opposite diagonal {w,x}.

    Returns None when the flip is invalid (the opposite diagonal already
    exists, or an endpoint has degree 3, which would create a doubled
    edge or a degenerate vertex).
    """
    e = tuple(sorted(edge))
    if e not in T.edge_opposites:
        return None
    u, v = e
    w, x = T.edge_opposites[e]
    if w == x or x in T.neighbors[w]:
        return None
    if T.degree(u) == 3 or T.degree(v) == 3:
        return None
    t1, t2 = tuple(sorted((u, v, w))), tuple(sorted((u, v, x)))
    replacement = [tuple(sorted((u, w, x))), tuple(sorted((v, w, x)))]
    others = [t for t in T.triangles if t not in (t1, t2)]
    return classify_surface(build_complex(others + replacement))


# -- cycle separation ---------------------------------------------------


@dataclass(frozen=True)
class SeparationPiece:
    """One side of a separating cycle: its triangles and the topology of
    the piece cut along the cycle."""

    triangles: frozenset[Face]
    euler_characteristic: int
    orientable: bool
    boundary_vertex_count: int

    @property
    def is_disk(self) -> bool:
        return self.euler_characteristic == 1


def _cycle_edges(cycle: Sequence[int]) -> frozenset[Face]:
    k = len(cycle)
    return frozenset(
        tuple(sorted((cycle[i], cycle[(i + 1) % k]))) for i in range(k)
    )


def _adjacent_triangles(T: SurfaceTriangulation, t: Face,
                        blocked: frozenset[Face]) -> Iterator[Face]:
    for e in combinations(t, 2):
        if e in blocked:
            continue
        f1, f2 = (f for f in _edge_faces_pair(T, e))
        yield f2 if f1 == t else f1


def _edge_faces_pair(T: SurfaceTriangulation, e: Face) -> tuple[Face, Face]:
    o1, o2 = T.edge_opposites[e]
    u, v = e
    return tuple(sorted((u, v, o1))), tuple(sorted((u, v, o2)))


def triangle_components(T: SurfaceTriangulation,
                        blocked: frozenset[Face]) -> list[frozenset[Face]]:
    """Connected components of the dual graph avoiding blocked edges."""
    unseen = set(T.triangles)
    components = []
    while unseen:
        seed = unseen.pop()
        comp = {seed}
        stack = [seed]
        while stack:
            t = stack.pop()
            for t2 in _adjacent_triangles(T, t, blocked):
                if t2 in unseen:
                    unseen.remove(t2)
                    comp.add(t2)
                    stack.append(t2)
        components.append(frozenset(comp))
    return components


def _two_sided_split(T: SurfaceTriangulation,
                     blocked: frozenset[Face]) -> tuple[frozenset[Face], frozenset[Face]] | None:
    """Split the dual graph along blocked edges, growing both sides of one
    blocked edge in lockstep.

    Returns None if the two sides meet (the cut does not separate);
    otherwise the pair (side containing one face of the seed edge, rest).
    Cost is proportional to the smaller side when the cut separates.
    """
    seed_edge = min(blocked)
    f1, f2 = _edge_faces_pair(T, seed_edge)
    if f1 == f2:  # cannot happen on a valid surface, defensive
        return None
    side = {f1: 0, f2: 1}
    frontiers: list[list[Face]] = [[f1], [f2]]
    exhausted = [False, False]
    while not (exhausted[0] or exhausted[1]):
        for s in (0, 1):
            if not frontiers[s]:
                exhausted[s] = True
                continue
            nxt: list[Face] = []
            for t in frontiers[s]:
                for t2 in _adjacent_triangles(T, t, blocked):
                    prev = side.get(t2)
                    if prev is None:
                        side[t2] = s
                        nxt.append(t2)
                    elif prev != s:
                        return None
            frontiers[s] = nxt
    small = 0 if exhausted[0] else 1
    small_set = frozenset(t for t, s in side.items() if s == small)
    big_set = frozenset(set(T.triangles) - small_set)
    return (small_set, big_set) if small == 0 else (big_set, small_set)


def _piece(T: SurfaceTriangulation, triangles: frozenset[Face],
           blocked: frozenset[Face]) -> SeparationPiece:
    vertices = {v for t in triangles for v in t}
    edges = {e for t in triangles for e in combinations(t, 2)}
    chi = len(vertices) - len(edges) + len(triangles)
    edge_faces: dict[Face, tuple[Face, ...]] = {}
    for t in triangles:
        for e in combinations(t, 2):
            edge_faces[e] = edge_faces.get(e, ()) + (t,)
    boundary_vertices = {v for e in blocked if e in edges for v in e}
    return SeparationPiece(
        triangles=triangles,
        euler_characteristic=chi,
        orientable=_orientable(triangles, edge_faces, blocked),
        boundary_vertex_count=len(boundary_vertices),
    )


def separate_by_cycle(T: SurfaceTriangulation,
                      cycle: Sequence[int]) -> tuple[SeparationPiece, ...]:
    """Cut the surface along a simple cycle of edges.

    Returns one piece (the whole surface) when the cycle does not
    separate, otherwise exactly two, each carrying the Euler
    characteristic and orientability of the piece cut open along the
    cycle.

    Raises:
        InvalidComplexError: if the cycle is not a simple closed walk of
            length >= 3 through existing edges.
    """
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise InvalidComplexError("cycle must list >= 3 distinct vertices")
    blocked = _cycle_edges(cycle)
    for e in blocked:
        if e not in T.edge_opposites:
            raise InvalidComplexError(f"cycle step {e} is not an edge")
    split = _two_sided_split(T, blocked)
    if split is None:
        return (_piece(T, frozenset(T.triangles), blocked),)
    return tuple(_piece(T, side, blocked) for side in split)


def separate_by_edge_set(T: SurfaceTriangulation,
                         edges: Iterable[Face]) -> tuple[frozenset[Face], ...]:
    """Dual components after blocking an arbitrary edge set (used for
    figure-eight cuts, where the cut graph is not a simple cycle)."""
    blocked = frozenset(tuple(sorted(e)) for e in edges)
    return tuple(triangle_components(T, blocked))


def is_prime(T: SurfaceTriangulation) -> bool:
    """No missing triangle bounds a disk.

    A separating 3-cycle yields two pieces, each bounded by the full
    cycle; a piece with Euler characteristic 1 is a disk.
    """
    for mt in missing_triangles(T):
        pieces = separate_by_cycle(T, mt)
        if len(pieces) == 2 and any(p.is_disk for p in pieces):
            return False
    return True


def vertex_degrees(T: SurfaceTriangulation) -> dict[int, int]:
    return {v: len(c) for v, c in T.link_cycles.items()}
