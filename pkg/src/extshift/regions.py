"""Critical regions of surface triangulations and their reductions.

A region is the subcomplex spanned by a set of triangles.  Its edges split
into boundary edges (in one triangle of the region), internal edges (incident
to an internal vertex), and diagonals (interior edges joining two boundary
vertices).  A region is critical when it is internally 1-connected and the
rows of its internal-edge coefficient matrix at level four are independent;
it is irreducible when that matrix is square, i.e. exactly four internal
edges per internal vertex.

For the shapes the surface algorithms need — disks with at most six boundary
vertices, Moebius strips with four, pinched disks with five — criticality is
decided combinatorially: no forbidden boundary-adjacency configuration may
appear.  Pinched disks additionally get a randomized rank check, recorded as
such in the report.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .engine import (
    GenericSpecialization,
    fresh_specialization,
    region_rows_independent,
)
from .fieldmath import DEFAULT_MODULUS, derive_seed
from .simplicial import Face, InvalidComplexError, contraction_vertex_map
from .surfaces import (
    SurfaceTriangulation,
    _orientable,
    contract_surface_edge,
    separate_by_cycle,
    separate_by_edge_set,
)

DISK = "disk"
MOEBIUS = "moebius-strip"
PINCHED = "pinched-disk"
OTHER = "other"

COMBINATORIAL = "combinatorial"
RANDOMIZED = "randomized"

DEFAULT_REGION_SEED = 0x524547


class TheoremContractError(RuntimeError):
    """A structural guarantee of the reduction theory failed on this input.

    Raised when a reducible critical region of a characterized shape admits
    no admissible contraction, or a surface result violates its promised
    profile family.  Either would mean the input falls outside the theory
    (or exposes a bug); the computation cannot certify anything.
    """


class RegionShapeError(ValueError):
    """The operation is only defined for characterized region shapes."""


@dataclass(frozen=True)
class Region:
    """A set of triangles with its intrinsic vertex/edge classification."""

    triangles: tuple[Face, ...]
    boundary_vertices: frozenset[int]
    internal_vertices: frozenset[int]
    boundary_edges: frozenset[Face]
    internal_edges: frozenset[Face]
    diagonals: frozenset[Face]
    shape: str

    @property
    def boundary_count(self) -> int:
        return len(self.boundary_vertices)

    @property
    def internal_vertex_count(self) -> int:
        return len(self.internal_vertices)

    @property
    def internal_edge_count(self) -> int:
        return len(self.internal_edges)

    @property
    def vertices(self) -> frozenset[int]:
        return self.boundary_vertices | self.internal_vertices

    @property
    def edges(self) -> frozenset[Face]:
        return self.boundary_edges | self.internal_edges | self.diagonals


def make_region(triangles: Iterable[Iterable[int]]) -> Region:
    """Classify a triangle set intrinsically (no ambient complex needed)."""
    tris = sorted({tuple(sorted(t)) for t in triangles})
    if not tris:
        raise InvalidComplexError("a region needs at least one triangle")
    for t in tris:
        if len(t) != 3 or len(set(t)) != 3 or t[0] < 1:
            raise InvalidComplexError(f"not a triangle: {t}")

    edge_count: dict[Face, int] = {}
    for t in tris:
        for e in combinations(t, 2):
            edge_count[e] = edge_count.get(e, 0) + 1
    vertices = {v for t in tris for v in t}
    boundary_edges = frozenset(e for e, c in edge_count.items() if c == 1)
    boundary_vertices = frozenset(v for e in boundary_edges for v in e)
    internal_vertices = frozenset(vertices - boundary_vertices)
    interior = [e for e, c in edge_count.items() if c == 2]
    internal_edges = frozenset(
        e for e in interior if e[0] in internal_vertices or e[1] in internal_vertices
    )
    diagonals = frozenset(interior) - internal_edges

    shape = _classify_shape(
        tris, edge_count, vertices, boundary_edges, boundary_vertices
    )
    return Region(
        triangles=tuple(tris),
        boundary_vertices=boundary_vertices,
        internal_vertices=internal_vertices,
        boundary_edges=boundary_edges,
        internal_edges=internal_edges,
        diagonals=diagonals,
        shape=shape,
    )


def classify_region(
    K: SurfaceTriangulation, triangles: Iterable[Iterable[int]]
) -> Region:
    """make_region, after checking the triangles belong to the triangulation."""
    tris = {tuple(sorted(t)) for t in triangles}
    ambient = set(K.triangles)
    stray = tris - ambient
    if stray:
        raise InvalidComplexError(
            f"triangles not in the triangulation: {sorted(stray)[:3]}"
        )
    return make_region(tris)


def _classify_shape(
    tris: Sequence[Face],
    edge_count: dict[Face, int],
    vertices: set[int],
    boundary_edges: frozenset[Face],
    boundary_vertices: frozenset[int],
) -> str:
    if any(c > 2 for c in edge_count.values()):
        return OTHER
    if not _dual_connected(tris, None):
        return OTHER

    pinch_vertices = []
    for v in vertices:
        kind = _link_kind(tris, v)
        if kind == "cycle":
            if v in boundary_vertices:
                return OTHER
        elif kind == "path":
            if v not in boundary_vertices:
                return OTHER
        elif kind == "two-paths":
            pinch_vertices.append(v)
        else:
            return OTHER

    chi = len(vertices) - len(edge_count) + len(tris)
    circles = _boundary_circles(boundary_edges, boundary_vertices, pinch_vertices)

    if not pinch_vertices and circles == 1:
        if chi == 1:
            return DISK
        edge_faces: dict[Face, tuple[Face, ...]] = {}
        for t in tris:
            for e in combinations(t, 2):
                edge_faces[e] = edge_faces.get(e, ()) + (t,)
        if chi == 0 and not _orientable(tris, edge_faces):
            return MOEBIUS
    if len(pinch_vertices) == 1 and circles == 2 and chi == 0:
        return PINCHED
    return OTHER


def _link_kind(tris: Sequence[Face], v: int) -> str:
    """Structure of the link of v inside the region: a single cycle, a
    single path, two disjoint paths (pinch point), or something else."""
    adj: dict[int, list[int]] = {}
    for t in tris:
        if v in t:
            a, b = (x for x in t if x != v)
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
    if any(len(nbrs) > 2 for nbrs in adj.values()):
        return "bad"
    seen: set[int] = set()
    components = []
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        is_cycle = all(len(adj[x]) == 2 for x in comp)
        components.append("cycle" if is_cycle else "path")
    if components == ["cycle"]:
        return "cycle"
    if components == ["path"]:
        return "path"
    if components == ["path", "path"]:
        return "two-paths"
    return "bad"


def _boundary_circles(
    boundary_edges: frozenset[Face],
    boundary_vertices: frozenset[int],
    pinch_vertices: Sequence[int],
) -> int:
    """Number of circles in the boundary graph, counting the two loops of a
    figure-eight through a pinch vertex separately.  Returns -1 when the
    boundary is not a disjoint union of such circles."""
    degree: dict[int, int] = {}
    for e in boundary_edges:
        for v in e:
            degree[v] = degree.get(v, 0) + 1
    pinches = set(pinch_vertices)
    for v in boundary_vertices:
        want = 4 if v in pinches else 2
        if degree.get(v, 0) != want:
            return -1
    # Each circle has as many edges as vertices; a pinch vertex is shared
    # by two circles, so it contributes an extra edge-over-vertex.
    if not _boundary_connected_per_piece(boundary_edges):
        return -1
    return 1 + len(boundary_edges) - len(boundary_vertices)


def _boundary_connected_per_piece(boundary_edges: frozenset[Face]) -> bool:
    """The boundary graph must be connected (one circle or one figure-eight);
    two separate circles would bound an annulus-like region we don't name."""
    if not boundary_edges:
        return False
    adj: dict[int, set[int]] = {}
    for a, b in boundary_edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


def _dual_connected(
    tris: Sequence[Face], crossable: frozenset[Face] | None
) -> bool:
    """Is the triangle adjacency graph connected?  With ``crossable`` not
    None, walks may only cross edges in that set (an empty set really does
    mean no edge may be crossed)."""
    edge_faces: dict[Face, list[Face]] = {}
    for t in tris:
        for e in combinations(t, 2):
            edge_faces.setdefault(e, []).append(t)
    seen = {tris[0]}
    stack = [tris[0]]
    while stack:
        t = stack.pop()
        for e in combinations(t, 2):
            if crossable is not None and e not in crossable:
                continue
            for t2 in edge_faces[e]:
                if t2 not in seen:
                    seen.add(t2)
                    stack.append(t2)
    return len(seen) == len(tris)


def is_internally_1_connected(region: Region) -> bool:
    """Every pair of triangles is linked by a walk crossing internal edges.

    For a disk this is the same as having no diagonal.
    """
    return _dual_connected(region.triangles, region.internal_edges)


def _boundary_neighbor_counts(region: Region) -> dict[int, int]:
    counts = {v: 0 for v in region.internal_vertices}
    for e in region.internal_edges:
        a, b = e
        if a in counts and b in region.boundary_vertices:
            counts[a] += 1
        if b in counts and a in region.boundary_vertices:
            counts[b] += 1
    return counts


def _forbidden_configuration(region: Region) -> bool:
    """An internal vertex adjacent to more than four boundary vertices, or
    two adjacent internal vertices each adjacent to four of them."""
    counts = _boundary_neighbor_counts(region)
    if any(c > 4 for c in counts.values()):
        return True
    for a, b in region.internal_edges:
        if counts.get(a, 0) >= 4 and counts.get(b, 0) >= 4:
            return True
    return False


def combinatorial_critical_check(region: Region) -> bool:
    """Decide criticality by the boundary-adjacency characterization.

    Valid for disks with at most six boundary vertices, Moebius strips with
    four (exactly one diagonal there, from the gluing), and pinched disks
    with five (where it is necessary; the rank check completes the decision).
    """
    if region.shape == DISK:
        if region.boundary_count > 6:
            raise RegionShapeError(
                "characterization covers disks with at most 6 boundary vertices"
            )
        return not region.diagonals and not _forbidden_configuration(region)
    if region.shape == MOEBIUS:
        if region.boundary_count != 4:
            raise RegionShapeError("Moebius regions here have 4 boundary vertices")
        return (
            len(region.diagonals) == 1
            and is_internally_1_connected(region)
            and not _forbidden_configuration(region)
        )
    if region.shape == PINCHED:
        if region.boundary_count != 5:
            raise RegionShapeError("pinched-disk regions here have 5 boundary vertices")
        return (
            not region.diagonals
            and is_internally_1_connected(region)
            and not _forbidden_configuration(region)
        )
    raise RegionShapeError(f"no combinatorial characterization for {region.shape!r}")


@dataclass(frozen=True)
class CriticalReport:
    """Everything the reduction loop needs to know about one region."""

    region: Region
    boundary_count: int
    internal_vertex_count: int
    internal_edge_count: int
    is_combinatorial: bool
    is_critical: bool
    is_irreducible: bool
    basis: str

    @property
    def is_reducible(self) -> bool:
        return self.is_critical and not self.is_irreducible

    def to_json_dict(self) -> dict:
        return {
            "shape": self.region.shape,
            "triangles": [list(t) for t in self.region.triangles],
            "boundary_vertices": sorted(self.region.boundary_vertices),
            "internal_vertices": sorted(self.region.internal_vertices),
            "boundary_count": self.boundary_count,
            "internal_vertex_count": self.internal_vertex_count,
            "internal_edge_count": self.internal_edge_count,
            "diagonal_count": len(self.region.diagonals),
            "is_combinatorial": self.is_combinatorial,
            "is_critical": self.is_critical,
            "is_irreducible": self.is_irreducible,
            "basis": self.basis,
        }


def _spec_for(
    n: int, spec: GenericSpecialization | None, seed: int
) -> GenericSpecialization:
    if spec is not None:
        if spec.n < n:
            raise ValueError("specialization too small for the vertex labels")
        return spec
    return fresh_specialization(n, derive_seed(seed, f"regions-{n}"), DEFAULT_MODULUS)


def critical_report(
    region: Region,
    spec: GenericSpecialization | None = None,
    seed: int = DEFAULT_REGION_SEED,
) -> CriticalReport:
    """Decide criticality of a region and package the verdict.

    Characterized shapes are decided combinatorially (pinched disks get the
    randomized rank check on top); anything else falls back to the
    definition: internal 1-connectivity plus a randomized row-rank check.
    """
    characterized = (
        (region.shape == DISK and region.boundary_count <= 6)
        or (region.shape == MOEBIUS and region.boundary_count == 4)
        or (region.shape == PINCHED and region.boundary_count == 5)
    )
    if characterized:
        passes = combinatorial_critical_check(region)
        if region.shape == PINCHED:
            basis = RANDOMIZED
            if passes:
                max_label = max(region.vertices)
                passes = region_rows_independent(
                    region, 4, _spec_for(max_label, spec, seed)
                )
        else:
            basis = COMBINATORIAL
        is_critical = passes
    else:
        basis = RANDOMIZED
        is_critical = is_internally_1_connected(region)
        if is_critical:
            max_label = max(region.vertices)
            is_critical = region_rows_independent(
                region, 4, _spec_for(max_label, spec, seed)
            )
    return CriticalReport(
        region=region,
        boundary_count=region.boundary_count,
        internal_vertex_count=region.internal_vertex_count,
        internal_edge_count=region.internal_edge_count,
        is_combinatorial=bool(characterized and is_critical),
        is_critical=is_critical,
        is_irreducible=(
            region.internal_edge_count == 4 * region.internal_vertex_count
        ),
        basis=basis,
    )


# -- scanning a triangulation ---------------------------------------------


def simple_cycles(T: SurfaceTriangulation, length: int) -> Iterator[tuple[int, ...]]:
    """All simple cycles of the given length in the edge graph, each once.

    Cycles are rooted at their smallest vertex and oriented so the second
    vertex is smaller than the last; they come out in lexicographic order
    of that canonical tuple.  Enumeration is a depth-first path extension,
    so the cost is bounded by paths explored, not by vertex tuples.
    """
    neighbors = {v: sorted(T.neighbors[v]) for v in range(1, T.n + 1)}

    def extend(path: list[int], root: int) -> Iterator[tuple[int, ...]]:
        last = path[-1]
        if len(path) == length:
            if root in neighbors[last] and path[1] < path[-1]:
                yield tuple(path)
            return
        for nxt in neighbors[last]:
            if nxt > root and nxt not in path:
                path.append(nxt)
                yield from extend(path, root)
                path.pop()

    for root in range(1, T.n + 1):
        yield from extend([root], root)


def figure_eight_cuts(
    T: SurfaceTriangulation,
) -> Iterator[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """Pairs of 3-cycles sharing exactly one vertex (five vertices total).

    Yields (pinch vertex, first cycle, second cycle) with each cycle given
    as the sorted pair of non-pinch vertices, in lexicographic order.
    """
    for p in range(1, T.n + 1):
        nbrs = sorted(T.neighbors[p])
        triangles_at_p = [
            (a, b)
            for a, b in combinations(nbrs, 2)
            if b in T.neighbors[a]
        ]
        for (a, b), (c, d) in combinations(triangles_at_p, 2):
            if {a, b} & {c, d}:
                continue
            yield p, (a, b), (c, d)


def _candidate_regions_for_cycle(
    T: SurfaceTriangulation, cycle: tuple[int, ...], want_moebius: bool
) -> Iterator[Region]:
    pieces = separate_by_cycle(T, cycle)
    if len(pieces) != 2:
        return
    for piece in sorted(pieces, key=lambda p: sorted(p.triangles)):
        if piece.euler_characteristic == 1:
            region = make_region(piece.triangles)
            if region.shape == DISK:
                yield region
        elif want_moebius and piece.euler_characteristic == 0:
            region = make_region(piece.triangles)
            if region.shape == MOEBIUS:
                yield region


def _candidate_pinched_regions(
    T: SurfaceTriangulation, pinch: int, first: tuple[int, ...], second: tuple[int, ...]
) -> Iterator[Region]:
    cut = [
        tuple(sorted((pinch, first[0]))),
        tuple(sorted((pinch, first[1]))),
        first,
        tuple(sorted((pinch, second[0]))),
        tuple(sorted((pinch, second[1]))),
        second,
    ]
    components = separate_by_edge_set(T, cut)
    if len(components) < 2:
        return
    for comp in sorted(components, key=lambda c: sorted(c)):
        region = make_region(comp)
        if region.shape == PINCHED and region.boundary_count == 5:
            yield region


def iter_critical_reports(
    T: SurfaceTriangulation,
    spec: GenericSpecialization | None = None,
    seed: int = DEFAULT_REGION_SEED,
    max_boundary: int = 6,
    disks_only: bool = False,
) -> Iterator[CriticalReport]:
    """Every critical region the scan finds, boundary sizes ascending.

    Disks are searched on every surface; on the Klein bottle the scan also
    covers Moebius strips cut off by 4-cycles and pinched disks bounded by
    figure-eights on five vertices (suppressed by ``disks_only``).
    """
    want_moebius = T.topology.name == "klein-bottle" and not disks_only
    want_pinched = T.topology.name == "klein-bottle" and not disks_only
    rank_spec = _spec_for(T.n, spec, seed)
    seen: set[tuple[Face, ...]] = set()
    for b in range(3, max_boundary + 1):
        for cycle in simple_cycles(T, b):
            for region in _candidate_regions_for_cycle(
                T, cycle, want_moebius and b == 4
            ):
                if region.triangles in seen:
                    continue
                seen.add(region.triangles)
                report = critical_report(region, spec=rank_spec)
                if report.is_critical:
                    yield report
        if b == 5 and want_pinched:
            for pinch, first, second in figure_eight_cuts(T):
                for region in _candidate_pinched_regions(T, pinch, first, second):
                    if region.triangles in seen:
                        continue
                    seen.add(region.triangles)
                    report = critical_report(region, spec=rank_spec)
                    if report.is_critical:
                        yield report


def find_reducible_critical_region(
    T: SurfaceTriangulation,
    spec: GenericSpecialization | None = None,
    seed: int = DEFAULT_REGION_SEED,
    max_boundary: int = 6,
    disks_only: bool = False,
) -> CriticalReport | None:
    """First reducible critical region in scan order, or None.

    Returns the report of the first critical region with more internal
    edges to spare than its matrix has columns, or None when every region
    the scan sees is irreducible.
    """
    for report in iter_critical_reports(
        T, spec=spec, seed=seed, max_boundary=max_boundary, disks_only=disks_only
    ):
        if report.is_reducible:
            return report
    return None


# -- reduction by admissible contractions ----------------------------------


def _contractible_in(T: SurfaceTriangulation, edge: Face) -> bool:
    u, v = edge
    return T.n > 4 and len(T.neighbors[u] & T.neighbors[v]) == 2


def map_region_triangles(
    region: Region, vertex_map: dict[int, int]
) -> frozenset[Face]:
    """Push the region's triangles through a contraction's vertex map,
    dropping the two that degenerate."""
    out = set()
    for t in region.triangles:
        image = tuple(sorted({vertex_map[v] for v in t}))
        if len(image) == 3:
            out.add(image)
    return frozenset(out)


def admissible_contraction(
    T: SurfaceTriangulation,
    region: Region,
    spec: GenericSpecialization | None = None,
    seed: int = DEFAULT_REGION_SEED,
) -> Face | None:
    """An internal edge whose contraction keeps the region critical.

    The edge must be contractible in the ambient surface, remove exactly
    three internal edges (equivalently: create no diagonal), and preserve
    the region's shape, boundary size, and criticality.  Edges between two
    internal vertices are tried first.  Returns None when the region is
    already irreducible; raises TheoremContractError when a reducible
    critical region admits no such edge, which the reduction theory rules
    out for the characterized shapes.
    """
    if region.internal_edge_count == 4 * region.internal_vertex_count:
        return None
    rank_spec = _spec_for(T.n, spec, seed)
    interior_first = sorted(
        region.internal_edges,
        key=lambda e: (
            e[0] in region.boundary_vertices or e[1] in region.boundary_vertices,
            e,
        ),
    )
    for edge in interior_first:
        if not _contractible_in(T, edge):
            continue
        vmap = contraction_vertex_map(T.n, edge)
        try:
            shrunk = make_region(map_region_triangles(region, vmap))
        except InvalidComplexError:
            continue
        if (
            shrunk.shape != region.shape
            or shrunk.boundary_count != region.boundary_count
            or shrunk.internal_edge_count != region.internal_edge_count - 3
        ):
            continue
        if critical_report(shrunk, spec=rank_spec).is_critical:
            return edge
    raise TheoremContractError(
        f"reducible critical {region.shape} with {region.internal_vertex_count} "
        "internal vertices admits no admissible contraction"
    )


def reduce_region_to_irreducible(
    T: SurfaceTriangulation,
    region: Region,
    spec: GenericSpecialization | None = None,
    seed: int = DEFAULT_REGION_SEED,
) -> tuple[SurfaceTriangulation, tuple[Face, ...]]:
    """Contract admissible edges inside the region until it is irreducible.

    Returns the modified ambient triangulation and the contraction log
    (edges in the labels current at each step).
    """
    rank_spec = _spec_for(T.n, spec, seed)
    log: list[Face] = []
    while True:
        edge = admissible_contraction(T, region, spec=rank_spec)
        if edge is None:
            return T, tuple(log)
        vmap = contraction_vertex_map(T.n, edge)
        T = contract_surface_edge(T, edge)
        region = make_region(map_region_triangles(region, vmap))
        log.append(edge)
