"""Hand-built triangulations used as seeds, fixtures, and references."""

from __future__ import annotations

import random

from .simplicial import Face
from .surfaces import SurfaceTriangulation, split_vertex, surface_from_triangles

TETRAHEDRON_TRIANGLES: tuple[Face, ...] = (
    (1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4),
)

# Poles 1 and 6, equatorial square 2-3-4-5.
OCTAHEDRON_TRIANGLES: tuple[Face, ...] = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 2, 5),
    (2, 3, 6), (3, 4, 6), (4, 5, 6), (2, 5, 6),
)

# Icosahedron: poles 1 and 12, two staggered pentagonal rings 2..6 and 7..11.
ICOSAHEDRON_TRIANGLES: tuple[Face, ...] = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 7), (3, 7, 8), (3, 4, 8), (4, 8, 9), (4, 5, 9),
    (5, 9, 10), (5, 6, 10), (6, 10, 11), (2, 6, 11), (2, 7, 11),
    (7, 8, 12), (8, 9, 12), (9, 10, 12), (10, 11, 12), (7, 11, 12),
)

# The unique 6-vertex projective plane (antipodal quotient of the icosahedron).
PROJECTIVE_PLANE_6_TRIANGLES: tuple[Face, ...] = (
    (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 6), (1, 5, 6),
    (2, 3, 5), (2, 3, 6), (2, 4, 6), (3, 4, 5), (4, 5, 6),
)

# The unique 7-vertex torus: orbits of {0,1,3} and {0,2,3} under x -> x+1 (mod 7).
TORUS_7_TRIANGLES: tuple[Face, ...] = tuple(
    tuple(sorted(((base + k) % 7 + 1 for base in orbit)))
    for k in range(7)
    for orbit in ((0, 1, 3), (0, 2, 3))
)

# A Moebius-strip region: hexagonal disk with three internal vertices, each
# adjacent to three consecutive boundary vertices, glued to itself along one
# boundary edge.  Boundary cycle 1-3-2-4, diagonal (1,2), internal 5, 6, 7.
MOEBIUS_STRIP_TRIANGLES: tuple[Face, ...] = (
    (1, 2, 5), (2, 3, 5), (1, 3, 6), (1, 2, 6), (2, 4, 7),
    (1, 4, 7), (3, 5, 6), (2, 6, 7), (1, 5, 7), (5, 6, 7),
)


def tetrahedron() -> SurfaceTriangulation:
    return surface_from_triangles(TETRAHEDRON_TRIANGLES)


def octahedron() -> SurfaceTriangulation:
    return surface_from_triangles(OCTAHEDRON_TRIANGLES)


def icosahedron() -> SurfaceTriangulation:
    return surface_from_triangles(ICOSAHEDRON_TRIANGLES)


def torus_seven() -> SurfaceTriangulation:
    return surface_from_triangles(TORUS_7_TRIANGLES)


def projective_plane_six() -> SurfaceTriangulation:
    return surface_from_triangles(PROJECTIVE_PLANE_6_TRIANGLES)


def grid_torus(rows: int, cols: int) -> SurfaceTriangulation:
    """Torus on a rows x cols wraparound grid, each cell cut by a diagonal."""
    if rows < 3 or cols < 3:
        raise ValueError("grid torus needs at least 3 rows and 3 columns")

    def vert(i: int, j: int) -> int:
        return (i % rows) * cols + (j % cols) + 1

    triangles = []
    for i in range(rows):
        for j in range(cols):
            a = vert(i, j)
            b = vert(i + 1, j)
            c = vert(i, j + 1)
            d = vert(i + 1, j + 1)
            triangles.append(tuple(sorted((a, b, c))))
            triangles.append(tuple(sorted((b, c, d))))
    return surface_from_triangles(triangles)


def glue_along_triangle(
    A: SurfaceTriangulation,
    B: SurfaceTriangulation,
    face_a: Face,
    face_b: Face,
) -> SurfaceTriangulation:
    """Glue two closed surfaces along one face each and delete that face.

    ``face_b`` is identified with ``face_a`` position by position; the other
    vertices of ``B`` get fresh labels above ``A``'s.
    """
    if tuple(sorted(face_a)) not in A.complex.face_set(2):
        raise ValueError(f"{face_a} is not a face of the first surface")
    if tuple(sorted(face_b)) not in B.complex.face_set(2):
        raise ValueError(f"{face_b} is not a face of the second surface")
    mapping = dict(zip(face_b, face_a))
    fresh = A.n
    for v in range(1, B.n + 1):
        if v not in mapping:
            fresh += 1
            mapping[v] = fresh
    kept_a = [t for t in A.triangles if t != tuple(sorted(face_a))]
    dropped = tuple(sorted(face_b))
    kept_b = [
        tuple(sorted(mapping[v] for v in t))
        for t in B.triangles
        if t != dropped
    ]
    return surface_from_triangles(kept_a + kept_b)


def klein_bottle_nine() -> SurfaceTriangulation:
    """A 9-vertex Klein bottle: two 6-vertex projective planes glued along a
    triangle, with the shared triangle removed."""
    return glue_along_triangle(
        projective_plane_six(), projective_plane_six(), (4, 5, 6), (4, 5, 6)
    )


def random_splits(
    T: SurfaceTriangulation, n: int, rng: random.Random
) -> SurfaceTriangulation:
    """Grow a triangulation to ``n`` vertices by uniform random vertex splits.

    Each step picks a vertex and an ordered pair from its link cycle; the
    surface's topology is preserved, so this samples triangulations of the
    same surface at any requested size.
    """
    while T.n < n:
        v = rng.randrange(1, T.n + 1)
        cycle = T.link_cycles[v]
        u = rng.choice(cycle)
        w = rng.choice([x for x in cycle if x != u])
        T = split_vertex(T, v, u, w)
    return T


def random_torus(n: int, rng: random.Random) -> SurfaceTriangulation:
    """A random torus triangulation grown from the 7-vertex one by splits."""
    return random_splits(torus_seven(), n, rng)


def stacked_sphere(n: int, rng: random.Random) -> SurfaceTriangulation:
    """Random stacked sphere on ``n`` vertices: repeatedly subdivide a face."""
    if n < 4:
        raise ValueError("a sphere triangulation needs at least 4 vertices")
    triangles = list(TETRAHEDRON_TRIANGLES)
    for fresh in range(5, n + 1):
        face = triangles[rng.randrange(len(triangles))]
        triangles.remove(face)
        a, b, c = face
        triangles += [
            tuple(sorted((a, b, fresh))),
            tuple(sorted((a, c, fresh))),
            tuple(sorted((b, c, fresh))),
        ]
    return surface_from_triangles(triangles)
