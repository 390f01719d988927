import random

import pytest

from extshift.constructions import (
    glue_along_triangle,
    grid_torus,
    klein_bottle_nine,
    octahedron,
    projective_plane_six,
    stacked_sphere,
    torus_seven,
)
from extshift.simplicial import betti_numbers


def test_model_f_vectors():
    assert torus_seven().complex.f_vector() == (7, 21, 14)
    assert projective_plane_six().complex.f_vector() == (6, 15, 10)
    assert klein_bottle_nine().complex.f_vector() == (9, 27, 18)
    assert octahedron().complex.f_vector() == (6, 12, 8)


def test_grid_torus_dimensions_and_topology():
    for rows, cols in ((3, 3), (3, 5), (4, 4)):
        T = grid_torus(rows, cols)
        n = rows * cols
        assert T.n == n
        assert T.complex.f_vector() == (n, 3 * n, 2 * n)
        assert T.topology.name == "torus"


def test_grid_torus_rejects_degenerate_grids():
    with pytest.raises(ValueError):
        grid_torus(2, 5)


def test_stacked_spheres_are_spheres_with_degree_three_vertices():
    rng = random.Random(5)
    for n in (4, 5, 9, 12):
        T = stacked_sphere(n, rng)
        assert T.n == n
        assert T.topology.name == "sphere"
        assert betti_numbers(T.complex) == (1, 0, 1)
        if n > 4:
            assert min(T.degree(v) for v in range(1, n + 1)) == 3


def test_glue_along_triangle_merges_two_spheres():
    A = octahedron()
    B = octahedron()
    glued = glue_along_triangle(A, B, A.triangles[0], B.triangles[0])
    # gluing two spheres along a triangle gives a sphere again, with the
    # shared triangle removed on both sides
    assert glued.topology.name == "sphere"
    assert glued.n == 2 * 6 - 3


def test_klein_bottle_nine_is_irreducible():
    from extshift.surfaces import contractible_edges

    assert contractible_edges(klein_bottle_nine()) == ()
