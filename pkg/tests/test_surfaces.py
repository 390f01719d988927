import pytest

from extshift.constructions import (
    grid_torus,
    klein_bottle_nine,
    octahedron,
    projective_plane_six,
    tetrahedron,
    torus_seven,
)
from extshift.simplicial import build_complex
from extshift.surfaces import (
    NotClosedSurfaceError,
    classify_surface,
    contract_surface_edge,
    contractible_edges,
    flip_edge,
    is_prime,
    missing_triangles,
    separate_by_cycle,
    split_vertex,
    surface_from_triangles,
)


def test_classification_of_the_model_surfaces():
    assert tetrahedron().topology.name == "sphere"
    assert octahedron().topology.name == "sphere"
    assert torus_seven().topology.name == "torus"
    assert projective_plane_six().topology.name == "projective-plane"
    assert klein_bottle_nine().topology.name == "klein-bottle"
    assert grid_torus(3, 4).topology.name == "torus"


def test_non_surface_complexes_are_rejected():
    with pytest.raises(NotClosedSurfaceError):
        classify_surface(build_complex([(1, 2, 3), (4, 5, 6)]))  # disconnected
    with pytest.raises(NotClosedSurfaceError):
        classify_surface(build_complex([(1, 2, 3)]))  # has boundary


def test_link_cycles_cover_each_vertex_once():
    T = torus_seven()
    for v in range(1, 8):
        cycle = T.link_cycles[v]
        assert sorted(cycle) == sorted(set(cycle))
        assert set(cycle) == T.neighbors[v]


def test_torus_seven_is_prime_and_irreducible():
    # the edge graph is complete, so every non-face triple is a missing
    # triangle; none of them bounds a disk, and no edge is contractible
    T = torus_seven()
    assert len(missing_triangles(T)) == 35 - 14
    assert is_prime(T)
    assert contractible_edges(T) == ()


def test_contract_then_split_round_trips_the_vertex_count():
    T = grid_torus(3, 4)
    edges = contractible_edges(T)
    assert edges
    smaller = contract_surface_edge(T, edges[0])
    assert smaller.n == T.n - 1
    assert smaller.topology.name == "torus"
    v = 1
    cycle = smaller.link_cycles[v]
    bigger = split_vertex(smaller, v, cycle[0], cycle[2])
    assert bigger.n == T.n
    assert bigger.topology.name == "torus"


def test_split_vertex_rejects_bad_arc_endpoints():
    T = octahedron()
    with pytest.raises(ValueError):
        split_vertex(T, 1, 2, 2)
    with pytest.raises(ValueError):
        split_vertex(T, 1, 2, 99)


def test_flip_edge_preserves_topology_and_counts():
    T = grid_torus(3, 4)
    flipped = None
    for edge in T.edges:
        flipped = flip_edge(T, edge)
        if flipped is not None:
            break
    assert flipped is not None
    assert flipped.topology.name == "torus"
    assert flipped.complex.f_vector() == T.complex.f_vector()


def test_flip_edge_refuses_when_opposite_diagonal_exists():
    # on the 7-vertex torus every pair of vertices is adjacent, so no
    # edge can be flipped without doubling one
    T = torus_seven()
    assert all(flip_edge(T, e) is None for e in T.edges)


def test_separating_cycle_splits_a_sphere_into_two_disks():
    T = octahedron()
    cycle = tuple(sorted(octahedron().neighbors[1] & octahedron().neighbors[6]))
    # the octahedron equator around vertices 1 and 6
    pieces = separate_by_cycle(T, T.link_cycles[1])
    assert len(pieces) == 2
    assert all(p.euler_characteristic == 1 and p.is_disk for p in pieces)
    del cycle


def test_nonseparating_cycle_on_the_torus_yields_one_piece():
    T = torus_seven()
    found = 0
    for cycle in [(1, 2, 3), (1, 2, 4), (1, 3, 5)]:
        pieces = separate_by_cycle(T, cycle)
        if len(pieces) == 1:
            found += 1
    assert found > 0


def test_stacked_vertex_makes_the_triangulation_non_prime():
    T = octahedron()
    v = 1
    cycle = T.link_cycles[v]
    stacked = split_vertex(T, v, cycle[0], cycle[1])
    assert stacked.topology.name == "sphere"
    assert not is_prime(stacked) or min(stacked.degree(u) for u in range(1, 8)) > 3
    # a split with adjacent arc ends creates a degree-3 vertex whose link
    # is a missing triangle bounding its star
    degrees = [stacked.degree(u) for u in range(1, stacked.n + 1)]
    assert 3 in degrees


def test_surface_from_triangles_compacts_labels():
    T = surface_from_triangles([(10, 20, 30), (10, 20, 40), (10, 30, 40), (20, 30, 40)])
    assert T.n == 4
    assert T.topology.name == "sphere"
