"""Closed-form surface shifting against frozen families and the engine."""

import pytest

from extshift.canonical import canonical_hex
from extshift.catalog import split_children
from extshift.constructions import (
    grid_torus,
    klein_bottle_nine,
    octahedron,
    projective_plane_six,
    torus_seven,
)
from extshift.engine import CERTIFIED_BY_THEOREM, shift_complex
from extshift.regions import TheoremContractError
from extshift.shifted import tail_lex
from extshift.simplicial import build_complex
from extshift.surface_shift import (
    edges_from_tail,
    klein_has_face_156,
    klein_rp2_decomposition,
    reduce_critical_regions,
    rp2_prime_stage,
    shift_klein,
    shift_rp2,
    shift_surface,
    shift_torus,
)
from extshift.surfaces import UnsupportedTopologyError, surface_from_triangles
from extshift.tri_io import parse_triangulations

# An 8-vertex Klein bottle with no contractible edge; it does not split
# along any missing triangle, so the vertex-count rule decides (1,5,6).
KLEIN_EIGHT = (
    (1, 2, 4), (1, 2, 5), (1, 3, 7), (1, 3, 8), (1, 4, 8), (1, 5, 6),
    (1, 6, 7), (2, 3, 4), (2, 3, 5), (3, 4, 7), (3, 5, 8), (4, 5, 6),
    (4, 5, 7), (4, 6, 8), (5, 7, 8), (6, 7, 8),
)


def all_pairs(n):
    return {(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)}


def test_torus_seven_shift_is_the_frozen_family():
    result = shift_torus(torus_seven())
    assert set(result.faces(1)) == all_pairs(7)
    assert sorted(result.faces(2)) == [
        (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 2, 7),
        (1, 3, 4), (1, 3, 5), (1, 3, 6), (1, 3, 7),
        (1, 4, 5), (1, 4, 6), (1, 4, 7),
        (1, 5, 6), (2, 3, 4),
    ]
    assert result.certified_by_dim == {d: CERTIFIED_BY_THEOREM for d in (0, 1, 2)}
    # the 7-vertex stage is below the big-stage threshold, so the engine
    # was consulted for the reduced edges
    assert result.seeds != ()


def test_torus_seven_is_already_reduced():
    trace = reduce_critical_regions(torus_seven())
    assert trace.steps == ()
    assert trace.prime.n == 7
    assert trace.final.triangles == torus_seven().triangles


def test_grid_torus_hits_the_big_stage_branch():
    # every internal vertex of the 4x4 grid torus has degree 6, so no
    # region is critical and the 16-vertex stage is final
    T = grid_torus(4, 4)
    trace = reduce_critical_regions(T)
    assert trace.steps == ()
    assert trace.final.n == 16

    result = shift_torus(T)
    assert result.seeds == ()  # pure closed form, engine untouched
    expected_edges = {(a, b) for a in (1, 2, 3) for b in range(a + 1, 17)}
    expected_edges |= {(4, b) for b in range(5, 11)}
    assert set(result.faces(1)) == expected_edges
    expected_triangles = {(1, 2, c) for c in range(3, 17)}
    expected_triangles |= {(1, 3, c) for c in range(4, 17)}
    expected_triangles |= {(1, 4, c) for c in range(5, 9)}
    expected_triangles.add((2, 3, 4))
    assert set(result.faces(2)) == expected_triangles


def test_split_built_torus_reduces_back_and_matches_engine():
    T = torus_seven()
    while T.n < 12:
        T = min(split_children(T), key=canonical_hex)
    trace = reduce_critical_regions(T)
    assert trace.final.n == 7
    assert all(step.shape == "disk" for step in trace.steps)

    result = shift_torus(T)
    engine = shift_complex(build_complex(T.triangles), seed=55)
    assert result.faces_by_dim == engine.faces_by_dim
    # the complete-graph tail of the 7-vertex stage transfers unchanged
    assert tail_lex(result.faces(1), (5, 6)) == frozenset(
        {(5, 6), (5, 7), (6, 7)}
    )


def test_projective_plane_six_shift_is_the_frozen_family():
    result = shift_rp2(projective_plane_six())
    assert set(result.faces(1)) == all_pairs(6)
    assert sorted(result.faces(2)) == [
        (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6),
        (1, 3, 4), (1, 3, 5), (1, 3, 6),
        (1, 4, 5), (1, 4, 6), (1, 5, 6),
    ]
    assert result.seeds == ()


def test_split_projective_plane_reduces_to_six_and_matches_engine():
    P = min(split_children(projective_plane_six()), key=canonical_hex)
    assert P.n == 7
    assert rp2_prime_stage(P).n == 6
    result = shift_rp2(P)
    engine = shift_complex(build_complex(P.triangles), seed=56)
    assert result.faces_by_dim == engine.faces_by_dim


def test_klein_nine_shift_is_the_frozen_family():
    result = shift_klein(klein_bottle_nine())
    assert sorted(result.faces(1)) == sorted(
        all_pairs(9)
        - {(4, 9), (5, 8), (5, 9), (6, 7), (6, 8), (6, 9), (7, 8), (7, 9), (8, 9)}
    )
    assert sorted(result.faces(2)) == [
        (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 2, 7), (1, 2, 8),
        (1, 2, 9), (1, 3, 4), (1, 3, 5), (1, 3, 6), (1, 3, 7), (1, 3, 8),
        (1, 3, 9), (1, 4, 5), (1, 4, 6), (1, 4, 7), (1, 4, 8), (1, 5, 6),
    ]


def test_klein_nine_splits_into_two_small_projective_planes():
    decomposition = klein_rp2_decomposition(klein_bottle_nine())
    assert decomposition is not None
    half, other, sigma = decomposition
    assert sigma == (4, 5, 6)
    assert half.topology.name == "projective-plane"
    assert other.topology.name == "projective-plane"
    assert (half.n, other.n) == (6, 6)
    assert klein_has_face_156(klein_bottle_nine())


def test_eight_vertex_klein_uses_the_terminal_stage_rule():
    K = surface_from_triangles(KLEIN_EIGHT)
    assert K.topology.name == "klein-bottle"
    assert klein_rp2_decomposition(K) is None
    assert klein_has_face_156(K)

    result = shift_klein(K)
    engine = shift_complex(build_complex(KLEIN_EIGHT), seed=11)
    assert result.faces_by_dim == engine.faces_by_dim
    assert (1, 5, 6) in result.face_sets()[2]
    assert (1, 5, 7) not in result.face_sets()[2]


def test_edges_from_tail_builds_shifted_families():
    plain = edges_from_tail(10, 30, frozenset())
    expected = {(a, b) for a in (1, 2, 3) for b in range(a + 1, 11)}
    expected |= {(4, b) for b in range(5, 11)}
    assert set(plain) == expected

    lifted = edges_from_tail(9, 27, frozenset({(5, 6), (5, 7)}))
    assert (4, 9) not in lifted and (5, 7) in lifted
    assert len(lifted) == 27

    with pytest.raises(TheoremContractError):
        edges_from_tail(9, 1, frozenset({(5, 6), (5, 7)}))
    with pytest.raises(TheoremContractError):
        # (6,7) without (5,7) can never sit atop a lex prefix of 25
        edges_from_tail(9, 26, frozenset({(6, 7)}))


def test_dispatch_and_topology_guards():
    with pytest.raises(UnsupportedTopologyError):
        shift_surface(octahedron())
    with pytest.raises(UnsupportedTopologyError):
        shift_rp2(torus_seven())
    with pytest.raises(UnsupportedTopologyError):
        shift_torus(klein_bottle_nine())
    via_dispatch = shift_surface(torus_seven())
    assert via_dispatch.faces_by_dim == shift_torus(torus_seven()).faces_by_dim


def test_parse_then_shift_roundtrip_on_text_input():
    lines = ["name: k8"] + [" ".join(map(str, t)) for t in KLEIN_EIGHT]
    (name, triangles), = parse_triangulations("\n".join(lines))
    assert name == "k8"
    assert triangles == KLEIN_EIGHT
    result = shift_surface(surface_from_triangles(triangles))
    assert len(result.faces(2)) == 16
