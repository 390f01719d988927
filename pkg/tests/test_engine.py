import pytest

from extshift.constructions import (
    glue_along_triangle,
    klein_bottle_nine,
    octahedron,
    projective_plane_six,
    tetrahedron,
    torus_seven,
)
from extshift.engine import (
    CERTIFIED,
    DegenerateSpecializationError,
    GenericSpecialization,
    ShiftResult,
    betti_from_shift,
    exterior_shift,
    fresh_specialization,
    psi_corank,
    psi_matrix,
    region_matrix,
    region_rows_independent,
    shift_complex,
    shift_union_over_simplex,
)
from extshift.fieldmath import PrimeField, derive_seed
from extshift.profiles import TORUS_PROFILES, profile_closure
from extshift.regions import make_region
from extshift.shifted import is_shifted_family, lex_prefix_through, tail_lex
from extshift.simplicial import betti_numbers, build_complex, relabel_complex

SEED = 0xE46


def test_complete_two_skeleton_shifts_to_itself():
    K = tetrahedron().complex
    spec = fresh_specialization(4, SEED)
    assert exterior_shift(K, 2, spec) == K.faces(2)


def test_octahedron_triangles_follow_the_sphere_formula():
    K = octahedron().complex
    result = shift_complex(K, SEED)
    expected = set(lex_prefix_through(6, 3, (1, 3, 6))) | {(2, 3, 4)}
    assert set(result.faces(2)) == expected
    assert result.certified_by_dim[2] == CERTIFIED


def test_torus_seven_shift_matches_the_known_family():
    result = shift_complex(torus_seven().complex, SEED)
    for d in (1, 2):
        assert set(result.faces(d)) == profile_closure(
            TORUS_PROFILES["T1"], 7, d
        )
    assert all(tag == CERTIFIED for tag in result.certified_by_dim.values())


def test_shift_preserves_f_vector_and_is_shifted():
    for T in (octahedron(), projective_plane_six(), klein_bottle_nine()):
        result = shift_complex(T.complex, SEED)
        for d in range(3):
            assert len(result.faces(d)) == len(T.complex.faces(d))
            assert is_shifted_family(result.faces(d))


def test_shift_is_labeling_invariant():
    K = torus_seven().complex
    base = shift_complex(K, SEED).face_sets()
    perm = {1: 7, 2: 5, 3: 1, 4: 6, 5: 2, 6: 4, 7: 3}
    relabelled = shift_complex(relabel_complex(K, perm), derive_seed(SEED, "relab"))
    assert relabelled.face_sets() == base


def test_degenerate_specialization_is_reported():
    K = octahedron().complex
    rows = tuple(tuple(1 for _ in range(6)) for _ in range(6))
    spec = GenericSpecialization(n=6, seed=0, field=PrimeField(97), rows=rows)
    with pytest.raises(DegenerateSpecializationError):
        exterior_shift(K, 1, spec)


def test_betti_from_shift_agrees_with_boundary_ranks():
    for T in (octahedron(), torus_seven(), projective_plane_six(), klein_bottle_nine()):
        result = shift_complex(T.complex, SEED)
        assert betti_from_shift(result) == betti_numbers(T.complex)


def test_result_json_round_trip():
    result = shift_complex(torus_seven().complex, SEED)
    doc = result.to_json_dict()
    back = ShiftResult.from_json_dict(doc)
    assert back.face_sets() == result.face_sets()
    assert back.certified_by_dim == result.certified_by_dim
    assert back.seeds == result.seeds


def test_psi_corank_equals_tail_size_on_a_cycle():
    K = build_complex([(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    spec = fresh_specialization(5, SEED)
    shifted = exterior_shift(K, 1, spec)
    for k in (1, 2, 3):
        tail = tail_lex(shifted, (k + 1, k + 2))
        assert psi_corank(K, k, 1, spec) == len(tail)


def test_psi_corank_equals_tail_size_on_a_surface():
    K = projective_plane_six().complex
    spec = fresh_specialization(6, SEED)
    shifted = exterior_shift(K, 2, spec)
    for k in (2, 3, 4):
        tail = tail_lex(shifted, (1, k + 1, k + 2))
        assert psi_corank(K, k, 2, spec) == len(tail)


def test_psi_matrix_shape():
    K = octahedron().complex
    spec = fresh_specialization(6, SEED)
    m = psi_matrix(K, 3, 1, spec)
    assert m.width == (3 - 1 + 1) * 6
    assert len(m.rows) == len(K.faces(1))


def _star_region(degree):
    center = degree + 1
    triangles = [
        (i, i % degree + 1, center) for i in range(1, degree + 1)
    ]
    return make_region(tuple(tuple(sorted(t)) for t in triangles))


def test_four_star_rows_are_independent_but_five_star_rows_are_not():
    spec = fresh_specialization(6, SEED)
    four = _star_region(4)
    assert len(four.internal_edges) == 4
    assert region_rows_independent(four, 4, spec)
    five = _star_region(5)
    assert len(five.internal_edges) == 5
    assert not region_rows_independent(five, 4, spec)


def test_region_matrix_entries_sit_in_the_right_columns():
    spec = fresh_specialization(5, SEED)
    region = _star_region(4)
    rows = region_matrix(region, 4, spec)
    assert len(rows) == 4 and all(len(r) == 4 for r in rows)
    # each internal edge (v, 5) contributes only in vertex 5's block,
    # with the coefficient row of the *other* endpoint
    for (a, b), row in zip(sorted(region.internal_edges), rows):
        assert b == 5
        assert any(row)


def test_union_membership_matches_direct_shift():
    # two octahedra meeting in one common triangle (kept: the union is a
    # wedge of spheres, not the glued surface, which deletes that face)
    A = octahedron()
    B = octahedron()
    glued = glue_along_triangle(A, B, A.triangles[0], B.triangles[0])
    union = build_complex(list(glued.triangles) + [A.triangles[0]])
    da = shift_complex(A.complex, SEED)
    db = shift_complex(B.complex, derive_seed(SEED, "b"))
    sigma = build_complex([A.triangles[0]])
    dsigma = shift_complex(sigma, derive_seed(SEED, "s"))
    member = shift_union_over_simplex(da, db, dsigma, union.n)
    actual = shift_complex(union, derive_seed(SEED, "u"))
    from itertools import combinations

    for d in (0, 1, 2):
        faces = set(actual.faces(d))
        for cand in combinations(range(1, union.n + 1), d + 1):
            assert member(cand) == (cand in faces), (d, cand)
