import random

from extshift.canonical import canonical_form, canonical_hex
from extshift.constructions import (
    grid_torus,
    klein_bottle_nine,
    octahedron,
    torus_seven,
)
from extshift.simplicial import relabel_complex
from extshift.surfaces import classify_surface, split_vertex


def _relabelled(T, perm):
    return classify_surface(relabel_complex(T.complex, perm))


def test_canonical_form_is_relabeling_invariant():
    rng = random.Random(11)
    for T in (octahedron(), torus_seven(), klein_bottle_nine()):
        base = canonical_form(T)
        for _ in range(20):
            labels = list(range(1, T.n + 1))
            rng.shuffle(labels)
            perm = {old: new for old, new in zip(range(1, T.n + 1), labels)}
            assert canonical_form(_relabelled(T, perm)) == base


def test_distinct_triangulations_get_distinct_codes():
    T = grid_torus(3, 3)
    v = 1
    cycle = T.link_cycles[v]
    # two different splits of the same vertex
    a = split_vertex(T, v, cycle[0], cycle[2])
    b = split_vertex(T, v, cycle[0], cycle[3])
    codes = {canonical_hex(a), canonical_hex(b), canonical_hex(T)}
    assert len(codes) == 3


def test_hex_is_stable_across_calls():
    assert canonical_hex(torus_seven()) == canonical_hex(torus_seven())
