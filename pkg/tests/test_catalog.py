"""Catalog loading, split-closure enumeration, and the shift-table store."""

from pathlib import Path

import pytest

from extshift.canonical import canonical_hex
from extshift.catalog import (
    CatalogError,
    TableStore,
    build_surface_tables,
    build_tables,
    critically_irreducible,
    edge_prefix_holds,
    entry_from_triangulation,
    enumerate_by_splits,
    load_catalog,
    split_children,
)
from extshift.constructions import octahedron, projective_plane_six, torus_seven
from extshift.engine import shift_complex
from extshift.surfaces import is_prime
from extshift.tri_io import write_triangulations

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "extshift" / "data"


def seed_entries(surface, filename):
    return load_catalog(surface, DATA_DIR / filename)


def test_packaged_irreducible_catalogs_load():
    torus = seed_entries("torus", "irreducible_torus.tri")
    rp2 = seed_entries("projective-plane", "irreducible_rp2.tri")
    klein = seed_entries("klein-bottle", "irreducible_klein.tri")
    assert len(torus) == 21 and max(e.n for e in torus) == 10
    assert sorted(e.n for e in rp2) == [6, 7]
    assert len(klein) == 27 and max(e.n for e in klein) == 10
    # the unique 7-vertex torus appears once, as a seed
    assert [e.n for e in torus].count(7) == 1


def test_load_catalog_rejects_wrong_surface(tmp_path):
    path = tmp_path / "bad.tri"
    write_triangulations(path, [("t7", torus_seven().triangles)])
    with pytest.raises(CatalogError, match="expected klein-bottle"):
        load_catalog("klein-bottle", path)


def test_load_catalog_rejects_duplicates_and_reducibles(tmp_path):
    twice = tmp_path / "twice.tri"
    write_triangulations(
        twice, [("a", torus_seven().triangles), ("b", torus_seven().triangles)]
    )
    with pytest.raises(CatalogError, match="duplicate"):
        load_catalog("torus", twice)

    child = min(split_children(torus_seven()), key=canonical_hex)
    posing = tmp_path / "posing.tri"
    write_triangulations(posing, [("fake", child.triangles)])
    with pytest.raises(CatalogError, match="contractible"):
        load_catalog("torus", posing)
    assert load_catalog("torus", posing, irreducible=False)[0].n == 8


def test_projective_plane_catalog_is_pinned(tmp_path):
    partial = tmp_path / "partial.tri"
    write_triangulations(partial, [("p6", projective_plane_six().triangles)])
    with pytest.raises(CatalogError, match="exactly two"):
        load_catalog("projective-plane", partial)


def test_torus_split_closure_reproduces_the_small_census():
    seeds = seed_entries("torus", "irreducible_torus.tri")
    entries = enumerate_by_splits(seeds, 8)
    by_n = {}
    for e in entries:
        by_n[e.n] = by_n.get(e.n, 0) + 1
    assert by_n == {7: 1, 8: 7}

    # splits of the 7-vertex torus alone give the three reducible classes,
    # two of which are prime
    t7 = entry_from_triangulation("t7", "torus", torus_seven())
    from_t7 = [e for e in enumerate_by_splits([t7], 8) if e.n == 8]
    assert len(from_t7) == 3
    assert sum(is_prime(e.triangulation) for e in from_t7) == 2
    # the two primes have no reducible critical region at all, even though
    # both still have contractible edges
    assert [critically_irreducible(e.triangulation) for e in from_t7] == [
        is_prime(e.triangulation) for e in from_t7
    ]


def test_enumeration_is_deterministic_and_final_filter_rejects():
    seeds = seed_entries("projective-plane", "irreducible_rp2.tri")
    once = enumerate_by_splits(seeds, 7)
    again = enumerate_by_splits(seeds, 7)
    assert [e.canonical for e in once] == [e.canonical for e in again]
    assert [e.name for e in once] == [e.name for e in again]
    assert len(once) == 4  # 6-vertex seed, its 7-vertex splits, 7-vertex seed

    # the filter rejects generated candidates at the top size; seeds are
    # trusted members and stay
    nothing = enumerate_by_splits(seeds, 7, final_filter=lambda T: False)
    assert [e.n for e in nothing] == [6, 7]


def test_table_store_roundtrip(tmp_path):
    store = TableStore(tmp_path, "torus")
    key = canonical_hex(torus_seven())
    assert store.get(key) is None and len(store) == 0

    result = shift_complex(torus_seven().complex, seed=7)
    store.put(key, result, name="t7")
    assert store.get(key) == result
    assert store.keys() == (key,)
    # results are stored under digest names so long codes stay usable
    files = list((tmp_path / "torus" / "results").iterdir())
    assert len(files) == 1 and len(files[0].name) <= 64

    store.write_summary({"surface": "torus", "entries": 1})
    store.write_checkpoint({"max_n": 7, "count": 1, "complete": True})
    fresh = TableStore(tmp_path, "torus")
    assert fresh.read_summary()["entries"] == 1
    assert fresh.read_checkpoint()["complete"] is True


def test_build_tables_resumes_from_stored_results(tmp_path):
    store = TableStore(tmp_path, "torus")
    entry = entry_from_triangulation("t7", "torus", torus_seven())
    # pre-store a result under the entry's key: a resumed build must trust
    # the store rather than recompute
    planted = shift_complex(octahedron().complex, seed=3)
    store.put(entry.canonical, planted, name="planted")
    filled = build_tables([entry], store)
    assert filled[0].shifting == planted
    assert len(store) == 1


def test_build_surface_tables_end_to_end(tmp_path):
    store = TableStore(tmp_path, "projective-plane")
    seeds = seed_entries("projective-plane", "irreducible_rp2.tri")
    facts = build_surface_tables("projective-plane", seeds, store, max_n=7)
    assert facts["entries"] == 4
    assert facts["all_profiles_known"] is True
    assert facts["prime_prefix_147"] is True
    assert len(store) == 4
    assert store.read_checkpoint() == {"max_n": 7, "count": 4, "complete": True}
    assert store.read_summary()["surface"] == "projective-plane"

    by_name = {row["name"]: row for row in facts["rows"]}
    for entry in build_tables(
        enumerate_by_splits(seeds, 7), TableStore(tmp_path, "projective-plane")
    ):
        stored = entry.shifting
        assert len(stored.faces(1)) == 3 * stored.n - 3
        # prime planes shift to a full edge prefix; the reducible ones keep
        # the (5,6) tail instead of (4,7)
        if by_name[entry.name]["prime"]:
            assert edge_prefix_holds(stored)
        else:
            assert not edge_prefix_holds(stored)
            assert (5, 6) in set(stored.faces(1))


def test_torus_summary_facts_on_the_small_census(tmp_path):
    store = TableStore(tmp_path, "torus")
    seeds = seed_entries("torus", "irreducible_torus.tri")
    facts = build_surface_tables("torus", seeds, store, max_n=8)
    assert facts["entries"] == 8
    assert facts["exceptional_edge_cases"]["count"] == 0
    assert facts["n11_critically_irreducible"]["count"] == 0
    # the four 8-vertex irreducibles and the two reducible primes all carry
    # the same triangle family
    assert facts["large_triangle_families"] == {"count": 6, "all_match": True}


def test_klein_summary_facts_on_the_eight_vertex_entries(tmp_path):
    store = TableStore(tmp_path, "klein-bottle")
    seeds = [
        e
        for e in seed_entries("klein-bottle", "irreducible_klein.tri")
        if e.n == 8
    ]
    assert len(seeds) == 6
    facts = build_surface_tables("klein-bottle", seeds, store, max_n=8)
    assert facts["entries"] == 6
    assert facts["all_no_157"] is True
    assert facts["all_face_156_agree"] is True
    assert facts["all_profiles_known"] is True
