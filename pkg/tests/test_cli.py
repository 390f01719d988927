"""The command-line interface: output shapes, determinism, exit codes."""

import json

import pytest

from extshift.canonical import canonical_hex
from extshift.catalog import split_children
from extshift.cli import main
from extshift.constructions import (
    octahedron,
    projective_plane_six,
    torus_seven,
)
from extshift.tri_io import write_triangulations


def write_tri(path, triangulation, name=None):
    write_triangulations(path, [(name, triangulation.triangles)])
    return str(path)


@pytest.fixture
def torus_file(tmp_path):
    return write_tri(tmp_path / "t7.tri", torus_seven())


@pytest.fixture
def sphere_file(tmp_path):
    return write_tri(tmp_path / "oct.tri", octahedron())


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_shift_human_output_marks_maximal_faces(torus_file, capsys):
    code, out, _ = run(capsys, "shift", torus_file, "--seed", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == f"# input {torus_file}"
    assert "n=7 method=surface seed=5" in lines[1]
    # stars mark the dominance-maximal faces, i.e. the generators of the
    # shifted family
    assert "6 7 *" in lines
    assert "1 4 7 *" in lines and "1 5 6 *" in lines and "2 3 4 *" in lines
    assert "1 2" in lines and "1 2 3" in lines  # dominated faces print bare


def test_shift_json_schema(torus_file, capsys):
    code, out, _ = run(capsys, "shift", torus_file, "--json", "--seed", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["input"] == torus_file
    assert doc["method"] == "surface"
    assert doc["n"] == 7
    assert set(doc["faces_by_dim"]) == {"0", "1", "2"}
    assert [1, 5, 6] in doc["faces_by_dim"]["2"]
    assert doc["certified_by_dim"]["2"] == "certified-by-theorem"


def test_shift_dim_filter(torus_file, capsys):
    code, out, _ = run(
        capsys, "shift", torus_file, "--json", "--dim", "2", "--seed", "5"
    )
    doc = json.loads(out)
    assert code == 0
    assert set(doc["faces_by_dim"]) == {"2"}
    assert len(doc["faces_by_dim"]["2"]) == 14


def test_shift_output_is_byte_identical(torus_file, capsys):
    args = ("shift", torus_file, "--method", "generic", "--seed", "9")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_shift_seed_env_matches_flag(torus_file, capsys, monkeypatch):
    _, flagged, _ = run(capsys, "shift", torus_file, "--seed", "77")
    monkeypatch.setenv("SHIFT_SEED", "77")
    _, via_env, _ = run(capsys, "shift", torus_file)
    assert flagged == via_env

    monkeypatch.setenv("SHIFT_SEED", "many")
    code, _, err = run(capsys, "shift", torus_file)
    assert code == 1 and "SHIFT_SEED" in err


def test_shift_method_surface_rejects_spheres(sphere_file, capsys):
    code, _, err = run(capsys, "shift", sphere_file, "--method", "surface")
    assert code == 2
    assert "error" in err

    code, out, _ = run(capsys, "shift", sphere_file, "--seed", "5")
    assert code == 0  # auto falls back to the generic engine
    assert "method=generic" in out


def test_shift_rejects_bad_seed_budget(torus_file, capsys):
    code, _, err = run(capsys, "shift", torus_file, "--seeds", "0")
    assert code == 1 and "--seeds" in err


def test_shift_malformed_and_missing_inputs(tmp_path, capsys):
    bad = tmp_path / "bad.tri"
    bad.write_text("1 2\n")
    code, _, err = run(capsys, "shift", str(bad))
    assert code == 1 and "error" in err

    code, _, err = run(capsys, "shift", str(tmp_path / "absent.tri"))
    assert code == 1


def test_verify_agrees_on_the_seven_vertex_torus(torus_file, capsys):
    code, out, _ = run(capsys, "verify", torus_file, "--seed", "5")
    assert code == 0
    assert "agree" in out

    code, out, _ = run(capsys, "verify", torus_file, "--json", "--seed", "5")
    doc = json.loads(out)
    assert code == 0
    assert doc["agree"] is True and doc["mismatches"] == []


def test_verify_needs_a_surface_algorithm(sphere_file, capsys):
    code, _, err = run(capsys, "verify", sphere_file)
    assert code == 2 and "verify" in err


def test_regions_listing(tmp_path, capsys):
    child = min(split_children(torus_seven()), key=canonical_hex)
    path = write_tri(tmp_path / "t8.tri", child)
    code, out, _ = run(capsys, "regions", path, "--seed", "5")
    assert code == 0
    assert "topology=torus n=8" in out
    assert "1. disk b=3" in out

    code, out, _ = run(capsys, "regions", path, "--json", "--seed", "5")
    doc = json.loads(out)
    assert code == 0
    assert doc["topology"] == "torus"
    assert doc["regions"][0]["shape"] == "disk"
    assert doc["regions"][0]["is_critical"] is True


def test_info_on_a_surface_and_a_non_surface(torus_file, tmp_path, capsys):
    code, out, _ = run(capsys, "info", torus_file, "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["topology"] == "torus"
    assert doc["f_vector"] == [7, 21, 14]
    assert doc["betti"] == [1, 2, 1]
    assert doc["prime"] is True and doc["irreducible"] is True

    lonely = tmp_path / "triangle.tri"
    lonely.write_text("1 2 3\n")
    code, out, _ = run(capsys, "info", str(lonely), "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["topology"] is None and "note" in doc


def test_catalog_build_then_info(tmp_path, capsys):
    catalog_dir = str(tmp_path / "tables")
    code, out, err = run(
        capsys,
        "catalog",
        "build",
        "projective-plane",
        "--max-n",
        "7",
        "--catalog-dir",
        catalog_dir,
    )
    assert code == 0
    facts = json.loads(out)
    assert facts["entries"] == 4 and facts["prime_prefix_147"] is True

    code, out, _ = run(
        capsys, "catalog", "info", "projective-plane", "--catalog-dir", catalog_dir
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["stored_results"] == 4
    assert doc["checkpoint"]["complete"] is True
    assert doc["summary"]["max_n"] == 7


def test_shift_uses_catalog_tables_when_given(tmp_path, capsys):
    catalog_dir = str(tmp_path / "tables")
    run(
        capsys,
        "catalog",
        "build",
        "projective-plane",
        "--max-n",
        "6",
        "--catalog-dir",
        catalog_dir,
    )
    path = write_tri(tmp_path / "p6.tri", projective_plane_six())
    code, out, _ = run(
        capsys, "shift", path, "--catalog-dir", catalog_dir, "--seed", "5"
    )
    assert code == 0 and "method=surface" in out
