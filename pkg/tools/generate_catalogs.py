#!/usr/bin/env python3
"""Regenerate the shipped irreducible-triangulation catalogs.

For each surface, one known triangulation is closed under vertex splits,
edge contractions, and diagonal flips, with canonical-form deduplication
and a vertex cap.  Splits and contractions are mutually inverse, and flips
connect triangulations of a fixed size, so the closure sweeps the whole
desk-scale census; the irreducible triangulations are exactly the classes
without a contractible edge.

The per-size totals are printed so they can be eyeballed against published
census counts (torus 1/7/112/2109 for n=7..10, projective plane 1/3/16/134
for n=6..9; 21 irreducible tori, 29 irreducible Klein bottles overall).
The script asserts only what the library itself depends on: the unique
7-vertex torus, the two projective-plane irreducibles on 6 and 7 vertices,
and that every shipped entry really has no contractible edge.

Run from the repository root after an editable install:

    python3 tools/generate_catalogs.py [--out src/extshift/data]
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from extshift.canonical import canonical_hex
from extshift.catalog import split_children
from extshift.constructions import (
    klein_bottle_nine,
    projective_plane_six,
    torus_seven,
)
from extshift.surfaces import (
    SurfaceTriangulation,
    contract_surface_edge,
    contractible_edges,
    flip_edge,
)
from extshift.tri_io import write_triangulations

CAPS = {"torus": 10, "projective-plane": 9, "klein-bottle": 10}
SEEDS = {
    "torus": torus_seven,
    "projective-plane": projective_plane_six,
    "klein-bottle": klein_bottle_nine,
}
FILES = {
    "torus": "irreducible_torus.tri",
    "projective-plane": "irreducible_rp2.tri",
    "klein-bottle": "irreducible_klein.tri",
}


def move_closure(seed: SurfaceTriangulation, max_n: int) -> dict[str, SurfaceTriangulation]:
    surface = seed.topology.name
    seen = {canonical_hex(seed): seed}
    frontier = dict(seen)
    while frontier:
        new: dict[str, SurfaceTriangulation] = {}

        def admit(child: SurfaceTriangulation) -> None:
            assert child.topology.name == surface
            key = canonical_hex(child)
            if key not in seen:
                seen[key] = child
                new[key] = child

        for key in sorted(frontier):
            T = frontier[key]
            if T.n < max_n:
                for child in split_children(T):
                    admit(child)
            for edge in contractible_edges(T):
                admit(contract_surface_edge(T, edge))
            for edge in T.edges:
                flipped = flip_edge(T, edge)
                if flipped is not None:
                    admit(flipped)
        frontier = new
    return seen


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--out",
        default=Path(__file__).resolve().parent.parent / "src" / "extshift" / "data",
        type=Path,
    )
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for surface, factory in SEEDS.items():
        cap = CAPS[surface]
        start = time.time()
        seen = move_closure(factory(), cap)
        by_n: dict[int, int] = {}
        for T in seen.values():
            by_n[T.n] = by_n.get(T.n, 0) + 1
        irreducible = sorted(
            (
                (T.n, canonical_hex(T), T)
                for T in seen.values()
                if not contractible_edges(T)
            ),
        )
        print(
            f"{surface}: {len(seen)} classes up to n={cap} "
            f"{dict(sorted(by_n.items()))}; {len(irreducible)} irreducible; "
            f"{time.time() - start:.1f}s",
            flush=True,
        )

        if surface == "torus":
            assert by_n[7] == 1, "the 7-vertex torus is unique"
        if surface == "projective-plane":
            counts = sorted(n for n, _, _ in irreducible)
            assert counts == [6, 7], counts
        if surface == "klein-bottle":
            assert canonical_hex(klein_bottle_nine()) in {h for _, h, _ in irreducible}

        tag = {"torus": "torus", "projective-plane": "rp2", "klein-bottle": "klein"}[
            surface
        ]
        entries = []
        index_within: dict[int, int] = {}
        for n, _, T in irreducible:
            i = index_within.get(n, 0)
            index_within[n] = i + 1
            entries.append((f"{tag}-irreducible-n{n}-{i:02d}", T.triangles))
        header = (
            f"Irreducible {surface} triangulations with at most {cap} vertices.\n"
            f"Generated by tools/generate_catalogs.py: closure of one known\n"
            f"triangulation under splits, contractions, and diagonal flips with\n"
            f"canonical-form dedup; entries are the classes with no contractible\n"
            f"edge.  Census totals observed: {dict(sorted(by_n.items()))}."
        )
        write_triangulations(args.out / FILES[surface], entries, header=header)
        print(f"  wrote {FILES[surface]}: {len(entries)} entries", flush=True)


if __name__ == "__main__":
    main()
