"""Triangulation catalogs, split-closure enumeration, and shift tables.

The surface algorithms bottom out in small reduced triangulations whose
shiftings are computed once and stored.  This module loads the shipped
irreducible-triangulation lists, closes them under vertex splits with
canonical-form deduplication (every triangulation of the surface arises
from an irreducible one by splits), runs the engine over the results, and
persists the answers keyed by canonical form, together with summary facts
the surface theorems promise.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .canonical import canonical_hex
from .engine import ShiftResult, shift_complex
from .fieldmath import derive_seed
from .profiles import match_profile
from .regions import find_reducible_critical_region
from .shifted import lex_prefix
from .surfaces import (
    SurfaceTriangulation,
    contractible_edges,
    is_prime,
    split_vertex,
)
from .surface_shift import klein_has_face_156
from .tri_io import read_triangulations

DEFAULT_TABLE_SEED = 0x5441424C


class CatalogError(ValueError):
    """A catalog file failed validation."""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    surface: str
    triangulation: SurfaceTriangulation
    canonical: str
    shifting: ShiftResult | None = None

    @property
    def n(self) -> int:
        return self.triangulation.n

    def with_shifting(self, result: ShiftResult) -> "CatalogEntry":
        return replace(self, shifting=result)


def entry_from_triangulation(
    name: str, surface: str, T: SurfaceTriangulation
) -> CatalogEntry:
    if T.topology.name != surface:
        raise CatalogError(
            f"{name}: expected {surface}, triangulation is {T.topology.name}"
        )
    return CatalogEntry(
        name=name, surface=surface, triangulation=T, canonical=canonical_hex(T)
    )


def load_catalog(
    surface: str, path: str | Path, irreducible: bool = True
) -> list[CatalogEntry]:
    """Read a multi-entry triangulation file and validate it.

    Declared-irreducible files must contain no entry with a contractible
    edge.  The projective plane has exactly two irreducible triangulations,
    with 6 and 7 vertices, so that file is pinned to that shape; other
    surfaces are validated property-wise only.
    """
    from .surfaces import surface_from_triangles

    entries: list[CatalogEntry] = []
    seen: dict[str, str] = {}
    for index, (name, triangles) in enumerate(read_triangulations(path)):
        label = name or f"{surface}-entry-{index}"
        T = surface_from_triangles(triangles)
        entry = entry_from_triangulation(label, surface, T)
        if irreducible and contractible_edges(T):
            raise CatalogError(f"{label}: declared irreducible but has contractible edges")
        if entry.canonical in seen:
            raise CatalogError(f"{label}: duplicate of {seen[entry.canonical]}")
        seen[entry.canonical] = label
        entries.append(entry)
    if surface == "projective-plane" and irreducible:
        counts = sorted(e.n for e in entries)
        if counts != [6, 7]:
            raise CatalogError(
                "projective-plane irreducibles must be exactly two, on 6 and 7 "
                f"vertices; file has {counts}"
            )
    return entries


# -- enumeration by vertex splits -------------------------------------------


def split_children(T: SurfaceTriangulation) -> Iterator[SurfaceTriangulation]:
    """Every single-vertex split of T, including the stackings where the
    kept arc is a single link edge."""
    for v in range(1, T.n + 1):
        cycle = T.link_cycles[v]
        for u in cycle:
            for w in cycle:
                if u != w:
                    yield split_vertex(T, v, u, w)


def enumerate_by_splits(
    seeds: Iterable[CatalogEntry],
    max_n: int,
    final_filter: Callable[[SurfaceTriangulation], bool] | None = None,
) -> list[CatalogEntry]:
    """Breadth-first closure of vertex splits up to ``max_n`` vertices.

    Splitting reverses contraction, so starting from every irreducible
    triangulation reaches every triangulation of the surface within the
    cap, each isomorphism class exactly once (canonical-form dedup).

    ``final_filter`` implements rejection at the top size only: candidates
    at ``max_n`` are kept only if the filter accepts them.  That is how the
    large-size spot checks generate critically irreducible instances
    without enumerating everything.
    """
    seeds = list(seeds)
    if not seeds:
        return []
    surface = seeds[0].surface
    levels: dict[int, dict[str, CatalogEntry]] = {}
    for entry in seeds:
        if entry.surface != surface:
            raise CatalogError("seeds mix surfaces")
        if entry.n <= max_n:
            levels.setdefault(entry.n, {})[entry.canonical] = entry

    out: list[CatalogEntry] = []
    rejected: set[str] = set()
    for n in sorted(set(levels) | set(range(min(levels), max_n + 1))):
        level = levels.get(n, {})
        out.extend(level[key] for key in sorted(level))
        if n >= max_n:
            continue
        nxt = levels.setdefault(n + 1, {})
        counter = len(nxt)
        for key in sorted(level):
            parent = level[key]
            for child in split_children(parent.triangulation):
                child_key = canonical_hex(child)
                if child_key in nxt or child_key in rejected:
                    continue
                if (
                    n + 1 == max_n
                    and final_filter is not None
                    and not final_filter(child)
                ):
                    rejected.add(child_key)
                    continue
                nxt[child_key] = CatalogEntry(
                    name=f"{surface}-n{n + 1}-{counter:05d}",
                    surface=surface,
                    triangulation=child,
                    canonical=child_key,
                )
                counter += 1
    return out


def critically_irreducible(T: SurfaceTriangulation) -> bool:
    return find_reducible_critical_region(T) is None


# -- shift tables ------------------------------------------------------------


class TableStore:
    """Per-surface directory of shift results keyed by canonical form.

    Layout: <root>/<surface>/index.json maps canonical hex codes to result
    files under results/; summary.json holds the derived facts and
    checkpoint.json the enumeration frontier.  Writes go through a
    temporary file and an atomic rename (single writer, many readers).
    """

    def __init__(self, root: str | Path, surface: str) -> None:
        self.surface = surface
        self.directory = Path(root) / surface
        self._index: dict[str, dict] | None = None

    # - paths -
    @property
    def index_path(self) -> Path:
        return self.directory / "index.json"

    def _result_path(self, key: str) -> Path:
        # canonical codes grow linearly with n and can exceed the
        # filesystem's name limit, so files are named by a digest
        digest = hashlib.sha256(key.encode("ascii")).hexdigest()[:32]
        return self.directory / "results" / f"{digest}.json"

    # - index -
    def _load_index(self) -> dict[str, dict]:
        if self._index is None:
            if self.index_path.exists():
                self._index = json.loads(self.index_path.read_text())["entries"]
            else:
                self._index = {}
        return self._index

    def _write_json(self, path: Path, payload: dict) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, indent=1, sort_keys=True))
        os.replace(tmp, path)

    def keys(self) -> tuple[str, ...]:
        return tuple(sorted(self._load_index()))

    def __len__(self) -> int:
        return len(self._load_index())

    def get(self, key: str) -> ShiftResult | None:
        meta = self._load_index().get(key)
        if meta is None:
            return None
        return ShiftResult.from_json_dict(
            json.loads(self._result_path(key).read_text())
        )

    def put(self, key: str, result: ShiftResult, name: str = "") -> None:
        path = self._result_path(key)
        self._write_json(path, result.to_json_dict())
        index = self._load_index()
        index[key] = {"file": f"results/{path.name}", "n": result.n, "name": name}
        self._write_json(self.index_path, {"entries": index})

    # - sidecars -
    def write_summary(self, facts: dict) -> None:
        self._write_json(self.directory / "summary.json", facts)

    def read_summary(self) -> dict | None:
        path = self.directory / "summary.json"
        return json.loads(path.read_text()) if path.exists() else None

    def write_checkpoint(self, payload: dict) -> None:
        self._write_json(self.directory / "checkpoint.json", payload)

    def read_checkpoint(self) -> dict | None:
        path = self.directory / "checkpoint.json"
        return json.loads(path.read_text()) if path.exists() else None


def build_tables(
    entries: Iterable[CatalogEntry],
    store: TableStore,
    seed: int = DEFAULT_TABLE_SEED,
    progress: Callable[[str], None] | None = None,
) -> list[CatalogEntry]:
    """Shift every entry with the engine and persist the results.

    Already-stored entries are not recomputed, so an interrupted build
    resumes where it stopped.  A seed disagreement aborts the build (the
    stored tables must never contain an unreliable answer).
    """
    filled: list[CatalogEntry] = []
    ordered = sorted(entries, key=lambda e: (e.n, e.canonical))
    for position, entry in enumerate(ordered):
        result = store.get(entry.canonical)
        if result is None:
            result = shift_complex(
                entry.triangulation.complex,
                derive_seed(seed, f"table-{entry.canonical}"),
            )
            store.put(entry.canonical, result, name=entry.name)
        filled.append(entry.with_shifting(result))
        if progress is not None and (position + 1) % 50 == 0:
            progress(f"{position + 1}/{len(ordered)} shifted")
    return filled


# -- summary facts ------------------------------------------------------------


def edge_prefix_holds(result: ShiftResult) -> bool:
    """Is the shifted edge family exactly the lex prefix of its size?"""
    edges = tuple(sorted(result.faces(1)))
    return edges == lex_prefix(result.n, 2, len(edges))


def survey_critical_regions(T: SurfaceTriangulation, max_boundary: int = 7) -> list:
    """All critical regions found by cutting along simple cycles (and, on
    the Klein bottle, figure-eights), up to the boundary cap.  Used for the
    summary facts; the cap is the survey's documented scope."""
    from .regions import iter_critical_reports

    return list(iter_critical_reports(T, max_boundary=max_boundary))


def _maximal_region_separation(reports: list) -> bool:
    """No boundary vertex of an inclusion-maximal critical region may be
    internal to another critical region."""
    triangle_sets = [frozenset(r.region.triangles) for r in reports]
    for i, report in enumerate(reports):
        is_maximal = not any(
            j != i and triangle_sets[i] < triangle_sets[j]
            for j in range(len(reports))
        )
        if not is_maximal:
            continue
        for j, other in enumerate(reports):
            if j == i:
                continue
            if report.region.boundary_vertices & other.region.internal_vertices:
                return False
    return True


def torus_summary_facts(pairs: list[tuple[CatalogEntry, ShiftResult]]) -> dict:
    """The computed facts the torus theorems rest on, over a table build.

    Non-prefix edge families among critically irreducible entries must be
    rare, 10-vertex, carry (5,6), and match the T3 profile; every
    11-vertex critically irreducible entry must be a full prefix; and
    irreducible or 8-vertex-prime entries have the promised triangles.
    """
    facts: dict = {"surface": "torus", "entries": len(pairs), "scan_boundary_limit": 7}
    exceptional = []
    n11 = []
    triangle_rows = []
    for entry, result in pairs:
        T = entry.triangulation
        crit_irred = critically_irreducible(T)
        if crit_irred and T.n <= 10 and not edge_prefix_holds(result):
            reports = survey_critical_regions(T)
            exceptional.append(
                {
                    "name": entry.name,
                    "n": T.n,
                    "has_56": (5, 6) in set(result.faces(1)),
                    "profile": match_profile("torus", T.n, result.face_sets()),
                    "all_regions_small_disks": all(
                        r.region.shape == "disk" and r.boundary_count <= 6
                        for r in reports
                    ),
                    "maximal_region_separation": _maximal_region_separation(reports),
                }
            )
        if crit_irred and T.n == 11:
            n11.append({"name": entry.name, "edge_prefix": edge_prefix_holds(result)})
        if (not contractible_edges(T) and T.n >= 8) or (
            T.n == 8 and is_prime(T) and contractible_edges(T)
        ):
            expected = set(
                lex_prefix(T.n, 3, 2 * T.n - 1)
            )  # the prefix through (1,4,8)
            expected.add((2, 3, 4))
            triangle_rows.append(
                {
                    "name": entry.name,
                    "n": T.n,
                    "triangles_match": set(result.faces(2)) == expected,
                }
            )
    facts["exceptional_edge_cases"] = {
        "count": len(exceptional),
        "all_n10": all(row["n"] == 10 for row in exceptional),
        "all_have_56": all(row["has_56"] for row in exceptional),
        "all_profile_T3": all(row["profile"] == "T3" for row in exceptional),
        "all_regions_small_disks": all(
            row["all_regions_small_disks"] for row in exceptional
        ),
        "maximal_region_separation": all(
            row["maximal_region_separation"] for row in exceptional
        ),
        "rows": exceptional,
    }
    facts["n11_critically_irreducible"] = {
        "count": len(n11),
        "all_edge_prefix": all(row["edge_prefix"] for row in n11),
    }
    facts["large_triangle_families"] = {
        "count": len(triangle_rows),
        "all_match": all(row["triangles_match"] for row in triangle_rows),
    }
    return facts


def rp2_summary_facts(pairs: list[tuple[CatalogEntry, ShiftResult]]) -> dict:
    facts: dict = {"surface": "projective-plane", "entries": len(pairs)}
    rows = []
    for entry, result in pairs:
        prefix_ok = tuple(sorted(result.faces(2))) == lex_prefix(
            entry.n, 3, 2 * entry.n - 2
        ) if is_prime(entry.triangulation) and entry.n >= 7 else None
        rows.append(
            {
                "name": entry.name,
                "n": entry.n,
                "prime": is_prime(entry.triangulation),
                "prime_prefix_147": prefix_ok,
                "profile": match_profile(
                    "projective-plane", entry.n, result.face_sets()
                ),
            }
        )
    facts["all_profiles_known"] = all(r["profile"] is not None for r in rows)
    facts["prime_prefix_147"] = all(
        r["prime_prefix_147"] for r in rows if r["prime_prefix_147"] is not None
    )
    facts["rows"] = rows
    return facts


def klein_summary_facts(pairs: list[tuple[CatalogEntry, ShiftResult]]) -> dict:
    facts: dict = {"surface": "klein-bottle", "entries": len(pairs)}
    rows = []
    for entry, result in pairs:
        triangles = set(result.faces(2))
        rows.append(
            {
                "name": entry.name,
                "n": entry.n,
                "no_157": (1, 5, 7) not in triangles,
                "face_156_agrees": ((1, 5, 6) in triangles)
                == klein_has_face_156(entry.triangulation),
                "profile": match_profile("klein-bottle", entry.n, result.face_sets()),
            }
        )
    facts["all_no_157"] = all(r["no_157"] for r in rows)
    facts["all_face_156_agree"] = all(r["face_156_agrees"] for r in rows)
    facts["all_profiles_known"] = all(r["profile"] is not None for r in rows)
    facts["rows"] = rows
    return facts


SUMMARY_BUILDERS = {
    "torus": torus_summary_facts,
    "projective-plane": rp2_summary_facts,
    "klein-bottle": klein_summary_facts,
}


def build_surface_tables(
    surface: str,
    seeds: list[CatalogEntry],
    store: TableStore,
    max_n: int,
    seed: int = DEFAULT_TABLE_SEED,
    final_filter: Callable[[SurfaceTriangulation], bool] | None = None,
    progress: Callable[[str], None] | None = None,
) -> dict:
    """Enumerate, shift, summarize, persist; returns the summary facts."""
    entries = enumerate_by_splits(seeds, max_n, final_filter=final_filter)
    if progress is not None:
        progress(f"{surface}: {len(entries)} triangulations up to n={max_n}")
    filled = build_tables(entries, store, seed=seed, progress=progress)
    pairs = [(e, e.shifting) for e in filled]
    facts = SUMMARY_BUILDERS[surface](pairs)
    facts["max_n"] = max_n
    store.write_summary(facts)
    store.write_checkpoint(
        {"max_n": max_n, "count": len(entries), "complete": True}
    )
    return facts
