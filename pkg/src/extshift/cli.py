"""Command-line front end.

Commands:
  shift    compute the exterior shift of a .tri input (engine or surface path)
  verify   run both paths and diff the face families
  regions  list the critical regions the reduction scan finds
  info     topology, f-vector, primeness, irreducibility, Betti numbers
  catalog  build or inspect shift tables for a whole surface census

Identical (input, seed, modulus, method) always produces byte-identical
output: the seed defaults to a digest of the input file's bytes, overridable
by --seed or the SHIFT_SEED environment variable.

Exit codes: 0 success, 1 malformed input, 2 topology unsupported for the
surface path, 3 verify mismatch, 4 internal theorem-contract violation or
seed disagreement.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from .canonical import canonical_hex
from .catalog import (
    DEFAULT_TABLE_SEED,
    TableStore,
    build_surface_tables,
    load_catalog,
)
from .engine import ShiftDisagreementError, ShiftResult, shift_complex
from .fieldmath import DEFAULT_MODULUS, derive_seed
from .regions import TheoremContractError, iter_critical_reports
from .simplicial import InvalidComplexError, betti_numbers, build_complex
from .surfaces import (
    NotClosedSurfaceError,
    UnsupportedTopologyError,
    classify_surface,
    contractible_edges,
    is_prime,
)
from .surface_shift import SURFACE_SHIFTERS, shift_surface
from .tri_io import TriFormatError, read_single_triangulation

DATA_DIR = Path(__file__).resolve().parent / "data"
CATALOG_FILES = {
    "torus": "irreducible_torus.tri",
    "projective-plane": "irreducible_rp2.tri",
    "klein-bottle": "irreducible_klein.tri",
}
DEFAULT_CAPS = {"torus": 9, "projective-plane": 9, "klein-bottle": 10}


def _default_seed(path: str) -> int:
    digest = hashlib.sha256(Path(path).read_bytes()).digest()
    return derive_seed(int.from_bytes(digest[:8], "big"), "cli")


def _load_surface(path: str):
    return classify_surface(build_complex(read_single_triangulation(path)))


def _print_result(result: ShiftResult, header: list[str], dim: int | None) -> None:
    maximal = result.maximal_faces()
    for line in header:
        print(f"# {line}")
    dims = sorted(result.faces_by_dim)
    if dim is not None:
        dims = [d for d in dims if d == dim]
    for d in dims:
        print(f"# dim {d}: {result.certified_by_dim[d]}")
        for face in sorted(result.faces(d)):
            star = " *" if face in maximal else ""
            print(" ".join(str(v) for v in face) + star)


def _json_result(result: ShiftResult, extra: dict, dim: int | None) -> str:
    doc = result.to_json_dict()
    if dim is not None:
        doc["faces_by_dim"] = {
            k: v for k, v in doc["faces_by_dim"].items() if int(k) == dim
        }
        doc["certified_by_dim"] = {
            k: v for k, v in doc["certified_by_dim"].items() if int(k) == dim
        }
    doc.update(extra)
    return json.dumps(doc, indent=1, sort_keys=True)


# -- commands ----------------------------------------------------------------


def cmd_shift(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed(args.input)
    method = args.method
    if method in {"auto", "surface"}:
        try:
            T = _load_surface(args.input)
        except (UnsupportedTopologyError, NotClosedSurfaceError):
            if method == "surface":
                raise
            T = None
        if T is not None and T.topology.name not in SURFACE_SHIFTERS:
            if method == "surface":
                raise UnsupportedTopologyError(
                    f"{T.topology.name}: no surface algorithm; use --method generic"
                )
            T = None
        if T is None:
            method = "generic"
        else:
            method = "surface"
            tables = (
                TableStore(args.catalog_dir, T.topology.name)
                if args.catalog_dir
                else None
            )
            result = shift_surface(T, tables=tables, seed=seed)
    if method == "generic":
        K = build_complex(read_single_triangulation(args.input))
        result = shift_complex(
            K, seed, modulus=args.modulus, recheck_seeds=args.seeds - 1
        )
    extra = {"input": args.input, "method": method}
    if args.json:
        print(_json_result(result, extra, args.dim))
    else:
        header = [
            f"input {args.input}",
            f"n={result.n} method={method} seed={seed} modulus={result.modulus}",
        ]
        _print_result(result, header, args.dim)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed(args.input)
    T = _load_surface(args.input)
    if T.topology.name not in SURFACE_SHIFTERS:
        raise UnsupportedTopologyError(
            f"{T.topology.name}: verify needs a surface algorithm to compare against"
        )
    tables = (
        TableStore(args.catalog_dir, T.topology.name) if args.catalog_dir else None
    )
    surface_result = shift_surface(T, tables=tables, seed=seed)
    engine_result = shift_complex(
        T.complex, derive_seed(seed, "verify-engine"), modulus=args.modulus
    )
    mismatches = []
    for d in sorted(surface_result.faces_by_dim):
        theirs = set(surface_result.faces(d))
        ours = set(engine_result.faces(d))
        if theirs != ours:
            mismatches.append((d, sorted(theirs - ours), sorted(ours - theirs)))
    if args.json:
        print(
            json.dumps(
                {
                    "input": args.input,
                    "agree": not mismatches,
                    "mismatches": [
                        {
                            "dim": d,
                            "surface_only": [list(f) for f in so],
                            "generic_only": [list(f) for f in go],
                        }
                        for d, so, go in mismatches
                    ],
                    "certified_by_dim": {
                        str(d): tag
                        for d, tag in sorted(engine_result.certified_by_dim.items())
                    },
                },
                indent=1,
                sort_keys=True,
            )
        )
    elif mismatches:
        for d, so, go in mismatches:
            print(f"dim {d}: surface-only {so} generic-only {go}")
    else:
        print(f"# {args.input}: surface and generic paths agree on all dimensions")
    return 3 if mismatches else 0


def cmd_regions(args: argparse.Namespace) -> int:
    T = _load_surface(args.input)
    seed = args.seed if args.seed is not None else _default_seed(args.input)
    reports = list(
        iter_critical_reports(T, seed=seed, max_boundary=args.max_boundary)
    )
    if args.json:
        print(
            json.dumps(
                {
                    "input": args.input,
                    "topology": T.topology.name,
                    "regions": [r.to_json_dict() for r in reports],
                },
                indent=1,
                sort_keys=True,
            )
        )
        return 0
    print(f"# {args.input}: topology={T.topology.name} n={T.n}")
    print(f"# {len(reports)} critical region(s), boundary <= {args.max_boundary}")
    for i, report in enumerate(reports, start=1):
        kind = "irreducible" if report.is_irreducible else "reducible"
        print(
            f"{i}. {report.region.shape} b={report.boundary_count}"
            f" m={report.internal_vertex_count}"
            f" internal-edges={report.internal_edge_count}"
            f" {kind} basis={report.basis}"
        )
        tris = " ".join(
            "(" + ",".join(str(v) for v in t) + ")" for t in report.region.triangles
        )
        print(f"   triangles: {tris}")
    return 0


def cmd_info(args: argparse.Namespace) -> int:
    K = build_complex(read_single_triangulation(args.input))
    f_vector = tuple(len(K.faces(d)) for d in range(K.dim + 1))
    betti = betti_numbers(K)
    lines = {
        "input": args.input,
        "n": K.n,
        "f_vector": list(f_vector),
        "betti": list(betti),
    }
    try:
        T = classify_surface(K)
    except NotClosedSurfaceError as exc:
        lines["topology"] = None
        lines["note"] = str(exc)
    else:
        lines["topology"] = T.topology.name
        lines["prime"] = is_prime(T)
        lines["irreducible"] = not contractible_edges(T)
        lines["canonical"] = canonical_hex(T)
    if args.json:
        print(json.dumps(lines, indent=1, sort_keys=True))
        return 0
    print(f"input: {args.input}")
    print(f"n: {lines['n']}")
    print(f"f-vector: {f_vector}")
    print(f"betti: {betti}")
    if lines["topology"] is None:
        print(f"topology: not a recognized closed surface ({lines['note']})")
    else:
        print(f"topology: {lines['topology']}")
        print(f"prime: {'yes' if lines['prime'] else 'no'}")
        print(f"irreducible: {'yes' if lines['irreducible'] else 'no'}")
        print(f"canonical: {lines['canonical']}")
    return 0


def cmd_catalog(args: argparse.Namespace) -> int:
    surface = args.surface
    store = TableStore(args.catalog_dir, surface)
    if args.catalog_command == "info":
        summary = store.read_summary()
        checkpoint = store.read_checkpoint()
        doc = {
            "surface": surface,
            "stored_results": len(store),
            "summary": summary,
            "checkpoint": checkpoint,
        }
        print(json.dumps(doc, indent=1, sort_keys=True))
        return 0
    seeds_path = args.seeds_file or DATA_DIR / CATALOG_FILES[surface]
    seeds = load_catalog(surface, seeds_path)
    max_n = args.max_n or DEFAULT_CAPS[surface]
    seed = args.seed if args.seed is not None else DEFAULT_TABLE_SEED
    facts = build_surface_tables(
        surface,
        seeds,
        store,
        max_n,
        seed=seed,
        progress=lambda msg: print(msg, file=sys.stderr),
    )
    print(json.dumps(facts, indent=1, sort_keys=True))
    return 0


# -- argument parsing ---------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--modulus", type=int, default=DEFAULT_MODULUS)
    sub.add_argument("--json", action="store_true")
    sub.add_argument("--catalog-dir", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extshift", description=__doc__.splitlines()[0]
    )
    commands = parser.add_subparsers(dest="command", required=True)

    shift = commands.add_parser("shift", help="compute the exterior shift")
    shift.add_argument("input")
    shift.add_argument(
        "--method", choices=("auto", "generic", "surface"), default="auto"
    )
    shift.add_argument("--dim", type=int, default=None)
    shift.add_argument(
        "--seeds", type=int, default=3, help="seed budget for uncertified answers"
    )
    _add_common(shift)
    shift.set_defaults(func=cmd_shift)

    verify = commands.add_parser("verify", help="diff surface and generic paths")
    verify.add_argument("input")
    _add_common(verify)
    verify.set_defaults(func=cmd_verify)

    regions = commands.add_parser("regions", help="list critical regions")
    regions.add_argument("input")
    regions.add_argument("--max-boundary", type=int, default=6)
    _add_common(regions)
    regions.set_defaults(func=cmd_regions)

    info = commands.add_parser("info", help="describe one triangulation")
    info.add_argument("input")
    _add_common(info)
    info.set_defaults(func=cmd_info)

    catalog = commands.add_parser("catalog", help="surface census shift tables")
    catalog_sub = catalog.add_subparsers(dest="catalog_command", required=True)
    for name in ("build", "info"):
        sub = catalog_sub.add_parser(name)
        sub.add_argument("surface", choices=tuple(CATALOG_FILES))
        sub.add_argument("--catalog-dir", default="catalog-tables")
        if name == "build":
            sub.add_argument("--max-n", type=int, default=None)
            sub.add_argument("--seeds-file", default=None)
            sub.add_argument("--seed", type=int, default=None)
        sub.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", 0) is None and "SHIFT_SEED" in os.environ:
        try:
            args.seed = int(os.environ["SHIFT_SEED"])
        except ValueError:
            print("SHIFT_SEED must be an integer", file=sys.stderr)
            return 1
    if getattr(args, "seeds", 1) < 1:
        print("--seeds must be at least 1", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except UnsupportedTopologyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TheoremContractError, ShiftDisagreementError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (TriFormatError, InvalidComplexError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
