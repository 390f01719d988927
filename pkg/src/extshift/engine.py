"""Exterior shifting over a random prime-field specialization.

The generic matrix is specialized to uniform entries over a large prime
field.  A random specialization can only introduce linear dependencies that
the generic matrix does not have, never remove them; shifted faces can
therefore only move lexicographically later.  Since a shifted family that is
an initial lex segment (possibly plus homology-forced faces) is already the
lex-minimal family of its size, such an answer is certified exact; anything
else is reported as a multi-seed Monte Carlo answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Mapping

from .fieldmath import (
    DEFAULT_MODULUS,
    PrimeField,
    RowBasis,
    derive_seed,
    det_mod,
)
from .shifted import lex_prefix, lex_subsets, tail_lex
from .simplicial import Face, SimplicialComplex, betti_numbers


class DegenerateSpecializationError(RuntimeError):
    """The sampled matrix failed to reach full rank on a face family."""


class ShiftDisagreementError(RuntimeError):
    """Independent seeds produced different uncertified shift results."""


class PsiTailMismatchError(RuntimeError):
    """The corank/tail identity failed twice; indicates an implementation bug."""


@dataclass(frozen=True)
class GenericSpecialization:
    """Random stand-in for the generic matrix: f_i = sum_j x_ij e_j."""

    n: int
    seed: int
    field: PrimeField
    rows: tuple[tuple[int, ...], ...]

    def entry(self, i: int, j: int) -> int:
        """x_ij with 1-based function index i and vertex index j."""
        return self.rows[i - 1][j - 1]


def fresh_specialization(
    n: int, seed: int, modulus: int = DEFAULT_MODULUS
) -> GenericSpecialization:
    if n < 1:
        raise ValueError("specialization needs n >= 1")
    fld = PrimeField(modulus)
    rng = random.Random(seed)
    rows = tuple(
        tuple(fld.random_element(rng) for _ in range(n)) for _ in range(n)
    )
    return GenericSpecialization(n=n, seed=seed, field=fld, rows=rows)


CERTIFIED = "certified"
CERTIFIED_BY_THEOREM = "certified-by-theorem"


def monte_carlo_tag(seed_count: int) -> str:
    return f"monte-carlo({seed_count})"


@dataclass(frozen=True, eq=True)
class ShiftResult:
    """Shifted faces per dimension plus the provenance of the computation."""

    n: int
    modulus: int
    seeds: tuple[int, ...]
    faces_by_dim: Mapping[int, tuple[Face, ...]]
    certified_by_dim: Mapping[int, str]

    def faces(self, d: int) -> tuple[Face, ...]:
        return self.faces_by_dim.get(d, ())

    def face_sets(self) -> dict[int, frozenset[Face]]:
        return {d: frozenset(fs) for d, fs in self.faces_by_dim.items()}

    def maximal_faces(self) -> frozenset[Face]:
        from .profiles import maximal_face_set

        return maximal_face_set(self.face_sets())

    def to_json_dict(self) -> dict:
        maximal = sorted(self.maximal_faces(), key=lambda f: (-len(f), f))
        return {
            "n": self.n,
            "modulus": self.modulus,
            "seeds": list(self.seeds),
            "faces_by_dim": {
                str(d): [list(f) for f in faces]
                for d, faces in sorted(self.faces_by_dim.items())
            },
            "maximal_faces": [list(f) for f in maximal],
            "certified_by_dim": {
                str(d): tag for d, tag in sorted(self.certified_by_dim.items())
            },
        }

    @staticmethod
    def from_json_dict(doc: dict) -> "ShiftResult":
        return ShiftResult(
            n=int(doc["n"]),
            modulus=int(doc["modulus"]),
            seeds=tuple(int(s) for s in doc["seeds"]),
            faces_by_dim={
                int(d): tuple(tuple(f) for f in faces)
                for d, faces in doc["faces_by_dim"].items()
            },
            certified_by_dim={
                int(d): str(tag) for d, tag in doc["certified_by_dim"].items()
            },
        )


def exterior_shift(
    K: SimplicialComplex, d: int, spec: GenericSpecialization
) -> tuple[Face, ...]:
    """Greedy lex scan: keep each (d+1)-subset whose wedge row is new.

    The coordinate row of a candidate sigma over the basis {e_tau : tau a
    d-face of K} has, at tau, the minor of the specialization with function
    rows sigma and vertex columns tau.  Rows are folded into an incremental
    echelon basis in scan order; no pivoting ever reorders acceptance.
    """
    if d > K.dim:
        raise ValueError(f"dimension {d} exceeds dim K = {K.dim}")
    if spec.n != K.n:
        raise ValueError("specialization size differs from vertex count")
    fld = spec.field
    columns = K.faces(d)
    target = len(columns)
    basis = RowBasis(width=target, field=fld)
    accepted: list[Face] = []
    for sigma in lex_subsets(K.n, d + 1):
        row = [
            det_mod(
                [[spec.rows[i - 1][v - 1] for v in tau] for i in sigma], fld
            )
            for tau in columns
        ]
        if basis.insert(row):
            accepted.append(sigma)
            if len(accepted) == target:
                break
    if len(accepted) != target:
        raise DegenerateSpecializationError(
            f"dimension {d}: rank {len(accepted)} < {target}; retry a new seed"
        )
    return tuple(accepted)


def certify(result: ShiftResult, K: SimplicialComplex) -> ShiftResult:
    """Mark each dimension certified when only a lex-minimal answer fits.

    A random specialization can only lose rank against the generic matrix,
    pushing faces lexicographically later; a result that is an initial lex
    segment — or, for a 2-dimensional complex with b2 = 1, a segment plus the
    homology-forced (2,3,4) — is therefore exact.
    """
    tags: dict[int, str] = {}
    for d, faces in result.faces_by_dim.items():
        faces_sorted = tuple(sorted(faces))
        if faces_sorted == lex_prefix(result.n, d + 1, len(faces_sorted)):
            tags[d] = CERTIFIED
            continue
        if d == 2 and K.dim == 2 and (2, 3, 4) in faces and _b2(K, result.modulus) == 1:
            rest = tuple(sorted(set(faces) - {(2, 3, 4)}))
            prefix = lex_prefix(result.n, 3, len(rest))
            if rest == prefix and (2, 3, 4) not in prefix:
                tags[d] = CERTIFIED
                continue
        tags[d] = monte_carlo_tag(len(result.seeds))
    return replace(result, certified_by_dim=tags)


def _b2(K: SimplicialComplex, modulus: int) -> int:
    numbers = betti_numbers(K, modulus)
    return numbers[2] if len(numbers) > 2 else 0


def shift_complex(
    K: SimplicialComplex,
    seed: int,
    modulus: int = DEFAULT_MODULUS,
    recheck_seeds: int = 2,
) -> ShiftResult:
    """Shift every dimension, certify, and re-run uncertified dimensions.

    Uncertified dimensions are recomputed with ``recheck_seeds`` further
    independent seeds; agreement yields a monte-carlo(k) tag, disagreement
    raises (the random answer would be unreliable).
    """
    faces_by_dim, used = _shift_all_dims(K, seed, modulus)
    result = ShiftResult(
        n=K.n,
        modulus=modulus,
        seeds=(used,),
        faces_by_dim=faces_by_dim,
        certified_by_dim={},
    )
    result = certify(result, K)
    shaky = [
        d for d, tag in result.certified_by_dim.items() if tag != CERTIFIED
    ]
    if not shaky or recheck_seeds <= 0:
        return result
    seeds = [used]
    for attempt in range(1, recheck_seeds + 1):
        again, used_again = _shift_all_dims(
            K, derive_seed(seed, f"recheck-{attempt}"), modulus, dims=shaky
        )
        seeds.append(used_again)
        for d in shaky:
            if again[d] != faces_by_dim[d]:
                raise ShiftDisagreementError(
                    f"dimension {d}: seeds {seeds[0]} and {used_again} disagree"
                )
    tags = {
        d: (tag if tag == CERTIFIED else monte_carlo_tag(len(seeds)))
        for d, tag in result.certified_by_dim.items()
    }
    return replace(result, seeds=tuple(seeds), certified_by_dim=tags)


def _shift_all_dims(
    K: SimplicialComplex,
    seed: int,
    modulus: int,
    dims: Iterable[int] | None = None,
) -> tuple[dict[int, tuple[Face, ...]], int]:
    """Run the scan on the requested dimensions, retrying degenerate seeds."""
    wanted = tuple(dims) if dims is not None else tuple(range(K.dim + 1))
    current = seed
    for attempt in range(3):
        spec = fresh_specialization(K.n, current, modulus)
        try:
            return {d: exterior_shift(K, d, spec) for d in wanted}, current
        except DegenerateSpecializationError:
            current = derive_seed(seed, f"degenerate-{attempt}")
    raise DegenerateSpecializationError(
        f"three specializations in a row were degenerate (seed {seed})"
    )


@dataclass(frozen=True)
class PsiMatrix:
    """Compression map coefficients for the d-faces of a complex.

    Row sigma = {v_0 < ... < v_d}; column (i, v) for i in d..k, v in 1..n.
    The entry is zero unless v = v_j in sigma, and otherwise carries sign
    (-1)^(j+1) times the minor with vertex rows sigma minus v and function
    columns 1..d-1 plus i.
    """

    d: int
    k: int
    n: int
    row_faces: tuple[Face, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return (self.k - self.d + 1) * self.n

    def rank(self, fld: PrimeField) -> int:
        basis = RowBasis(width=self.width, field=fld)
        return sum(1 for row in self.rows if basis.insert(list(row)))


def psi_matrix(
    K: SimplicialComplex, k: int, d: int, spec: GenericSpecialization
) -> PsiMatrix:
    if not (spec.n >= k >= d >= 1):
        raise ValueError(f"need n >= k >= d >= 1, got n={spec.n} k={k} d={d}")
    fld = spec.field
    n = spec.n
    minors: dict[tuple[Face, int], int] = {}

    def minor(rest: Face, i: int) -> int:
        key = (rest, i)
        got = minors.get(key)
        if got is None:
            funcs = list(range(1, d)) + [i]
            got = det_mod(
                [[spec.rows[f - 1][v - 1] for f in funcs] for v in rest], fld
            )
            minors[key] = got
        return got

    row_faces = K.faces(d)
    rows = []
    for sigma in row_faces:
        row = [0] * ((k - d + 1) * n)
        for j, v in enumerate(sigma):
            rest = sigma[:j] + sigma[j + 1:]
            for i in range(d, k + 1):
                value = minor(rest, i)
                if j % 2 == 0:
                    value = (-value) % fld.modulus
                row[(i - d) * n + (v - 1)] = value
        rows.append(tuple(row))
    return PsiMatrix(d=d, k=k, n=n, row_faces=row_faces, rows=tuple(rows))


def psi_corank(
    K: SimplicialComplex, k: int, d: int, spec: GenericSpecialization
) -> int:
    """Corank of the compression map, cross-checked against the tail identity.

    The corank must equal the size of the lex tail of the shifted d-faces at
    (k+1, k+2) (edges) or (1, k+1, k+2) (triangles).  One fresh seed retry is
    allowed; a second mismatch is a bug, not bad luck, and raises.
    """
    if d not in (1, 2):
        raise ValueError("corank identity is defined for dimensions 1 and 2")
    current = spec
    for attempt in range(2):
        corank = len(K.faces(d)) - psi_matrix(K, k, d, current).rank(current.field)
        shifted = exterior_shift(K, d, current)
        anchor = (k + 1, k + 2) if d == 1 else (1, k + 1, k + 2)
        expected = len(tail_lex(shifted, anchor))
        if corank == expected:
            return corank
        current = fresh_specialization(
            spec.n, derive_seed(spec.seed, f"psi-retry-{attempt}"), spec.field.modulus
        )
    raise PsiTailMismatchError(
        f"corank of psi(d={d}, k={k}) disagreed with the lex tail twice"
    )


def region_matrix(region, k: int, spec: GenericSpecialization) -> list[list[int]]:
    """Rows of the compression map restricted to a region's internal edges,
    keeping only columns (i, v) with v internal and i in 1..k."""
    fld = spec.field
    internal_vertices = sorted(region.internal_vertices)
    col_of = {v: idx for idx, v in enumerate(internal_vertices)}
    rows = []
    for a, b in sorted(region.internal_edges):
        row = [0] * (k * len(internal_vertices))
        for v, other, negate in ((a, b, True), (b, a, False)):
            if v in col_of:
                base = col_of[v] * k
                for i in range(1, k + 1):
                    value = spec.rows[i - 1][other - 1]
                    row[base + i - 1] = (-value) % fld.modulus if negate else value
        rows.append(row)
    return rows


def region_rows_independent(
    region, k: int, spec: GenericSpecialization, retries: int = 2
) -> bool:
    """Are the region's internal-edge rows independent at level k?

    True certifies generic independence (specializing can only lose rank).
    A False answer is retried with fresh seeds before being reported.
    """
    if k < 3:
        raise ValueError("independence level must be at least 3")
    current = spec
    for attempt in range(retries + 1):
        rows = region_matrix(region, k, current)
        basis = RowBasis(width=k * len(region.internal_vertices), field=current.field)
        if all(basis.insert(row) for row in rows):
            return True
        current = fresh_specialization(
            spec.n, derive_seed(spec.seed, f"region-retry-{attempt}"), spec.field.modulus
        )
    return False


def shift_union_over_simplex(
    delta_k: Mapping[int, Iterable[Face]] | ShiftResult,
    delta_l: Mapping[int, Iterable[Face]] | ShiftResult,
    delta_sigma: Mapping[int, Iterable[Face]] | ShiftResult,
    n: int,
) -> Callable[[Face], bool]:
    """Membership test for the shifting of a union glued along one simplex.

    For T = {t_1 < ... < t_{j+1}}, T belongs to the union's shifting iff
    t_{j+1} - t_j <= D_K(T) + D_L(T) - D_sigma(T), where D_S(T) counts the
    labels s > t_j with (T minus its largest element) plus s in Delta(S).
    """
    families = [_face_families(x) for x in (delta_k, delta_l, delta_sigma)]

    def degree(family: dict[int, frozenset[Face]], T: Face) -> int:
        base = T[:-1]
        size = len(T)
        return sum(
            1
            for s in range(T[-2] + 1, n + 1)
            if base + (s,) in family.get(size, frozenset())
        )

    def member(T: Face) -> bool:
        T = tuple(sorted(T))
        if len(T) == 1:
            return 1 <= T[0] <= n
        dk, dl, ds = (degree(f, T) for f in families)
        return T[-1] - T[-2] <= dk + dl - ds

    return member


def _face_families(source) -> dict[int, frozenset[Face]]:
    if isinstance(source, ShiftResult):
        mapping = source.faces_by_dim
    else:
        mapping = source
    out: dict[int, frozenset[Face]] = {}
    for _, faces in mapping.items():
        for f in faces:
            out.setdefault(len(f), set()).add(tuple(f))
    return {size: frozenset(faces) for size, faces in out.items()}


def betti_from_shift(result: ShiftResult) -> tuple[int, int, int]:
    """Betti numbers read off the shifted complex.

    In a shifted complex the d-th reduced Betti number counts d-faces that
    avoid vertex 1 and do not extend by 1 to a face; returned non-reduced,
    so index 0 is the component count.
    """
    counts = []
    for d in range(3):
        faces = set(result.faces(d))
        above = set(result.faces(d + 1))
        counts.append(
            sum(
                1
                for sigma in faces
                if 1 not in sigma and tuple(sorted((1,) + sigma)) not in above
            )
        )
    return (counts[0] + 1, counts[1], counts[2])
