"""Finite abstract simplicial complexes on vertex labels 1..n.

Faces are stored per dimension as lexicographically sorted tuples of
strictly increasing vertex tuples.  Complexes are immutable; operations
return new objects.  The label set is always exactly {1, ..., n} — helper
constructors compact arbitrary labels down to that range preserving order,
and contractions re-compact, so every downstream algorithm can rely on it.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .fieldmath import DEFAULT_MODULUS, PrimeField, sparse_rank

Face = tuple[int, ...]


class InvalidComplexError(ValueError):
    """Raised when input faces do not describe a valid complex."""


class SimplicialComplex:
    """Immutable simplicial complex; construct via :func:`build_complex`."""

    __slots__ = ("_faces", "_sets", "_hash")

    def __init__(self, faces_by_dim: Sequence[Sequence[Face]]) -> None:
        # Trusted constructor: callers guarantee downward closure and
        # compact labels.  build_complex is the validating entry point.
        self._faces: tuple[tuple[Face, ...], ...] = tuple(
            tuple(sorted(level)) for level in faces_by_dim
        )
        self._sets: tuple[frozenset[Face], ...] = tuple(
            frozenset(level) for level in self._faces
        )
        self._hash: int | None = None

    # -- basic queries -------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self._faces) - 1

    @property
    def n(self) -> int:
        """Number of vertices (labels are exactly 1..n)."""
        return len(self._faces[0]) if self._faces else 0

    def faces(self, d: int) -> tuple[Face, ...]:
        """All d-dimensional faces in lexicographic order."""
        if 0 <= d <= self.dim:
            return self._faces[d]
        return ()

    def face_set(self, d: int) -> frozenset[Face]:
        if 0 <= d <= self.dim:
            return self._sets[d]
        return frozenset()

    def has_face(self, face: Iterable[int]) -> bool:
        key = tuple(sorted(face))
        d = len(key) - 1
        return 0 <= d <= self.dim and key in self._sets[d]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self._faces)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(level) for d, level in enumerate(self._faces))

    def all_faces(self) -> Iterator[Face]:
        for level in self._faces:
            yield from level

    def facets(self) -> tuple[Face, ...]:
        """Inclusion-maximal faces, lex order within descending dimension."""
        result: list[Face] = []
        for d in range(self.dim, -1, -1):
            above = self._sets[d + 1] if d < self.dim else frozenset()
            for face in self._faces[d]:
                if not any(tuple(sorted(face + (v,))) in above
                           for v in range(1, self.n + 1) if v not in face):
                    result.append(face)
        return tuple(result)

    def is_pure(self) -> bool:
        top = self.dim
        return all(len(f) == top + 1 for f in self.facets())

    def faces_by_dim(self) -> dict[int, tuple[Face, ...]]:
        return {d: level for d, level in enumerate(self._faces)}

    # -- dunder plumbing ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplicialComplex) and self._faces == other._faces

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._faces)
        return self._hash

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.n}, f={self.f_vector()})"


def build_complex(faces: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Build the downward closure of ``faces``, labels compacted to 1..n.

    Args:
        faces: generating faces; each is an iterable of distinct integer
            labels.  Arbitrary labels are accepted and are renumbered to
            1..n preserving their relative order.

    Raises:
        InvalidComplexError: on an empty generating set, a face with a
            repeated vertex, or non-integer labels.
    """
    generators: list[Face] = []
    for raw in faces:
        face = tuple(sorted(raw))
        if not face:
            raise InvalidComplexError("empty face in input")
        if any(not isinstance(v, int) for v in face):
            raise InvalidComplexError(f"non-integer vertex label in face {raw!r}")
        if len(set(face)) != len(face):
            raise InvalidComplexError(f"repeated vertex in face {raw!r}")
        generators.append(face)
    if not generators:
        raise InvalidComplexError("a complex needs at least one face")

    labels = sorted({v for face in generators for v in face})
    relabel = {old: new for new, old in enumerate(labels, start=1)}

    top = max(len(f) for f in generators) - 1
    levels: list[set[Face]] = [set() for _ in range(top + 1)]
    for face in generators:
        compacted = tuple(relabel[v] for v in face)
        for k in range(1, len(compacted) + 1):
            for sub in combinations(compacted, k):
                levels[k - 1].add(sub)
    return SimplicialComplex(levels)


def contraction_vertex_map(n: int, edge: Face) -> dict[int, int]:
    """Label map old -> new induced by contracting ``edge`` on labels 1..n.

    The larger endpoint is identified onto the smaller; the surviving
    labels are compacted back to 1..n-1 preserving order (so every label
    above the removed one slides down by one).
    """
    u, v = sorted(edge)
    mapping: dict[int, int] = {}
    for w in range(1, n + 1):
        src = u if w == v else w
        mapping[w] = src - 1 if src > v else src
    return mapping


def contract_edge(K: SimplicialComplex, edge: Iterable[int]) -> SimplicialComplex:
    """Contract an edge: identify its endpoints, drop degenerate faces.

    The image of a downward-closed family is downward closed, so mapping
    every face and de-duplicating is enough; labels are re-compacted to
    1..n-1.
    """
    e = tuple(sorted(edge))
    if len(e) != 2 or not K.has_face(e):
        raise InvalidComplexError(f"{e} is not an edge of the complex")
    mapping = contraction_vertex_map(K.n, e)
    levels: list[set[Face]] = [set() for _ in range(K.dim + 1)]
    for face in K.all_faces():
        image = tuple(sorted({mapping[v] for v in face}))
        levels[len(image) - 1].add(image)
    while levels and not levels[-1]:
        levels.pop()
    return SimplicialComplex(levels)


def relabel_complex(K: SimplicialComplex, mapping: Mapping[int, int]) -> SimplicialComplex:
    """Apply a label bijection 1..n -> 1..n and return the relabeled complex."""
    if sorted(mapping) != list(range(1, K.n + 1)) or sorted(set(mapping.values())) != list(range(1, K.n + 1)):
        raise InvalidComplexError("relabeling must be a bijection on 1..n")
    levels: list[list[Face]] = [[] for _ in range(K.dim + 1)]
    for face in K.all_faces():
        levels[len(face) - 1].append(tuple(sorted(mapping[v] for v in face)))
    return SimplicialComplex(levels)


def boundary_rank(K: SimplicialComplex, d: int,
                  field: PrimeField | None = None) -> int:
    """Rank over F_p of the boundary map from d-chains to (d-1)-chains."""
    if d <= 0 or d > K.dim:
        return 0
    field = field or PrimeField()
    p = field.modulus
    col_index = {face: i for i, face in enumerate(K.faces(d - 1))}

    def rows() -> Iterator[dict[int, int]]:
        for face in K.faces(d):
            row: dict[int, int] = {}
            for i in range(len(face)):
                sub = face[:i] + face[i + 1:]
                row[col_index[sub]] = 1 if i % 2 == 0 else p - 1
            yield row

    return sparse_rank(rows(), field)


def betti_numbers(K: SimplicialComplex,
                  modulus: int = DEFAULT_MODULUS) -> tuple[int, ...]:
    """Betti numbers over F_p, indices 0..dim (b_0 counts components)."""
    field = PrimeField(modulus)
    ranks = [boundary_rank(K, d, field) for d in range(K.dim + 2)]
    return tuple(
        len(K.faces(d)) - ranks[d] - ranks[d + 1] for d in range(K.dim + 1)
    )
