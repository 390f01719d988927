"""Lexicographic and dominance order combinatorics on fixed-size vertex sets.

Conventions used throughout the package:

* a k-set is a strictly increasing tuple of labels from 1..n;
* ``a <= b`` in *lex* order is plain tuple comparison;
* ``a <= b`` in the *dominance* (componentwise) order means a_i <= b_i for
  every position i — smaller is "earlier" in both orders.

A family of k-sets is *shifted* when it is closed downward under
dominance; a complex is shifted when every dimension is and the family is
closed under taking subsets.  The tail of a family past an anchor set
collects everything lexicographically at or after the anchor.
"""

from __future__ import annotations

from itertools import combinations, islice
from typing import Iterable, Iterator, Mapping, Sequence

Face = tuple[int, ...]


def lex_subsets(n: int, k: int) -> Iterator[Face]:
    """All k-subsets of 1..n in lexicographic order."""
    return combinations(range(1, n + 1), k)


def lex_prefix(n: int, k: int, count: int) -> tuple[Face, ...]:
    """The first ``count`` k-subsets of 1..n in lex order."""
    prefix = tuple(islice(lex_subsets(n, k), count))
    if len(prefix) < count:
        raise ValueError(f"only {len(prefix)} {k}-subsets of 1..{n}, wanted {count}")
    return prefix


def lex_prefix_through(n: int, k: int, last: Sequence[int]) -> tuple[Face, ...]:
    """All k-subsets of 1..n lexicographically <= ``last``."""
    anchor = tuple(last)
    out = []
    for s in lex_subsets(n, k):
        if s > anchor:
            break
        out.append(s)
    if not out or out[-1] != anchor:
        raise ValueError(f"{anchor} is not a {k}-subset of 1..{n}")
    return tuple(out)


def dominance_le(a: Sequence[int], b: Sequence[int]) -> bool:
    """Componentwise comparison of two same-size sorted sets."""
    if len(a) != len(b):
        raise ValueError("dominance compares equal-size sets")
    return all(x <= y for x, y in zip(a, b))


def dominance_shadow(face: Face) -> Iterator[Face]:
    """Immediate dominance predecessors: decrement one entry by one."""
    for i, v in enumerate(face):
        w = v - 1
        if w >= 1 and (i == 0 or face[i - 1] < w):
            yield face[:i] + (w,) + face[i + 1:]


def is_shifted_family(faces: Iterable[Face]) -> bool:
    """Is a family of same-size sets closed downward under dominance?"""
    family = set(faces)
    return all(
        pred in family for face in family for pred in dominance_shadow(face)
    )


def is_shifted_complex(faces_by_dim: Mapping[int, Iterable[Face]]) -> bool:
    """Shifted in every dimension and closed under subsets."""
    levels = {d: set(faces) for d, faces in faces_by_dim.items()}
    for d, family in levels.items():
        if not is_shifted_family(family):
            return False
        if d > 0:
            below = levels.get(d - 1, set())
            for face in family:
                for i in range(len(face)):
                    if face[:i] + face[i + 1:] not in below:
                        return False
    return True


def dominance_closure(generators: Iterable[Face], n: int) -> frozenset[Face]:
    """All same-size subsets of 1..n dominance-below some generator."""
    gens = list(generators)
    if not gens:
        return frozenset()
    sizes = {len(g) for g in gens}
    if len(sizes) != 1:
        raise ValueError("closure generators must share one size")
    (k,) = sizes
    return frozenset(
        s for s in lex_subsets(n, k) if any(dominance_le(s, g) for g in gens)
    )


def dominance_maximal(faces: Iterable[Face]) -> tuple[Face, ...]:
    """The dominance-maximal elements of a same-size family, lex order."""
    family = sorted(set(faces))
    return tuple(
        f for f in family
        if not any(g != f and dominance_le(f, g) for g in family)
    )


def tail_lex(faces: Iterable[Face], anchor: Sequence[int]) -> frozenset[Face]:
    """Members of the family lexicographically >= the anchor set."""
    a = tuple(anchor)
    return frozenset(f for f in faces if len(f) == len(a) and f >= a)


def is_lex_prefix(faces: Iterable[Face], n: int) -> bool:
    """Is this family exactly an initial lex segment of k-subsets of 1..n?"""
    family = sorted(set(faces))
    if not family:
        return True
    k = len(family[0])
    return family == list(islice(lex_subsets(n, k), len(family)))
