"""The possible maximal-face sets of shifted surface triangulations.

Each profile lists, for an n-vertex triangulation of the torus, the
projective plane, or the Klein bottle, the faces that are maximal under the
componentwise partial order in the shifted complex.  The token ``n`` stands
for the number of vertices.
"""

from __future__ import annotations

from .shifted import dominance_closure, dominance_maximal
from .simplicial import Face

Profile = tuple[tuple[int | str, ...], ...]

TORUS_PROFILES: dict[str, Profile] = {
    "T1": ((2, 3, 4), (1, 3, "n"), (1, 4, 7), (1, 5, 6), (3, "n"), (6, 7)),
    "T2": ((2, 3, 4), (1, 3, "n"), (1, 4, 8), (3, "n"), (4, 8), (5, 7)),
    "T3": ((2, 3, 4), (1, 3, "n"), (1, 4, 8), (3, "n"), (4, 9), (5, 6)),
    "T4": ((2, 3, 4), (1, 3, "n"), (1, 4, 8), (3, "n"), (4, 10)),
}

PROJECTIVE_PLANE_PROFILES: dict[str, Profile] = {
    "P1": ((1, 3, "n"), (1, 5, 6), (3, "n"), (5, 6)),
    "P2": ((1, 3, "n"), (1, 4, 7), (3, "n"), (4, 7)),
}

KLEIN_BOTTLE_PROFILES: dict[str, Profile] = {
    "KB1": ((1, 3, "n"), (1, 4, 8), (1, 5, 6), (3, "n"), (4, 8), (5, 7)),
    "KB2": ((1, 3, "n"), (1, 4, 9), (3, "n"), (4, 9), (5, 6)),
    "KB3": ((1, 3, "n"), (1, 4, 9), (3, "n"), (4, 10)),
}

PROFILES_BY_SURFACE: dict[str, dict[str, Profile]] = {
    "torus": TORUS_PROFILES,
    "projective-plane": PROJECTIVE_PLANE_PROFILES,
    "klein-bottle": KLEIN_BOTTLE_PROFILES,
}


def instantiate_profile(profile: Profile, n: int) -> frozenset[Face]:
    """Substitute the vertex count into a profile's symbolic faces."""
    faces = []
    for face in profile:
        concrete = tuple(n if v == "n" else int(v) for v in face)
        if any(v < 1 or v > n for v in concrete) or len(set(concrete)) != len(concrete):
            raise ValueError(f"profile face {face} invalid at n={n}")
        faces.append(tuple(sorted(concrete)))
    return frozenset(faces)


def profile_closure(profile: Profile, n: int, dim: int) -> frozenset[Face]:
    """All faces of one dimension implied by a profile's generators at n."""
    generators = [f for f in instantiate_profile(profile, n) if len(f) == dim + 1]
    return dominance_closure(generators, n)


def match_profile(
    surface: str, n: int, faces_by_dim: dict[int, frozenset[Face]]
) -> str | None:
    """Name of the profile whose closure equals the given faces, if any.

    Comparison is by the dominance closure of each dimension's generators,
    which stays correct at degenerate sizes where a profile's listed faces
    are a redundant generating set (e.g. the torus at n=7).
    """
    for name, profile in PROFILES_BY_SURFACE[surface].items():
        if all(
            faces_by_dim.get(d, frozenset()) == profile_closure(profile, n, d)
            for d in (1, 2)
        ):
            return name
    return None


def maximal_face_set(faces_by_dim: dict[int, frozenset[Face]]) -> frozenset[Face]:
    """Union over dimensions >= 1 of the dominance-maximal faces."""
    out: set[Face] = set()
    for d, faces in faces_by_dim.items():
        if d >= 1:
            out.update(dominance_maximal(faces))
    return frozenset(out)
