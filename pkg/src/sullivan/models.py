"""A small zoo of hand-checked Sullivan models used by tests and `selftest`.

Each builder returns a fresh, fully validated model.  Docstrings record the
invariants that were verified by hand (formal dimension, lowest image word
length k, Toomer invariant where known) so the test suite can assert them.

``ELLIPTIC_K3_POOL`` collects the elliptic k = 3 fixtures — pure and
non-pure, two to six generators — over which the oracle and the spectral
method are required to agree.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Tuple

from .algebra import build_algebra, parse_element
from .differential import SullivanModel, build_differential, build_model


def _model(
    gens: List[Tuple[str, int]], images: Dict[str, str]
) -> SullivanModel:
    alg = build_algebra(gens)
    d = build_differential(
        alg, {name: parse_element(text, alg) for name, text in images.items()}
    )
    return build_model(alg, d)


def sphere_s2() -> SullivanModel:
    """The even sphere: (x2, y3; dy3 = x2^2).  k = 2, N = 2, e0 = 1."""
    return _model([("x2", 2), ("y3", 3)], {"y3": "x2^2"})


def exterior_two_odd() -> SullivanModel:
    """(y3, y5; d = 0): elliptic with zero differential (k is undefined).

    N = 8 and the top class y3*y5 gives e0 = 2.
    """
    return _model([("y3", 3), ("y5", 5)], {})


def projective_plane() -> SullivanModel:
    """(x2, y5; dy5 = x2^3): k = 3, N = 4, e0 = 2."""
    return _model([("x2", 2), ("y5", 5)], {"y5": "x2^3"})


def projective_plane_times_s3() -> SullivanModel:
    """(x2, y3, y5; dy3 = 0, dy5 = x2^3): k = 3, N = 7, e0 = 3."""
    return _model([("x2", 2), ("y3", 3), ("y5", 5)], {"y5": "x2^3"})


def two_projective_planes() -> SullivanModel:
    """Product of two copies of the k = 3 projective plane: N = 8, e0 = 4."""
    return _model(
        [("x2", 2), ("w2", 2), ("y5", 5), ("z5", 5)],
        {"y5": "x2^3", "z5": "w2^3"},
    )


def tower_one_even() -> SullivanModel:
    """(x2, y5, y9; dy5 = x2^3, dy9 = x2^5): k = 3, N = 13, e0 = 3.

    The lift of the depth-3 class x2^2*y9 needs exactly one correction
    (corrector x2^4*y5), making this the smallest fixture with a nontrivial
    lifting step.
    """
    return _model(
        [("x2", 2), ("y5", 5), ("y9", 9)], {"y5": "x2^3", "y9": "x2^5"}
    )


def tower_one_even_sphere_factor() -> SullivanModel:
    """(x2, y3, y5, y7; dy5 = x2^3, dy7 = x2^4): k = 3, N = 14, e0 = 4."""
    return _model(
        [("x2", 2), ("y3", 3), ("y5", 5), ("y7", 7)],
        {"y5": "x2^3", "y7": "x2^4"},
    )


def tower_two_even_disjoint() -> SullivanModel:
    """(x2, x4, y5, y11; dy5 = x2^3, dy11 = x4^3): k = 3, N = 12, e0 = 4."""
    return _model(
        [("x2", 2), ("x4", 4), ("y5", 5), ("y11", 11)],
        {"y5": "x2^3", "y11": "x4^3"},
    )


def tower_two_even_mixed() -> SullivanModel:
    """(x2, x4, y5, y7, y11; dy5 = x2^3, dy7 = x2^2*x4, dy11 = x4^3):
    k = 3, N = 19, e0 = 5."""
    return _model(
        [("x2", 2), ("x4", 4), ("y5", 5), ("y7", 7), ("y11", 11)],
        {"y5": "x2^3", "y7": "x2^2*x4", "y11": "x4^3"},
    )


def tower_word4_closure() -> SullivanModel:
    """(x2, x6, y5, y9, y23; dy5 = x2^3, dy9 = x2^2*x6, dy23 = x6^4).

    k = 3, N = 31.  Elliptic, but the word-length-3 part alone is not:
    the quotient by (x2^3, x2^2*x6) keeps every power of x6.  Exercises the
    spectral method outside the homogeneous regime.
    """
    return _model(
        [("x2", 2), ("x6", 6), ("y5", 5), ("y9", 9), ("y23", 23)],
        {"y5": "x2^3", "y9": "x2^2*x6", "y23": "x6^4"},
    )


def elliptic_pure_n37() -> SullivanModel:
    """(x2, x6, y5, y15, y23; dy5 = x2^3, dy15 = x2^2*x6^2, dy23 = x6^4).

    Pure, k = 3, N = 37, e0 = 6 — one above the value (k-2)*2 + 3 = 5
    predicted by the homogeneous-case formula, whose hypothesis fails here.
    """
    return _model(
        [("x2", 2), ("x6", 6), ("y5", 5), ("y15", 15), ("y23", 23)],
        {"y5": "x2^3", "y15": "x2^2*x6^2", "y23": "x6^4"},
    )


def elliptic_pure_n35() -> SullivanModel:
    """(x2, x6, y5, y13, y23; dy5 = x2^3, dy13 = x2*x6^2, dy23 = x6^4).

    Pure, k = 3, N = 35, e0 = 6; same story as elliptic_pure_n37.
    """
    return _model(
        [("x2", 2), ("x6", 6), ("y5", 5), ("y13", 13), ("y23", 23)],
        {"y5": "x2^3", "y13": "x2*x6^2", "y23": "x6^4"},
    )


def nonelliptic_truncation_n37() -> SullivanModel:
    """elliptic_pure_n37 with only its word-length-3 image kept
    (dy5 = x2^3, all other images zero).  Not elliptic: the pure quotient
    keeps every power of x6."""
    return _model(
        [("x2", 2), ("x6", 6), ("y5", 5), ("y15", 15), ("y23", 23)],
        {"y5": "x2^3"},
    )


def nonpure_n23() -> SullivanModel:
    """Non-pure elliptic fixture: (x2, x8, y3, y5, y23) with

        dx8  = x2^3*y3
        dy5  = x2^3
        dy23 = x8^3 + 3*x8^2*y3*y5

    d^2 = 0 by hand; k = 3, N = 23, e0 = 5 (the homogeneous-case formula
    applies: the word-length-3 part has elliptic pure quotient by
    (x2^3, x8^3)).
    """
    return _model(
        [("x2", 2), ("x8", 8), ("y3", 3), ("y5", 5), ("y23", 23)],
        {
            "x8": "x2^3*y3",
            "y5": "x2^3",
            "y23": "x8^3 + 3*x8^2*y3*y5",
        },
    )


def nonpure_n23_wide() -> SullivanModel:
    """nonpure_n23 with two extra deep terms in dy23 (word lengths 6 and 7):

        dy23 = x8^3 + x2^4*x8^2 + 3*x8^2*y3*y5 + 2*x2^4*x8*y3*y5

    Still d^2 = 0, k = 3, N = 23, e0 = 5.  Exercises obstructions sourced
    from several word lengths at once.
    """
    return _model(
        [("x2", 2), ("x8", 8), ("y3", 3), ("y5", 5), ("y23", 23)],
        {
            "x8": "x2^3*y3",
            "y5": "x2^3",
            "y23": "x8^3 + x2^4*x8^2 + 3*x8^2*y3*y5 + 2*x2^4*x8*y3*y5",
        },
    )


Builder = Callable[[], SullivanModel]

#: Elliptic k = 3 fixtures (pure and non-pure) for oracle/spectral agreement.
ELLIPTIC_K3_POOL: List[Tuple[str, Builder]] = [
    ("projective_plane", projective_plane),
    ("projective_plane_times_s3", projective_plane_times_s3),
    ("two_projective_planes", two_projective_planes),
    ("tower_one_even", tower_one_even),
    ("tower_one_even_sphere_factor", tower_one_even_sphere_factor),
    ("tower_two_even_disjoint", tower_two_even_disjoint),
    ("tower_two_even_mixed", tower_two_even_mixed),
    ("tower_word4_closure", tower_word4_closure),
    ("elliptic_pure_n37", elliptic_pure_n37),
    ("elliptic_pure_n35", elliptic_pure_n35),
    ("nonpure_n23", nonpure_n23),
    ("nonpure_n23_wide", nonpure_n23_wide),
]

#: Everything, for the property harness (includes k = 2, d = 0, non-elliptic).
ALL_MODELS: List[Tuple[str, Builder]] = [
    ("sphere_s2", sphere_s2),
    ("exterior_two_odd", exterior_two_odd),
    ("nonelliptic_truncation_n37", nonelliptic_truncation_n37),
] + ELLIPTIC_K3_POOL


def all_models() -> List[Tuple[str, SullivanModel]]:
    return [(name, build()) for name, build in ALL_MODELS]
