"""Degreewise cohomology and the invariants built directly on top of it.

Everything is computed one degree at a time with exact rational linear
algebra.  The pieces provided here:

* cochain maps and cohomology bases with deterministic representatives,
* the formal dimension N read off the generator degrees,
* an ellipticity decision procedure through the associated pure model,
* the top cohomology class of an elliptic model,
* the Toomer invariant by direct word-length filtration membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import (
    Element,
    basis,
    coefficient_vector,
    element_from_vector,
    wordlength,
)
from .differential import SullivanModel, pure_projection
from .errors import InternalInconsistencyError, PreconditionError
from .linalg import (
    RationalMatrix,
    RowSpace,
    kernel_basis,
    quotient_dim,
    rref,
    solve_membership,
)


@dataclass
class CohomologySpace:
    """H^degree of a model: dimension plus explicit cocycle representatives.

    ``representatives`` extend a basis of the boundary space to a basis of the
    cocycle space; ``boundary_basis`` is the canonical (reduced row echelon)
    basis of the boundaries in this degree.
    """

    degree: int
    dimension: int
    representatives: List[Element]
    boundary_basis: List[Element]


@dataclass
class EllipticityResult:
    """Outcome of the finite-dimensionality test with its certificate."""

    status: str  # "elliptic" | "not_elliptic" | "inconclusive"
    formal_dimension: int
    bound: int
    window_width: int
    window_start: Optional[int] = None
    nonvanishing_degrees: Tuple[int, ...] = ()

    @property
    def is_elliptic(self) -> bool:
        return self.status == "elliptic"


@dataclass
class ToomerResult:
    """The Toomer invariant with a witness cocycle.

    ``representative`` is a non-bounding cocycle of top degree whose terms all
    have word length >= e0.  For the spectral method ``witness`` records the
    filtration index of the surviving class and whether e0 is 2p or 2p + 1.
    """

    e0: int
    method: str
    representative: Element
    witness: Optional[Tuple[int, str]] = None


def _cached(model: SullivanModel, key, producer):
    if key not in model._cache:
        model._cache[key] = producer()
    return model._cache[key]


def cochain_maps(model: SullivanModel, n: int) -> Tuple[RationalMatrix, RationalMatrix]:
    """Matrices of d out of degree n and into degree n.

    Returns ``(outgoing, incoming)`` where ``outgoing`` maps degree-n
    coordinates to degree-(n+1) coordinates and ``incoming`` maps degree-(n-1)
    coordinates to degree-n coordinates.  Columns are indexed by the
    graded-lex monomial basis of the source degree.
    """
    return (_d_matrix(model, n), _d_matrix(model, n - 1))


def _d_matrix(model: SullivanModel, n: int) -> RationalMatrix:
    def produce():
        alg = model.algebra
        src = basis(alg, n)
        dst = basis(alg, n + 1)
        cols = []
        for mono in src:
            img = model.d(Element.from_monomial(alg, mono))
            cols.append(coefficient_vector(img, dst))
        return RationalMatrix.from_columns(cols, len(dst))

    return _cached(model, ("dmat", n), produce)


def cohomology_basis(model: SullivanModel, n: int) -> CohomologySpace:
    """Compute H^n with deterministic representatives."""

    def produce():
        alg = model.algebra
        bn = basis(alg, n)
        out_m, in_m = cochain_maps(model, n)
        cocycles = kernel_basis(out_m)
        boundary_rows = RationalMatrix(
            [in_m.column(j) for j in range(in_m.ncols)], ncols=len(bn)
        )
        reduced, _, brank = rref(boundary_rows)
        boundary_basis = [
            element_from_vector(alg, bn, row)
            for row in reduced.entries[:brank]
        ]
        space = RowSpace(len(bn))
        for row in reduced.entries[:brank]:
            space.add(row)
        reps = []
        for z in cocycles:
            if space.add(z):
                reps.append(element_from_vector(alg, bn, z))
        dim = len(cocycles) - brank
        if dim != len(reps):
            raise InternalInconsistencyError(
                f"H^{n}: dimension {dim} but {len(reps)} representatives"
            )
        return CohomologySpace(n, dim, reps, boundary_basis)

    return _cached(model, ("H", n), produce)


def is_boundary(model: SullivanModel, e: Element) -> bool:
    """Exact membership of a homogeneous element in the boundary space."""
    if e.is_zero:
        return True
    n = e.degree()
    bn = basis(model.algebra, n)
    _, in_m = cochain_maps(model, n)
    return solve_membership(in_m, coefficient_vector(e, bn)) is not None


def formal_dimension(model: SullivanModel) -> int:
    """N = dim V^even - sum_i (-1)^{|v_i|} |v_i| over all generators."""
    alg = model.algebra
    n = len(alg.even_indices)
    for g in alg.generators:
        n -= g.degree if not g.is_odd else -g.degree
    return n


def is_elliptic(model: SullivanModel, bound: Optional[int] = None) -> EllipticityResult:
    """Decide finite-dimensionality of cohomology via the pure model.

    The even subalgebra modulo the ideal generated by the pure images of the
    odd generators is finite dimensional exactly when the model is elliptic.
    The quotient is scanned degree by degree: once it vanishes on a window of
    ``max even generator degree`` consecutive degrees it vanishes forever
    after, because any deeper monomial factors through the window.

    If no clean window exists below ``bound`` the answer is a definite "no"
    provided the scan reached N + 1 (an elliptic model's quotient vanishes
    above its formal dimension); with a user-supplied smaller bound the
    result degrades to "inconclusive".
    """
    key = ("elliptic", bound)
    if key in model._cache:
        return model._cache[key]

    alg = model.algebra
    n_formal = formal_dimension(model)
    even_degrees = [g.degree for g in alg.generators if not g.is_odd]
    width = max(even_degrees, default=1)
    max_degree = max((g.degree for g in alg.generators), default=1)
    if bound is None:
        bound = max(2 * max(n_formal, 0) + max_degree, n_formal + 1, 4)
    if bound < 0:
        raise ValueError("scan bound must be nonnegative")

    pure = _cached(model, ("pure",), lambda: pure_projection(model))
    ideal_gens = [
        pure.differential.image_of(g)
        for g in alg.generators
        if g.is_odd and not pure.differential.image_of(g).is_zero
    ]

    qdims: Dict[int, int] = {}

    def quotient_dim_at(degree: int) -> int:
        if degree not in qdims:
            ambient = [
                m
                for m in basis(alg, degree)
                if not any(m[i] for i in alg.odd_indices)
            ]
            if not ambient:
                qdims[degree] = 0
            else:
                rows = []
                for img in ideal_gens:
                    shift = degree - img.degree()
                    if shift < 0:
                        continue
                    for m in basis(alg, shift):
                        if any(m[i] for i in alg.odd_indices):
                            continue
                        prod = Element.from_monomial(alg, m) * img
                        rows.append(coefficient_vector(prod, ambient))
                gens_matrix = RationalMatrix(rows, ncols=len(ambient))
                qdims[degree] = quotient_dim(gens_matrix, len(ambient))
        return qdims[degree]

    result = None
    for b in range(bound + 1):
        if all(quotient_dim_at(d) == 0 for d in range(b, b + width)):
            result = EllipticityResult(
                status="elliptic",
                formal_dimension=n_formal,
                bound=bound,
                window_width=width,
                window_start=b,
            )
            break
    if result is None:
        nonvanishing = tuple(sorted(d for d, q in qdims.items() if q > 0))
        conclusive = bound >= max(n_formal + 1, 0)
        result = EllipticityResult(
            status="not_elliptic" if conclusive else "inconclusive",
            formal_dimension=n_formal,
            bound=bound,
            window_width=width,
            nonvanishing_degrees=nonvanishing,
        )
    model._cache[key] = result
    return result


def require_elliptic(model: SullivanModel, bound: Optional[int] = None) -> EllipticityResult:
    res = is_elliptic(model, bound)
    if res.status == "inconclusive":
        raise PreconditionError(
            f"ellipticity test inconclusive with scan bound {res.bound}; "
            "raise the bound"
        )
    if res.status != "elliptic":
        degs = ", ".join(str(d) for d in res.nonvanishing_degrees[:8])
        raise PreconditionError(
            "model is not elliptic: the pure quotient survives in degrees "
            f"{degs}{'...' if len(res.nonvanishing_degrees) > 8 else ''}"
        )
    return res


def top_class(model: SullivanModel) -> Tuple[int, CohomologySpace]:
    """The fundamental-class line H^N of an elliptic model."""
    require_elliptic(model)
    n = formal_dimension(model)
    if n < 0:
        raise InternalInconsistencyError(
            f"elliptic model with negative formal dimension {n}"
        )
    space = cohomology_basis(model, n)
    if space.dimension != 1:
        raise InternalInconsistencyError(
            f"H^{n} has dimension {space.dimension}, expected 1 for an "
            "elliptic model"
        )
    return n, space


def toomer_oracle(model: SullivanModel) -> ToomerResult:
    """e0 by direct linear algebra: the deepest word-length filtration stage
    that still contains a representative of the fundamental class.

    For s descending from the largest word length in the top degree, test
    whether the fundamental cocycle lies in Lambda^{>=s}V plus boundaries;
    the first success is e0 and the solve yields a witness representative.
    """
    require_elliptic(model)
    n, space = top_class(model)
    alg = model.algebra
    bn = basis(alg, n)
    omega_vec = coefficient_vector(space.representatives[0], bn)
    _, in_m = cochain_maps(model, n)
    boundary_cols = in_m.columns()
    s_max = max((wordlength(m) for m in bn), default=0)
    for s in range(s_max, -1, -1):
        deep = [i for i, m in enumerate(bn) if wordlength(m) >= s]
        cols = []
        for i in deep:
            unit = [Fraction(0)] * len(bn)
            unit[i] = Fraction(1)
            cols.append(unit)
        cols.extend(boundary_cols)
        sol = solve_membership(RationalMatrix.from_columns(cols, len(bn)), omega_vec)
        if sol is not None:
            rep_vec = [Fraction(0)] * len(bn)
            for slot, i in enumerate(deep):
                rep_vec[i] = sol[slot]
            rep = element_from_vector(alg, bn, rep_vec)
            if rep.is_zero:
                raise InternalInconsistencyError(
                    "top class representative reduced to zero"
                )
            return ToomerResult(e0=s, method="oracle", representative=rep)
    raise InternalInconsistencyError("membership failed even at filtration 0")
