"""Fundamental class of a pure elliptic model by the determinant formula.

For a pure model with even generators x_1..x_n and odd generators y_1..y_m,
each image d(y_j) is peeled greedily into sum_i a_j^i x_i where a_j^i only
involves x_i..x_n: terms divisible by x_1 are extracted first, then x_2 among
what remains, and so on.  The fundamental class is then

    omega = sum over n-subsets j_1 < ... < j_n of row indices of
            (-1)^{j_1+...+j_n} det(A restricted to those rows)
            * (product of the odd generators left out),

normalized so the graded-lex leading coefficient is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Tuple

from .algebra import Algebra, Element, Generator, format_element, grlex_key
from .cohomology import formal_dimension, is_boundary, require_elliptic
from .differential import SullivanModel, is_pure
from .errors import InternalInconsistencyError, PreconditionError


@dataclass
class CoefficientMatrix:
    """Rows indexed by odd generators, columns by even generators."""

    model: SullivanModel
    even_gens: Tuple[Generator, ...]
    odd_gens: Tuple[Generator, ...]
    entries: List[List[Element]]  # entries[j][i], m rows by n columns

    def row_identity_holds(self, j: int) -> bool:
        """Check d(y_j) = sum_i entries[j][i] * x_i."""
        alg = self.model.algebra
        total = alg.zero()
        for i, x in enumerate(self.even_gens):
            total = total + self.entries[j][i] * alg.gen_element(x.name)
        return total == self.model.differential.image_of(self.odd_gens[j])

    def is_triangular(self) -> bool:
        """entries[j][i] may only involve even generators x_i, ..., x_n."""
        earlier: set = set()
        for i, x in enumerate(self.even_gens):
            for row in self.entries:
                for mono in row[i].terms:
                    if any(mono[e] for e in earlier):
                        return False
            earlier.add(x.index)
        return True


def coefficient_matrix(model: SullivanModel) -> CoefficientMatrix:
    """Greedy left-to-right extraction of the triangular coefficient matrix."""
    if not is_pure(model):
        raise PreconditionError(
            "coefficient matrix requires a pure differential; apply "
            "pure_projection first if that is intended"
        )
    alg = model.algebra
    evens = tuple(g for g in alg.generators if not g.is_odd)
    odds = tuple(g for g in alg.generators if g.is_odd)
    entries: List[List[Element]] = []
    for y in odds:
        remaining = model.differential.image_of(y)
        row: List[Element] = []
        for x in evens:
            divisible = {
                mono: c for mono, c in remaining.terms.items() if mono[x.index] >= 1
            }
            quotient = {
                tuple(e - 1 if i == x.index else e for i, e in enumerate(mono)): c
                for mono, c in divisible.items()
            }
            row.append(Element(alg, quotient))
            remaining = Element(
                alg,
                {m: c for m, c in remaining.terms.items() if m not in divisible},
            )
        if not remaining.is_zero:
            raise InternalInconsistencyError(
                f"d({y.name}) left a remainder after extracting all even "
                f"generators: {format_element(remaining)}"
            )
        entries.append(row)
    matrix = CoefficientMatrix(model, evens, odds, entries)
    for j in range(len(odds)):
        if not matrix.row_identity_holds(j):
            raise InternalInconsistencyError(
                f"coefficient row for {odds[j].name!r} does not reassemble d"
            )
    if not matrix.is_triangular():
        raise InternalInconsistencyError("coefficient matrix is not triangular")
    return matrix


def _det(entries: List[List[Element]], alg: Algebra) -> Element:
    """Determinant over the (commutative) even subalgebra."""
    n = len(entries)
    if n == 0:
        return alg.one()
    if n <= 4:
        return _det_cofactor(entries, alg)
    return _det_bareiss(entries, alg)


def _det_cofactor(entries: List[List[Element]], alg: Algebra) -> Element:
    n = len(entries)
    if n == 1:
        return entries[0][0]
    total = alg.zero()
    for i in range(n):
        top = entries[0][i]
        if top.is_zero:
            continue
        minor = [[row[j] for j in range(n) if j != i] for row in entries[1:]]
        sub = _det_cofactor(minor, alg)
        term = top * sub
        total = total + (term if i % 2 == 0 else -term)
    return total


def exact_divide(a: Element, b: Element) -> Element:
    """Exact division in the polynomial part of the algebra.

    Only valid when b divides a (as Bareiss elimination guarantees); raises
    InternalInconsistencyError otherwise.
    """
    if b.is_zero:
        raise ZeroDivisionError("division by the zero element")
    alg = a.algebra
    quotient = alg.zero()
    remainder = a
    lead_b = max(b.terms, key=grlex_key)
    cb = b.terms[lead_b]
    while not remainder.is_zero:
        lead_r = max(remainder.terms, key=grlex_key)
        mono = tuple(er - eb for er, eb in zip(lead_r, lead_b))
        if any(e < 0 for e in mono):
            raise InternalInconsistencyError("inexact division during elimination")
        step = Element.from_monomial(alg, mono, remainder.terms[lead_r] / cb)
        quotient = quotient + step
        remainder = remainder - step * b
    return quotient


def _det_bareiss(entries: List[List[Element]], alg: Algebra) -> Element:
    n = len(entries)
    m = [[entries[i][j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = alg.one()
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if pivot is None:
                return alg.zero()
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = alg.zero()
        prev = m[k][k]
    result = m[n - 1][n - 1]
    return result if sign == 1 else -result


def murillo_fundamental_class(model: SullivanModel) -> Element:
    """The fundamental class of a pure elliptic model, exactly.

    Verified before returning: the result is a nonzero cocycle of degree N
    that is not a boundary.
    """
    require_elliptic(model)
    matrix = coefficient_matrix(model)
    n = len(matrix.even_gens)
    m = len(matrix.odd_gens)
    if m < n:
        raise PreconditionError(
            f"{m} odd generators but {n} even ones: no square minors exist"
        )
    alg = model.algebra
    omega = alg.zero()
    for rows in combinations(range(m), n):
        sub = [matrix.entries[j] for j in rows]
        det = _det(sub, alg)
        if det.is_zero:
            continue
        sign = -1 if sum(j + 1 for j in rows) % 2 else 1
        rest = alg.one()
        chosen = set(rows)
        for j, y in enumerate(matrix.odd_gens):
            if j not in chosen:
                rest = rest * alg.gen_element(y.name)
        omega = omega + Fraction(sign) * det * rest
    if omega.is_zero:
        raise InternalInconsistencyError(
            "determinant formula produced zero on an elliptic model"
        )
    if omega.terms[omega.leading_monomial()] < 0:
        omega = -omega
    n_formal = formal_dimension(model)
    if omega.degree() != n_formal:
        raise InternalInconsistencyError(
            f"fundamental class has degree {omega.degree()}, expected {n_formal}"
        )
    if not model.d(omega).is_zero:
        raise InternalInconsistencyError("fundamental class is not a cocycle")
    if is_boundary(model, omega):
        raise InternalInconsistencyError("fundamental class is a boundary")
    return omega
