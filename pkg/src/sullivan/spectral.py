"""The word-length spectral sequence and the cocycle lifting algorithm.

Filtering Lambda V by word length, F^p = Lambda^{>=(k-1)p} V, the first page
for k = 3 sits on pairs: E_1^{p,q} is the degree-(p+q) part of
Lambda^{2p} V + Lambda^{2p+1} V, with differential

    delta(u, v) = (d_3 u, d_3 v + d_4 u)

and product (u, v)(u', v') = (uu', uv' + vu').  On a plain element the same
map reads delta = d_3 + d_4 o (even word-length projection), since every word
length belongs to exactly one pair slot.

``lift_to_d_cocycle`` turns a delta-cocycle of top degree into an honest
d-cocycle when possible: the lowest pair component of d(w) is always a
delta-cocycle one filtration step up, and if it is a delta-boundary the
preimage is subtracted from w, strictly raising the obstruction filtration.
A class whose obstruction is not a boundary dies; a lift whose final cocycle
bounds has collapsed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import (
    Element,
    Monomial,
    basis,
    coefficient_vector,
    element_from_vector,
    wordlength,
)
from .cohomology import (
    ToomerResult,
    cochain_maps,
    formal_dimension,
    is_boundary,
    require_elliptic,
    toomer_oracle,
)
from .differential import SullivanModel
from .errors import InternalInconsistencyError, PreconditionError
from .linalg import RationalMatrix, RowSpace, kernel_basis, solve_membership


def _require_delta(model: SullivanModel) -> None:
    if model.k is None:
        raise PreconditionError("the differential is zero; no spectral sequence")
    if model.k == 2:
        raise PreconditionError(
            "k = 2: the word-length pairs used here require k >= 3"
        )


def filtration_basis(model: SullivanModel, p: int, n: int) -> List[Monomial]:
    """Monomial basis of F^p/F^{p+1} in degree n, i.e. word lengths
    p(k-1) .. p(k-1)+k-2.  Works for any k >= 2 (for k = 2 each stage is
    the single word length p); the pair structure below needs k = 3."""
    if model.k is None:
        raise PreconditionError("the differential is zero; no spectral sequence")
    if p < 0:
        raise ValueError("filtration index must be nonnegative")
    k = model.k
    out: List[Monomial] = []
    for s in range(p * (k - 1), p * (k - 1) + k - 1):
        out.extend(basis(model.algebra, n, wordlength_exact=s))
    return out


@dataclass(eq=False)
class FilteredPair:
    """An element of E_1^{p, n-p} for k = 3: u in Lambda^{2p}, v in
    Lambda^{2p+1}, both degree-homogeneous of total degree n."""

    model: SullivanModel
    p: int
    n: int
    u: Element
    v: Element

    def __post_init__(self):
        _require_delta(self.model)
        if self.p < 0:
            raise ValueError("filtration index must be nonnegative")
        for name, part, want_wl in (("u", self.u, 2 * self.p), ("v", self.v, 2 * self.p + 1)):
            if part.algebra != self.model.algebra:
                raise ValueError(f"component {name} lives in a different algebra")
            if part.is_zero:
                continue
            wls = part.wordlengths()
            if wls != (want_wl,):
                raise ValueError(
                    f"component {name} must have word length exactly {want_wl}, "
                    f"found {wls}"
                )
            if part.degree() != self.n:
                raise ValueError(
                    f"component {name} has degree {part.degree()}, expected {self.n}"
                )

    @property
    def is_zero(self) -> bool:
        return self.u.is_zero and self.v.is_zero

    def as_element(self) -> Element:
        return self.u + self.v

    def __add__(self, other: "FilteredPair") -> "FilteredPair":
        if (self.model, self.p, self.n) != (other.model, other.p, other.n):
            raise ValueError("pairs live on different bigraded slots")
        return FilteredPair(self.model, self.p, self.n, self.u + other.u, self.v + other.v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FilteredPair)
            and self.model == other.model
            and (self.p, self.n) == (other.p, other.n)
            and self.u == other.u
            and self.v == other.v
        )

    __hash__ = None


def pair_product(a: FilteredPair, b: FilteredPair) -> FilteredPair:
    """(u, v)(u', v') = (uu', uv' + vu') at filtration p + p'."""
    if a.model != b.model:
        raise ValueError("pairs belong to different models")
    return FilteredPair(
        a.model,
        a.p + b.p,
        a.n + b.n,
        a.u * b.u,
        a.u * b.v + a.v * b.u,
    )


def delta_apply(pair: FilteredPair) -> FilteredPair:
    """The page-one differential: (u, v) -> (d3 u, d3 v + d4 u)."""
    model = pair.model
    return FilteredPair(
        model,
        pair.p + 1,
        pair.n + 1,
        model.d3(pair.u),
        model.d3(pair.v) + model.d4(pair.u),
    )


def delta_element(model: SullivanModel, e: Element) -> Element:
    """delta on a raw element: d3 everywhere plus d4 on even word lengths."""
    _require_delta(model)
    return model.d3(e) + model.d4(e.even_wordlength_part())


def element_pairs(model: SullivanModel, e: Element) -> Dict[int, FilteredPair]:
    """Decompose an element into its consecutive filtration pairs."""
    n = e.degree()
    parts: Dict[int, Dict[str, Element]] = {}
    for s in e.wordlengths():
        comp = e.wordlength_component(s)
        p, slot = divmod(s, 2)
        parts.setdefault(p, {})["u" if slot == 0 else "v"] = comp
    zero = model.algebra.zero()
    return {
        p: FilteredPair(model, p, n, d.get("u", zero), d.get("v", zero))
        for p, d in sorted(parts.items())
    }


def pair_basis(model: SullivanModel, p: int, n: int) -> Tuple[List[Monomial], List[Monomial]]:
    """Monomial bases of the two slots of E_1^{p, n-p}."""
    _require_delta(model)
    alg = model.algebra
    return (
        basis(alg, n, wordlength_exact=2 * p),
        basis(alg, n, wordlength_exact=2 * p + 1),
    )


def _pair_vector(pair: FilteredPair, bases: Tuple[List[Monomial], List[Monomial]]):
    ub, vb = bases
    return coefficient_vector(pair.u, ub) + coefficient_vector(pair.v, vb)


def _pair_from_vector(
    model: SullivanModel, p: int, n: int, bases, vec
) -> FilteredPair:
    ub, vb = bases
    alg = model.algebra
    u = element_from_vector(alg, ub, vec[: len(ub)])
    v = element_from_vector(alg, vb, vec[len(ub):])
    return FilteredPair(model, p, n, u, v)


def delta_matrix(model: SullivanModel, p: int, n: int) -> RationalMatrix:
    """Matrix of delta from the (p, n) pair slot to the (p+1, n+1) slot."""

    def produce():
        alg = model.algebra
        src_u, src_v = pair_basis(model, p, n)
        dst = pair_basis(model, p + 1, n + 1)
        dst_u, dst_v = dst
        cols = []
        for mono in src_u:
            e = Element.from_monomial(alg, mono)
            cols.append(
                coefficient_vector(model.d3(e), dst_u)
                + coefficient_vector(model.d4(e), dst_v)
            )
        zero_u = [Fraction(0)] * len(dst_u)
        for mono in src_v:
            e = Element.from_monomial(alg, mono)
            cols.append(zero_u + coefficient_vector(model.d3(e), dst_v))
        return RationalMatrix.from_columns(cols, len(dst_u) + len(dst_v))

    key = ("delta_matrix", p, n)
    if key not in model._cache:
        model._cache[key] = produce()
    return model._cache[key]


@dataclass
class DeltaClass:
    """A nonzero class of H^{p, n-p}(delta) with its chosen representative."""

    p: int
    n: int
    representative: FilteredPair
    index: int


def delta_cohomology(model: SullivanModel, n: int) -> List[DeltaClass]:
    """All of H^n(Lambda V, delta), grouped by filtration index.

    The delta complex splits over the pair grading, so the classes at each p
    are computed independently: kernel of delta out of (p, n) modulo the
    image of delta from (p-1, n-1).  Representatives extend the canonical
    boundary basis, exactly as in ordinary cohomology.
    """
    _require_delta(model)
    classes: List[DeltaClass] = []
    max_p = n // 4 + 1 if n >= 0 else -1
    for p in range(0, max_p + 1):
        bases = pair_basis(model, p, n)
        dim_here = len(bases[0]) + len(bases[1])
        if dim_here == 0:
            continue
        out_m = delta_matrix(model, p, n)
        cocycles = kernel_basis(out_m)
        if not cocycles:
            continue
        space = RowSpace(dim_here)
        if p > 0:
            in_m = delta_matrix(model, p - 1, n - 1)
            for j in range(in_m.ncols):
                space.add(in_m.column(j))
        idx = 0
        for z in cocycles:
            if space.add(z):
                classes.append(
                    DeltaClass(p, n, _pair_from_vector(model, p, n, bases, z), idx)
                )
                idx += 1
    return classes


def _delta_boundary_columns(model: SullivanModel, n: int):
    """Images under delta of all degree-(n-1) monomials, in degree-n coords."""
    alg = model.algebra
    bn = basis(alg, n)
    cols = []
    for mono in basis(alg, n - 1):
        img = delta_element(model, Element.from_monomial(alg, mono))
        cols.append(coefficient_vector(img, bn))
    return bn, cols


def representative_depth(
    model: SullivanModel, cls: DeltaClass
) -> Tuple[int, Element]:
    """Greatest s such that the class has a delta-representative in
    Lambda^{>=s} V, plus a representative realizing it.

    Works on the total delta complex in the class's degree with the same
    membership test the Toomer oracle uses for d.
    """
    z = cls.representative.as_element()
    if z.is_zero:
        raise ValueError("zero class has no depth")
    n = cls.n
    bn, boundary_cols = _delta_boundary_columns(model, n)
    zvec = coefficient_vector(z, bn)
    s_max = max((wordlength(m) for m in bn), default=0)
    for s in range(s_max, -1, -1):
        deep = [i for i, m in enumerate(bn) if wordlength(m) >= s]
        cols = []
        for i in deep:
            unit = [Fraction(0)] * len(bn)
            unit[i] = Fraction(1)
            cols.append(unit)
        cols.extend(boundary_cols)
        sol = solve_membership(RationalMatrix.from_columns(cols, len(bn)), zvec)
        if sol is not None:
            rep_vec = [Fraction(0)] * len(bn)
            for slot, i in enumerate(deep):
                rep_vec[i] = sol[slot]
            rep = element_from_vector(model.algebra, bn, rep_vec)
            if rep.is_zero:
                raise ValueError("the given class is a delta-boundary")
            return s, rep
    raise InternalInconsistencyError("depth search fell through filtration 0")


@dataclass
class LiftTrace:
    """Full record of one run of the lifting algorithm."""

    start: Element
    p: int
    l: int
    t_bound: int
    outcome: str  # "success" | "died" | "collapsed"
    iterations: int
    final: Optional[Element] = None
    iterates: List[Element] = field(default_factory=list)
    obstructions: List[FilteredPair] = field(default_factory=list)
    correctors: List[Element] = field(default_factory=list)
    died_obstruction: Optional[FilteredPair] = None


def lift_to_d_cocycle(model: SullivanModel, start: Element) -> LiftTrace:
    """Push a delta-cocycle to a d-cocycle by killing obstructions bottom up.

    Each round takes the lowest nonzero filtration pair of d(w) — always a
    delta-cocycle, by d^2 = 0 and word-length bookkeeping — and solves
    delta(b) = obstruction one filtration step below.  Subtracting b strictly
    raises the lowest obstruction, so the loop terminates within
    ceil(degree/2) - p rounds.

    Outcomes: "died" when some obstruction is not a delta-boundary,
    "collapsed" when d(w) reaches zero but w bounds (or started as zero),
    "success" when the final w is a d-cocycle that does not bound.
    """
    _require_delta(model)
    if start.algebra != model.algebra:
        raise ValueError("start element lives in a different algebra")
    if start.is_zero:
        return LiftTrace(
            start=start, p=0, l=0, t_bound=0, outcome="collapsed",
            iterations=0, final=start, iterates=[start],
        )
    n = start.degree()
    if not delta_element(model, start).is_zero:
        raise PreconditionError("start element is not a delta-cocycle")
    wls = start.wordlengths()
    p = wls[0] // 2
    l = wls[-1] // 2 - p
    t_bound = (n - 4 * p - 4 * l - 1) // 4
    trace = LiftTrace(
        start=start, p=p, l=l, t_bound=t_bound, outcome="",
        iterations=0, iterates=[start],
    )
    w = start
    last_obstruction_p = None
    max_rounds = max((n + 1) // 2 - p + 2, 4)
    for _ in range(max_rounds):
        dw = model.d(w)
        if dw.is_zero:
            if w.is_zero or is_boundary(model, w):
                trace.outcome = "collapsed"
            else:
                trace.outcome = "success"
            trace.final = w
            return trace
        p_obs = dw.min_wordlength() // 2
        if last_obstruction_p is not None and p_obs <= last_obstruction_p:
            raise InternalInconsistencyError(
                "obstruction filtration failed to increase"
            )
        last_obstruction_p = p_obs
        obstruction = FilteredPair(
            model,
            p_obs,
            n + 1,
            dw.wordlength_component(2 * p_obs),
            dw.wordlength_component(2 * p_obs + 1),
        )
        if not delta_apply(obstruction).is_zero:
            raise InternalInconsistencyError(
                "lowest obstruction pair is not a delta-cocycle"
            )
        trace.obstructions.append(obstruction)
        target_bases = pair_basis(model, p_obs, n + 1)
        rhs = _pair_vector(obstruction, target_bases)
        m = delta_matrix(model, p_obs - 1, n)
        sol = solve_membership(m, rhs)
        if sol is None:
            trace.outcome = "died"
            trace.died_obstruction = obstruction
            trace.final = None
            return trace
        src_bases = pair_basis(model, p_obs - 1, n)
        corrector = _pair_from_vector(model, p_obs - 1, n, src_bases, sol).as_element()
        trace.correctors.append(corrector)
        w = w - corrector
        trace.iterates.append(w)
        trace.iterations += 1
    raise InternalInconsistencyError("lift exceeded its termination bound")


@dataclass
class ClassOutcome:
    """What happened to one delta-class during the spectral Toomer run."""

    delta_class: DeltaClass
    depth: int
    deep_representative: Element
    trace: LiftTrace


@dataclass
class SpectralRun:
    model: SullivanModel
    degree: int
    outcomes: List[ClassOutcome]
    result: Optional[ToomerResult]


def spectral_run(model: SullivanModel) -> SpectralRun:
    """Toomer invariant through the spectral sequence, with full records.

    Every class of H^N(delta) is lifted from a depth-maximal representative.
    Among the lifts that end in a d-nontrivial cocycle the maximal depth is
    e0; the result is cross-checked against the direct oracle and any
    disagreement is a hard error.
    """
    if model.k != 3:
        raise PreconditionError(
            f"spectral Toomer computation requires k = 3, found k = {model.k}"
        )
    require_elliptic(model)
    n = formal_dimension(model)
    classes = delta_cohomology(model, n)
    if not classes:
        raise InternalInconsistencyError(
            f"H^{n}(delta) is zero on an elliptic model"
        )
    outcomes: List[ClassOutcome] = []
    for cls in classes:
        depth, deep = representative_depth(model, cls)
        if depth not in (2 * cls.p, 2 * cls.p + 1):
            raise InternalInconsistencyError(
                f"class at filtration {cls.p} has depth {depth}; expected "
                f"{2 * cls.p} or {2 * cls.p + 1}"
            )
        trace = lift_to_d_cocycle(model, deep)
        if trace.outcome == "success" and trace.final.min_wordlength() != depth:
            raise InternalInconsistencyError(
                "lift changed the depth of the lowest component"
            )
        outcomes.append(ClassOutcome(cls, depth, deep, trace))
    winners = [o for o in outcomes if o.trace.outcome == "success"]
    if not winners:
        raise InternalInconsistencyError(
            "no delta-class survives to a d-cocycle; inconsistent with "
            "ellipticity"
        )
    best = max(winners, key=lambda o: o.depth)
    oracle = toomer_oracle(model)
    if oracle.e0 != best.depth:
        raise InternalInconsistencyError(
            f"spectral method found e0 = {best.depth} but the oracle found "
            f"{oracle.e0}"
        )
    parity = "even" if best.depth == 2 * best.delta_class.p else "odd"
    result = ToomerResult(
        e0=best.depth,
        method="spectral",
        representative=trace_final(best.trace),
        witness=(best.delta_class.p, parity),
    )
    return SpectralRun(model, n, outcomes, result)


def trace_final(trace: LiftTrace) -> Element:
    if trace.final is None:
        raise ValueError("trace has no final cocycle")
    return trace.final


def toomer_spectral(model: SullivanModel) -> ToomerResult:
    """e0 via delta-cohomology and lifting; cross-checked against the oracle."""
    return spectral_run(model).result
