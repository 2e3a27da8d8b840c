"""Randomized and deterministic consistency checks over the fixture zoo.

The randomized checks draw small random elements (and filtration pairs) from
the fixture algebras and verify the structural identities exactly — graded
commutativity, the Leibniz rule, d^2 = 0, delta^2 = 0, and the derivation
property of delta over the pair product.  The deterministic checks compare
basis cardinalities against an independent generating-function expansion and
verify Poincare duality degree by degree on the elliptic fixtures.

Everything is driven by an explicit seed so failures reproduce.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import Algebra, Element, basis
from .cohomology import cohomology_basis, formal_dimension, is_elliptic
from .differential import SullivanModel
from .errors import InternalInconsistencyError
from .models import ELLIPTIC_K3_POOL, all_models
from .spectral import FilteredPair, delta_apply, pair_basis, pair_product


@dataclass
class CheckResult:
    name: str
    cases: int
    ok: bool
    detail: str = ""


def random_element(
    rng: random.Random,
    algebra: Algebra,
    max_degree: int = 16,
    max_terms: int = 3,
    degree: Optional[int] = None,
) -> Element:
    """A small random element, degree-homogeneous when `degree` is given
    (or chosen at random), with small rational coefficients."""
    if degree is None:
        candidates = [n for n in range(0, max_degree + 1) if basis(algebra, n)]
        degree = rng.choice(candidates)
    monos = basis(algebra, degree)
    total = algebra.zero()
    for _ in range(rng.randint(1, max_terms)):
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        total = total + coeff * Element.from_monomial(algebra, rng.choice(monos))
    return total


def random_pair(
    rng: random.Random, model: SullivanModel, max_degree: int = 24
) -> Optional[FilteredPair]:
    """A random filtration pair with at least one nonzero slot, or None if
    the model has no populated pair slot in range."""
    slots = []
    for p in range(0, max_degree // 4 + 1):
        for n in range(0, max_degree + 1):
            ub, vb = pair_basis(model, p, n)
            if ub or vb:
                slots.append((p, n, ub, vb))
    if not slots:
        return None
    p, n, ub, vb = rng.choice(slots)
    alg = model.algebra

    def sample(monos):
        e = alg.zero()
        for _ in range(rng.randint(0, 2)):
            if monos:
                coeff = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                e = e + coeff * Element.from_monomial(alg, rng.choice(monos))
        return e

    return FilteredPair(model, p, n, sample(ub), sample(vb))


def _scaled(pair: FilteredPair, s: int) -> FilteredPair:
    return FilteredPair(pair.model, pair.p, pair.n, s * pair.u, s * pair.v)


def check_graded_commutativity(rng: random.Random, cases: int) -> int:
    models = all_models()
    for i in range(cases):
        _, model = models[i % len(models)]
        alg = model.algebra
        a = random_element(rng, alg)
        b = random_element(rng, alg)
        da = a.degree() or 0
        db = b.degree() or 0
        sign = -1 if (da % 2 and db % 2) else 1
        if a * b != sign * (b * a):
            raise InternalInconsistencyError(
                f"commutativity failed: a={a!r}, b={b!r}"
            )
    return cases


def check_leibniz(rng: random.Random, cases: int) -> int:
    models = all_models()
    for i in range(cases):
        _, model = models[i % len(models)]
        alg = model.algebra
        a = random_element(rng, alg)
        b = random_element(rng, alg)
        sign = -1 if (a.degree() or 0) % 2 else 1
        lhs = model.d(a * b)
        rhs = model.d(a) * b + sign * (a * model.d(b))
        if lhs != rhs:
            raise InternalInconsistencyError(
                f"Leibniz failed: a={a!r}, b={b!r}, d(ab)={lhs!r}, "
                f"d(a)b ± a d(b)={rhs!r}"
            )
    return cases


def check_d_squared(rng: random.Random, cases: int) -> int:
    models = all_models()
    for i in range(cases):
        _, model = models[i % len(models)]
        e = random_element(rng, model.algebra, max_terms=4)
        dd = model.d(model.d(e))
        if not dd.is_zero:
            raise InternalInconsistencyError(f"d^2 != 0 on {e!r}: {dd!r}")
    return cases


def _k3_models() -> List[Tuple[str, SullivanModel]]:
    return [(name, build()) for name, build in ELLIPTIC_K3_POOL]


def check_delta_squared(rng: random.Random, cases: int) -> int:
    models = _k3_models()
    done = 0
    for i in range(cases):
        _, model = models[i % len(models)]
        pair = random_pair(rng, model)
        if pair is None:
            continue
        dd = delta_apply(delta_apply(pair))
        if not dd.is_zero:
            raise InternalInconsistencyError(
                f"delta^2 != 0 on ({pair.u!r}, {pair.v!r}) at p={pair.p}"
            )
        done += 1
    return done


def check_delta_derivation(rng: random.Random, cases: int) -> int:
    """delta(a b) = delta(a) b + (-1)^{deg a} a delta(b) for the pair product."""
    models = _k3_models()
    done = 0
    for i in range(cases):
        _, model = models[i % len(models)]
        a = random_pair(rng, model, max_degree=18)
        b = random_pair(rng, model, max_degree=18)
        if a is None or b is None:
            continue
        lhs = delta_apply(pair_product(a, b))
        sign = -1 if a.n % 2 else 1
        rhs = pair_product(delta_apply(a), b) + _scaled(
            pair_product(a, delta_apply(b)), sign
        )
        if lhs != rhs:
            raise InternalInconsistencyError(
                f"delta derivation failed at p={a.p},{b.p} n={a.n},{b.n}"
            )
        done += 1
    return done


def check_basis_counts(max_degree: int = 40) -> int:
    """Basis cardinalities against the Poincare series
    prod_even 1/(1 - t^d) * prod_odd (1 + t^d), expanded independently."""
    checked = 0
    for name, model in all_models():
        alg = model.algebra
        series = [0] * (max_degree + 1)
        series[0] = 1
        for gen in alg.generators:
            d = gen.degree
            if gen.is_odd:
                nxt = series[:]
                for n in range(d, max_degree + 1):
                    nxt[n] += series[n - d]
                series = nxt
            else:
                # multiply by 1/(1 - t^d): running sum with stride d
                for n in range(d, max_degree + 1):
                    series[n] += series[n - d]
        for n in range(0, max_degree + 1):
            got = len(basis(alg, n))
            if got != series[n]:
                raise InternalInconsistencyError(
                    f"{name}: basis count at degree {n} is {got}, series "
                    f"says {series[n]}"
                )
            checked += 1
    return checked


def check_poincare_duality() -> int:
    """dim H^n = dim H^{N-n} on every elliptic fixture, plus a vanishing
    window above N."""
    checked = 0
    for name, model in all_models():
        if not is_elliptic(model).is_elliptic:
            continue
        n_top = formal_dimension(model)
        dims = {
            n: cohomology_basis(model, n).dimension for n in range(n_top + 1)
        }
        for n in range(0, n_top + 1):
            if dims[n] != dims[n_top - n]:
                raise InternalInconsistencyError(
                    f"{name}: dim H^{n} = {dims[n]} but dim H^{n_top - n} = "
                    f"{dims[n_top - n]}"
                )
            checked += 1
        width = max(g.degree for g in model.algebra.generators)
        for n in range(n_top + 1, n_top + width + 1):
            extra = cohomology_basis(model, n).dimension
            if extra != 0:
                raise InternalInconsistencyError(
                    f"{name}: dim H^{n} = {extra} above the formal dimension"
                )
            checked += 1
    return checked


RANDOM_CHECKS = [
    ("graded_commutativity", check_graded_commutativity),
    ("leibniz", check_leibniz),
    ("d_squared", check_d_squared),
    ("delta_squared", check_delta_squared),
    ("delta_derivation", check_delta_derivation),
]


def run_all(seed: int = 0, cases: int = 200) -> List[CheckResult]:
    results: List[CheckResult] = []
    for name, fn in RANDOM_CHECKS:
        rng = random.Random(f"{seed}:{name}")
        try:
            done = fn(rng, cases)
            results.append(CheckResult(name, done, True))
        except InternalInconsistencyError as exc:
            results.append(CheckResult(name, 0, False, str(exc)))
    for name, fn0 in (
        ("basis_counts", check_basis_counts),
        ("poincare_duality", check_poincare_duality),
    ):
        try:
            done = fn0()
            results.append(CheckResult(name, done, True))
        except InternalInconsistencyError as exc:
            results.append(CheckResult(name, 0, False, str(exc)))
    return results
