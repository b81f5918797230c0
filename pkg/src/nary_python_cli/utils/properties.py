"""Basis-free properties of n-ary algebras.

The symbolic checkers reduce each property to polynomial identities over
formal coordinates and decide them exactly. Whenever a property fails, a
seeded small-integer specialization looks for a concrete counterexample,
re-verified through ``multiply`` and ``count_in``. The search is best
effort: the verdict never depends on it, and a failing verdict may come
without a certificate. ``sampled_check`` evaluates the chain-quantified
definitions directly on random data and is only used for
cross-validation.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from nary_python_cli.utils.errors import (
    BadK,
    BadPartition,
    DimensionMismatch,
    InfeasibleCounts,
    NotFormAlgebra,
    UnknownProperty,
    WeightMismatch,
)
from nary_python_cli.utils.scalars import (
    MultiPoly,
    RatMatrix,
    Vector,
    linear_combination,
    poly_is_zero,
    poly_minors,
    unit_vector,
)
from nary_python_cli.utils.structures import (
    AlgebraStructure,
    Index,
    IndexMap,
    Partition,
    Subspace,
    change_basis,
    count_in,
    expand,
    maps_with_counts,
    multiply,
)

SAMPLED_PROPERTIES = ("anticommutative", "attractive", "subalgebraic")


@dataclass(frozen=True)
class SearchBudget:
    """Seed, retry count and coordinate range for every randomized search."""

    seed: int = 0
    retries: int = 64
    bound: int = 3

    def rng(self, *salt) -> random.Random:
        """Independent generator for one search, reproducible per seed and salt."""
        return random.Random(":".join(str(s) for s in (self.seed, *salt)))


@dataclass(frozen=True)
class Certificate:
    """A concrete violation: arguments, their product and the subspaces involved."""

    arguments: tuple[Vector, ...]
    product: Vector
    chain: tuple[Subspace, ...] = ()


@dataclass(frozen=True)
class PropertyVerdict:
    holds: bool
    certificate: Certificate | None = None
    property: str = ""

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class FormDecomposition:
    """mu(x1, ..., xn) = form(x1, ..., xn) * distinguished.

    ``form`` maps index tuples into ``complement`` (1-based) to the value
    of the form on those complement vectors; zero values are omitted.
    """

    distinguished: Vector
    complement: tuple[Vector, ...]
    form: Mapping[Index, Fraction] = field(default_factory=dict)

    @property
    def is_zero(self) -> bool:
        return not self.form

    def basis(self) -> RatMatrix:
        """Complement vectors followed by the distinguished vector, as columns."""
        return RatMatrix.from_columns([*self.complement, self.distinguished])


def random_vector(rng: random.Random, m: int, bound: int = 3) -> Vector:
    """Nonzero vector with integer coordinates in [-bound, bound]."""
    while True:
        vector = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(m))
        if any(vector):
            return vector


def lifted_units(m: int) -> list[tuple[MultiPoly, ...]]:
    return [tuple(MultiPoly.lift(c) for c in unit_vector(m, i)) for i in range(1, m + 1)]


def formal_vector(prefix: str, index: int, m: int) -> tuple[MultiPoly, ...]:
    return tuple(MultiPoly.variable(f"{prefix}{index}_{r}") for r in range(1, m + 1))


def _require_weight(p: Partition, weight: int, what: str) -> None:
    if p.weight != weight:
        raise WeightMismatch(f"{what} needs a partition of {weight}, got {p} of weight {p.weight}")


# ---------------------------------------------------------------------------
# k-subalgebras
# ---------------------------------------------------------------------------


def is_k_subalgebra(mu: AlgebraStructure, subspace: Subspace, k: int) -> PropertyVerdict:
    """Decide whether ``subspace`` is a k-subalgebra of ``mu``.

    Products with exactly k arguments in the subspace must stay in it and
    products with more than k must vanish. By multilinearity it suffices
    to test tuples from a basis of the subspace extended to the ambient
    space.
    """
    if subspace.ambient != mu.dimension:
        raise DimensionMismatch(f"subspace of Q^{subspace.ambient} in a {mu.dimension}-dimensional algebra")
    if not 1 <= k <= mu.arity:
        raise BadK(f"k must lie in 1..{mu.arity}, got {k}")
    d = subspace.dimension
    basis = subspace.adapted_basis()
    adapted = change_basis(mu, RatMatrix.from_columns(basis))
    for index, vector in adapted.items():
        inside = sum(1 for i in index if i <= d)
        if inside < k or (inside == k and not any(vector[d:])):
            continue
        arguments = tuple(basis[i - 1] for i in index)
        certificate = Certificate(arguments, multiply(mu, *arguments), (subspace,))
        return PropertyVerdict(False, certificate, "k-subalgebra")
    return PropertyVerdict(True, property="k-subalgebra")


# ---------------------------------------------------------------------------
# p-anticommutativity and p-attractiveness
# ---------------------------------------------------------------------------


def chain_maps(n: int, m: int, p: Partition, k: int) -> list[IndexMap]:
    """Maps psi into 1..m+k hitting m+i exactly p_i times (i < k) and m+k p_k + 1 times.

    Indices 1..m are free; an empty list means the shape cannot fit in n slots.
    """
    counts = {m + i: p.part(i) for i in range(1, k)}
    counts[m + k] = p.part(k) + 1
    try:
        return maps_with_counts(n, m + k, counts, free=range(1, m + 1))
    except InfeasibleCounts:
        return []


def _chain_products(mu: AlgebraStructure, p: Partition, top: int) -> Iterator[tuple[int, IndexMap, list, list]]:
    n, m = mu.arity, mu.dimension
    units = lifted_units(m)
    for k in range(1, min(top, p.length + 1) + 1):
        formal = [formal_vector("a", i, m) for i in range(1, k + 1)]
        for psi in chain_maps(n, m, p, k):
            arguments = [units[j - 1] if j <= m else formal[j - m - 1] for j in psi.values]
            yield k, psi, formal, expand(mu, arguments)


def _chain_certificate(
    mu: AlgebraStructure,
    p: Partition,
    k: int,
    psi: IndexMap,
    violated: Callable[[Vector, Subspace], bool],
    budget: SearchBudget,
    salt: str,
) -> Certificate | None:
    m = mu.dimension
    rng = budget.rng(salt, k, psi)
    for _ in range(budget.retries):
        vectors = [random_vector(rng, m, budget.bound) for _ in range(k)]
        chain = tuple(Subspace.span(m, vectors[:r]) for r in range(1, k + 1))
        if chain[-1].dimension != k:
            continue
        arguments = tuple(unit_vector(m, j) if j <= m else vectors[j - m - 1] for j in psi.values)
        if any(count_in(chain[r - 1], *arguments) != p.prefix_sum(r) for r in range(1, k)):
            continue
        if count_in(chain[-1], *arguments) <= p.prefix_sum(k):
            continue
        value = multiply(mu, *arguments)
        if violated(value, chain[-1]):
            return Certificate(arguments, value, chain)
    return None


def is_p_anticommutative(mu: AlgebraStructure, p: Partition, budget: SearchBudget = SearchBudget()) -> PropertyVerdict:
    _require_weight(p, mu.arity, "p-anticommutativity")
    for k, psi, _, value in _chain_products(mu, p, mu.dimension):
        if all(poly_is_zero(c) for c in value):
            continue
        certificate = _chain_certificate(
            mu, p, k, psi, lambda product, _: any(product), budget, "anticommutative"
        )
        return PropertyVerdict(False, certificate, f"{p}-anticommutative")
    return PropertyVerdict(True, property=f"{p}-anticommutative")


def is_p_attractive(mu: AlgebraStructure, p: Partition, budget: SearchBudget = SearchBudget()) -> PropertyVerdict:
    """Products with the chain shape of p must fall into the top of the chain.

    A chain reaching the whole space is vacuous, so k stops at m - 1.
    """
    _require_weight(p, mu.arity - 1, "p-attractiveness")
    for k, psi, formal, value in _chain_products(mu, p, mu.dimension - 1):
        if all(poly_is_zero(c) for c in value):
            continue
        if all(poly_is_zero(minor) for minor in poly_minors([*formal, value], k + 1)):
            continue
        certificate = _chain_certificate(
            mu, p, k, psi, lambda product, top: not top.contains(product), budget, "attractive"
        )
        return PropertyVerdict(False, certificate, f"{p}-attractive")
    return PropertyVerdict(True, property=f"{p}-attractive")


# ---------------------------------------------------------------------------
# Subalgebraic structures
# ---------------------------------------------------------------------------


def _basis_escape(mu: AlgebraStructure) -> Certificate | None:
    m = mu.dimension
    for index, value in mu.items():
        arguments = tuple(unit_vector(m, i) for i in index)
        span = Subspace.span(m, arguments)
        if not span.contains(value):
            return Certificate(arguments, value, (span,))
    return None


def _subspaces_are_subalgebras(mu: AlgebraStructure, k: int) -> bool:
    """Every k-dimensional subspace is closed, as a polynomial identity."""
    n, m = mu.arity, mu.dimension
    rows = [formal_vector("b", j, m) for j in range(1, k + 1)]
    arguments = []
    for i in range(1, n + 1):
        coefficients = [MultiPoly.variable(f"c{i}_{j}") for j in range(1, k + 1)]
        arguments.append(
            [sum((c * row[r] for c, row in zip(coefficients, rows)), MultiPoly()) for r in range(m)]
        )
    value = expand(mu, arguments)
    if all(poly_is_zero(c) for c in value):
        return True
    return all(poly_is_zero(minor) for minor in poly_minors([*rows, value], k + 1))


def _random_escape(
    mu: AlgebraStructure, dimensions: list[int], budget: SearchBudget, attempts: int, salt: str
) -> Certificate | None:
    n, m = mu.arity, mu.dimension
    rng = budget.rng("subalgebraic", salt)
    for attempt in range(attempts):
        k = dimensions[attempt % len(dimensions)]
        rows = [random_vector(rng, m, budget.bound) for _ in range(k)]
        span = Subspace.span(m, rows)
        if span.dimension != k:
            continue
        arguments = tuple(
            linear_combination([rng.randint(-budget.bound, budget.bound) for _ in range(k)], rows)
            for _ in range(n)
        )
        value = multiply(mu, *arguments)
        if not span.contains(value):
            return Certificate(arguments, value, (span,))
    return None


def is_subalgebraic(mu: AlgebraStructure, budget: SearchBudget = SearchBudget()) -> PropertyVerdict:
    """Every subspace is a subalgebra, i.e. mu(a1, ..., an) lies in <a1, ..., an>."""
    dimensions = list(range(1, min(mu.arity, mu.dimension - 1) + 1))
    certificate = _basis_escape(mu)
    if certificate is None and dimensions:
        certificate = _random_escape(mu, dimensions, budget, max(1, budget.retries // 8), "sweep")
    if certificate is not None:
        return PropertyVerdict(False, certificate, "subalgebraic")
    failing = [k for k in dimensions if not _subspaces_are_subalgebras(mu, k)]
    if not failing:
        return PropertyVerdict(True, property="subalgebraic")
    return PropertyVerdict(False, _random_escape(mu, failing, budget, budget.retries, "search"), "subalgebraic")


# ---------------------------------------------------------------------------
# Algebras of an n-linear form
# ---------------------------------------------------------------------------


def form_decomposition(mu: AlgebraStructure) -> FormDecomposition:
    """Write mu as an n-linear form times a vector a killed in every slot.

    Raises NotFormAlgebra when the products span more than a line or when
    the spanning vector does not annihilate.
    """
    m = mu.dimension
    products = Subspace.span(m, [value for _, value in mu.items()])
    if products.dimension == 0:
        complement = tuple(unit_vector(m, i) for i in range(1, m))
        return FormDecomposition(unit_vector(m, m), complement)
    if products.dimension > 1:
        raise NotFormAlgebra(f"products span a {products.dimension}-dimensional subspace")
    distinguished = products.rows[0]
    complement = tuple(unit_vector(m, i) for i in products.complement_indices())
    decomposition = FormDecomposition(distinguished, complement)
    adapted = change_basis(mu, decomposition.basis())
    form = {}
    for index, value in adapted.items():
        if m in index:
            raise NotFormAlgebra(f"a product with {distinguished} as an argument does not vanish")
        form[index] = value[m - 1]
    return FormDecomposition(distinguished, complement, form)


def is_form_algebra(mu: AlgebraStructure) -> bool:
    try:
        form_decomposition(mu)
    except NotFormAlgebra:
        return False
    return True


# ---------------------------------------------------------------------------
# Randomized definitional oracle
# ---------------------------------------------------------------------------


def _element_of_layer(rng: random.Random, basis: list[Vector], r: int, bound: int) -> Vector:
    """Random vector of span(basis[:r]) outside span(basis[:r-1])."""
    coefficients = [rng.randint(-bound, bound) for _ in range(r - 1)]
    coefficients.append(rng.choice([c for c in range(-bound, bound + 1) if c]))
    return linear_combination(coefficients, basis[:r])


def _sample_chain(mu: AlgebraStructure, p: Partition, rng: random.Random, bound: int, top: int):
    n, m = mu.arity, mu.dimension
    feasible = [
        k for k in range(1, min(top, p.length + 1) + 1) if p.prefix_sum(k - 1) + p.part(k) + 1 <= n
    ]
    if not feasible:
        return None
    k = rng.choice(feasible)
    basis = [random_vector(rng, m, bound) for _ in range(m)]
    if Subspace.span(m, basis).dimension != m:
        return None
    chain = tuple(Subspace.span(m, basis[:r]) for r in range(1, k + 1))
    arguments = []
    for r in range(1, k):
        arguments.extend(_element_of_layer(rng, basis, r, bound) for _ in range(p.part(r)))
    room = n - p.prefix_sum(k - 1)
    top_count = room if k == m else rng.randint(p.part(k) + 1, room)
    arguments.extend(_element_of_layer(rng, basis, k, bound) for _ in range(top_count))
    arguments.extend(_element_of_layer(rng, basis, rng.randint(k + 1, m), bound) for _ in range(n - len(arguments)))
    rng.shuffle(arguments)
    if any(count_in(chain[r - 1], *arguments) != p.prefix_sum(r) for r in range(1, k)):
        return None
    if count_in(chain[-1], *arguments) <= p.prefix_sum(k):
        return None
    return chain, tuple(arguments)


def sampled_check(
    mu: AlgebraStructure,
    name: str,
    trials: int,
    seed: int,
    partition: Partition | None = None,
    bound: int = 3,
) -> PropertyVerdict:
    """Evaluate a property's definition on ``trials`` random inputs.

    A returned violation is exact; a pass is only evidence.
    """
    if name not in SAMPLED_PROPERTIES:
        raise UnknownProperty(f"unknown property {name!r}; expected one of {', '.join(SAMPLED_PROPERTIES)}")
    n, m = mu.arity, mu.dimension
    if name != "subalgebraic":
        if partition is None:
            raise BadPartition(f"{name} needs a partition")
        _require_weight(partition, n if name == "anticommutative" else n - 1, name)
    rng = random.Random(f"{seed}:{name}")
    for _ in range(trials):
        if name == "subalgebraic":
            k = rng.randint(1, min(n, m))
            rows = [random_vector(rng, m, bound) for _ in range(k)]
            span = Subspace.span(m, rows)
            arguments = tuple(
                linear_combination([rng.randint(-bound, bound) for _ in rows], rows) for _ in range(n)
            )
            value = multiply(mu, *arguments)
            if not span.contains(value):
                return PropertyVerdict(False, Certificate(arguments, value, (span,)), name)
            continue
        sample = _sample_chain(mu, partition, rng, bound, m if name == "anticommutative" else m - 1)
        if sample is None:
            continue
        chain, arguments = sample
        value = multiply(mu, *arguments)
        broken = any(value) if name == "anticommutative" else not chain[-1].contains(value)
        if broken:
            return PropertyVerdict(False, Certificate(arguments, value, chain), name)
    return PropertyVerdict(True, property=name)


def sampled_agrees(symbolic: PropertyVerdict, sampled: PropertyVerdict) -> bool:
    """Sound-direction agreement: a symbolic pass admits no sampled violation."""
    return not (symbolic.holds and not sampled.holds)

