"""Degenerations witnessed by parameterized bases.

A :class:`BasisFamily` E^t is an m x m matrix of Laurent polynomials in t
whose determinant is a nonzero monomial. The structure constants of mu in
the basis E^t are Laurent polynomials; when none of them has a pole at
t = 0 their values there are the constants of a degeneration of mu.

The pipelines at the bottom of the module construct such families:
IW contractions, the step from a non-subalgebraic algebra to an algebra of
an n-linear form, the descent of a form algebra to a p-minimal one, and the
chain of contractions that takes a subalgebraic algebra to a maximally
p-attractive one.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

import typer

from nary_python_cli.utils.errors import (
    BadK,
    BadPartition,
    DimensionMismatch,
    IndexOutOfRange,
    InvariantBroken,
    NegativeExponent,
    NoLimit,
    NotABasisFamily,
    NotFormAlgebra,
    NotKSubalgebra,
    NotSubalgebraic,
    ScheduleInvalid,
    SearchExhausted,
    Subalgebraic,
    UnsupportedArity,
    WeightMismatch,
    ZeroStructure,
)
from nary_python_cli.utils.properties import (
    SearchBudget,
    form_decomposition,
    formal_vector,
    is_k_subalgebra,
    is_subalgebraic,
    lifted_units,
    random_vector,
)
from nary_python_cli.utils.scalars import (
    LaurentPoly,
    MultiPoly,
    RatMatrix,
    Vector,
    determinant,
    laurent_limit_at_zero,
    linear_combination,
    poly_is_zero,
    poly_minors,
    render_laurent,
    unit_vector,
)
from nary_python_cli.utils.structures import (
    AlgebraStructure,
    Index,
    IndexMap,
    Partition,
    Subspace,
    change_basis,
    enumerate_partitions,
    expand,
    maps_with_counts,
    multiply,
)


def _verbose(verbose: bool, message: str) -> None:
    if verbose:
        typer.echo(f"  [verbose] {message}")


class BasisFamily:
    """Parameterized basis E^t; column i holds the coordinates of E_i^t."""

    __slots__ = ("dimension", "_columns")

    def __init__(self, columns: Sequence[Sequence]):
        columns = tuple(tuple(LaurentPoly.lift(entry) for entry in column) for column in columns)
        if not columns or any(len(column) != len(columns) for column in columns):
            raise DimensionMismatch("a basis family needs a nonempty square matrix")
        self.dimension = len(columns)
        self._columns = columns

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> BasisFamily:
        if not rows or any(len(row) != len(rows) for row in rows):
            raise DimensionMismatch("a basis family needs a nonempty square matrix")
        return cls([[row[j] for row in rows] for j in range(len(rows))])

    @classmethod
    def identity(cls, m: int) -> BasisFamily:
        return cls.scaled([0] * m)

    @classmethod
    def scaled(cls, exponents: Sequence[int], basis: RatMatrix | None = None) -> BasisFamily:
        """Columns t^{exponents[i]} * (column i of ``basis``); the identity basis by default."""
        m = len(exponents)
        basis = basis if basis is not None else RatMatrix.identity(m)
        if basis.shape != (m, m):
            raise DimensionMismatch(f"{m} exponents for a {basis.rows}x{basis.cols} basis")
        return cls(
            [
                [LaurentPoly.monomial(c, e) if c else LaurentPoly() for c in basis.column(i)]
                for i, e in enumerate(exponents)
            ]
        )

    def columns(self) -> list[tuple[LaurentPoly, ...]]:
        return list(self._columns)

    def rows(self) -> list[tuple[LaurentPoly, ...]]:
        return [tuple(column[i] for column in self._columns) for i in range(self.dimension)]

    def determinant(self) -> LaurentPoly:
        return LaurentPoly.lift(determinant(self.rows()))

    def determinant_monomial(self) -> tuple[Fraction, int]:
        """(c, d) with det E^t = c * t^d, or NotABasisFamily."""
        det = self.determinant()
        if not det.is_monomial():
            raise NotABasisFamily(f"determinant {render_laurent(det)} is not a nonzero monomial in t")
        exponent, coefficient = det.items()[0]
        return coefficient, exponent

    def monomial_split(self) -> tuple[RatMatrix, tuple[int, ...]] | None:
        """(B, c) when column i equals t^{c_i} times a constant vector, else None."""
        vectors, exponents = [], []
        for column in self._columns:
            present = [entry for entry in column if entry]
            degrees = {entry.min_degree() for entry in present}
            if not present or len(degrees) != 1 or not all(entry.is_monomial() for entry in present):
                return None
            (degree,) = degrees
            vectors.append(tuple(entry.coefficient(degree) for entry in column))
            exponents.append(degree)
        return RatMatrix.from_columns(vectors), tuple(exponents)

    def is_constant(self) -> bool:
        return all(entry.is_constant() for column in self._columns for entry in column)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BasisFamily):
            return NotImplemented
        return self._columns == other._columns

    def __hash__(self) -> int:
        return hash(self._columns)

    def __repr__(self) -> str:
        rows = "; ".join(", ".join(render_laurent(entry) for entry in row) for row in self.rows())
        return f"BasisFamily([{rows}])"


@dataclass(frozen=True)
class DegenerationWitness:
    """mu --E^t--> target; ``lossless`` when every family constant is t-free."""

    source: AlgebraStructure
    family: BasisFamily
    target: AlgebraStructure
    lossless: bool

    def verify(self) -> bool:
        return apply_witness(self.source, self.family).target == self.target


@dataclass(frozen=True)
class DegenerationChain:
    """Consecutive witnesses; ``partition`` is the one the pipeline settled on."""

    witnesses: tuple[DegenerationWitness, ...]
    partition: Partition | None = None
    witness_map: IndexMap | None = None

    @property
    def source(self) -> AlgebraStructure:
        return self.witnesses[0].source

    @property
    def target(self) -> AlgebraStructure:
        return self.witnesses[-1].target

    @property
    def is_lossless(self) -> bool:
        return all(witness.lossless for witness in self.witnesses)


@dataclass(frozen=True)
class PartitionRealization:
    """A partition together with a basis (columns) and an index map realizing it."""

    partition: Partition
    basis: RatMatrix
    witness_map: IndexMap


def _inverse_rows(family: BasisFamily, coefficient: Fraction, degree: int) -> list[list[LaurentPoly]]:
    m = family.dimension
    rows = family.rows()
    scale = LaurentPoly.monomial(1 / coefficient, -degree)
    inverse = [[LaurentPoly()] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            minor = [[rows[r][c] for c in range(m) if c != i] for r in range(m) if r != j]
            cofactor = LaurentPoly.lift(determinant(minor)) if minor else LaurentPoly.constant(1)
            if (i + j) % 2:
                cofactor = -cofactor
            inverse[i][j] = cofactor * scale
    return inverse


def family_constants(mu: AlgebraStructure, family: BasisFamily) -> dict[Index, tuple[LaurentPoly, ...]]:
    """Structure constants of mu in the basis E^t, nonzero tuples only."""
    if family.dimension != mu.dimension:
        raise DimensionMismatch(f"{family.dimension}-dimensional family for a {mu.dimension}-dimensional structure")
    coefficient, degree = family.determinant_monomial()
    constants: dict[Index, tuple[LaurentPoly, ...]] = {}
    split = family.monomial_split()
    if split is not None:
        basis, exponents = split
        for index, vector in change_basis(mu, basis).items():
            shift = sum(exponents[i - 1] for i in index)
            constants[index] = tuple(
                LaurentPoly.monomial(c, shift - exponents[j]) if c else LaurentPoly() for j, c in enumerate(vector)
            )
        return constants
    m = mu.dimension
    inverse = _inverse_rows(family, coefficient, degree)
    columns = family.columns()
    for index in product(range(1, m + 1), repeat=mu.arity):
        value = expand(mu, [columns[i - 1] for i in index])
        if not any(value):
            continue
        coordinates = tuple(
            sum((inverse[j][r] * value[r] for r in range(m) if value[r]), LaurentPoly()) for j in range(m)
        )
        if any(coordinates):
            constants[index] = coordinates
    return constants


def apply_witness(mu: AlgebraStructure, family: BasisFamily) -> DegenerationWitness:
    constants = family_constants(mu, family)
    limits = {}
    for index, vector in constants.items():
        try:
            limits[index] = tuple(laurent_limit_at_zero(c) for c in vector)
        except NegativeExponent:
            j = next(j for j, c in enumerate(vector, start=1) if c and c.min_degree() < 0)
            raise NoLimit(
                f"constant {list(index)} -> {j} is {render_laurent(vector[j - 1])}, which has a pole at t = 0"
            ) from None
    lossless = all(c.is_constant() for vector in constants.values() for c in vector)
    return DegenerationWitness(mu, family, AlgebraStructure(mu.arity, mu.dimension, limits), lossless)


def basis_change_witness(mu: AlgebraStructure, basis: RatMatrix) -> DegenerationWitness:
    """The t-free witness of a plain change of basis."""
    return apply_witness(mu, BasisFamily.scaled([0] * mu.dimension, basis))


def scale_to_zero_witness(n: int, m: int) -> BasisFamily:
    """E = (t e_1, ..., t e_m): every constant picks up t^(n-1)."""
    if n < 2:
        raise UnsupportedArity(f"arity must be at least 2, got {n}")
    return BasisFamily.scaled([1] * m)


def verify_chain(chain: DegenerationChain) -> bool:
    """Every witness recomputes and each target feeds the next source."""
    witnesses = chain.witnesses
    if any(not witness.verify() for witness in witnesses):
        return False
    return all(a.target == b.source for a, b in zip(witnesses, witnesses[1:]))


# ---------------------------------------------------------------------------
# IW contractions
# ---------------------------------------------------------------------------


def iw_contraction(mu: AlgebraStructure, l: int, k: int) -> DegenerationWitness:
    """The k-IW contraction of mu with respect to <e_1, ..., e_l>.

    Uses E = (t^{k-n} e_1, ..., t^{k-n} e_l, t^{k-1} e_{l+1}, ..., t^{k-1} e_m)
    and checks the decomposition of the target before returning.
    """
    n, m = mu.arity, mu.dimension
    if not 2 <= k <= n:
        raise BadK(f"IW contractions need 2 <= k <= {n}, got {k}")
    if not 0 <= l <= m:
        raise IndexOutOfRange(f"sub-dimension {l} leaves 0..{m}")
    head = Subspace.coordinate(m, range(1, l + 1))
    verdict = is_k_subalgebra(mu, head, k)
    if not verdict.holds:
        witness = verdict.certificate
        raise NotKSubalgebra(
            f"<e_1..e_{l}> is not a {k}-subalgebra: the product of {_render_vectors(witness.arguments)}"
            f" is {_render_vector(witness.product)}"
        )
    witness = apply_witness(mu, BasisFamily.scaled([k - n] * l + [k - 1] * (m - l)))
    target = witness.target
    tail = Subspace.coordinate(m, range(l + 1, m + 1))
    if not is_k_subalgebra(target, head, k).holds or not is_k_subalgebra(target, tail, n - k + 1).holds:
        raise InvariantBroken(f"the {k}-IW contraction on {l} vectors lost its subalgebra decomposition")
    for index in product(range(1, m + 1), repeat=n):
        if sum(1 for i in index if i <= l) >= k and mu.product(index) != target.product(index):
            raise InvariantBroken(f"the {k}-IW contraction changed the product {list(index)}")
    return witness


def _render_vector(vector: Vector) -> str:
    return "(" + ",".join(str(c) for c in vector) + ")"


def _render_vectors(vectors) -> str:
    return ", ".join(_render_vector(v) for v in vectors)


# ---------------------------------------------------------------------------
# Non-subalgebraic algebras degenerate to form algebras
# ---------------------------------------------------------------------------


def degenerate_to_form(
    mu: AlgebraStructure, budget: SearchBudget = SearchBudget(), verbose: bool = False
) -> DegenerationWitness:
    """Degenerate a non-subalgebraic algebra to an algebra of a nonzero n-linear form.

    A product y = mu(a_1, ..., a_n) outside <a_1, ..., a_n> gives a basis
    whose first m-1 vectors span a hyperplane H containing the a_i but not
    y, and whose last vector is y. The family (t v_1, ..., t v_{m-1}, t^n y)
    keeps exactly the H x ... x H -> <y> part of mu.
    """
    n, m = mu.arity, mu.dimension
    verdict = is_subalgebraic(mu, budget)
    if verdict.holds:
        raise Subalgebraic("the structure is subalgebraic, so it does not degenerate to a form algebra this way")
    if verdict.certificate is None:
        raise SearchExhausted(
            f"not subalgebraic, but no escaping product found after {budget.retries} attempts (seed {budget.seed})"
        )
    arguments, escape = verdict.certificate.arguments, verdict.certificate.product
    _verbose(verbose, f"escaping product {_render_vector(escape)} of {_render_vectors(arguments)}")
    span = Subspace.span(m, arguments)
    closure = Subspace.span(m, [*span.rows, escape])
    completion = [unit_vector(m, i) for i in closure.complement_indices()]
    basis = RatMatrix.from_columns([*span.rows, *completion, escape])
    witness = apply_witness(mu, BasisFamily.scaled([1] * (m - 1) + [n], basis))
    try:
        decomposition = form_decomposition(witness.target)
    except NotFormAlgebra as exc:
        raise InvariantBroken(f"degeneration target is not a form algebra: {exc}") from None
    if decomposition.is_zero:
        raise InvariantBroken("degeneration to a form algebra lost every constant")
    return witness


# ---------------------------------------------------------------------------
# Form algebras degenerate to p-minimal ones
# ---------------------------------------------------------------------------


def minimality_exponents(p: Partition, m: int, n: int) -> tuple[int, ...]:
    """c_i = (n+1)^m - (n+1)^(m-i) for 1 <= i <= m-1, with the ordering inequalities checked."""
    if p.weight != n:
        raise WeightMismatch(f"expected a partition of {n}, got {p}")
    if p.part(m):
        raise BadPartition(f"{p} has a nonzero part at position {m}")
    c = tuple((n + 1) ** m - (n + 1) ** (m - i) for i in range(1, m))
    if any(a >= b for a, b in zip(c, c[1:])) or (c and c[0] <= 0):
        raise ScheduleInvalid(f"exponents {c} are not strictly increasing and positive")
    for i in range(1, m - 1):
        later = range(i + 2, m)
        left = (1 + sum(p.part(j) for j in later)) * c[i]
        right = c[i - 1] + sum(p.part(j) * c[j - 1] for j in later)
        if left <= right:
            raise ScheduleInvalid(f"exponent schedule {c} violates the ordering inequality at i={i}")
    return c


def _form_value(form: Mapping[Index, Fraction], arguments: Sequence[Sequence], zero):
    total = zero
    for index, c in form.items():
        term = None
        for slot, i in enumerate(index):
            factor = arguments[slot][i - 1]
            if not factor:
                term = None
                break
            term = factor if term is None else term * factor
        if term is not None:
            total = total + term * c
    return total


def find_max_form_partition(
    mu: AlgebraStructure, budget: SearchBudget = SearchBudget(), verbose: bool = False
) -> PartitionRealization:
    """Largest q in par_n such that some basis of the form's domain has a nonzero value with counts q.

    The returned basis lists the realizing vectors first, then a completion,
    then the distinguished vector of the form.
    """
    decomposition = form_decomposition(mu)
    if decomposition.is_zero:
        raise NotFormAlgebra("the structure is not an algebra of a nonzero n-linear form")
    n, m = mu.arity, mu.dimension
    u = m - 1
    form = decomposition.form
    for q in enumerate_partitions(n, max_parts=u):
        r = q.length
        formal = [formal_vector("w", i, u) for i in range(1, r + 1)]
        shapes = maps_with_counts(n, r, q.parts)
        live = [
            psi for psi in shapes
            if not poly_is_zero(_form_value(form, [formal[j - 1] for j in psi.values], MultiPoly()))
        ]
        if live:
            _verbose(verbose, f"maximal form partition {q} ({len(live)} live index maps)")
            break
        _verbose(verbose, f"form partition {q} is infeasible")
    else:
        raise InvariantBroken("a nonzero form has no feasible partition")
    vectors, psi = _realize_form(form, u, r, live, budget)
    completion = [unit_vector(u, i) for i in Subspace.span(u, vectors).complement_indices()]
    ambient = [linear_combination(v, decomposition.complement) for v in [*vectors, *completion]]
    basis = RatMatrix.from_columns([*ambient, decomposition.distinguished])
    return PartitionRealization(q, basis, IndexMap(psi.values, m))


def _realize_form(form, u: int, r: int, live: list[IndexMap], budget: SearchBudget):
    for coordinates in permutations(range(1, u + 1), r):
        vectors = [unit_vector(u, i) for i in coordinates]
        for psi in live:
            if _form_value(form, [vectors[j - 1] for j in psi.values], Fraction(0)):
                return vectors, psi
    rng = budget.rng("form-partition", r)
    for _ in range(budget.retries):
        vectors = [random_vector(rng, u, budget.bound) for _ in range(r)]
        if Subspace.span(u, vectors).dimension != r:
            continue
        for psi in live:
            if _form_value(form, [vectors[j - 1] for j in psi.values], Fraction(0)):
                return vectors, psi
    raise SearchExhausted(
        f"no basis realizing the form partition after {budget.retries} attempts (seed {budget.seed})"
    )


def form_to_minimal(
    mu: AlgebraStructure, budget: SearchBudget = SearchBudget(), verbose: bool = False
) -> DegenerationChain:
    """Degenerate an algebra of a nonzero n-linear form to a p-minimal one."""
    from nary_python_cli.utils.classification import is_p_minimal_presentation

    n, m = mu.arity, mu.dimension
    realization = find_max_form_partition(mu, budget, verbose)
    p = realization.partition
    c = minimality_exponents(p, m, n)
    exponents = [*c, sum(p.part(i) * c[i - 1] for i in range(1, m))]
    _verbose(verbose, f"minimality exponents {tuple(exponents)}")
    try:
        witness = apply_witness(mu, BasisFamily.scaled(exponents, realization.basis))
    except NoLimit as exc:
        raise InvariantBroken(f"{mu} is not {p}-anticommutative in the realizing basis: {exc}") from None
    target = witness.target
    if not target.constant(realization.witness_map.values, m):
        raise InvariantBroken("the realizing constant did not survive the minimality degeneration")
    if not is_p_minimal_presentation(target, p).holds:
        raise InvariantBroken(f"target is not a {p}-minimal presentation")
    return DegenerationChain((witness,), p, realization.witness_map)


# ---------------------------------------------------------------------------
# Subalgebraic algebras degenerate to maximally p-attractive ones
# ---------------------------------------------------------------------------


def _attractive_candidates(n: int, m: int) -> list[Partition]:
    found = []
    for weight in range(1, n):
        found.extend(enumerate_partitions(weight, max_parts=m - 1))
    return sorted(found, reverse=True)


def _escapes(mu: AlgebraStructure, q: Partition) -> bool:
    """Some shape-q product of generic vectors leaves their span."""
    n, m = mu.arity, mu.dimension
    r = q.length
    units = lifted_units(m)
    formal = [formal_vector("b", i, m) for i in range(1, r + 1)]
    for psi in maps_with_counts(n, m + r, {m + i: q.part(i) for i in range(1, r + 1)}, free=range(1, m + 1)):
        value = expand(mu, [units[j - 1] if j <= m else formal[j - m - 1] for j in psi.values])
        if all(poly_is_zero(c) for c in value):
            continue
        if not all(poly_is_zero(minor) for minor in poly_minors([*formal, value], r + 1)):
            return True
    return False


def find_attractive_partition(
    mu: AlgebraStructure, budget: SearchBudget = SearchBudget(), verbose: bool = False
) -> PartitionRealization:
    """The partition p of n-1 for which mu degenerates to a maximally p-attractive algebra.

    The basis b_1, ..., b_m satisfies mu(b_phi(1), ..., b_phi(n)) outside
    <b_1, ..., b_{m-1}> for the returned phi, which hits i exactly p_i times
    for i < m and m exactly p_m + 1 times.
    """
    n, m = mu.arity, mu.dimension
    if mu.is_zero():
        raise ZeroStructure("the zero structure has no attractive partition")
    if not is_subalgebraic(mu, budget).holds:
        raise NotSubalgebraic("the structure is not subalgebraic")
    if m == 1:
        return PartitionRealization(Partition([n - 1]), RatMatrix.identity(1), IndexMap((1,) * n, 1))
    for q in _attractive_candidates(n, m):
        if _escapes(mu, q):
            break
        _verbose(verbose, f"attractive candidate {q} is infeasible")
    else:
        raise InvariantBroken("no attractive candidate is feasible for a nonzero subalgebraic structure")
    s, r = q.weight, q.length
    if s == n - 1:
        p = q
    else:
        if r != m - 1:
            raise InvariantBroken(f"maximal candidate {q} of weight {s} < {n - 1} uses only {r} of {m - 1} vectors")
        try:
            p = Partition([*q.parts, n - 1 - s])
        except BadPartition:
            raise InvariantBroken(f"extending {q} by {n - 1 - s} breaks the partition order") from None
    _verbose(verbose, f"attractive partition {p} from maximal candidate {q}")
    counts = {i: q.part(i) for i in range(1, r + 1)}
    counts[m] = n - s
    shapes = maps_with_counts(n, m, counts)
    units = [unit_vector(m, i) for i in range(1, m + 1)]
    hyperplane = Subspace.coordinate(m, range(1, m))
    for phi in shapes:
        if not hyperplane.contains(multiply(mu, *[units[j - 1] for j in phi.values])):
            return PartitionRealization(p, RatMatrix.identity(m), phi)
    rng = budget.rng("attractive-partition", q)
    for _ in range(budget.retries):
        vectors = [random_vector(rng, m, budget.bound) for _ in range(m)]
        if Subspace.span(m, vectors).dimension != m:
            continue
        hyperplane = Subspace.span(m, vectors[:-1])
        for phi in shapes:
            if not hyperplane.contains(multiply(mu, *[vectors[j - 1] for j in phi.values])):
                return PartitionRealization(p, RatMatrix.from_columns(vectors), phi)
    raise SearchExhausted(
        f"no basis realizing the attractive partition {p} after {budget.retries} attempts (seed {budget.seed})"
    )


def _check_attractive_stage(mu: AlgebraStructure, p: Partition, phi: IndexMap, s: int) -> None:
    m = mu.dimension
    if not mu.constant(phi.values, m):
        raise InvariantBroken(f"stage {s}: the constant {list(phi.values)} -> {m} vanished")
    for r in range(1, min(s, m - 1) + 1):
        if not is_k_subalgebra(mu, Subspace.coordinate(m, range(1, r + 1)), p.prefix_sum(r) + 1).holds:
            raise InvariantBroken(f"stage {s}: <e_1..e_{r}> is not a {p.prefix_sum(r) + 1}-subalgebra")
    for r in range(1, min(s - 1, m - 1) + 1):
        k = p.weight - p.prefix_sum(r) + 1
        if not is_k_subalgebra(mu, Subspace.coordinate(m, range(r + 1, m + 1)), k).holds:
            raise InvariantBroken(f"stage {s}: <e_{r + 1}..e_{m}> is not a {k}-subalgebra")


def subalgebraic_to_max_attractive(
    mu: AlgebraStructure, budget: SearchBudget = SearchBudget(), verbose: bool = False
) -> DegenerationChain:
    """Basis change followed by IW contractions on <e_1..e_s> for s = 1..m-1."""
    from nary_python_cli.utils.classification import is_maximally_p_attractive_presentation

    realization = find_attractive_partition(mu, budget, verbose)
    p, phi = realization.partition, realization.witness_map
    witnesses = [basis_change_witness(mu, realization.basis)]
    current = witnesses[0].target
    _check_attractive_stage(current, p, phi, 1)
    for s in range(1, mu.dimension):
        k = p.prefix_sum(s) + 1
        _verbose(verbose, f"stage {s}: {k}-IW contraction on <e_1..e_{s}>")
        try:
            witness = iw_contraction(current, s, k)
        except NotKSubalgebra as exc:
            raise InvariantBroken(f"stage {s}: {exc}") from None
        witnesses.append(witness)
        current = witness.target
        _check_attractive_stage(current, p, phi, s + 1)
    if not is_maximally_p_attractive_presentation(current, p).holds:
        raise InvariantBroken(f"target is not a maximally {p}-attractive presentation")
    return DegenerationChain(tuple(witnesses), p, phi)
