"""Linear systems for special presentations and the level-one recognizer.

A p-minimal presentation is supported on index maps with preimage counts
p whose products lie on e_m; a maximally p-attractive presentation is
supported on maps hitting exactly one index j one extra time, with the
product on e_j. In both cases the presentation property is equivalent to
a homogeneous linear system on the constants, assembled here.

For n in {2, 3} the solution sets of these systems are the explicit
families listed by :func:`enumerate_level_one`; the golden tables under
``golden/`` are their rendering for small m.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib.resources import files
from itertools import combinations, permutations

from nary_python_cli.utils.errors import (
    BadPartition,
    Inconclusive,
    InvariantBroken,
    SearchExhausted,
    UnsupportedArity,
    WeightMismatch,
    ZeroTuple,
)
from nary_python_cli.utils.properties import (
    PropertyVerdict,
    SearchBudget,
    is_form_algebra,
    is_subalgebraic,
)
from nary_python_cli.utils.scalars import RatMatrix, nullspace_basis, render_rational
from nary_python_cli.utils.structures import (
    AlgebraStructure,
    IndexMap,
    Partition,
    derivation_dimension,
    maps_with_counts,
    partial_override,
)


class Kind(str, Enum):
    FORM_MINIMAL = "form-minimal"
    MAX_ATTRACTIVE = "max-attractive"


# ---------------------------------------------------------------------------
# Linear systems
# ---------------------------------------------------------------------------


def _canonical_row(row: Mapping[IndexMap, Fraction]) -> tuple[tuple[IndexMap, int], ...]:
    """Integer row with coprime entries and a positive leading coefficient."""
    items = sorted((label, Fraction(c)) for label, c in row.items() if c)
    if not items:
        return ()
    scale = math.lcm(*(c.denominator for _, c in items))
    integers = [(label, int(c * scale)) for label, c in items]
    divisor = math.gcd(*(c for _, c in integers))
    if integers[0][1] < 0:
        divisor = -divisor
    return tuple((label, c // divisor) for label, c in integers)


@dataclass(frozen=True)
class LinearSystem:
    """Linear equations sum_phi c_phi * alpha_phi = 0 over labelled unknowns."""

    labels: tuple[IndexMap, ...]
    equations: tuple[tuple[tuple[IndexMap, int], ...], ...]
    homogeneous: bool = True

    def __post_init__(self):
        declared = set(self.labels)
        for equation in self.equations:
            unknown = [label for label, _ in equation if label not in declared]
            if unknown:
                raise InvariantBroken(f"equation mentions undeclared unknown {unknown[0]}")

    @classmethod
    def assemble(cls, labels: Iterable[IndexMap], rows: Iterable[Mapping[IndexMap, Fraction]]) -> LinearSystem:
        """Build a system from raw rows, dropping zero rows and syntactic duplicates."""
        seen = {}
        for row in rows:
            canonical = _canonical_row(row)
            if canonical:
                seen.setdefault(canonical, None)
        return cls(tuple(labels), tuple(seen))

    @property
    def size(self) -> int:
        return len(self.labels)

    def matrix(self) -> RatMatrix:
        column = {label: i for i, label in enumerate(self.labels)}
        grid = []
        for equation in self.equations:
            row = [Fraction(0)] * self.size
            for label, c in equation:
                row[column[label]] = Fraction(c)
            grid.append(row)
        return RatMatrix(grid, cols=self.size)

    def solution_basis(self) -> list[dict[IndexMap, Fraction]]:
        return [
            {label: c for label, c in zip(self.labels, vector) if c}
            for vector in nullspace_basis(self.matrix())
        ]

    def solution_dimension(self) -> int:
        return len(nullspace_basis(self.matrix()))

    def satisfied_by(self, values: Mapping[IndexMap, Fraction]) -> bool:
        return all(
            sum((c * Fraction(values.get(label, 0)) for label, c in equation), Fraction(0)) == 0
            for equation in self.equations
        )


def _subset_sum(psi: IndexMap, x: int, y: int, k: int) -> dict[IndexMap, Fraction]:
    """sum over S in psi^-1(x) with |S| = k of alpha at psi with S moved to y."""
    row: dict[IndexMap, Fraction] = {}
    for subset in combinations(psi.preimage(x), k):
        label = partial_override(psi, subset, y)
        row[label] = row.get(label, Fraction(0)) + 1
    return row


def _minimal_counts(p: Partition, m: int) -> dict[int, int]:
    return {i: p.part(i) for i in range(1, m)}


def _check_minimal_partition(n: int, m: int, p: Partition) -> None:
    if p.weight != n:
        raise WeightMismatch(f"a {n}-ary minimal presentation needs a partition of {n}, got {p}")
    if p.part(m):
        raise BadPartition(f"{p} has a nonzero part at position {m}; p-minimality needs p_m = 0")


def _check_attractive_partition(n: int, m: int, p: Partition) -> None:
    if p.weight != n - 1:
        raise WeightMismatch(f"a {n}-ary attractive presentation needs a partition of {n - 1}, got {p}")
    if p.part(m + 1):
        raise BadPartition(f"{p} has more than {m} parts; maximal attractiveness needs p_(m+1) = 0")


def minimal_labels(n: int, m: int, p: Partition) -> list[IndexMap]:
    """Index maps into 1..m-1 hitting each i exactly p_i times."""
    _check_minimal_partition(n, m, p)
    return maps_with_counts(n, m, _minimal_counts(p, m))


def pmin_system(n: int, m: int, p: Partition) -> LinearSystem:
    """Equations whose solutions are exactly the p-minimal presentations."""
    labels = minimal_labels(n, m, p)
    rows = []
    for x, y in combinations(range(1, m), 2):
        for k in range(1, p.part(y) + 1):
            counts = _minimal_counts(p, m)
            counts[x] += k
            counts[y] -= k
            for psi in maps_with_counts(n, m, counts):
                rows.append(_subset_sum(psi, x, y, k))
    return LinearSystem.assemble(labels, rows)


def _attractive_counts(p: Partition, m: int, j: int) -> dict[int, int]:
    counts = {i: p.part(i) for i in range(1, m + 1)}
    counts[j] += 1
    return counts


def attractive_output(phi: IndexMap, p: Partition) -> int | None:
    """The index j hit p_j + 1 times when phi has the maximally attractive shape."""
    counts = phi.counts()
    extra = [i for i, c in enumerate(counts, start=1) if c != p.part(i)]
    if len(extra) == 1 and counts[extra[0] - 1] == p.part(extra[0]) + 1:
        return extra[0]
    return None


def attractive_labels(n: int, m: int, p: Partition) -> list[IndexMap]:
    _check_attractive_partition(n, m, p)
    labels = []
    for j in range(1, m + 1):
        labels.extend(maps_with_counts(n, m, _attractive_counts(p, m, j)))
    return sorted(labels)


def maxatt_system(n: int, m: int, p: Partition) -> LinearSystem:
    """Equations whose solutions are exactly the maximally p-attractive presentations."""
    labels = attractive_labels(n, m, p)
    rows = []
    for x, y in combinations(range(1, m + 1), 2):
        for psi in maps_with_counts(n, m, _attractive_counts(p, m, x)):
            row = _subset_sum(psi, x, y, 1)
            row[psi] = row.get(psi, Fraction(0)) - 1
            rows.append(row)
        for k in range(1, p.part(y) + 1):
            counts = {i: p.part(i) for i in range(1, m + 1)}
            counts[x] += k + 1
            counts[y] -= k
            for psi in maps_with_counts(n, m, counts):
                rows.append(_subset_sum(psi, x, y, k))
                rows.append(_subset_sum(psi, x, y, k + 1))
            for j in range(1, m + 1):
                if j in (x, y):
                    continue
                counts = _attractive_counts(p, m, j)
                counts[x] += k
                counts[y] -= k
                for psi in maps_with_counts(n, m, counts):
                    rows.append(_subset_sum(psi, x, y, k))
    return LinearSystem.assemble(labels, rows)


# ---------------------------------------------------------------------------
# Presentation checkers
# ---------------------------------------------------------------------------


def is_p_minimal_presentation(mu: AlgebraStructure, p: Partition) -> PropertyVerdict:
    n, m = mu.arity, mu.dimension
    name = f"{p}-minimal presentation"
    _check_minimal_partition(n, m, p)
    expected = p.padded(m)
    values = {}
    for index, j, c in mu.nonzero_constants():
        phi = IndexMap(index, m)
        if j != m or phi.counts() != expected:
            return PropertyVerdict(False, property=name)
        values[phi] = c
    if not values:
        return PropertyVerdict(False, property=name)
    return PropertyVerdict(pmin_system(n, m, p).satisfied_by(values), property=name)


def is_maximally_p_attractive_presentation(mu: AlgebraStructure, p: Partition) -> PropertyVerdict:
    n, m = mu.arity, mu.dimension
    name = f"maximally {p}-attractive presentation"
    _check_attractive_partition(n, m, p)
    values = {}
    for index, j, c in mu.nonzero_constants():
        phi = IndexMap(index, m)
        if attractive_output(phi, p) != j:
            return PropertyVerdict(False, property=name)
        values[phi] = c
    return PropertyVerdict(maxatt_system(n, m, p).satisfied_by(values), property=name)


def instantiate(kind: Kind, n: int, m: int, p: Partition, values: Mapping[IndexMap, Fraction]) -> AlgebraStructure:
    """Structure with the presentation support of ``kind`` and the given constants."""
    constants: dict[tuple[int, ...], dict[int, Fraction]] = {}
    for phi, c in values.items():
        j = m if kind is Kind.FORM_MINIMAL else attractive_output(phi, p)
        if j is None:
            raise InvariantBroken(f"{phi} does not have the maximally {p}-attractive shape")
        constants.setdefault(phi.values, {})[j] = Fraction(c)
    return AlgebraStructure(n, m, constants)


# ---------------------------------------------------------------------------
# Families for n = 2 and n = 3
# ---------------------------------------------------------------------------


def _first_nonzero_scaled(values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    values = tuple(Fraction(v) for v in values)
    lead = next((v for v in values if v), None)
    if lead is None:
        raise ZeroTuple("the parameter tuple must not be all zero")
    return tuple(v / lead for v in values)


def canonical_parameters(family: str, n: int, m: int, raw: Sequence) -> tuple[Fraction, ...]:
    """Normal form of a family's parameters under basis scaling.

    ``t2`` takes (epsilon, alpha1, alpha2, alpha3) and is divided by epsilon
    when it is nonzero. ``t11`` in dimension 2 only sees differences of the
    alpha, so the mean is removed first. ``nu`` is a true invariant.
    """
    raw = tuple(Fraction(v) for v in raw)
    if not raw or family == "nu":
        return raw
    if family == "t2" and raw[0]:
        return tuple(v / raw[0] for v in raw)
    if family == "t11" and m == 2:
        mean = sum(raw, Fraction(0)) / len(raw)
        raw = tuple(v - mean for v in raw)
    return _first_nonzero_scaled(raw)


def _on(j: int, c) -> dict[int, Fraction]:
    return {j: Fraction(c)}


def _a3(m: int, _) -> dict:
    return {(1, 1): _on(m, 1)}


def _n3(m: int, _) -> dict:
    return {(1, 2): _on(m, 1), (2, 1): _on(m, -1)}


def _p_minus(m: int, _) -> dict:
    constants = {}
    for i in range(2, m + 1):
        constants[(1, i)] = _on(i, 1)
        constants[(i, 1)] = _on(i, -1)
    return constants


def _nu(m: int, params) -> dict:
    constants = {(1, 1): _on(1, 1)}
    if params:
        (alpha,) = params
        for i in range(2, m + 1):
            constants[(1, i)] = _on(i, alpha)
            constants[(i, 1)] = _on(i, 1 - alpha)
    return constants


def _t3(m: int, _) -> dict:
    return {(1, 1, 1): _on(m, 1)}


def _t21(m: int, params) -> dict:
    a1, a2, a3 = params
    return {(2, 1, 1): _on(m, a1), (1, 2, 1): _on(m, a2), (1, 1, 2): _on(m, a3)}


def _t111(m: int, _) -> dict:
    constants = {}
    for values in permutations((1, 2, 3)):
        inversions = sum(1 for a, b in combinations(values, 2) if a > b)
        constants[values] = _on(m, (-1) ** inversions)
    return constants


def _t2(m: int, params) -> dict:
    epsilon, a1, a2, a3 = params if params else (1, 0, 0, 0)
    constants = {(1, 1, 1): _on(1, epsilon)}
    for i in range(2, m + 1):
        constants[(1, 1, i)] = _on(i, a3)
        constants[(1, i, 1)] = _on(i, a2)
        constants[(i, 1, 1)] = _on(i, a1)
    return constants


def _t11(m: int, params) -> dict:
    """Solves maxatt_system(3, m, (1,1)): e_i outputs (i > 2) carry alpha, e1 and e2 outputs its differences."""
    a1, a2, a3 = params
    constants = {
        (1, 1, 2): _on(1, a1 - a2),
        (1, 2, 1): _on(1, a3 - a1),
        (2, 1, 1): _on(1, a2 - a3),
        (2, 2, 1): _on(2, a2 - a1),
        (2, 1, 2): _on(2, a1 - a3),
        (1, 2, 2): _on(2, a3 - a2),
    }
    for i in range(3, m + 1):
        constants[(i, 1, 2)] = _on(i, a1)
        constants[(i, 2, 1)] = _on(i, -a1)
        constants[(1, i, 2)] = _on(i, -a2)
        constants[(2, i, 1)] = _on(i, a2)
        constants[(1, 2, i)] = _on(i, a3)
        constants[(2, 1, i)] = _on(i, -a3)
    return constants


@dataclass(frozen=True)
class Family:
    """A family of level-one structures from the n = 2 or n = 3 tables."""

    symbol: str
    kind: Kind
    arity: int
    partition: Partition
    min_dimension: int
    shown: tuple[Fraction, ...]
    build: Callable[[int, tuple[Fraction, ...]], dict]
    constraint: Callable[[int], str]

    def parameters(self, m: int) -> tuple[Fraction, ...]:
        if self.symbol in ("nu", "t2") and m == 1:
            return ()
        return self.shown

    def structure(self, m: int, params: Sequence | None = None) -> AlgebraStructure:
        params = self.parameters(m) if params is None else tuple(Fraction(v) for v in params)
        return AlgebraStructure(self.arity, m, self.build(m, params))


def _fixed(_: int) -> str:
    return "no parameters"


def _nu_constraint(m: int) -> str:
    return "no parameters" if m == 1 else "alpha in k, alpha=2 shown"


def _t2_constraint(m: int) -> str:
    if m == 1:
        return "no parameters"
    return "alpha1+alpha2+alpha3=epsilon, epsilon in {0,1}, epsilon=1 alpha=(1,1,-1) shown"


def _t11_constraint(m: int) -> str:
    if m == 2:
        return "alpha not all equal, up to scaling and shifts, alpha=(1,2,-3) shown"
    return "alpha not all zero, up to scaling, alpha=(1,2,-3) shown"


def _fractions(*values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


FAMILIES: tuple[Family, ...] = (
    Family("A3", Kind.FORM_MINIMAL, 2, Partition([2]), 2, (), _a3, _fixed),
    Family("n3", Kind.FORM_MINIMAL, 2, Partition([1, 1]), 3, (), _n3, _fixed),
    Family("p-", Kind.MAX_ATTRACTIVE, 2, Partition([1]), 2, (), _p_minus, _fixed),
    Family("nu", Kind.MAX_ATTRACTIVE, 2, Partition([1]), 1, _fractions(2), _nu, _nu_constraint),
    Family("t3", Kind.FORM_MINIMAL, 3, Partition([3]), 2, (), _t3, _fixed),
    Family(
        "t21",
        Kind.FORM_MINIMAL,
        3,
        Partition([2, 1]),
        3,
        _fractions(1, 1, -2),
        _t21,
        lambda m: "alpha1+alpha2+alpha3=0, alpha up to scaling, alpha=(1,1,-2) shown",
    ),
    Family("t111", Kind.FORM_MINIMAL, 3, Partition([1, 1, 1]), 4, (), _t111, _fixed),
    Family("t2", Kind.MAX_ATTRACTIVE, 3, Partition([2]), 1, _fractions(1, 1, 1, -1), _t2, _t2_constraint),
    Family("t11", Kind.MAX_ATTRACTIVE, 3, Partition([1, 1]), 2, _fractions(1, 2, -3), _t11, _t11_constraint),
)


def family(symbol: str) -> Family:
    for candidate in FAMILIES:
        if candidate.symbol == symbol:
            return candidate
    raise KeyError(symbol)


@dataclass(frozen=True)
class ClassificationEntry:
    kind: Kind
    arity: int
    dimension: int
    partition: Partition
    symbol: str
    constraint: str
    parameters: tuple[Fraction, ...]
    representative: AlgebraStructure

    def render(self) -> str:
        """One golden-table line: kind|n|m|partition|symbol: constraint|constants."""
        constants = "; ".join(
            f"[{','.join(str(i) for i in index)}] -> {j} : {render_rational(c)}"
            for index, j, c in self.representative.nonzero_constants()
        )
        return (
            f"{self.kind.value}|{self.arity}|{self.dimension}|{self.partition}|"
            f"{self.symbol}: {self.constraint}|{constants}"
        )


def _kind_rank(kind: Kind) -> int:
    return 0 if kind is Kind.FORM_MINIMAL else 1


def enumerate_level_one(n: int, m: int) -> list[ClassificationEntry]:
    """Level-one families of n-ary algebras in dimension m, for n in {2, 3}.

    Entries are sorted by kind (form-minimal first), then by partition in
    descending order, then by symbol.

    Examples::

        >>> [e.symbol for e in enumerate_level_one(2, 2)]
        ['A3', 'nu', 'p-']
    """
    if n not in (2, 3):
        raise UnsupportedArity(f"explicit level-one tables exist for n = 2 and n = 3, not n = {n}")
    if m < 1:
        raise BadPartition(f"dimension must be positive, got {m}")
    entries = [
        ClassificationEntry(
            f.kind, n, m, f.partition, f.symbol, f.constraint(m), f.parameters(m), f.structure(m)
        )
        for f in FAMILIES
        if f.arity == n and m >= f.min_dimension
    ]
    entries.sort(key=lambda e: e.symbol)
    entries.sort(key=lambda e: e.partition, reverse=True)
    entries.sort(key=lambda e: _kind_rank(e.kind))
    return entries


GOLDEN_DIMENSIONS = {2: 3, 3: 4}


def render_table(n: int, max_dimension: int | None = None) -> str:
    """The level-one table for m = 1..max_dimension, one entry per line."""
    top = GOLDEN_DIMENSIONS.get(n, 1) if max_dimension is None else max_dimension
    lines = [entry.render() for m in range(1, top + 1) for entry in enumerate_level_one(n, m)]
    return "\n".join(lines) + "\n"


def golden_table(n: int) -> str:
    if n not in GOLDEN_DIMENSIONS:
        raise UnsupportedArity(f"golden tables exist for n = 2 and n = 3, not n = {n}")
    return files("nary_python_cli").joinpath("golden", f"n{n}.txt").read_text(encoding="utf-8")


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------


class Verdict(str, Enum):
    LEVEL_ZERO = "level zero"
    LEVEL_ONE = "level one"
    NOT_LEVEL_ONE = "not level one"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Recognition:
    verdict: Verdict
    kind: Kind | None = None
    partition: Partition | None = None
    chain: object | None = None
    family: str | None = None
    parameters: tuple[Fraction, ...] | None = None
    reason: str = ""
    certificate: object | None = field(default=None, compare=False)


def _raw_parameters(kind: Kind, p: Partition, target: AlgebraStructure) -> tuple[str, tuple[Fraction, ...]]:
    """Family symbol and raw parameters read off a normal-form target."""
    n, m = target.arity, target.dimension
    c = target.constant
    if n == 2 and kind is Kind.FORM_MINIMAL:
        return ("A3" if p == Partition([2]) else "n3"), ()
    if n == 2:
        a = c((1, 1), 1)
        if not a:
            return "p-", ()
        return "nu", ((c((1, 2), 2) / a,) if m > 1 else ())
    if kind is Kind.FORM_MINIMAL:
        if p == Partition([3]):
            return "t3", ()
        if p == Partition([2, 1]):
            return "t21", (c((2, 1, 1), m), c((1, 2, 1), m), c((1, 1, 2), m))
        return "t111", ()
    if p == Partition([2]):
        if m == 1:
            return "t2", ()
        return "t2", (c((1, 1, 1), 1), c((2, 1, 1), 2), c((1, 2, 1), 2), c((1, 1, 2), 2))
    if m > 2:
        return "t11", (c((3, 1, 2), 3), -c((1, 3, 2), 3), c((1, 2, 3), 3))
    return "t11", (Fraction(0), -c((1, 1, 2), 1), c((1, 2, 1), 1))


def recognize_level_one(
    mu: AlgebraStructure, budget: SearchBudget = SearchBudget(), verbose: bool = False
) -> Recognition:
    """Decide whether mu has level one and name its normal form.

    A nonzero algebra of an n-linear form is taken to its p-minimal
    degeneration, a subalgebraic one to its maximally p-attractive
    degeneration; anything else is not level one. mu has level one exactly
    when it is isomorphic to that degeneration, which is read off the
    derivation dimensions.
    """
    from nary_python_cli.utils.degeneration import form_to_minimal, subalgebraic_to_max_attractive

    if mu.is_zero():
        return Recognition(Verdict.LEVEL_ZERO, reason="all structure constants vanish")
    try:
        if is_form_algebra(mu):
            kind = Kind.FORM_MINIMAL
            chain = form_to_minimal(mu, budget, verbose)
        else:
            subalgebraic = is_subalgebraic(mu, budget)
            if not subalgebraic.holds:
                return Recognition(
                    Verdict.NOT_LEVEL_ONE,
                    reason="neither an algebra of an n-linear form nor subalgebraic",
                    certificate=subalgebraic.certificate,
                )
            kind = Kind.MAX_ATTRACTIVE
            chain = subalgebraic_to_max_attractive(mu, budget, verbose)
    except SearchExhausted as exc:
        return Recognition(Verdict.INCONCLUSIVE, reason=str(exc))
    p, target = chain.partition, chain.target
    if not chain.is_lossless and derivation_dimension(mu) != derivation_dimension(target):
        return Recognition(
            Verdict.NOT_LEVEL_ONE,
            kind,
            p,
            chain,
            reason=f"degenerates properly to a {kind.value} structure with partition {p}",
        )
    symbol = parameters = None
    if mu.arity in (2, 3):
        symbol, raw = _raw_parameters(kind, p, target)
        parameters = canonical_parameters(symbol, mu.arity, mu.dimension, raw)
    return Recognition(Verdict.LEVEL_ONE, kind, p, chain, symbol, parameters)


def is_infinite_level_one(mu: AlgebraStructure, budget: SearchBudget = SearchBudget()) -> bool:
    """Level one survives every direct sum with a zero algebra iff the kind is form-minimal."""
    recognition = recognize_level_one(mu, budget)
    if recognition.verdict is Verdict.INCONCLUSIVE:
        raise Inconclusive(recognition.reason)
    return recognition.verdict is Verdict.LEVEL_ONE and recognition.kind is Kind.FORM_MINIMAL
