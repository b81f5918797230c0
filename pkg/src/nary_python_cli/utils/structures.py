"""Core data model: structure-constant tensors, partitions, index maps, subspaces."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from itertools import combinations_with_replacement, product

from sympy.utilities.iterables import multiset_permutations, partitions

from nary_python_cli.utils.errors import (
    BadPartition,
    DimensionMismatch,
    IndexOutOfRange,
    InfeasibleCounts,
)
from nary_python_cli.utils.scalars import (
    RatMatrix,
    Scalar,
    Vector,
    as_rational,
    sparse_rank,
    zero_vector,
)

Index = tuple[int, ...]


class AlgebraStructure:
    """Structure constants of an m-dimensional n-ary algebra.

    ``constants`` maps an index tuple ``(i1, ..., in)`` (1-based) to the
    coefficient vector of ``mu(e_i1, ..., e_in)``. A vector may be given as
    a length-m sequence or as a ``{j: coefficient}`` mapping. All-zero
    vectors are dropped and keys are kept in lexicographic order.
    """

    __slots__ = ("arity", "dimension", "_constants")

    def __init__(self, arity: int, dimension: int, constants: Mapping[Index, Sequence | Mapping] | None = None):
        if arity < 2:
            raise DimensionMismatch(f"arity must be at least 2, got {arity}")
        if dimension < 1:
            raise DimensionMismatch(f"dimension must be at least 1, got {dimension}")
        self.arity = arity
        self.dimension = dimension
        cleaned: dict[Index, Vector] = {}
        for index, vector in (constants or {}).items():
            index = tuple(int(i) for i in index)
            if len(index) != arity:
                raise DimensionMismatch(f"index tuple {index} does not have {arity} entries")
            if any(not 1 <= i <= dimension for i in index):
                raise IndexOutOfRange(f"index tuple {index} leaves 1..{dimension}")
            vector = self._coerce_vector(vector)
            if any(vector):
                cleaned[index] = vector
        self._constants = dict(sorted(cleaned.items()))

    def _coerce_vector(self, vector) -> Vector:
        if isinstance(vector, Mapping):
            coefficients = [Fraction(0)] * self.dimension
            for j, c in vector.items():
                if not 1 <= j <= self.dimension:
                    raise IndexOutOfRange(f"output index {j} leaves 1..{self.dimension}")
                coefficients[j - 1] = as_rational(c)
            return tuple(coefficients)
        vector = tuple(as_rational(c) for c in vector)
        if len(vector) != self.dimension:
            raise DimensionMismatch(f"coefficient vector of length {len(vector)} in dimension {self.dimension}")
        return vector

    @classmethod
    def zero(cls, arity: int, dimension: int) -> AlgebraStructure:
        return cls(arity, dimension)

    def items(self) -> Iterator[tuple[Index, Vector]]:
        return iter(self._constants.items())

    def support(self) -> tuple[Index, ...]:
        return tuple(self._constants)

    def product(self, index: Index) -> Vector:
        """Coefficient vector of mu(e_i1, ..., e_in)."""
        return self._constants.get(tuple(index), zero_vector(self.dimension))

    def constant(self, index: Index, j: int) -> Fraction:
        return self.product(index)[j - 1]

    def nonzero_constants(self) -> Iterator[tuple[Index, int, Fraction]]:
        for index, vector in self._constants.items():
            for j, c in enumerate(vector, start=1):
                if c:
                    yield index, j, c

    def is_zero(self) -> bool:
        return not self._constants

    def scaled(self, c: Scalar) -> AlgebraStructure:
        c = as_rational(c)
        return AlgebraStructure(
            self.arity, self.dimension, {k: tuple(c * x for x in v) for k, v in self._constants.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraStructure):
            return NotImplemented
        return (self.arity, self.dimension, self._constants) == (other.arity, other.dimension, other._constants)

    def __hash__(self) -> int:
        return hash((self.arity, self.dimension, tuple(self._constants.items())))

    def __repr__(self) -> str:
        products = ", ".join(
            f"{list(index)}->{j}:{c}" for index, j, c in self.nonzero_constants()
        )
        return f"AlgebraStructure(n={self.arity}, m={self.dimension}, {{{products}}})"


def expand(mu: AlgebraStructure, arguments: Sequence[Sequence]) -> list:
    """Multilinear extension of ``mu`` over any commutative coefficient ring.

    ``arguments`` holds n coordinate vectors whose entries may be Fractions,
    MultiPolys or LaurentPolys; the result has entries in the same ring.
    """
    if len(arguments) != mu.arity:
        raise DimensionMismatch(f"{mu.arity}-ary product applied to {len(arguments)} arguments")
    for argument in arguments:
        if len(argument) != mu.dimension:
            raise DimensionMismatch(f"argument of length {len(argument)} in dimension {mu.dimension}")
    zero = arguments[0][0] - arguments[0][0]
    result = [zero] * mu.dimension
    for index, vector in mu.items():
        term = None
        for slot, i in enumerate(index):
            factor = arguments[slot][i - 1]
            if not factor:
                term = None
                break
            term = factor if term is None else term * factor
        if term is None:
            continue
        for j, c in enumerate(vector):
            if c:
                result[j] = result[j] + term * c
    return result


def multiply(mu: AlgebraStructure, *xs: Sequence[Scalar]) -> Vector:
    """Evaluate mu(x1, ..., xn) on rational vectors."""
    arguments = [tuple(as_rational(c) for c in x) for x in xs]
    return tuple(expand(mu, arguments))


def _constants_in_basis(mu: AlgebraStructure, basis: RatMatrix, inverse: RatMatrix) -> AlgebraStructure:
    m = mu.dimension
    columns = basis.columns()
    constants = {}
    for index in product(range(1, m + 1), repeat=mu.arity):
        value = expand(mu, [columns[i - 1] for i in index])
        if any(value):
            constants[index] = inverse.apply(value)
    return AlgebraStructure(mu.arity, m, constants)


def _check_square(g: RatMatrix, m: int) -> None:
    if g.shape != (m, m):
        raise DimensionMismatch(f"expected a {m}x{m} matrix, got {g.rows}x{g.cols}")


def change_basis(mu: AlgebraStructure, basis: RatMatrix) -> AlgebraStructure:
    """Structure constants of ``mu`` in the basis formed by the columns of ``basis``."""
    _check_square(basis, mu.dimension)
    return _constants_in_basis(mu, basis, basis.inverse())


def gl_action(g: RatMatrix, mu: AlgebraStructure) -> AlgebraStructure:
    """(g * mu)(x1, ..., xn) = g mu(g^-1 x1, ..., g^-1 xn)."""
    _check_square(g, mu.dimension)
    return _constants_in_basis(mu, g.inverse(), g)


def direct_sum_zero(mu: AlgebraStructure, s: int) -> AlgebraStructure:
    """mu plus an s-dimensional summand with zero multiplication."""
    if s < 0:
        raise DimensionMismatch("cannot add a negative number of dimensions")
    padding = (Fraction(0),) * s
    return AlgebraStructure(mu.arity, mu.dimension + s, {k: v + padding for k, v in mu.items()})


def derivation_dimension(mu: AlgebraStructure) -> int:
    """Dimension of the derivation algebra of ``mu``.

    The unknown D is an m x m matrix; column ``r * m + q`` holds D[r][q].
    The orbit of ``mu`` has dimension ``m**2 - derivation_dimension(mu)``.
    """
    m, n = mu.dimension, mu.arity

    def rows():
        for index in product(range(1, m + 1), repeat=n):
            image = mu.product(index)
            for r in range(m):
                row: dict[int, Fraction] = {}
                for j in range(m):
                    if image[j]:
                        column = r * m + j
                        row[column] = row.get(column, 0) + image[j]
                for slot, i in enumerate(index):
                    for q in range(1, m + 1):
                        shifted = index[:slot] + (q,) + index[slot + 1 :]
                        c = mu.constant(shifted, r + 1)
                        if c:
                            column = (q - 1) * m + (i - 1)
                            row[column] = row.get(column, 0) - c
                if any(row.values()):
                    yield row

    return m * m - sparse_rank(rows())


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@total_ordering
class Partition:
    """Non-increasing sequence of non-negative integers, trailing zeros dropped."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise BadPartition(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise BadPartition(f"parts {parts} are not non-increasing")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        self.parts = parts

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Accept ``(2,1)``, ``2,1``, ``2 1`` or ``(2,1,0,...)``."""
        body = text.strip().strip("()").replace("...", "").replace("…", "")
        pieces = [piece for piece in body.replace(",", " ").split() if piece]
        try:
            return cls(int(piece) for piece in pieces)
        except ValueError:
            raise BadPartition(f"not a partition: {text!r}") from None

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Number of nonzero parts."""
        return len(self.parts)

    def part(self, i: int) -> int:
        """p_i with 1-based i; zero beyond the stored parts."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def prefix_sum(self, k: int) -> int:
        return sum(self.parts[:k])

    def padded(self, size: int) -> tuple[int, ...]:
        return tuple(self.part(i) for i in range(1, size + 1))

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __lt__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return compare_partitions(self, other) is Ordering.LESS

    def __hash__(self) -> int:
        return hash(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts or (0,)) + ")"

    def __repr__(self) -> str:
        return f"Partition{self}"


def compare_partitions(p: Partition, q: Partition) -> Ordering:
    """Lexicographic comparison with implied trailing zeros."""
    size = max(p.length, q.length)
    left, right = p.padded(size), q.padded(size)
    if left == right:
        return Ordering.EQUAL
    return Ordering.GREATER if left > right else Ordering.LESS


def enumerate_partitions(weight: int, max_parts: int | None = None) -> list[Partition]:
    """Partitions of ``weight`` with at most ``max_parts`` parts, largest first."""
    if weight < 0:
        return []
    if weight == 0:
        return [Partition()]
    if max_parts is not None and max_parts < 1:
        return []
    found = []
    for multiplicities in partitions(weight, m=max_parts):
        parts = []
        for part, count in sorted(multiplicities.items(), reverse=True):
            parts.extend([part] * count)
        found.append(Partition(parts))
    return sorted(found, reverse=True)


# ---------------------------------------------------------------------------
# Index maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class IndexMap:
    """A map phi: {1..a} -> {1..b}, stored as the value tuple (phi(1), ..., phi(a))."""

    values: tuple[int, ...]
    codomain: int

    def __post_init__(self):
        if any(not 1 <= v <= self.codomain for v in self.values):
            raise IndexOutOfRange(f"values {self.values} leave 1..{self.codomain}")

    @property
    def arity(self) -> int:
        return len(self.values)

    def __call__(self, position: int) -> int:
        return self.values[position - 1]

    def preimage(self, i: int) -> tuple[int, ...]:
        return tuple(pos for pos, v in enumerate(self.values, start=1) if v == i)

    def preimage_count(self, i: int) -> int:
        return self.values.count(i)

    def counts(self) -> tuple[int, ...]:
        return tuple(self.values.count(i) for i in range(1, self.codomain + 1))

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


def partial_override(phi: IndexMap, positions: Iterable[int], r: int) -> IndexMap:
    """The map that agrees with ``phi`` off ``positions`` and is ``r`` on them."""
    positions = set(positions)
    if any(not 1 <= s <= phi.arity for s in positions):
        raise IndexOutOfRange(f"positions {sorted(positions)} leave 1..{phi.arity}")
    if not 1 <= r <= phi.codomain:
        raise IndexOutOfRange(f"value {r} leaves 1..{phi.codomain}")
    return IndexMap(
        tuple(r if pos in positions else v for pos, v in enumerate(phi.values, start=1)),
        phi.codomain,
    )


def maps_with_counts(
    a: int,
    b: int,
    counts: Mapping[int, int] | Sequence[int],
    free: Iterable[int] = (),
) -> list[IndexMap]:
    """All phi in Map_{a,b} with exact preimage counts on the constrained indices.

    ``counts`` is either ``{index: count}`` or a sequence giving the counts of
    indices 1, 2, ...; indices in ``free`` are unconstrained and every other
    index must not be hit. The result is sorted lexicographically.
    """
    if not isinstance(counts, Mapping):
        counts = {i: c for i, c in enumerate(counts, start=1)}
    free = sorted(set(free))
    for i in list(counts) + free:
        if not 1 <= i <= b:
            raise IndexOutOfRange(f"index {i} leaves 1..{b}")
    if set(free) & {i for i, c in counts.items()}:
        raise InfeasibleCounts("an index cannot be both counted and free")
    if any(c < 0 for c in counts.values()):
        raise InfeasibleCounts("preimage counts must be non-negative")
    remaining = a - sum(counts.values())
    if remaining < 0 or (remaining > 0 and not free):
        raise InfeasibleCounts(f"counts {dict(counts)} with free indices {free} cannot fill {a} positions")
    base = [i for i, c in sorted(counts.items()) for _ in range(c)]
    found = set()
    for extra in combinations_with_replacement(free, remaining):
        for values in multiset_permutations(sorted(base + list(extra))):
            found.add(tuple(values))
    return [IndexMap(values, b) for values in sorted(found)]


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """Subspace of Q^m stored by its reduced row echelon basis."""

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int, rows: Sequence[Vector], pivots: Sequence[int]):
        self.ambient = ambient
        self.rows = tuple(rows)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, ambient: int, vectors: Iterable[Sequence[Scalar]]) -> Subspace:
        vectors = [tuple(as_rational(c) for c in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient}")
        if not vectors:
            return cls(ambient, (), ())
        reduced, pivots = RatMatrix(vectors).rref()
        return cls(ambient, [reduced.row(i) for i in range(len(pivots))], pivots)

    @classmethod
    def zero(cls, ambient: int) -> Subspace:
        return cls(ambient, (), ())

    @classmethod
    def full(cls, ambient: int) -> Subspace:
        return cls.coordinate(ambient, range(1, ambient + 1))

    @classmethod
    def coordinate(cls, ambient: int, indices: Iterable[int]) -> Subspace:
        """Span of the standard basis vectors e_i, i in ``indices`` (1-based)."""
        vectors = []
        for i in sorted(set(indices)):
            vectors.append(tuple(Fraction(1) if j == i else Fraction(0) for j in range(1, ambient + 1)))
        return cls.span(ambient, vectors)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def basis(self) -> list[Vector]:
        return list(self.rows)

    def reduce(self, vector: Sequence[Scalar]) -> Vector:
        """Residual of ``vector`` after clearing the pivot coordinates."""
        if len(vector) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(vector)} in ambient dimension {self.ambient}")
        residual = [as_rational(c) for c in vector]
        for row, pivot in zip(self.rows, self.pivots):
            factor = residual[pivot]
            if factor:
                residual = [x - factor * y for x, y in zip(residual, row)]
        return tuple(residual)

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return not any(self.reduce(vector))

    def complement_indices(self) -> tuple[int, ...]:
        """1-based coordinates whose unit vectors complete the basis."""
        return tuple(j + 1 for j in range(self.ambient) if j not in self.pivots)

    def adapted_basis(self) -> list[Vector]:
        """Echelon rows followed by the complementary unit vectors."""
        units = [
            tuple(Fraction(1) if j == i else Fraction(0) for j in range(1, self.ambient + 1))
            for i in self.complement_indices()
        ]
        return list(self.rows) + units

    def image(self, g: RatMatrix) -> Subspace:
        return Subspace.span(self.ambient, [g.apply(row) for row in self.rows])

    def __contains__(self, vector) -> bool:
        return self.contains(vector)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ambient, self.rows))

    def __repr__(self) -> str:
        rows = ", ".join("(" + ",".join(str(c) for c in row) + ")" for row in self.rows)
        return f"Subspace(m={self.ambient}, <{rows}>)"


def count_in(subspace: Subspace, *vectors: Sequence[Scalar]) -> int:
    """chi_W(y1, ..., ya): how many arguments lie in ``subspace``."""
    return sum(1 for v in vectors if subspace.contains(v))
