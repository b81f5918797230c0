"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`. On top of them this module
provides sparse multivariate polynomials over named parameters
(:class:`MultiPoly`), Laurent polynomials in ``t`` (:class:`LaurentPoly`),
dense rational matrices (:class:`RatMatrix`) and a determinant that works
over any of these rings. Kernels of rational matrices come from sympy.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from itertools import combinations
from typing import TypeVar, Union

import sympy

from nary_python_cli.utils.errors import (
    DimensionMismatch,
    NegativeExponent,
    OrderTooLarge,
    ParseError,
    SingularMatrix,
)

Rational = Fraction
Vector = tuple[Fraction, ...]
Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]

R = TypeVar("R")

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``p/q`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q``; floats and zero denominators are rejected."""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ValueError(f"not a rational: {text!r}")
    numerator, denominator = match.groups()
    if denominator is None:
        return Fraction(int(numerator))
    if int(denominator) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator))


def render_rational(value: Fraction) -> str:
    return str(as_rational(value))


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------


def zero_vector(m: int) -> Vector:
    return (Fraction(0),) * m


def unit_vector(m: int, index: int) -> Vector:
    """Standard basis vector e_index (1-based) of length m."""
    if not 1 <= index <= m:
        raise DimensionMismatch(f"basis index {index} outside 1..{m}")
    return tuple(Fraction(1) if i == index else Fraction(0) for i in range(1, m + 1))


def as_vector(values: Iterable) -> Vector:
    return tuple(as_rational(v) for v in values)


def add_vectors(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    if len(x) != len(y):
        raise DimensionMismatch(f"vector lengths {len(x)} and {len(y)} differ")
    return tuple(a + b for a, b in zip(x, y))


def scale_vector(c: Scalar, x: Sequence[Fraction]) -> Vector:
    c = as_rational(c)
    return tuple(c * a for a in x)


def vector_is_zero(x: Iterable) -> bool:
    return not any(x)


def linear_combination(coefficients: Sequence[Scalar], vectors: Sequence[Sequence[Fraction]]) -> Vector:
    if not vectors:
        raise DimensionMismatch("empty linear combination has no length")
    result = [Fraction(0)] * len(vectors[0])
    for c, v in zip(coefficients, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    result[i] += c * a
    return tuple(result)


# ---------------------------------------------------------------------------
# Multivariate polynomials
# ---------------------------------------------------------------------------


def _monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exponents = dict(a)
    for name, e in b:
        exponents[name] = exponents.get(name, 0) + e
    return tuple(sorted(exponents.items()))


def _grlex_key(monomial: Monomial):
    # Higher degree first, then lexicographic on the exponent vector with
    # parameters ordered by name.
    return (-sum(e for _, e in monomial), tuple((name, -e) for name, e in monomial))


class MultiPoly:
    """Sparse polynomial with Fraction coefficients over named parameters.

    Monomials are tuples of ``(name, exponent)`` pairs sorted by name; the
    zero polynomial is the empty mapping. Instances are immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        cleaned = {}
        for monomial, coefficient in (terms or {}).items():
            coefficient = as_rational(coefficient)
            if coefficient:
                key = tuple(sorted((name, e) for name, e in monomial if e))
                cleaned[key] = cleaned.get(key, Fraction(0)) + coefficient
        self._terms = {k: v for k, v in cleaned.items() if v}

    @classmethod
    def _wrap(cls, terms: dict) -> MultiPoly:
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    @classmethod
    def constant(cls, value: Scalar) -> MultiPoly:
        value = as_rational(value)
        return cls._wrap({(): value} if value else {})

    @classmethod
    def variable(cls, name: str) -> MultiPoly:
        return cls._wrap({((name, 1),): Fraction(1)})

    @staticmethod
    def lift(value) -> MultiPoly:
        if isinstance(value, MultiPoly):
            return value
        return MultiPoly.constant(value)

    # -- queries -----------------------------------------------------------

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda item: _grlex_key(item[0]))

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(tuple(sorted(monomial)), Fraction(0))

    def variables(self) -> frozenset[str]:
        return frozenset(name for monomial in self._terms for name, _ in monomial)

    def total_degree(self) -> int:
        return max((sum(e for _, e in monomial) for monomial in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        """Substitute rationals for every parameter."""
        total = Fraction(0)
        for monomial, coefficient in self._terms.items():
            term = coefficient
            for name, e in monomial:
                term *= as_rational(values[name]) ** e
            total += term
        return total

    # -- arithmetic --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = MultiPoly.constant(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        terms = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            total = terms.get(monomial, 0) + coefficient
            if total:
                terms[monomial] = total
            else:
                terms.pop(monomial, None)
        return MultiPoly._wrap(terms)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._wrap({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> MultiPoly:
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        return self + (-MultiPoly.lift(other))

    def __rsub__(self, other) -> MultiPoly:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return MultiPoly.constant(other) + (-self)

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly()
            return MultiPoly._wrap({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                key = _monomial_mul(m1, m2)
                terms[key] = terms.get(key, 0) + c1 * c2
        return MultiPoly._wrap({k: v for k, v in terms.items() if v})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> MultiPoly:
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for monomial, coefficient in self.terms():
            factors = [f"{name}^{e}" if e > 1 else name for name, e in monomial]
            magnitude = abs(coefficient)
            if factors and magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude), *factors])
            sign = "-" if coefficient < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def poly_is_zero(f) -> bool:
    """True iff every coefficient of ``f`` is zero."""
    if isinstance(f, MultiPoly):
        return f.is_zero()
    return not f


# ---------------------------------------------------------------------------
# Laurent polynomials in t
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Laurent polynomial in ``t`` with Fraction coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        cleaned = {}
        for exponent, coefficient in (terms or {}).items():
            coefficient = as_rational(coefficient)
            if coefficient:
                cleaned[int(exponent)] = coefficient
        self._terms = cleaned

    @classmethod
    def _wrap(cls, terms: dict) -> LaurentPoly:
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    @classmethod
    def constant(cls, value: Scalar) -> LaurentPoly:
        return cls({0: value})

    @classmethod
    def monomial(cls, coefficient: Scalar, exponent: int) -> LaurentPoly:
        return cls({exponent: coefficient})

    @staticmethod
    def lift(value) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            return value
        return LaurentPoly.constant(value)

    def items(self) -> list[tuple[int, Fraction]]:
        """Terms by decreasing exponent."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def min_degree(self) -> int | None:
        return min(self._terms, default=None)

    def max_degree(self) -> int | None:
        return max(self._terms, default=None)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def shift(self, exponent: int) -> LaurentPoly:
        """Multiply by t^exponent."""
        return LaurentPoly._wrap({k + exponent: v for k, v in self._terms.items()})

    def evaluate(self, t: Scalar) -> Fraction:
        t = as_rational(t)
        if not t and any(k < 0 for k in self._terms):
            raise NegativeExponent("cannot evaluate a pole at t = 0")
        return sum((c * t**k for k, c in self._terms.items()), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = LaurentPoly.constant(other)
        terms = dict(self._terms)
        for k, c in other._terms.items():
            total = terms.get(k, 0) + c
            if total:
                terms[k] = total
            else:
                terms.pop(k, None)
        return LaurentPoly._wrap(terms)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._wrap({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        if not isinstance(other, (LaurentPoly, int, Fraction)):
            return NotImplemented
        return self + (-LaurentPoly.lift(other))

    def __rsub__(self, other) -> LaurentPoly:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return LaurentPoly.constant(other) + (-self)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            return LaurentPoly._wrap({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                terms[k1 + k2] = terms.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly._wrap({k: v for k, v in terms.items() if v})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return render_laurent(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


T = LaurentPoly.monomial(1, 1)


def laurent_limit_at_zero(f: LaurentPoly) -> Fraction:
    """Value at t = 0 of a Laurent polynomial without negative exponents."""
    f = LaurentPoly.lift(f)
    lowest = f.min_degree()
    if lowest is not None and lowest < 0:
        raise NegativeExponent(f"{render_laurent(f)} has a pole of order {-lowest} at t = 0")
    return f.coefficient(0)


def render_laurent(f: LaurentPoly) -> str:
    """Render as ``c*t^k`` terms by decreasing exponent, e.g. ``1*t^2 + 3``."""
    items = f.items()
    if not items:
        return "0"
    pieces = []
    for exponent, coefficient in items:
        body = str(abs(coefficient))
        if exponent:
            body += f"*t^{exponent}"
        pieces.append(("-" if coefficient < 0 else "+", body))
    sign, body = pieces[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_LAURENT_TERM = re.compile(
    r"(?P<coef>\d+(?:\s*/\s*\d+)?)?\s*(?P<star>\*)?\s*(?P<t>t)?(?:\s*\^\s*(?P<exp>[+-]?\d+))?"
)


def parse_laurent(text: str, line: int = 1, column: int = 1) -> LaurentPoly:
    """Parse the witness grammar: ``c`` or ``c*t^k`` terms joined by ``+``/``-``.

    ``line`` and ``column`` locate ``text`` inside a larger file so that
    errors point at the offending character. A bare ``t^k`` is accepted as
    ``1*t^k``.
    """
    terms: dict[int, Fraction] = {}
    position = 0
    first = True
    while True:
        while position < len(text) and text[position].isspace():
            position += 1
        if position >= len(text):
            break
        sign = 1
        if text[position] in "+-":
            sign = -1 if text[position] == "-" else 1
            position += 1
            while position < len(text) and text[position].isspace():
                position += 1
        elif not first:
            raise ParseError("expected '+' or '-' between terms", line, column + position)
        match = _LAURENT_TERM.match(text, position)
        if match is None or match.end() == position:
            raise ParseError("expected a term 'c' or 'c*t^k'", line, column + position)
        coef, star, t, exp = match.group("coef", "star", "t", "exp")
        if coef is not None and star is None and t is None and exp is None:
            exponent = 0
        elif coef is not None and star is not None and t is not None:
            exponent = int(exp) if exp is not None else 1
        elif coef is None and star is None and t is not None:
            exponent = int(exp) if exp is not None else 1
        else:
            raise ParseError("malformed term, expected 'c' or 'c*t^k'", line, column + position)
        try:
            coefficient = parse_rational(coef.replace(" ", "")) if coef is not None else Fraction(1)
        except ValueError as exc:
            raise ParseError(str(exc), line, column + position) from None
        terms[exponent] = terms.get(exponent, Fraction(0)) + sign * coefficient
        position = match.end()
        first = False
    if first:
        raise ParseError("empty Laurent expression", line, column)
    return LaurentPoly(terms)


# ---------------------------------------------------------------------------
# Determinants over any commutative ring
# ---------------------------------------------------------------------------


def determinant(matrix: Sequence[Sequence[R]]) -> R:
    """Laplace expansion along rows, memoized over column subsets.

    Works for Fraction, MultiPoly and LaurentPoly entries alike.
    """
    size = len(matrix)
    if size == 0:
        return Fraction(1)
    if any(len(row) != size for row in matrix):
        raise DimensionMismatch("determinant needs a square matrix")
    zero = matrix[0][0] - matrix[0][0]
    cache: dict[tuple[int, ...], R] = {}

    def expand(columns: tuple[int, ...]):
        depth = size - len(columns)
        if len(columns) == 1:
            return matrix[depth][columns[0]]
        if columns in cache:
            return cache[columns]
        total = zero
        for position, column in enumerate(columns):
            entry = matrix[depth][column]
            if not entry:
                continue
            rest = expand(columns[:position] + columns[position + 1 :])
            if not rest:
                continue
            if position % 2:
                total = total - entry * rest
            else:
                total = total + entry * rest
        cache[columns] = total
        return total

    return expand(tuple(range(size)))


def poly_minors(matrix: Sequence[Sequence], order: int) -> list[MultiPoly]:
    """All order x order minors, rows chosen in the outer loop."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if order < 1 or order > min(rows, cols):
        raise OrderTooLarge(f"order {order} exceeds the {rows}x{cols} matrix")
    lifted = [[MultiPoly.lift(entry) for entry in row] for row in matrix]
    minors = []
    for row_choice in combinations(range(rows), order):
        for col_choice in combinations(range(cols), order):
            sub = [[lifted[r][c] for c in col_choice] for r in row_choice]
            minors.append(determinant(sub))
    return minors


# ---------------------------------------------------------------------------
# Rational matrices
# ---------------------------------------------------------------------------


class RatMatrix:
    """Dense immutable matrix of Fractions."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(as_rational(x) for x in row) for row in entries)
        widths = {len(row) for row in grid}
        if len(widths) > 1:
            raise DimensionMismatch("ragged matrix rows")
        self.rows = len(grid)
        self.cols = widths.pop() if widths else (cols or 0)
        self._entries = grid

    @classmethod
    def identity(cls, m: int) -> RatMatrix:
        return cls([[1 if i == j else 0 for j in range(m)] for i in range(m)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> RatMatrix:
        m = len(values)
        return cls([[values[i] if i == j else 0 for j in range(m)] for i in range(m)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]]) -> RatMatrix:
        if not columns:
            return cls([])
        return cls([[column[i] for column in columns] for i in range(len(columns[0]))])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> Fraction:
        return self._entries[i][j]

    def row(self, i: int) -> Vector:
        return self._entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._entries]

    def transpose(self) -> RatMatrix:
        return RatMatrix.from_columns(list(self._entries)) if self.rows else RatMatrix([])

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} for a {self.rows}x{self.cols} matrix")
        vector = [as_rational(x) for x in vector]
        return tuple(sum((a * x for a, x in zip(row, vector) if a and x), Fraction(0)) for row in self._entries)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            other_columns = other.columns()
            return RatMatrix(
                [
                    [sum((a * b for a, b in zip(row, column)), Fraction(0)) for column in other_columns]
                    for row in self._entries
                ],
                cols=other.cols,
            )
        return self.apply(other)

    def scaled(self, c: Scalar) -> RatMatrix:
        c = as_rational(c)
        return RatMatrix([[c * x for x in row] for row in self._entries], cols=self.cols)

    def rref(self) -> tuple[RatMatrix, tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns."""
        grid = [list(row) for row in self._entries]
        pivots = []
        pivot_row = 0
        for column in range(self.cols):
            if pivot_row >= self.rows:
                break
            source = next((r for r in range(pivot_row, self.rows) if grid[r][column]), None)
            if source is None:
                continue
            grid[pivot_row], grid[source] = grid[source], grid[pivot_row]
            lead = grid[pivot_row][column]
            grid[pivot_row] = [x / lead for x in grid[pivot_row]]
            for r in range(self.rows):
                factor = grid[r][column]
                if r != pivot_row and factor:
                    grid[r] = [x - factor * y for x, y in zip(grid[r], grid[pivot_row])]
            pivots.append(column)
            pivot_row += 1
        return RatMatrix(grid, cols=self.cols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def determinant(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant needs a square matrix")
        grid = [list(row) for row in self._entries]
        result = Fraction(1)
        for column in range(self.cols):
            source = next((r for r in range(column, self.rows) if grid[r][column]), None)
            if source is None:
                return Fraction(0)
            if source != column:
                grid[column], grid[source] = grid[source], grid[column]
                result = -result
            lead = grid[column][column]
            result *= lead
            for r in range(column + 1, self.rows):
                factor = grid[r][column] / lead
                if factor:
                    grid[r] = [x - factor * y for x, y in zip(grid[r], grid[column])]
        return result

    def inverse(self) -> RatMatrix:
        if self.rows != self.cols:
            raise DimensionMismatch("only square matrices are invertible")
        m = self.rows
        augmented = RatMatrix(
            [list(row) + [1 if i == j else 0 for j in range(m)] for i, row in enumerate(self._entries)]
        )
        reduced, pivots = augmented.rref()
        if pivots[:m] != tuple(range(m)):
            raise SingularMatrix("matrix is not invertible")
        return RatMatrix([reduced.row(i)[m:] for i in range(m)], cols=m)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.shape, self._entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._entries)
        return f"RatMatrix([{body}])"


def sparse_rank(rows: Iterable[Mapping[int, Scalar]]) -> int:
    """Rank of a row stream given as sparse ``{column: value}`` mappings."""
    echelon: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        row = {k: as_rational(v) for k, v in raw.items() if v}
        while row:
            pivot = min(row)
            if pivot not in echelon:
                lead = row[pivot]
                echelon[pivot] = {k: v / lead for k, v in row.items()}
                break
            factor = row[pivot]
            for k, v in echelon[pivot].items():
                value = row.get(k, 0) - factor * v
                if value:
                    row[k] = value
                else:
                    row.pop(k, None)
    return len(echelon)


def nullspace_basis(matrix: RatMatrix) -> list[Vector]:
    """Echelon-normalized basis of {v : M v = 0}, computed by sympy.

    One vector per free column f: a 1 in position f, minus the reduced
    entries of column f in the pivot positions, zeros elsewhere.
    """
    if not matrix.rows:
        return [unit_vector(matrix.cols, f) for f in range(1, matrix.cols + 1)]
    entries = [sympy.Rational(c.numerator, c.denominator) for row in matrix.tolist() for c in row]
    grid = sympy.Matrix(matrix.rows, matrix.cols, entries)
    return [tuple(Fraction(int(c.p), int(c.q)) for c in vector) for vector in grid.nullspace()]
