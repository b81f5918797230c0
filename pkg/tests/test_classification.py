"""Tests for presentation systems, the level-one tables and recognition."""

import random
from fractions import Fraction
from itertools import product

import pytest

from nary_python_cli.utils.classification import (
    FAMILIES,
    Kind,
    LinearSystem,
    Verdict,
    canonical_parameters,
    enumerate_level_one,
    family,
    golden_table,
    instantiate,
    is_infinite_level_one,
    is_maximally_p_attractive_presentation,
    is_p_minimal_presentation,
    maxatt_system,
    pmin_system,
    recognize_level_one,
    render_table,
)
from nary_python_cli.utils.corpus import random_matrix
from nary_python_cli.utils.errors import (
    BadPartition,
    InvariantBroken,
    UnsupportedArity,
    WeightMismatch,
    ZeroTuple,
)
from nary_python_cli.utils.properties import SearchBudget, is_p_attractive, is_subalgebraic
from nary_python_cli.utils.structures import AlgebraStructure, IndexMap, Partition, direct_sum_zero, gl_action

A3 = AlgebraStructure(2, 2, {(1, 1): {2: 1}})
N3 = AlgebraStructure(2, 3, {(1, 2): {3: 1}, (2, 1): {3: -1}})
NU2 = AlgebraStructure(2, 2, {(1, 1): {1: 1}, (1, 2): {2: 2}, (2, 1): {2: -1}})
SQUARES = AlgebraStructure(2, 2, {(1, 1): {1: 1}, (2, 2): {1: 1}})
TWO_FORMS = AlgebraStructure(2, 3, {(1, 1): {3: 1}, (1, 2): {3: 1}})

BUDGET = SearchBudget(seed=13)


def _values(mu):
    return {IndexMap(index, mu.dimension): c for index, _, c in mu.nonzero_constants()}


class TestMinimalSystems:
    """Linear systems for p-minimal presentations."""

    def test_ternary_two_one(self):
        """Test that (3, 3, (2,1)) reduces to alpha1 + alpha2 + alpha3 = 0."""
        system = pmin_system(3, 3, Partition([2, 1]))
        assert system.size == 3
        assert system.solution_dimension() == 2
        for solution in system.solution_basis():
            assert sum(solution.values()) == 0

    def test_ternary_alternating(self):
        """Test that (3, 4, (1,1,1)) has only the alternating solution."""
        system = pmin_system(3, 4, Partition([1, 1, 1]))
        assert system.size == 6
        assert system.solution_dimension() == 1
        (solution,) = system.solution_basis()
        assert solution[IndexMap((1, 2, 3), 4)] == -solution[IndexMap((2, 1, 3), 4)]
        assert solution[IndexMap((1, 2, 3), 4)] == solution[IndexMap((2, 3, 1), 4)]

    def test_binary_antisymmetric(self):
        """Test that (2, 3, (1,1)) has only the antisymmetric solution."""
        system = pmin_system(2, 3, Partition([1, 1]))
        assert system.solution_dimension() == 1
        (solution,) = system.solution_basis()
        assert solution[IndexMap((1, 2), 3)] == -solution[IndexMap((2, 1), 3)]

    def test_single_part_has_no_equations(self):
        """Test that a one-part partition leaves its single constant free."""
        system = pmin_system(2, 2, Partition([2]))
        assert system.size == 1
        assert system.equations == ()

    def test_weight_and_length_checks(self):
        """Test partition validation."""
        with pytest.raises(WeightMismatch):
            pmin_system(3, 3, Partition([1, 1]))
        with pytest.raises(BadPartition):
            pmin_system(3, 2, Partition([2, 1]))


class TestAttractiveSystems:
    """Linear systems for maximally p-attractive presentations."""

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_binary_family_has_two_parameters(self, m):
        """Test that (2, m, (1)) is spanned by nu's two free constants."""
        system = maxatt_system(2, m, Partition([1]))
        assert system.solution_dimension() == 2
        assert system.satisfied_by(_values(family("nu").structure(m)))
        assert system.satisfied_by(_values(family("p-").structure(m)))

    @pytest.mark.parametrize("m", [2, 3])
    def test_ternary_two(self, m):
        """Test that (3, m, (2)) reduces to alpha1 + alpha2 + alpha3 = epsilon."""
        system = maxatt_system(3, m, Partition([2]))
        assert system.solution_dimension() == 3
        good = family("t2").structure(m, (2, 1, 3, -2))
        bad = family("t2").structure(m, (1, 1, 1, 1))
        assert system.satisfied_by(_values(good))
        assert not system.satisfied_by(_values(bad))

    def test_ternary_one_one_in_dimension_two(self):
        """Test that (3, 2, (1,1)) only sees differences of the alpha."""
        assert maxatt_system(3, 2, Partition([1, 1])).solution_dimension() == 2

    @pytest.mark.parametrize("m", [3, 4])
    def test_ternary_one_one_admits_any_alpha(self, m):
        """Test that (3, m, (1,1)) has all three alpha free once m > 2."""
        system = maxatt_system(3, m, Partition([1, 1]))
        assert system.solution_dimension() == 3
        nonzero_sum = family("t11").structure(m, (1, 1, 1))
        assert system.satisfied_by(_values(nonzero_sum))

    def test_partition_checks(self):
        """Test the weight and length checks."""
        with pytest.raises(WeightMismatch):
            maxatt_system(3, 3, Partition([1]))
        with pytest.raises(BadPartition):
            maxatt_system(3, 1, Partition([1, 1]))


def test_linear_system_rejects_undeclared_unknown():
    """Test that equations may only mention declared labels."""
    label = IndexMap((1, 1), 2)
    with pytest.raises(InvariantBroken):
        LinearSystem((label,), (((IndexMap((1, 2), 2), 1),),))


def test_linear_system_drops_duplicate_rows():
    """Test that proportional rows collapse to one canonical row."""
    a, b = IndexMap((1, 2), 3), IndexMap((2, 1), 3)
    system = LinearSystem.assemble([a, b], [{a: 1, b: 1}, {a: -2, b: -2}, {}])
    assert system.equations == (((a, 1), (b, 1)),)


def test_p_minimal_presentation_checker():
    """Test n3, its symmetric twin and A3."""
    assert is_p_minimal_presentation(N3, Partition([1, 1])).holds
    symmetric = AlgebraStructure(2, 3, {(1, 2): {3: 1}, (2, 1): {3: 1}})
    assert not is_p_minimal_presentation(symmetric, Partition([1, 1])).holds
    assert is_p_minimal_presentation(A3, Partition([2])).holds
    assert not is_p_minimal_presentation(AlgebraStructure(2, 2), Partition([2])).holds


def test_p_minimal_presentation_wrong_support():
    """Test that a product off e_m is not a minimal presentation."""
    assert not is_p_minimal_presentation(TWO_FORMS, Partition([1, 1])).holds


def test_max_attractive_presentation_checker():
    """Test p-, nu, and a ternary structure whose alpha do not sum to zero."""
    assert is_maximally_p_attractive_presentation(family("p-").structure(3), Partition([1])).holds
    assert is_maximally_p_attractive_presentation(NU2, Partition([1])).holds
    assert not is_maximally_p_attractive_presentation(A3, Partition([1])).holds
    nonzero_sum = family("t11").structure(3, (1, 2, 4))
    assert is_maximally_p_attractive_presentation(nonzero_sum, Partition([1, 1])).holds


def test_instantiate_round_trips_a_solution():
    """Test that a solution of the system instantiates to a passing structure."""
    p = Partition([2, 1])
    (solution, *_) = pmin_system(3, 3, p).solution_basis()
    mu = instantiate(Kind.FORM_MINIMAL, 3, 3, p, solution)
    assert is_p_minimal_presentation(mu, p).holds


def test_canonical_parameters():
    """Test scaling, epsilon normalization and the zero tuple."""
    assert canonical_parameters("t21", 3, 3, (2, -2, 0)) == (1, -1, 0)
    assert canonical_parameters("t2", 3, 2, (2, 2, 2, -2)) == (1, 1, 1, -1)
    assert canonical_parameters("t2", 3, 2, (0, 2, -2, 0)) == (0, 1, -1, 0)
    assert canonical_parameters("t11", 3, 2, (1, 2, -3)) == (1, 2, -3)
    assert canonical_parameters("t11", 3, 2, (2, 3, -2)) == (1, 2, -3)
    assert canonical_parameters("nu", 2, 2, (Fraction(5, 2),)) == (Fraction(5, 2),)
    with pytest.raises(ZeroTuple):
        canonical_parameters("t21", 3, 3, (0, 0, 0))


def test_enumerate_binary():
    """Test the n = 2 families in dimensions 1 to 3."""
    assert [e.symbol for e in enumerate_level_one(2, 1)] == ["nu"]
    assert [e.symbol for e in enumerate_level_one(2, 2)] == ["A3", "nu", "p-"]
    assert [e.symbol for e in enumerate_level_one(2, 3)] == ["A3", "n3", "nu", "p-"]


def test_enumerate_ternary():
    """Test the n = 3 families in dimensions 1 and 4."""
    assert [e.symbol for e in enumerate_level_one(3, 1)] == ["t2"]
    assert [e.symbol for e in enumerate_level_one(3, 4)] == ["t3", "t21", "t111", "t2", "t11"]


def test_enumerate_rejects_other_arities():
    """Test that only n = 2 and n = 3 are tabulated."""
    with pytest.raises(UnsupportedArity):
        enumerate_level_one(4, 2)
    with pytest.raises(BadPartition):
        enumerate_level_one(2, 0)


def test_entry_render():
    """Test one golden-table line."""
    (entry,) = enumerate_level_one(2, 1)
    assert entry.render() == "max-attractive|2|1|(1)|nu: no parameters|[1,1] -> 1 : 1"


@pytest.mark.parametrize("n", [2, 3])
def test_render_table_matches_golden(n):
    """Test that the computed table equals the shipped golden file."""
    assert render_table(n) == golden_table(n)


def test_golden_table_unsupported():
    """Test that there is no golden table for n = 4."""
    with pytest.raises(UnsupportedArity):
        golden_table(4)


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.symbol)
def test_representatives_pass_their_checker(fam):
    """Test every tabulated representative in every golden dimension."""
    top = 3 if fam.arity == 2 else 4
    for m in range(fam.min_dimension, top + 1):
        mu = fam.structure(m)
        if fam.kind is Kind.FORM_MINIMAL:
            assert is_p_minimal_presentation(mu, fam.partition).holds
        else:
            assert is_maximally_p_attractive_presentation(mu, fam.partition).holds


def test_recognize_n3():
    """Test that n3 is level one and form-minimal."""
    recognition = recognize_level_one(N3, BUDGET)
    assert recognition.verdict is Verdict.LEVEL_ONE
    assert recognition.kind is Kind.FORM_MINIMAL
    assert recognition.partition == Partition([1, 1])
    assert recognition.family == "n3"
    assert recognition.parameters == ()


def test_recognize_zero():
    """Test the level-zero verdict."""
    assert recognize_level_one(AlgebraStructure(2, 3), BUDGET).verdict is Verdict.LEVEL_ZERO


def test_recognize_neither_branch():
    """Test that e1e1=e1, e2e2=e1 is neither a form algebra nor subalgebraic."""
    recognition = recognize_level_one(SQUARES, BUDGET)
    assert recognition.verdict is Verdict.NOT_LEVEL_ONE
    assert recognition.certificate is not None


def test_recognize_proper_degeneration():
    """Test that a form algebra degenerating properly is not level one."""
    recognition = recognize_level_one(TWO_FORMS, BUDGET)
    assert recognition.verdict is Verdict.NOT_LEVEL_ONE
    assert recognition.kind is Kind.FORM_MINIMAL
    assert recognition.partition == Partition([2])


@pytest.mark.parametrize(
    "symbol, m, expected",
    [
        ("A3", 2, ()),
        ("nu", 2, (2,)),
        ("nu", 1, ()),
        ("p-", 2, ()),
        ("t3", 2, ()),
        ("t21", 3, (1, 1, -2)),
        ("t2", 2, (1, 1, 1, -1)),
        ("t11", 3, (1, 2, -3)),
    ],
)
def test_recognize_representatives(symbol, m, expected):
    """Test family and parameters read back from tabulated representatives."""
    fam = family(symbol)
    recognition = recognize_level_one(fam.structure(m), BUDGET)
    assert recognition.verdict is Verdict.LEVEL_ONE
    assert recognition.kind is fam.kind
    assert recognition.family == symbol
    assert recognition.parameters == tuple(Fraction(v) for v in expected)


def test_recognize_moved_n3():
    """Test that n3 in a random basis is still recognized."""
    g = random_matrix(random.Random(8), 3)
    recognition = recognize_level_one(gl_action(g, N3), BUDGET)
    assert recognition.verdict is Verdict.LEVEL_ONE
    assert recognition.family == "n3"


def test_infinite_level_one():
    """Test that form-minimal kinds survive zero summands and attractive ones do not."""
    assert is_infinite_level_one(N3, BUDGET)
    assert not is_infinite_level_one(NU2, BUDGET)
    assert not is_infinite_level_one(AlgebraStructure(2, 2), BUDGET)
    assert recognize_level_one(direct_sum_zero(N3, 1), BUDGET).verdict is Verdict.LEVEL_ONE
    assert recognize_level_one(direct_sum_zero(NU2, 1), BUDGET).verdict is Verdict.NOT_LEVEL_ONE


@pytest.mark.parametrize(
    "system",
    [
        pmin_system(3, 3, Partition([2, 1])),
        pmin_system(2, 4, Partition([1, 1])),
        maxatt_system(3, 3, Partition([1, 1])),
        maxatt_system(2, 3, Partition([1])),
    ],
)
def test_solution_basis_solves_the_system(system):
    """Test that every kernel vector satisfies the equations and the count matches."""
    basis = system.solution_basis()
    assert len(basis) == system.solution_dimension() > 0
    for solution in basis:
        assert system.satisfied_by(solution)


@pytest.mark.parametrize(
    "m, alpha",
    [(2, (1, 2, -3)), (2, (0, 1, 0)), (3, (1, 2, -3)), (3, (1, 1, 1)), (3, (2, -1, 5))],
)
def test_t11_members_solve_the_attractive_system(m, alpha):
    """Test t11 members against the (1,1) system, the presentation checker and the definitions."""
    p = Partition([1, 1])
    mu = family("t11").structure(m, alpha)
    assert maxatt_system(3, m, p).satisfied_by(_values(mu))
    assert is_maximally_p_attractive_presentation(mu, p).holds
    assert is_p_attractive(mu, p, BUDGET).holds
    assert is_subalgebraic(mu, BUDGET).holds


def _crowded(n, m, p, k):
    """Index tuples with at least p_1 + ... + p_k + 2 entries in 1..k."""
    return [
        index
        for index in product(range(1, m + 1), repeat=n)
        if sum(1 for i in index if i <= k) >= p.prefix_sum(k) + 2
    ]


def _flagged_structure(rng, n, m, p, k):
    """Random structure whose basis meets the vanishing and attracting conditions up to k.

    Products whose first count below p sits before k vanish, products whose
    first count above p sits at j land in <e_j>, and (1, ..., 1) gets a
    nonzero multiple of e_1.
    """
    constants = {}
    for index in product(range(1, m + 1), repeat=n):
        counts = [index.count(i) for i in range(1, k + 1)]
        first = next((i for i in range(1, k + 1) if counts[i - 1] != p.part(i)), None)
        if first is None or (first == k and counts[k - 1] < p.part(k)):
            constants[index] = {j: rng.randint(-2, 2) for j in range(1, m + 1)}
        elif counts[first - 1] > p.part(first):
            constants[index] = {first: rng.randint(-2, 2)}
    constants[(1,) * n] = {1: rng.choice([-2, -1, 1, 2])}
    return AlgebraStructure(n, m, constants)


class TestAttractiveVanishing:
    """Products crowding the first k basis vectors vanish in a p-attractive algebra."""

    @pytest.mark.parametrize(
        "fam", [f for f in FAMILIES if f.kind is Kind.MAX_ATTRACTIVE], ids=lambda f: f.symbol
    )
    def test_representatives(self, fam):
        """Test every tabulated maximally attractive representative."""
        top = 3 if fam.arity == 2 else 4
        for m in range(fam.min_dimension, top + 1):
            mu = fam.structure(m)
            for k in range(1, m + 1):
                for index in _crowded(fam.arity, m, fam.partition, k):
                    assert not any(mu.product(index)), (fam.symbol, m, index)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    @pytest.mark.parametrize(
        "n, m, parts", [(3, 2, (1, 1)), (3, 3, (1, 1)), (4, 2, (2, 1))], ids=["3x2", "3x3", "4x2"]
    )
    def test_crowded_product_breaks_attractiveness(self, n, m, parts, seed):
        """Test that a nonzero crowded product with the conditions for k = 1 is not p-attractive."""
        p = Partition(parts)
        assert (1,) * n in _crowded(n, m, p, 1)
        mu = _flagged_structure(random.Random(seed), n, m, p, 1)
        assert not is_p_attractive(mu, p, BUDGET).holds


@pytest.mark.parametrize("c", [-1, Fraction(3, 2)])
@pytest.mark.parametrize(
    "symbol, m",
    [("A3", 2), ("nu", 2), ("p-", 2), ("t3", 2), ("t21", 3), ("t2", 2), ("t11", 3)],
)
def test_recognition_is_scalar_invariant(symbol, m, c):
    """Test that scaling every constant keeps the verdict, kind, family and parameters."""
    mu = family(symbol).structure(m)
    plain = recognize_level_one(mu, BUDGET)
    scaled = recognize_level_one(mu.scaled(c), BUDGET)
    assert scaled.verdict is plain.verdict is Verdict.LEVEL_ONE
    assert scaled.kind is plain.kind
    assert scaled.partition == plain.partition
    assert scaled.family == plain.family == symbol
    assert scaled.parameters == plain.parameters
