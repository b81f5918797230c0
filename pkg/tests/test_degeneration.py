"""Tests for witness families, IW contractions and the degeneration pipelines."""

import random
from unittest.mock import patch

import pytest

from nary_python_cli.utils.classification import (
    family,
    is_maximally_p_attractive_presentation,
    is_p_minimal_presentation,
)
from nary_python_cli.utils.corpus import random_matrix
from nary_python_cli.utils.degeneration import (
    BasisFamily,
    apply_witness,
    degenerate_to_form,
    family_constants,
    find_attractive_partition,
    find_max_form_partition,
    form_to_minimal,
    iw_contraction,
    minimality_exponents,
    scale_to_zero_witness,
    subalgebraic_to_max_attractive,
    verify_chain,
)
from nary_python_cli.utils.errors import (
    BadK,
    NoLimit,
    NotABasisFamily,
    NotFormAlgebra,
    NotKSubalgebra,
    NotSubalgebraic,
    SearchExhausted,
    Subalgebraic,
)
from nary_python_cli.utils.properties import PropertyVerdict, SearchBudget, form_decomposition, is_form_algebra
from nary_python_cli.utils.scalars import T, LaurentPoly, RatMatrix
from nary_python_cli.utils.structures import (
    AlgebraStructure,
    Partition,
    derivation_dimension,
    gl_action,
)

A3 = AlgebraStructure(2, 2, {(1, 1): {2: 1}})
N3 = AlgebraStructure(2, 3, {(1, 2): {3: 1}, (2, 1): {3: -1}})
NU2 = AlgebraStructure(2, 2, {(1, 1): {1: 1}, (1, 2): {2: 2}, (2, 1): {2: -1}})
SQUARES = AlgebraStructure(2, 2, {(1, 1): {1: 1}, (2, 2): {1: 1}})
TWO_FORMS = AlgebraStructure(2, 3, {(1, 1): {3: 1}, (1, 2): {3: 1}})

BUDGET = SearchBudget(seed=7)


def test_identity_family_keeps_constants():
    """Test that the identity family reproduces the constants."""
    constants = family_constants(N3, BasisFamily.identity(3))
    assert constants[(1, 2)] == (LaurentPoly(), LaurentPoly(), LaurentPoly.constant(1))
    assert apply_witness(N3, BasisFamily.identity(3)).target == N3


def test_family_with_non_monomial_determinant():
    """Test that det E^t = t - 1 is not a basis family."""
    family_matrix = BasisFamily.from_rows([[T, 1], [1, 1]])
    with pytest.raises(NotABasisFamily):
        family_constants(A3, family_matrix)


def test_apply_witness_scales_a3_to_zero():
    """Test that (t e1, t e2) sends A3 to zero."""
    witness = apply_witness(A3, BasisFamily.scaled([1, 1]))
    assert witness.target.is_zero()
    assert not witness.lossless


def test_apply_witness_keeps_a3():
    """Test that (t e1, t^2 e2) leaves A3 unchanged."""
    witness = apply_witness(A3, BasisFamily.scaled([1, 2]))
    assert witness.target == A3
    assert witness.lossless
    assert witness.verify()


def test_apply_witness_pole_raises():
    """Test that (t e1, t^3 e2) gives the pole t^-1."""
    with pytest.raises(NoLimit):
        apply_witness(A3, BasisFamily.scaled([1, 3]))


def test_apply_witness_general_family():
    """Test a family that is not column-monomial against the split path."""
    mixed = BasisFamily.from_rows([[T, T], [0, T * T]])
    witness = apply_witness(NU2, mixed)
    assert witness.verify()
    assert witness.target.dimension == 2


def test_scale_to_zero_witness():
    """Test that scaling every vector by t kills every constant."""
    assert apply_witness(A3, scale_to_zero_witness(2, 2)).target.is_zero()
    assert apply_witness(AlgebraStructure(2, 2), scale_to_zero_witness(2, 2)).target.is_zero()
    cubic = AlgebraStructure(3, 2, {(1, 1, 1): {2: 1}})
    assert apply_witness(cubic, scale_to_zero_witness(3, 2)).target.is_zero()


def test_iw_contraction_fixes_nu():
    """Test that the 2-IW contraction on <e1> fixes nu."""
    witness = iw_contraction(NU2, 1, 2)
    assert witness.target == NU2
    assert witness.lossless


def test_iw_contraction_kills_outside_product():
    """Test that e2 e2 = e1 dies in the 2-IW contraction on <e1>."""
    witness = iw_contraction(SQUARES, 1, 2)
    assert witness.target == AlgebraStructure(2, 2, {(1, 1): {1: 1}})


def test_iw_contraction_requires_k_subalgebra():
    """Test that <e1> must be a k-subalgebra."""
    with pytest.raises(NotKSubalgebra):
        iw_contraction(A3, 1, 2)


def test_iw_contraction_bad_k():
    """Test that k outside 2..n is rejected."""
    with pytest.raises(BadK):
        iw_contraction(NU2, 1, 1)


def test_degenerate_to_form_from_idempotent():
    """Test that e1 e1 = e1 in dimension 2 degenerates to a nonzero form algebra."""
    mu = AlgebraStructure(2, 2, {(1, 1): {1: 1}})
    witness = degenerate_to_form(mu, BUDGET)
    assert witness.verify()
    assert is_form_algebra(witness.target)
    assert not form_decomposition(witness.target).is_zero


def test_degenerate_to_form_a3():
    """Test that A3 already qualifies."""
    witness = degenerate_to_form(A3, BUDGET)
    assert witness.target == A3


def test_degenerate_to_form_rejects_subalgebraic():
    """Test the precondition on subalgebraic input."""
    with pytest.raises(Subalgebraic):
        degenerate_to_form(NU2, BUDGET)


def test_degenerate_to_form_needs_escaping_product():
    """Test that a failing verdict without an escaping product exhausts the search."""
    verdict = PropertyVerdict(False, None, "subalgebraic")
    with patch("nary_python_cli.utils.degeneration.is_subalgebraic", return_value=verdict):
        with pytest.raises(SearchExhausted, match="no escaping product"):
            degenerate_to_form(A3, BUDGET)


def test_minimality_exponents():
    """Test the exponent schedules for (n, m) = (2, 3) and (3, 2)."""
    assert minimality_exponents(Partition([2]), 3, 2) == (18, 24)
    assert minimality_exponents(Partition([3]), 2, 3) == (12,)


def test_find_max_form_partition():
    """Test the maximal form partitions of n3, a two-term form and the alternating form."""
    realization = find_max_form_partition(N3, BUDGET)
    assert realization.partition == Partition([1, 1])
    assert realization.basis == RatMatrix.identity(3)
    assert find_max_form_partition(TWO_FORMS, BUDGET).partition == Partition([2])
    alternating = family("t111").structure(4)
    assert find_max_form_partition(alternating, BUDGET).partition == Partition([1, 1, 1])


def test_form_to_minimal_keeps_n3():
    """Test that n3 is already minimal."""
    chain = form_to_minimal(N3, BUDGET)
    assert chain.target == N3
    assert chain.is_lossless
    assert chain.partition == Partition([1, 1])


def test_form_to_minimal_drops_lower_term():
    """Test that e1 e2 = e3 dies next to e1 e1 = e3."""
    chain = form_to_minimal(TWO_FORMS, BUDGET)
    assert chain.target == AlgebraStructure(2, 3, {(1, 1): {3: 1}})
    assert is_p_minimal_presentation(chain.target, Partition([2])).holds
    assert verify_chain(chain)


def test_form_to_minimal_moved_form():
    """Test the pipeline on a form algebra in a random basis."""
    g = random_matrix(random.Random(3), 3)
    chain = form_to_minimal(gl_action(g, N3), BUDGET)
    assert verify_chain(chain)
    assert is_p_minimal_presentation(chain.target, chain.partition).holds


def test_form_to_minimal_rejects_zero():
    """Test the precondition on the zero structure."""
    with pytest.raises(NotFormAlgebra):
        form_to_minimal(AlgebraStructure(2, 3), BUDGET)


def test_find_attractive_partition():
    """Test the attractive partitions of nu and the two ternary families."""
    assert find_attractive_partition(NU2, BUDGET).partition == Partition([1])
    assert find_attractive_partition(family("t2").structure(2), BUDGET).partition == Partition([2])
    assert find_attractive_partition(family("t11").structure(3), BUDGET).partition == Partition([1, 1])


def test_find_attractive_partition_rejects_non_subalgebraic():
    """Test the precondition on non-subalgebraic input."""
    with pytest.raises(NotSubalgebraic):
        find_attractive_partition(A3, BUDGET)


def test_max_attractive_fixes_normal_form():
    """Test that a maximally attractive presentation is its own target."""
    chain = subalgebraic_to_max_attractive(NU2, BUDGET)
    assert chain.target == NU2
    assert chain.is_lossless
    assert verify_chain(chain)


def test_max_attractive_from_moved_nu():
    """Test the pipeline on nu moved by a seeded upper triangular matrix."""
    g = random_matrix(random.Random(5), 3, upper=True)
    mu = gl_action(g, family("nu").structure(3))
    chain = subalgebraic_to_max_attractive(mu, BUDGET)
    assert verify_chain(chain)
    assert is_maximally_p_attractive_presentation(chain.target, Partition([1])).holds
    assert derivation_dimension(chain.target) == derivation_dimension(mu)
    assert len(chain.witnesses) == 3


def test_max_attractive_rejects_non_subalgebraic():
    """Test the precondition on non-subalgebraic input."""
    with pytest.raises(NotSubalgebraic):
        subalgebraic_to_max_attractive(SQUARES, BUDGET)
