"""Tests for structure and witness file formats."""

import random
from fractions import Fraction

import pytest

from nary_python_cli.utils.corpus import random_structure
from nary_python_cli.utils.degeneration import BasisFamily, iw_contraction
from nary_python_cli.utils.errors import ParseError
from nary_python_cli.utils.formats import (
    parse_structure,
    parse_witness,
    read_structure,
    read_witness,
    render_structure,
    render_witness,
    write_chain,
    write_structure,
)
from nary_python_cli.utils.scalars import T, LaurentPoly
from nary_python_cli.utils.structures import AlgebraStructure

N3 = AlgebraStructure(2, 3, {(1, 2): {3: 1}, (2, 1): {3: -1}})
NU2 = AlgebraStructure(2, 2, {(1, 1): {1: 1}, (1, 2): {2: 2}, (2, 1): {2: -1}})

N3_TEXT = "nary-structure v1\nn=2 m=3\n[1,2] -> 3 : 1\n[2,1] -> 3 : -1\n"
WITNESS_TEXT = "nary-witness v1\nn=2 m=2\n1*t^1; 0\n0; 1*t^2\n"


def _parse_error(text, parser=parse_structure):
    with pytest.raises(ParseError) as excinfo:
        parser(text, "input")
    return excinfo.value


def test_parse_structure():
    """Test that the n3 file parses to n3."""
    assert parse_structure(N3_TEXT) == N3


def test_render_structure():
    """Test the canonical rendering of n3."""
    assert render_structure(N3) == N3_TEXT


def test_parse_structure_comments_and_blank_lines():
    """Test that comments and blank lines are ignored."""
    text = "# header comment\nnary-structure v1\n\nn=2 m=3   # shape\n  [1,2] -> 3 : 1/2  # half\n"
    mu = parse_structure(text)
    assert mu.constant((1, 2), 3) == Fraction(1, 2)


def test_parse_structure_drops_zero_coefficients():
    """Test that an explicit zero leaves the zero structure."""
    assert parse_structure("nary-structure v1\nn=2 m=1\n[1,1] -> 1 : 0\n").is_zero()


def test_parse_structure_missing_header():
    """Test that an empty file reports the missing header at 1:1."""
    error = _parse_error("")
    assert (error.line, error.column) == (1, 1)


def test_parse_structure_wrong_tag():
    """Test that a different version tag is rejected."""
    error = _parse_error("nary-structure v2\nn=2 m=2\n")
    assert error.line == 1
    assert "input:1:" in str(error)


def test_parse_structure_missing_shape_key():
    """Test that the shape line needs both n and m."""
    error = _parse_error("nary-structure v1\nn=2\n")
    assert (error.line, error.column) == (2, 4)


@pytest.mark.parametrize("shape", ["n=1 m=2", "n=2 m=0", "n=2 m=x", "n=2 k=3", "n=2 n=2 m=2"])
def test_parse_structure_bad_shape(shape):
    """Test the arity, dimension and key checks on the shape line."""
    assert _parse_error(f"nary-structure v1\n{shape}\n").line == 2


def test_parse_structure_index_out_of_range():
    """Test that the offending index is located exactly."""
    error = _parse_error("nary-structure v1\nn=2 m=3\n[1,4] -> 3 : 1\n")
    assert (error.line, error.column) == (3, 4)


def test_parse_structure_wrong_arity():
    """Test that an index tuple must have n entries."""
    error = _parse_error("nary-structure v1\nn=2 m=2\n[1] -> 2 : 1\n")
    assert (error.line, error.column) == (3, 2)


def test_parse_structure_output_out_of_range():
    """Test that the output index must lie in 1..m."""
    error = _parse_error("nary-structure v1\nn=2 m=2\n[1,1] -> 3 : 1\n")
    assert error.line == 3


def test_parse_structure_rejects_floats():
    """Test that a decimal coefficient is a parse error at its column."""
    error = _parse_error("nary-structure v1\nn=2 m=3\n[1,2] -> 3 : 1.5\n")
    assert (error.line, error.column) == (3, 14)


def test_parse_structure_duplicate_entry():
    """Test that an entry may only be given once."""
    error = _parse_error("nary-structure v1\nn=2 m=2\n[1,1] -> 2 : 1\n[1,1] -> 2 : 3\n")
    assert error.line == 4
    assert "duplicate" in error.reason


def test_parse_witness():
    """Test the diagonal family (t e1, t^2 e2)."""
    witness = parse_witness(WITNESS_TEXT)
    assert witness.arity == 2
    assert witness.family == BasisFamily.scaled([1, 2])


def test_render_witness():
    """Test the canonical rendering of a diagonal family."""
    assert render_witness(2, BasisFamily.scaled([1, 2])) == WITNESS_TEXT


def test_parse_witness_general_entries():
    """Test Laurent entries with several terms."""
    witness = parse_witness("nary-witness v1\nn=2 m=2\n1*t^1 + 1; 1/2*t^-1\n0; 1\n")
    (first, second) = witness.family.columns()
    assert first == (T + 1, LaurentPoly())
    assert second == (LaurentPoly({-1: Fraction(1, 2)}), LaurentPoly.constant(1))


def test_parse_witness_row_count():
    """Test that a missing row is reported after the last line."""
    error = _parse_error("nary-witness v1\nn=2 m=2\n1; 0\n", parse_witness)
    assert error.line == 4


def test_parse_witness_entry_count():
    """Test that a short row is rejected."""
    error = _parse_error("nary-witness v1\nn=2 m=2\n1\n0; 1\n", parse_witness)
    assert error.line == 3


def test_parse_witness_extra_row():
    """Test that rows beyond m are rejected."""
    error = _parse_error("nary-witness v1\nn=2 m=1\n1\n1\n", parse_witness)
    assert error.line == 4


def test_parse_witness_empty_entry():
    """Test that an empty entry is reported at its column."""
    error = _parse_error("nary-witness v1\nn=2 m=2\n1;  \n0; 1\n", parse_witness)
    assert (error.line, error.column) == (3, 3)


def test_structure_files(tmp_path):
    """Test writing and reading a structure file."""
    path = tmp_path / "nu.structure"
    write_structure(path, NU2)
    assert read_structure(path) == NU2


def test_read_structure_reports_path(tmp_path):
    """Test that errors name the file they come from."""
    path = tmp_path / "broken.structure"
    path.write_text("nary-structure v1\nn=2 m=2\n[1,1] => 2 : 1\n")
    with pytest.raises(ParseError) as excinfo:
        read_structure(path)
    assert str(path) in str(excinfo.value)
    assert excinfo.value.line == 3


def test_write_chain(tmp_path):
    """Test that every step writes its witness and target."""
    witness = iw_contraction(NU2, 1, 2)
    written = write_chain(tmp_path / "out", [witness])
    assert [p.name for p in written] == ["step-1.witness", "step-1.structure"]
    assert read_structure(written[1]) == witness.target
    assert read_witness(written[0]).family == witness.family


def test_random_structures_survive_the_file_format():
    """Test that rendered corpus structures parse back unchanged."""
    rng = random.Random(12)
    for n, m in [(2, 3), (3, 2), (4, 2)]:
        mu = random_structure(rng, n, m, density=0.5)
        assert parse_structure(render_structure(mu)) == mu
