import random
from fractions import Fraction

import pytest

from jordanalg.algebra import AlgebraTable, LinearMap, SplitNullMeta, split_null_extension
from jordanalg.constructions import (
    AlbertMeta,
    CDMeta,
    SpinMeta,
    albert_type,
    cayley_dickson,
    diagonal_spin_factor,
    matrix_algebra,
    plus_algebra,
    spin_factor,
)
from jordanalg.derivations import derivation_space, sample_derivation
from jordanalg.errors import ParseError
from jordanalg.fields import RATIONALS, prime_field
from jordanalg.formats import (
    format_element,
    parse_element,
    read_algebra,
    read_map,
    write_algebra,
    write_map,
)
from jordanalg.linalg import Matrix

F3 = prime_field(3)
F5 = prime_field(5)
F7 = prime_field(7)


def scalar_algebra(field):
    return AlgebraTable(field, 1, {(0, 0, 0): field.one()}, labels=("s",), unit=[1])


def roundtrip(table):
    text = write_algebra(table)
    back = read_algebra(text)
    assert back == table
    assert write_algebra(back) == text
    return back


# ---------------------------------------------------------------------------
# algebra files: canonical writing and byte-identical round trips


def test_spin_gf_roundtrip_keeps_meta():
    spin = diagonal_spin_factor(F3, [1, 1])
    back = roundtrip(spin)
    assert isinstance(back.meta, SpinMeta)
    assert back.meta.gram == spin.meta.gram
    assert back.labels == spin.labels


def test_spin_rational_nondiagonal_roundtrip():
    gram = Matrix(RATIONALS, [[Fraction(1), Fraction(1, 2)], [Fraction(1, 2), Fraction(-3)]])
    spin = spin_factor(gram)
    back = roundtrip(spin)
    assert isinstance(back.meta, SpinMeta)
    assert back.meta.gram == gram


def test_cayley_dickson_roundtrip_both_fields():
    for field, mus in ((RATIONALS, [-1, -1, -1]), (F7, [1, 3])):
        table, _ = cayley_dickson(field, mus)
        back = roundtrip(table)
        assert isinstance(back.meta, CDMeta)
        assert back.meta.mus == table.meta.mus


def test_albert_roundtrip_restores_idempotents():
    alb = albert_type(F5, [1, 1, 1], [1, 2, 1])
    back = roundtrip(alb)
    assert isinstance(back.meta, AlbertMeta)
    assert back.meta.idempotents == alb.meta.idempotents
    assert back.meta.mus == alb.meta.mus
    assert back.meta.gammas == alb.meta.gammas


def test_split_null_roundtrip_keeps_shift():
    spin = diagonal_spin_factor(F3, [1, 1])
    ext, _ = split_null_extension(spin, 2)
    back = roundtrip(ext)
    assert isinstance(back.meta, SplitNullMeta)
    assert back.meta.base_dim == 3
    assert back.meta.shift == F3.from_int(2)


def test_plain_table_roundtrip_without_meta():
    m2 = plus_algebra(matrix_algebra(scalar_algebra(RATIONALS), 2))
    back = roundtrip(m2)
    assert back.meta is None


def test_minimal_table_without_labels_or_unit():
    table = AlgebraTable(F5, 2, {(0, 1, 0): 3})
    text = write_algebra(table)
    assert text == "field GF 5\ndim 2\nsc 1 2 1 3\n"
    back = read_algebra(text)
    assert back == table
    assert back.labels is None and back.unit is None


def test_writer_sorts_constants_and_formats_fractions():
    table = AlgebraTable(
        RATIONALS,
        2,
        {(1, 0, 1): Fraction(1, 2), (0, 0, 0): Fraction(-2), (0, 1, 1): 1},
    )
    text = write_algebra(table)
    sc_lines = [l for l in text.splitlines() if l.startswith("sc")]
    assert sc_lines == ["sc 1 1 1 -2", "sc 1 2 2 1", "sc 2 1 2 1/2"]


def test_reader_accepts_any_line_order_comments_and_blanks():
    spin = diagonal_spin_factor(F3, [1, 1])
    lines = write_algebra(spin).splitlines()
    shuffled = lines[::-1]
    text = "# scrambled copy\n\n" + "\n".join(shuffled) + "\n  # trailing note\n"
    assert read_algebra(text) == spin


# ---------------------------------------------------------------------------
# algebra files: rejected inputs


def test_duplicate_constant_rejected():
    text = "field GF 3\ndim 2\nsc 1 1 1 1\nsc 1 1 1 2\n"
    with pytest.raises(ParseError, match="duplicate"):
        read_algebra(text)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("dim 2\nsc 1 1 1 1\n", "missing field"),
        ("field GF 3\nsc 1 1 1 1\n", "missing dim"),
        ("field GF 3\nfield Q\ndim 1\n", "duplicate field"),
        ("field GF 3\ndim 1\ndim 2\n", "duplicate dim"),
        ("field GF 4\ndim 1\n", "not prime"),
        ("field R\ndim 1\n", "bad field"),
        ("field Q extra\ndim 1\n", "bad field"),
        ("field GF 3\ndim 0\n", "must be positive"),
        ("field GF 3\ndim two\n", "bad dimension"),
        ("field GF 3\ndim 2\nsc 1 3 1 1\n", "out of range"),
        ("field GF 3\ndim 2\nsc 0 1 1 1\n", "must be positive"),
        ("field GF 3\ndim 2\nsc 1 1 1\n", "sc lines take"),
        ("field Q\ndim 1\nsc 1 1 1 x\n", "scalar"),
        ("field GF 3\ndim 2\nbasis a\n", "differs from dimension"),
        ("field GF 3\ndim 2\nbasis a b\nbasis c d\n", "duplicate basis"),
        ("field GF 3\ndim 2\nunit 1\n", "differs from dimension"),
        ("field GF 3\ndim 2\nunit 1 0\nunit 0 1\n", "duplicate unit"),
        ("field GF 3\ndim 2\nfrobnicate 1\n", "unknown directive"),
        ("field GF 3\ndim 1\nmeta\n", "empty meta"),
        ("field GF 3\ndim 1\nmeta warp 1\n", "unknown construction"),
    ],
)
def test_malformed_files_rejected(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        read_algebra(text)


def test_meta_must_reproduce_the_table():
    spin = diagonal_spin_factor(F3, [1, 1])
    text = write_algebra(spin).replace("sc 2 2 1 1", "sc 2 2 1 2")
    with pytest.raises(ParseError, match="does not reproduce"):
        read_algebra(text)


def test_meta_must_reproduce_the_labels():
    spin = diagonal_spin_factor(F3, [1, 1])
    text = write_algebra(spin).replace("basis one v1 v2", "basis one w1 w2")
    with pytest.raises(ParseError, match="labels"):
        read_algebra(text)


def test_meta_argument_counts_checked():
    base = "field GF 3\ndim 3\nsc 1 1 1 1\n"
    with pytest.raises(ParseError, match="dim\\^2 form entries"):
        read_algebra(base + "meta spin 2 1 0 0\n")
    with pytest.raises(ParseError, match="one to three"):
        read_algebra(base + "meta cd 1 1 1 1\n")
    with pytest.raises(ParseError, match="three mus and three gammas"):
        read_algebra(base + "meta albert 1 1 1\n")
    with pytest.raises(ParseError, match="base dimension and a shift"):
        read_algebra(base + "meta splitnull 3\n")


def test_split_null_base_must_be_half_the_dimension():
    spin = diagonal_spin_factor(F3, [1, 1])
    ext, _ = split_null_extension(spin)
    text = write_algebra(ext).replace("meta splitnull 3 0", "meta splitnull 2 0")
    with pytest.raises(ParseError, match="half the dimension"):
        read_algebra(text)


# ---------------------------------------------------------------------------
# map files


def test_map_roundtrip_is_byte_identical():
    spin = diagonal_spin_factor(F3, [1, 1])
    space = derivation_space(spin)
    dmap = sample_derivation(space, random.Random(7))
    text = write_map(dmap)
    back = read_map(text, spin)
    assert back.matrix == dmap.matrix
    assert write_map(back) == text


def test_map_entries_ordered_by_column_then_row():
    table = AlgebraTable(RATIONALS, 2, {(0, 0, 0): 1})
    matrix = Matrix(RATIONALS, [[Fraction(0), Fraction(1, 3)], [Fraction(2), Fraction(0)]])
    lines = write_map(LinearMap(table, matrix)).splitlines()
    assert lines == ["map 2", "2 1 2", "1 2 1/3"]


def test_zero_map_writes_only_the_header():
    table = AlgebraTable(F5, 2, {(0, 0, 0): 1})
    assert write_map(LinearMap.zero(table)) == "map 2\n"
    back = read_map("map 2\n", table)
    assert back.matrix == LinearMap.zero(table).matrix


def test_map_reader_accepts_any_entry_order():
    table = AlgebraTable(F5, 2, {(0, 0, 0): 1})
    a = read_map("map 2\n1 2 4\n2 1 3\n", table)
    b = read_map("# comment\nmap 2\n2 1 3\n\n1 2 4\n", table)
    assert a.matrix == b.matrix


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("1 1 1\n", "map <dim>"),
        ("map 3\n", "differs from the algebra"),
        ("map 2\n1 1 1 1\n", "row col value"),
        ("map 2\n3 1 1\n", "out of range"),
        ("map 2\n1 1 1\n1 1 2\n", "duplicate entry"),
        ("", "missing"),
    ],
)
def test_malformed_maps_rejected(text, fragment):
    table = AlgebraTable(F5, 2, {(0, 0, 0): 1})
    with pytest.raises(ParseError, match=fragment):
        read_map(text, table)


# ---------------------------------------------------------------------------
# element coordinate strings


def test_element_parse_and_format():
    spin = diagonal_spin_factor(F3, [1, 1])
    x = parse_element(spin, "1, 2, 0")
    assert x.coords == (1, 2, 0)
    assert format_element(x) == "1,2,0"
    assert parse_element(spin, "1 2 0") == x


def test_element_rational_fractions():
    table = AlgebraTable(RATIONALS, 2, {(0, 0, 0): 1})
    x = parse_element(table, "1/2,-3")
    assert x.coords == (Fraction(1, 2), Fraction(-3))
    assert format_element(x) == "1/2,-3"


def test_element_coordinate_count_checked():
    spin = diagonal_spin_factor(F3, [1, 1])
    with pytest.raises(ParseError, match="3 coordinates"):
        parse_element(spin, "1 2")
