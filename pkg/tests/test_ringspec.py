"""Tests for the ring-spec parser and printer."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nomiddle import ringspec as rs
from nomiddle.errors import SpecSemanticError, SpecSyntaxError
from nomiddle.ringspec import parse_spec, print_spec

primes = st.sampled_from([2, 3, 5, 7])
fields = st.builds(rs.GF, primes, st.integers(1, 3))


@st.composite
def tri_specs(draw):
    field = draw(fields)
    n = draw(st.integers(1, 3))
    # prime fields reduce any integer; extension fields take encodings only
    entries = st.integers(-9, 9) if field.k == 1 else st.integers(0, field.p**field.k - 1)
    matrix = st.lists(st.lists(entries, min_size=n, max_size=n).map(tuple), min_size=n, max_size=n).map(tuple)
    sources = [
        st.builds(rs.Gen, st.lists(matrix, min_size=1, max_size=3).map(tuple)),
        st.builds(rs.Companion, st.lists(entries, min_size=n + 1, max_size=n + 1).map(tuple)),
        st.just(rs.Scalars()),
    ]
    if n == 1:
        sources.append(st.just(rs.Full()))
    return rs.Tri(field, n, draw(st.one_of(*sources)))


leaves = st.one_of(
    st.builds(rs.ZMod, st.integers(2, 60)),
    fields,
    tri_specs(),
    st.builds(rs.Idealize, fields, st.integers(1, 4)),
)

specs = st.recursive(
    leaves,
    lambda inner: st.one_of(
        st.builds(rs.Prod, st.lists(inner, min_size=1, max_size=3).map(tuple)),
        st.builds(rs.MatRing, inner, st.integers(1, 3)),
        st.builds(rs.TriMat, inner, inner),
    ),
    max_leaves=6,
)


@settings(max_examples=1000)
@given(specs)
def test_print_parse_round_trip(spec):
    text = print_spec(spec)
    assert parse_spec(text) == spec
    assert print_spec(parse_spec(text)) == text


def test_parse_tri_example():
    spec = parse_spec("tri(gf(3);2;gen[[1,2],[1,1]])")

    assert isinstance(spec, rs.Tri)
    assert spec.field == rs.GF(3, 1)
    assert spec.n == 2
    assert spec.dsrc == rs.Gen((((1, 2), (1, 1)),))


def test_parse_trimat_and_whitespace():
    spec = parse_spec("  trimat( zmod(4) , zmod(2) ) ")
    assert spec == rs.TriMat(rs.ZMod(4), rs.ZMod(2))
    assert print_spec(spec) == "trimat(zmod(4),zmod(2))"


def test_gf_sugar():
    assert parse_spec("gf(5)") == parse_spec("gf(5,1)")
    assert print_spec(parse_spec("gf(5,1)")) == "gf(5)"


def test_gen_list_of_matrices():
    spec = parse_spec("tri(gf(2);2;gen[[[0,1],[1,1]],[[1,0],[0,1]]])")
    assert len(spec.dsrc.mats) == 2


@pytest.mark.parametrize(
    "text,column",
    [
        ("zmod(", 6),
        ("zmod(4", 7),
        ("ring(3)", 1),
        ("zmod(4))", 8),
        ("tri(gf(2),2;scalars)", 10),
        ("tri(zmod(2);2;scalars)", 5),
        ("tri(gf(2);2;gen[[1,0],[[0]]])", 28),
    ],
)
def test_syntax_errors_carry_position(text, column):
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec(text)
    assert info.value.position + 1 == column
    assert f"column {column}" in str(info.value)


@pytest.mark.parametrize(
    "text",
    [
        "zmod(0)",
        "zmod(1)",
        "gf(4,2)",
        "gf(2,0)",
        "mat(zmod(2),0)",
        "tri(gf(2);2;full)",
        "tri(gf(2);2;gen[[1,0,0],[0,1,0],[0,0,1]])",
        "tri(gf(2);2;companion[1,1])",
        "idealize(gf(3),0)",
        "gf(4)",
        "tri(gf(2,2);2;gen[[0,4],[1,1]])",
        "tri(gf(2,2);2;gen[[0,-1],[1,1]])",
        "tri(gf(3,2);2;companion[1,9,1])",
    ],
)
def test_semantic_errors(text):
    with pytest.raises(SpecSemanticError):
        parse_spec(text)


def test_oversized_input():
    with pytest.raises(SpecSyntaxError):
        parse_spec("zmod(" + "1" * (64 * 1024) + ")")


def test_extension_field_spelling():
    assert parse_spec("gf(2,2)") == rs.GF(2, 2)
    assert parse_spec("tri(gf(2,2);2;gen[[0,1],[1,3]])").dsrc == rs.Gen((((0, 1), (1, 3)),))


def test_prime_field_entries_are_reduced_not_rejected():
    assert parse_spec("tri(gf(3);2;gen[[0,5],[-1,1]])").dsrc == rs.Gen((((0, 5), (-1, 1)),))
