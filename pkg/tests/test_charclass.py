import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equipart.charclass import (
    POINT_BASE,
    Base,
    FlagCanonical,
    Hopf,
    Inverse,
    Sum,
    Tautological,
    Trivial,
    parse,
    sw_class,
    top_nonzero_degree,
)
from equipart.errors import InputError


def test_parse_examples():
    e = parse("taut(2,5)")
    assert e == Tautological(2, 5)
    assert e.base == Base(5, (2,))
    assert str(e.base) == "Gr_2(R^5)"
    s = parse("sum(hopf(4),trivial(2))")
    assert s == Sum(Hopf(4), Trivial(2))
    assert str(s.base) == "P(R^4)"
    assert s.dim == 3
    v = parse("inverse(taut(2,5))")
    assert v == Inverse(Tautological(2, 5))
    assert v.dim == -2


def test_parse_is_whitespace_insensitive():
    assert parse("  sum( taut (2, 5) ,\n trivial(1) ) ") == parse("sum(taut(2,5),trivial(1))")
    f = parse("flagE(2; 1, 3; 4)")
    assert f == FlagCanonical(2, (1, 3), 4)
    assert f.dim == 2
    assert str(f.base) == "Flag_{1,3}(R^4)"


@pytest.mark.parametrize("text,offset", [
    ("taut(2,5", 8),
    ("taut(2 5)", 7),
    ("bogus(1)", 0),
    ("sum(hopf(4), taut(2,5))", 0),
    ("taut(6,5)", 0),
    ("hopf(0)", 0),
    ("taut(2,5))", 9),
])
def test_parse_errors_report_byte_offset(text, offset):
    with pytest.raises(InputError, match=f"at byte {offset}$"):
        parse(text)


def test_parse_rejects_bad_flags():
    for text in ["flagE(4;1,3;4)", "flagE(1;3,1;4)", "flagE(1;1,4;4)", "flagE(0;1;3)"]:
        with pytest.raises(InputError):
            parse(text)


def test_trivial_class():
    c = sw_class(parse("trivial(3)"))
    assert c.base == POINT_BASE
    assert c.is_one()
    assert top_nonzero_degree(c) == 0


def test_inverse_hopf_is_geometric_series():
    c = sw_class("inverse(hopf(4))")
    assert c.format_lines() == ["w0 = 1", "w1 = t1", "w2 = t1^2", "w3 = t1^3"]
    assert c[4] == 0


def test_inverse_tautological_top_degree():
    for d in range(2, 7):
        for ell in range(1, d):
            c = sw_class(Inverse(Tautological(ell, d)))
            assert top_nonzero_degree(c) == d - ell


def test_examples_of_top_degree():
    assert top_nonzero_degree(sw_class("inverse(taut(2,5))")) == 3
    assert top_nonzero_degree(sw_class("inverse(sum(hopf(4),trivial(2)))")) == 3


def test_classes_above_base_dimension_vanish():
    c = sw_class("inverse(taut(2,4))")
    assert len(c) == c.base.manifold_dim + 1
    assert c[len(c)] == 0


def test_explicit_base_must_match():
    with pytest.raises(InputError):
        sw_class("taut(2,5)", base=Base(4, (1,)))
    c = sw_class("trivial(2)", base=Base(4, (2,)))
    assert c.is_one()


def test_gambelli_nonvanishing():
    for d in range(2, 7):
        for ell in range(1, d):
            c = sw_class(Inverse(Tautological(ell, d)))
            alg = c.algebra
            assert alg.power(c[d - ell], ell)


LEAVES = {
    Base(4, (1,)): [Hopf(4), Trivial(1), Trivial(2)],
    Base(5, (2,)): [Tautological(2, 5), Trivial(1)],
    Base(4, (1, 3)): [FlagCanonical(1, (1, 3), 4), FlagCanonical(2, (1, 3), 4), FlagCanonical(3, (1, 3), 4)],
}


def exprs(base):
    leaf = st.sampled_from(LEAVES[base])
    return st.recursive(
        leaf,
        lambda inner: st.one_of(st.builds(Sum, inner, inner), st.builds(Inverse, inner)),
        max_leaves=5,
    )


@st.composite
def expr_pairs(draw):
    base = draw(st.sampled_from(list(LEAVES)))
    return base, draw(exprs(base)), draw(exprs(base))


@given(expr_pairs())
@settings(max_examples=80, deadline=None)
def test_whitney_product(case):
    base, a, b = case
    assert sw_class(Sum(a, b), base) == sw_class(a, base) * sw_class(b, base)


@given(expr_pairs())
@settings(max_examples=60, deadline=None)
def test_inverse_cancels(case):
    base, a, _ = case
    assert sw_class(Sum(a, Inverse(a)), base).is_one()


@given(expr_pairs())
@settings(max_examples=60, deadline=None)
def test_text_round_trip(case):
    _, a, b = case
    e = Sum(a, b)
    assert parse(str(e)) == e
