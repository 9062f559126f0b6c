import pytest
from hypothesis import given
from hypothesis import strategies as st

from diagseq.errors import ParseError
from diagseq.formula import (And, Atom, FALSE, Iff, Implies, Not, Or, TRUE,
                             atoms_of, format_formula, parse_formula)


def test_parse_and_not():
    assert parse_formula("(and A (not B))") == And((Atom("A"), Not(Atom("B"))))


def test_parse_bare_atom():
    assert parse_formula("A") == Atom("A")


def test_parse_constants():
    assert parse_formula("true") == TRUE
    assert parse_formula("false") == FALSE


def test_parse_nested():
    f = parse_formula("(implies (or A B) (iff C true))")
    assert f == Implies(Or((Atom("A"), Atom("B"))), Iff(Atom("C"), TRUE))


def test_and_arity_error():
    with pytest.raises(ParseError):
        parse_formula("(and A)")


def test_or_arity_error():
    with pytest.raises(ParseError):
        parse_formula("(or A)")


def test_not_arity_error():
    with pytest.raises(ParseError):
        parse_formula("(not A B)")


def test_implies_arity_error():
    with pytest.raises(ParseError):
        parse_formula("(implies A B C)")


def test_error_carries_offset():
    with pytest.raises(ParseError) as exc:
        parse_formula("(and A %)")
    assert exc.value.offset == 7


def test_trailing_input_rejected():
    with pytest.raises(ParseError):
        parse_formula("A B")


def test_unknown_operator():
    with pytest.raises(ParseError):
        parse_formula("(nand A B)")


def test_unbalanced():
    with pytest.raises(ParseError):
        parse_formula("(and A B")


def test_keyword_cannot_stand_alone():
    with pytest.raises(ParseError):
        parse_formula("and")


def test_atoms_of():
    f = parse_formula("(implies (or A B) (and A C))")
    assert atoms_of(f) == {"A", "B", "C"}


names = st.sampled_from(["A", "B", "C", "x1", "_y", "Long_name2"])


def formulas(depth=3):
    base = st.one_of(names.map(Atom), st.just(TRUE), st.just(FALSE))
    return st.recursive(
        base,
        lambda kids: st.one_of(
            kids.map(Not),
            st.tuples(kids, kids).map(lambda t: Implies(*t)),
            st.tuples(kids, kids).map(lambda t: Iff(*t)),
            st.lists(kids, min_size=2, max_size=4).map(lambda l: And(tuple(l))),
            st.lists(kids, min_size=2, max_size=4).map(lambda l: Or(tuple(l))),
        ),
        max_leaves=12,
    )


@given(formulas())
def test_roundtrip_is_identity(f):
    assert parse_formula(format_formula(f)) == f
