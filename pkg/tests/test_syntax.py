import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvseq.errors import ParseError
from mvseq.pools import modal_pool
from mvseq.syntax import (
    format_modal,
    format_mv,
    format_sequent,
    parse_gamma,
    parse_modal,
    parse_mv,
    parse_sequent,
    well_formed,
)
from mvseq.terms import BOT, TOP, And, App, Atom, BBox, Box, Const, MVar, Or, Sequent, modal_depth

from .strategies import modal_formulas, mv_formulas, sequents

A, B = Atom("A"), Atom("B")


def ids(sig, *syms):
    return tuple(sig.value_id(s) for s in syms)


def test_parse_examples(godel):
    one, half = ids(godel, "1", "half")
    assert parse_mv("imp(A,B)", godel) == App("imp", (A, B))
    assert parse_modal("[half](imp(A,B))", godel) == Box(half, App("imp", (A, B)))
    assert parse_sequent("([1](A) & [half](B)) |- [half](imp(A,B))", godel) == Sequent(
        And(Box(one, A), Box(half, B)), Box(half, App("imp", (A, B)))
    )


def test_whitespace_insensitive(godel):
    assert parse_sequent(" ( [1]( A )&[half](B) )|-  T ", godel) == parse_sequent("([1](A) & [half](B)) |- T", godel)


def test_ground_atoms_with_arguments(godel):
    assert parse_mv("imp(p(a,b), q)", godel) == App("imp", (Atom("p", ("a", "b")), Atom("q")))
    assert format_mv(Atom("p", ("a", "b")), godel) == "p(a,b)"


def test_constants_and_top_bottom_are_distinct(godel):
    zero, one = ids(godel, "0", "1")
    assert parse_modal("[1](#1)", godel) == Box(one, Const(one))
    assert parse_modal("[0](T)", godel) == BBox(zero, TOP)
    assert parse_modal("[0](F)", godel) == BBox(zero, BOT)


def test_anchor_over_many_valued_body_is_a_box(godel):
    zero, one = ids(godel, "0", "1")
    assert parse_modal("[0](A)", godel) == Box(zero, A)
    assert parse_modal("[0]([1](A))", godel) == BBox(zero, Box(one, A))


def test_placeholders(godel):
    assert parse_sequent("($Phi & $Psi) |- $Phi", godel) == Sequent(And(MVar("Phi"), MVar("Psi")), MVar("Phi"))


@pytest.mark.parametrize(
    "text",
    ["imp(A)", "[half]([1](A))", "[2](A)", "([1](A) & [0](B)", "[1](A) & [0](B)", "nope(A,B)x", "[1](A) |- "],
)
def test_parse_errors(godel, text):
    with pytest.raises(ParseError):
        parse_sequent(text, godel) if "|-" in text else parse_modal(text, godel)


def test_parse_error_reports_position(godel):
    with pytest.raises(ParseError) as err:
        parse_modal("[1](A) & [0](B)", godel)
    assert err.value.line == 1 and err.value.column == 8


def test_gamma_file_comments_and_line_numbers(godel):
    text = "# theory\nT |- [1](A)\n\n  # another\nT |- [half](B)\n"
    assert len(parse_gamma(text, godel)) == 2
    with pytest.raises(ParseError) as err:
        parse_gamma("T |- [1](A)\nT |- [9](B)\n", godel)
    assert err.value.line == 2


def test_well_formed_examples(godel):
    one, half, zero = ids(godel, "1", "half", "0")
    assert well_formed(Box(half, A), godel)[0]
    ok, diags = well_formed(BBox(half, Box(one, A)), godel)
    assert not ok and len(diags) == 1
    assert well_formed(BBox(zero, Box(half, A)), godel)[0]


def test_box_index_outside_x_is_rejected(belnap):
    ok, _ = well_formed(Box(belnap.bool_true, A), belnap)
    assert not ok


@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_round_trip_modal(godel, belnap, data):
    sig = data.draw(st.sampled_from([godel, belnap]))
    f = data.draw(modal_formulas(sig))
    assert parse_modal(format_modal(f, sig), sig) == f


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_round_trip_mv_and_sequent(godel, data):
    phi = data.draw(mv_formulas(godel))
    assert parse_mv(format_mv(phi, godel), godel) == phi
    s = data.draw(sequents(godel))
    text = format_sequent(s, godel)
    assert parse_sequent(text, godel) == s
    assert format_sequent(parse_sequent(text, godel), godel) == text


# -------------------------------------------- generator/acceptor agreement


def _in_grammar(f, sig) -> bool:
    """Independent membership oracle for the positive modal language."""
    if f in (TOP, BOT):
        return True
    if isinstance(f, Box):
        return f.index in sig.x_ids and isinstance(f.inner, Atom)
    if isinstance(f, BBox):
        return f.index in (sig.bool_false, sig.bool_true) and _in_grammar(f.inner, sig)
    if isinstance(f, (And, Or)):
        return _in_grammar(f.left, sig) and _in_grammar(f.right, sig)
    return False


def _loose_trees(sig, depth):
    """Every tree of height <= depth with modal indices drawn from all of Y."""
    ys = list(sig.y_ids)
    levels = [[TOP, BOT] + [Box(y, A) for y in ys]]
    everything = list(levels[0])
    for _ in range(depth - 1):
        fresh = [BBox(y, f) for y in ys for f in levels[-1]]
        newest = set(levels[-1])
        for ctor in (And, Or):
            fresh += [ctor(a, b) for a, b in itertools.product(everything, repeat=2) if a in newest or b in newest]
        levels.append(fresh)
        everything += fresh
    return everything


def test_acceptor_matches_grammar_exhaustively(belnap):
    trees = _loose_trees(belnap, 3)
    assert len(trees) > 10_000
    accepted = 0
    for f in trees:
        ok = well_formed(f, belnap)[0]
        assert ok == _in_grammar(f, belnap), format_modal(f, belnap)
        accepted += ok
    assert 0 < accepted < len(trees)


def _loose_strategy(sig, depth):
    ys = st.sampled_from(list(sig.y_ids))
    leaves = st.just(TOP) | st.just(BOT) | st.builds(Box, ys, st.just(A))
    if depth <= 1:
        return leaves
    c = _loose_strategy(sig, depth - 1)
    return leaves | st.builds(BBox, ys, c) | st.builds(And, c, c) | st.builds(Or, c, c)


@settings(max_examples=500, deadline=None)
@given(data=st.data())
def test_acceptor_matches_grammar_depth_four(belnap, data):
    f = data.draw(_loose_strategy(belnap, 4))
    assert modal_depth(f) <= 4
    assert well_formed(f, belnap)[0] == _in_grammar(f, belnap)


def test_generated_pool_is_accepted_and_parses(godel):
    for f in modal_pool(godel, (A, B), 3)[:5000]:
        assert well_formed(f, godel)[0]
        assert parse_modal(format_modal(f, godel), godel) == f
