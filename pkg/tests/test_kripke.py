import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvseq.core import Valuation, all_valuations, eval_mv
from mvseq.errors import ModelError
from mvseq.kripke import (
    build_model,
    check_two_valued,
    correspondence_check,
    discrepancies,
    extension,
    extract_valuation,
    has_false_indexed_bbox,
    model_from_interp,
    sat,
)
from mvseq.pools import modal_pool, mv_pool
from mvseq.semantics import eval_modal
from mvseq.syntax import parse_modal, parse_mv
from mvseq.terms import BOT, TOP, Atom, Box

from .strategies import modal_formulas, mv_formulas, valuations

A, B = Atom("A"), Atom("B")


def val(sig, **kw):
    return Valuation({Atom(k): sig.value_id(v) for k, v in kw.items()})


def test_build_model_base_clause(godel):
    m = build_model(godel, val(godel, A="half"))
    half = godel.value_id("half")
    assert [w for w in m.worlds if m.holds(w, A)] == [half]
    assert sat(m, half, A) == 1 and sat(m, godel.value_id("1"), A) == 0


def test_round_trip_all_valuations(godel, belnap):
    for sig in (godel, belnap):
        for v in all_valuations(sig, [A, B]):
            assert extract_valuation(build_model(sig, v)) == v


def test_non_unique_world_is_rejected(godel):
    m = model_from_interp(godel, [A], [(0, A), (2, A)])
    with pytest.raises(ModelError, match="non-unique world"):
        extract_valuation(m)


def test_atom_at_fresh_anchor_is_rejected(belnap):
    m = model_from_interp(belnap, [A], [(belnap.bool_true, A)])
    with pytest.raises(ModelError):
        extract_valuation(m)


def test_unknown_world(godel):
    with pytest.raises(ModelError):
        sat(build_model(godel, val(godel, A="1")), 17, A)


def test_boxed_literal_holds_everywhere_or_nowhere(godel):
    m = build_model(godel, val(godel, A="half"))
    for w in m.worlds:
        assert sat(m, w, parse_modal("[half](A)", godel)) == 1
        assert sat(m, w, parse_modal("[1](A)", godel)) == 0


def test_extension_examples(godel):
    m = build_model(godel, val(godel, A="half", B="0"))
    W = frozenset(m.worlds)
    assert extension(m, TOP) == W and extension(m, BOT) == frozenset()
    assert extension(m, parse_modal("[half](A)", godel)) == W
    assert extension(m, parse_modal("[0](imp(A,B))", godel)) == W


def test_inert_worlds_satisfy_no_many_valued_formula(belnap):
    m = build_model(belnap, val(belnap, A="t"))
    for anchor in (belnap.bool_false, belnap.bool_true):
        assert sat(m, anchor, A) == 0
        assert anchor not in extension(m, parse_mv("neg(A)", belnap))


def test_two_valued_rejects_many_valued_input(godel):
    with pytest.raises(ModelError):
        check_two_valued(build_model(godel, val(godel, A="1")), A)


def test_correspondence_examples(godel):
    v = val(godel, A="1", B="half")
    assert correspondence_check(godel, v, parse_mv("imp(A,B)", godel), godel.value_id("half"))
    for x in godel.x_ids:
        assert correspondence_check(godel, v, A, x)


def test_false_indexed_nesting_disagrees(godel):
    """The modal reading negates under [0]; the frame reading does not."""
    v = val(godel, A="1")
    f = parse_modal("[0]([half](A))", godel)
    assert has_false_indexed_bbox(godel, f)
    assert eval_modal(godel, v, f) == 1
    assert extension(build_model(godel, v), f) == frozenset()
    found = discrepancies(godel, [f], [v])
    assert len(found) == 1 and found[0].modal_value == 1


def test_true_indexed_nesting_agrees(godel):
    f = parse_modal("[1]([half](A))", godel)
    assert not has_false_indexed_bbox(godel, f)
    assert discrepancies(godel, [f], all_valuations(godel, [A])) == []


def test_exhaustive_two_valuedness_small_pool(godel):
    pool = modal_pool(godel, (A, B), 2)
    for v in all_valuations(godel, [A, B]):
        m = build_model(godel, v)
        cache = {}
        for f in pool:
            ext = extension(m, f, cache)
            assert ext in (frozenset(), frozenset(m.worlds))


def test_exhaustive_correspondence_depth_two(godel):
    for phi in mv_pool(godel, (A, B), 2):
        for v in all_valuations(godel, [A, B]):
            for x in godel.x_ids:
                assert correspondence_check(godel, v, phi, x)


SETTINGS = settings(max_examples=200, deadline=None)


@SETTINGS
@given(data=st.data())
def test_sat_agrees_with_extension(godel, belnap, data):
    sig = data.draw(st.sampled_from([godel, belnap]))
    f = data.draw(modal_formulas(sig) | mv_formulas(sig))
    m = build_model(sig, data.draw(valuations(sig)))
    assert extension(m, f) == frozenset(w for w in m.worlds if sat(m, w, f))


@SETTINGS
@given(data=st.data())
def test_frame_law(belnap, data):
    f = data.draw(modal_formulas(belnap))
    m = build_model(belnap, data.draw(valuations(belnap)))
    x = data.draw(st.sampled_from([belnap.bool_false, belnap.bool_true]))
    from mvseq.terms import BBox

    boxed = BBox(x, f)
    assert len({sat(m, w, boxed) for w in m.worlds}) == 1


@SETTINGS
@given(data=st.data())
def test_agreement_without_false_indices(godel, belnap, data):
    sig = data.draw(st.sampled_from([godel, belnap]))
    f = data.draw(modal_formulas(sig))
    v = data.draw(valuations(sig))
    m = build_model(sig, v)
    assert check_two_valued(m, f)
    if not has_false_indexed_bbox(sig, f):
        assert (eval_modal(sig, v, f) == 1) == (extension(m, f) == frozenset(m.worlds))


@SETTINGS
@given(data=st.data())
def test_mv_extension_is_the_value(godel, data):
    phi = data.draw(mv_formulas(godel))
    v = data.draw(valuations(godel))
    assert extension(build_model(godel, v), phi) == {eval_mv(godel, v, phi)}
