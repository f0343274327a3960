import itertools

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mvseq.core import Connective, LogicSignature, TruthValue, all_valuations
from mvseq.errors import AlreadyLiteral, ReductionError
from mvseq.reduction import (
    Dnf,
    canonical,
    collapse_prefix,
    is_dnf_shape,
    preimages,
    reduce_step,
    reduction_trace,
)
from mvseq.semantics import eval_modal
from mvseq.syntax import format_modal, parse_modal
from mvseq.terms import BOT, TOP, And, App, Atom, BBox, Box, Const, ModalLiteral, Or, atoms_of, spine

from .strategies import ATOMS, dnf_size_bound, modal_formulas, mv_formulas

A, B = Atom("A"), Atom("B")


def step(text, sig):
    return format_modal(reduce_step(parse_modal(text, sig), sig), sig)


def canon(text, sig):
    return canonical(parse_modal(text, sig), sig)


def lit(sig, atom, *syms):
    return ModalLiteral(tuple(sig.value_id(s) for s in syms), atom)


def equivalent(sig, f, g):
    atoms = atoms_of(f) | atoms_of(g)
    return all(eval_modal(sig, v, f) == eval_modal(sig, v, g) for v in all_valuations(sig, atoms))


# ------------------------------------------------------------- one step


def test_step_zero_implication(godel):
    assert step("[0](imp(A,B))", godel) == "(([half](A) & [0](B)) | ([1](A) & [0](B)))"


def test_step_half_implication_is_a_bare_conjunct(godel):
    assert step("[half](imp(A,B))", godel) == "([1](A) & [half](B))"


def test_step_one_implication_excludes_the_three_pairs(godel):
    out = reduce_step(parse_modal("[1](imp(A,B))", godel), godel)
    pairs = [(c.left.index, c.right.index) for c in spine(out, Or)]
    excluded = {tuple(godel.value_id(s) for s in p) for p in (("half", "0"), ("1", "0"), ("1", "half"))}
    assert len(pairs) == 6
    assert set(pairs) == set(itertools.product(godel.x_ids, repeat=2)) - excluded
    assert pairs == sorted(pairs)


def test_step_on_literal_is_already_literal(godel):
    with pytest.raises(AlreadyLiteral):
        reduce_step(parse_modal("[1](A)", godel), godel)
    with pytest.raises(AlreadyLiteral):
        reduce_step(parse_modal("[0]([1](A))", godel), godel)


def test_step_needs_reduced_body(godel):
    with pytest.raises(ReductionError):
        reduce_step(parse_modal("[0]([half](imp(A,B)))", godel), godel)


def test_boolean_rule_for_and(godel):
    out = step("[0](([1](A) & [1](B)))", godel)
    assert out == (
        "(([0]([1](A)) & [0]([1](B))) | (([0]([1](A)) & [1]([1](B))) | ([1]([1](A)) & [0]([1](B)))))"
    )


def test_box_over_constant(godel):
    assert reduce_step(Box(1, Const(1)), godel) == TOP
    assert reduce_step(Box(0, Const(1)), godel) == BOT


def _constant_one_logic():
    values = (TruthValue(0, "0"), TruthValue(1, "1"))
    one = Connective.from_mapping("one", 1, {(0,): 1, (1,): 1})
    return LogicSignature("const1", values, 0, 1, (one,))


def test_empty_image_yields_bottom():
    sig = _constant_one_logic()
    assert preimages(sig, "one", 0) == []
    assert reduce_step(Box(0, App("one", (A,))), sig) == BOT
    assert canonical(Box(0, App("one", (A,))), sig).is_bot
    for v in all_valuations(sig, [A]):
        assert eval_modal(sig, v, Box(0, App("one", (A,)))) == 0


def test_empty_image_soundness_random(random4):
    for conn in random4.connectives:
        for x in random4.x_ids:
            if preimages(random4, conn.symbol, x):
                continue
            args = (A,) if conn.arity == 1 else (A, B)
            f = Box(x, App(conn.symbol, args))
            assert canonical(f, random4).is_bot
            assert all(eval_modal(random4, v, f) == 0 for v in all_valuations(random4, [A, B]))


# ------------------------------------------------------------- canonical


def test_boolean_prefix_collapse(godel):
    for x in ("0", "half", "1"):
        d = canon(f"[0]([1]([1]([0]([{x}](A)))))", godel)
        assert d.disjuncts == ((lit(godel, A, x),),)


def test_single_true_index_is_kept(godel):
    d = canon("[1]([half](A))", godel)
    assert d.disjuncts == ((lit(godel, A, "1", "half"),),)
    assert collapse_prefix((1, 1, 0, 2)) == (0, 2)
    assert collapse_prefix((0, 1, 0, 2)) == (0, 1, 0, 2)


def test_literal_is_its_own_normal_form(godel):
    assert canon("[half](A)", godel).disjuncts == ((lit(godel, A, "half"),),)


def test_diagonal_implication_dnf(godel):
    """Oracle: each pair (y, z) with y => z = 1 contributes the conjunct {[y]A, [z]A}."""
    table = godel.connective("imp").table
    expected = {frozenset({ModalLiteral((y,), A), ModalLiteral((z,), A)})
                for (y, z), out in table.items() if out == godel.value_id("1")}
    d = canon("[1](imp(A,A))", godel)
    assert {frozenset(c) for c in d.disjuncts} == expected
    frozen = [["0"], ["0", "half"], ["0", "1"], ["half"], ["half", "1"], ["1"]]
    got = sorted(sorted(godel.symbol(l.prefix[0]) for l in c) for c in d.disjuncts)
    assert got == sorted(sorted(c) for c in frozen)
    # contradictory conjuncts stay; the whole is still semantically true
    assert all(eval_modal(godel, v, d.embed()) == 1 for v in all_valuations(godel, [A]))


def test_contradictory_conjunction_is_not_simplified(godel):
    d = canon("([0](A) & [1](A))", godel)
    assert len(d.disjuncts) == 1 and len(d.disjuncts[0]) == 2


def test_top_absorbs(godel):
    assert canon("(T | [1](A))", godel).is_top
    assert canon("(F & [1](A))", godel).is_bot
    assert canon("[1](T)", godel).is_top
    assert canon("[0](T)", godel).is_bot


def test_ill_formed_input_is_rejected(godel):
    with pytest.raises(ReductionError):
        canonical(BBox(godel.value_id("half"), Box(0, A)), godel)


def test_dnf_embedding_format(godel):
    assert Dnf(()).format(godel) == "F"
    assert Dnf(((),)).format(godel) == "T"


def _sorted_ok(d):
    keys = [tuple(l.key for l in c) for c in d.disjuncts]
    return all(list(k) == sorted(set(k)) for k in keys) and keys == sorted(set(keys))


SETTINGS = settings(max_examples=150, deadline=None)
SIZE_CAP = 4000


def small_enough(f, sig):
    return dnf_size_bound(f, sig)[0] <= SIZE_CAP


@SETTINGS
@given(data=st.data())
def test_truth_preservation_and_shape(godel, belnap, random4, data):
    sig = data.draw(st.sampled_from([godel, belnap, random4]))
    f = data.draw(modal_formulas(sig, max_leaves=4, mv_leaves=3))
    assume(small_enough(f, sig))
    d = canonical(f, sig)
    g = d.embed()
    assert is_dnf_shape(g)
    assert _sorted_ok(d)
    atoms = atoms_of(f)
    for v in all_valuations(sig, atoms):
        assert eval_modal(sig, v, f) == eval_modal(sig, v, g)


@SETTINGS
@given(data=st.data())
def test_idempotence(godel, belnap, data):
    sig = data.draw(st.sampled_from([godel, belnap]))
    f = data.draw(modal_formulas(sig, max_leaves=4, mv_leaves=3))
    assume(small_enough(f, sig))
    d = canonical(f, sig)
    assert canonical(d.embed(), sig) == d


@SETTINGS
@given(data=st.data())
def test_trace_ends_at_the_canonical_form(godel, belnap, data):
    sig = data.draw(st.sampled_from([godel, belnap]))
    f = data.draw(modal_formulas(sig, max_leaves=3, mv_leaves=3))
    assume(small_enough(f, sig))
    steps, d = reduction_trace(f, sig)
    assert steps[0] == f
    assert d == canonical(f, sig)
    for a, b in zip(steps, steps[1:]):
        assert equivalent(sig, a, b)


@SETTINGS
@given(data=st.data())
def test_preservation(godel, random4, data):
    sig = data.draw(st.sampled_from([godel, random4]))
    phi = data.draw(mv_formulas(sig))
    x = data.draw(st.sampled_from(list(sig.x_ids)))
    from mvseq.core import eval_mv

    g = canonical(Box(x, phi), sig).embed()
    for v in all_valuations(sig, atoms_of(phi) or {A}):
        assert eval_modal(sig, v, g) == int(eval_mv(sig, v, phi) == x)
