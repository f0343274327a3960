import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvseq.core import (
    Connective,
    LogicSignature,
    Valuation,
    all_valuations,
    eval_connective,
    eval_mv,
    load_logic,
    logic_from_dict,
    logic_to_dict,
    permute_signature,
    validate_signature,
    value_map,
)
from mvseq.errors import ArityMismatch, SignatureError, UnboundAtom, UnknownConnective
from mvseq.pools import ATOMS_ABC, mv_pool
from mvseq.syntax import parse_mv
from mvseq.terms import App, Atom, Const, map_values

from .strategies import mv_formulas, valuations

GODEL_DICT = {
    "name": "godel3",
    "values": ["0", "half", "1"],
    "bool_false": "0",
    "bool_true": "1",
    "connectives": [
        {"symbol": "imp", "arity": 2, "table": [["1", "1", "1"], ["0", "1", "1"], ["0", "half", "1"]]}
    ],
}

A, B = Atom("A"), Atom("B")


def test_bundled_godel_matches_the_literal_table(godel):
    assert logic_to_dict(godel) == GODEL_DICT
    assert validate_signature(godel) == []


def test_godel_anchors_are_members_of_x(godel):
    assert godel.n_x == 3 and len(godel.y_ids) == 3
    assert godel.symbol(godel.bool_false) == "0" and godel.symbol(godel.bool_true) == "1"


def test_belnap_appends_fresh_anchors(belnap):
    assert belnap.n_x == 4 and len(belnap.y_ids) == 6
    assert not belnap.in_x(belnap.bool_false) and not belnap.in_x(belnap.bool_true)
    assert validate_signature(belnap) == []


@pytest.mark.parametrize(
    "args,expected",
    [(("half", "0"), "0"), (("1", "half"), "half"), (("0", "half"), "1")],
)
def test_eval_connective_table_lookups(godel, args, expected):
    ids = tuple(godel.value_id(s) for s in args)
    assert godel.symbol(eval_connective(godel, "imp", ids)) == expected


def test_eval_connective_errors(godel):
    with pytest.raises(UnknownConnective):
        eval_connective(godel, "nope", (0, 0))
    with pytest.raises(ArityMismatch):
        eval_connective(godel, "imp", (0,))


def test_eval_mv_examples(godel):
    half, zero, one = (godel.value_id(s) for s in ("half", "0", "1"))
    assert eval_mv(godel, {A: half, B: zero}, parse_mv("imp(A,B)", godel)) == zero
    assert eval_mv(godel, {}, parse_mv("#half", godel)) == half
    assert eval_mv(godel, {A: one}, parse_mv("imp(A, imp(A,A))", godel)) == one


def test_eval_mv_unbound_atom(godel):
    with pytest.raises(UnboundAtom):
        eval_mv(godel, {A: 0}, parse_mv("imp(A,B)", godel))


def _with_imp_cells(godel, cells):
    return LogicSignature(godel.name, godel.values, godel.bool_false, godel.bool_true,
                          (Connective.from_mapping("imp", 2, cells),), godel.n_x)


def test_missing_cell_gives_one_diagnostic(godel):
    cells = dict(godel.connective("imp").table)
    del cells[(1, 1)]
    diags = validate_signature(_with_imp_cells(godel, cells))
    assert diags == ["connective 'imp': missing cell (half,half)"]


def test_illegal_output_gives_one_diagnostic(godel):
    cells = dict(godel.connective("imp").table)
    cells[(0, 0)] = 7
    diags = validate_signature(_with_imp_cells(godel, cells))
    assert len(diags) == 1 and "illegal output" in diags[0]


def test_short_json_row_is_reported():
    data = json.loads(json.dumps(GODEL_DICT))
    data["connectives"][0]["table"][1] = ["0", "1"]
    with pytest.raises(SignatureError) as err:
        logic_from_dict(data)
    assert err.value.diagnostics == ["connective 'imp': missing cell (half,1)"]


def test_unknown_output_symbol_in_json():
    data = json.loads(json.dumps(GODEL_DICT))
    data["connectives"][0]["table"][0][0] = "2"
    with pytest.raises(SignatureError) as err:
        logic_from_dict(data)
    assert len(err.value.diagnostics) == 1 and "illegal output" in err.value.diagnostics[0]


def test_load_logic_rejects_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{ not json")
    with pytest.raises(SignatureError):
        load_logic(p)


def test_all_valuations_order(godel):
    vs = list(all_valuations(godel, [B, A]))
    assert len(vs) == 9
    assert [tuple(v[a] for a in (A, B)) for v in vs] == list(itertools.product(range(3), repeat=2))


def test_homomorphism_exhaustive(godel, classical):
    """Depth <= 3 over three atoms, every valuation: App nodes evaluate by table lookup."""
    for sig, depth in ((godel, 2), (classical, 2)):
        for phi in mv_pool(sig, ATOMS_ABC, depth):
            if not isinstance(phi, App):
                continue
            for v in all_valuations(sig, ATOMS_ABC):
                args = tuple(eval_mv(sig, v, a) for a in phi.args)
                assert eval_mv(sig, v, phi) == sig.connective(phi.op).table[args]


def test_homomorphism_depth_three_godel_two_atoms(godel):
    for phi in mv_pool(godel, (A, B), 3):
        if isinstance(phi, App):
            for v in all_valuations(godel, (A, B)):
                args = tuple(eval_mv(godel, v, a) for a in phi.args)
                assert eval_mv(godel, v, phi) == godel.connective("imp").table[args]


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_fresh_atoms_are_inert(belnap, data):
    phi = data.draw(mv_formulas(belnap))
    v = data.draw(valuations(belnap))
    extra = data.draw(st.sampled_from(list(belnap.x_ids)))
    assert eval_mv(belnap, v.extend({Atom("Z", ("c",)): extra}), phi) == eval_mv(belnap, v, phi)


@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_evaluation_commutes_with_relabelling(godel, data):
    perm = data.draw(st.permutations(range(3)))
    phi = data.draw(mv_formulas(godel))
    v = data.draw(valuations(godel))
    moved = permute_signature(godel, perm)
    rename = value_map(perm, godel)
    v2 = Valuation({a: rename(x) for a, x in v.items()})
    assert eval_mv(moved, v2, map_values(phi, rename)) == rename(eval_mv(godel, v, phi))


def test_permutation_keeps_symbols_and_anchors(belnap):
    moved = permute_signature(belnap, [3, 1, 0, 2])
    assert validate_signature(moved) == []
    assert {v.symbol for v in moved.values} == {v.symbol for v in belnap.values}
    assert moved.symbol(moved.bool_true) == belnap.symbol(belnap.bool_true)


def test_valuation_is_hashable_and_ordered():
    v = Valuation({B: 1, A: 0})
    assert list(v) == [A, B]
    assert hash(v) == hash(Valuation({A: 0, B: 1}))


def test_constant_inside_formula(godel):
    assert eval_mv(godel, {A: 2}, App("imp", (A, Const(0)))) == 0
