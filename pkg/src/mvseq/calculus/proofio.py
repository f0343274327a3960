"""JSON encoding of derivation trees.

Node layout::

    {"sequent": "<lhs> |- <rhs>",
     "by": "axiom:<tag>" | "hyp:<i>" | "rule:<cut|lower|upper|subst>",
     "subst": {"A": "<mv formula>", "$Phi": "<modal formula>"},   # subst only
     "premises": [ ... ],
     "macro": "<name>"}                                           # optional

A node carrying ``"macro"`` is read as a macro wrapper around the node itself.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..core import LogicSignature
from ..errors import ParseError, ProofFormatError
from ..syntax import format_any, parse_modal, parse_mv, parse_sequent
from ..terms import Atom
from .axioms import ALL_TAGS
from .proof import RULE_TAGS, Axiom, Hypothesis, Macro, Proof, Rule


def _parse_subst(raw, sig: LogicSignature, where: str) -> tuple:
    if not isinstance(raw, dict) or not raw:
        raise ProofFormatError(f"{where}: 'subst' must be a nonempty object")
    pairs = []
    for key, text in raw.items():
        if not isinstance(text, str):
            raise ProofFormatError(f"{where}: substitution for {key!r} must be a string")
        try:
            if key.startswith("$"):
                pairs.append((key[1:], parse_modal(text, sig)))
            else:
                atom = parse_mv(key, sig)
                if not isinstance(atom, Atom):
                    raise ProofFormatError(f"{where}: substitution key {key!r} is not an atom")
                pairs.append((atom, parse_mv(text, sig)))
        except ParseError as exc:
            raise ProofFormatError(f"{where}: substitution {key!r}: {exc}") from None
    return tuple(pairs)


def proof_from_json(data, sig: LogicSignature, where: str = "root") -> Proof:
    if not isinstance(data, dict):
        raise ProofFormatError(f"{where}: node must be an object")
    for key in ("sequent", "by"):
        if key not in data:
            raise ProofFormatError(f"{where}: missing {key!r}")
    unknown = set(data) - {"sequent", "by", "subst", "premises", "macro"}
    if unknown:
        raise ProofFormatError(f"{where}: unknown field(s) {sorted(unknown)}")
    try:
        seq = parse_sequent(data["sequent"], sig)
    except (ParseError, TypeError) as exc:
        raise ProofFormatError(f"{where}: {exc}") from None
    raw_prem = data.get("premises", [])
    if not isinstance(raw_prem, list):
        raise ProofFormatError(f"{where}: 'premises' must be a list")
    premises = tuple(proof_from_json(c, sig, f"{where}/{i}") for i, c in enumerate(raw_prem))
    by_text = data["by"]
    kind, _, arg = str(by_text).partition(":")
    if kind == "axiom" and arg in ALL_TAGS:
        by = Axiom(arg)
    elif kind == "hyp" and arg.isdigit():
        by = Hypothesis(int(arg))
    elif kind == "rule" and arg in RULE_TAGS:
        subst = _parse_subst(data["subst"], sig, where) if arg == "subst" else ()
        by = Rule(arg, subst)
    else:
        raise ProofFormatError(f"{where}: bad justification {by_text!r}")
    if "subst" in data and not (isinstance(by, Rule) and by.tag == "subst"):
        raise ProofFormatError(f"{where}: 'subst' only allowed on rule:subst")
    node = Proof(seq, by, premises)
    if "macro" in data:
        if not isinstance(data["macro"], str):
            raise ProofFormatError(f"{where}: 'macro' must be a string")
        return Proof(seq, Macro(data["macro"]), (node,))
    return node


def proof_to_json(p: Proof, sig: LogicSignature) -> dict:
    if isinstance(p.by, Macro):
        inner = proof_to_json(p.premises[0], sig)
        inner["macro"] = p.by.name
        return inner
    by = p.by
    if isinstance(by, Axiom):
        tag = f"axiom:{by.tag}"
    elif isinstance(by, Hypothesis):
        tag = f"hyp:{by.index}"
    else:
        tag = f"rule:{by.tag}"
    out = {"sequent": format_any(p.conclusion, sig), "by": tag}
    if isinstance(by, Rule) and by.tag == "subst":
        out["subst"] = {
            (f"${k}" if isinstance(k, str) else str(k)): format_any(v, sig) for k, v in by.subst
        }
    out["premises"] = [proof_to_json(q, sig) for q in p.premises]
    return out


def load_proof(path: str | Path, sig: LogicSignature) -> Proof:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ProofFormatError(f"{path}: not valid JSON: {exc}") from None
    return proof_from_json(data, sig)


def dump_proof(p: Proof, sig: LogicSignature) -> str:
    return json.dumps(proof_to_json(p, sig), indent=2) + "\n"

