"""Derivation trees and the proof checker.

The checker trusts only axiom instances, hypotheses and the four primitive
rules.  A macro node is a named wrapper whose single premise is its full
primitive expansion; the label itself is never trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from ..core import LogicSignature
from ..syntax import format_sequent, well_formed
from ..terms import And, Or, Sequent, substitute
from .axioms import ALL_TAGS, match_axioms

RULE_TAGS = ("cut", "lower", "upper", "subst")


@dataclass(frozen=True)
class Axiom:
    tag: str


@dataclass(frozen=True)
class Hypothesis:
    index: int


@dataclass(frozen=True)
class Rule:
    tag: str
    subst: tuple = ()  # sorted (key, replacement) pairs; key is an Atom or a placeholder name

    @property
    def sigma(self) -> dict:
        return dict(self.subst)


@dataclass(frozen=True)
class Macro:
    name: str


Justification = Union[Axiom, Hypothesis, Rule, Macro]


@dataclass(frozen=True)
class Proof:
    conclusion: Sequent
    by: Justification
    premises: tuple["Proof", ...] = field(default=())

    @property
    def height(self) -> int:
        if isinstance(self.by, Macro):
            return self.premises[0].height if self.premises else 0
        if not self.premises:
            return 0
        return 1 + max(p.height for p in self.premises)

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def uses_hypotheses(self) -> bool:
        return isinstance(self.by, Hypothesis) or any(p.uses_hypotheses() for p in self.premises)


# constructors used by the search and the synthesizer


def axiom(s: Sequent, tag: str) -> Proof:
    return Proof(s, Axiom(tag))


def hyp(s: Sequent, index: int) -> Proof:
    return Proof(s, Hypothesis(index))


def cut(p1: Proof, p2: Proof) -> Proof:
    return Proof(Sequent(p1.conclusion.lhs, p2.conclusion.rhs), Rule("cut"), (p1, p2))


def lower(p1: Proof, p2: Proof) -> Proof:
    return Proof(Sequent(p1.conclusion.lhs, And(p1.conclusion.rhs, p2.conclusion.rhs)), Rule("lower"), (p1, p2))


def upper(p1: Proof, p2: Proof) -> Proof:
    return Proof(Sequent(Or(p1.conclusion.lhs, p2.conclusion.lhs), p1.conclusion.rhs), Rule("upper"), (p1, p2))


def macro(name: str, expansion: Proof) -> Proof:
    return Proof(expansion.conclusion, Macro(name), (expansion,))


# ------------------------------------------------------------------ checking


@dataclass(frozen=True)
class Verdict:
    ok: bool
    path: Optional[tuple[int, ...]] = None  # premise indices from the root to the failing node
    reason: str = ""

    def describe(self) -> str:
        if self.ok:
            return "OK"
        where = "root" if not self.path else "root/" + "/".join(map(str, self.path))
        return f"REJECTED at {where}: {self.reason}"


def _check_node(p: Proof, gamma: Sequence[Sequent], sig: LogicSignature) -> Optional[str]:
    s = p.conclusion
    ok, diags = well_formed(s, sig)
    if not ok:
        return "ill-formed sequent: " + "; ".join(diags)
    by = p.by
    prem = [q.conclusion for q in p.premises]
    if isinstance(by, Axiom):
        if by.tag not in ALL_TAGS:
            return f"unknown axiom tag {by.tag!r}"
        if prem:
            return "axiom leaf has premises"
        if not any(a.tag == by.tag for a in match_axioms(s, sig)):
            return f"not an instance of axiom {by.tag}"
        return None
    if isinstance(by, Hypothesis):
        if prem:
            return "hypothesis leaf has premises"
        if not 0 <= by.index < len(gamma):
            return f"hypothesis index {by.index} out of range (theory has {len(gamma)})"
        if gamma[by.index] != s:
            return f"conclusion differs from hypothesis {by.index}"
        return None
    if isinstance(by, Macro):
        if len(prem) != 1:
            return f"macro {by.name!r} must carry exactly one expansion"
        if prem[0] != s:
            return f"macro {by.name!r} expansion proves a different sequent"
        return None
    if isinstance(by, Rule):
        if by.tag == "subst":
            if len(prem) != 1:
                return "subst takes one premise"
            if by.subst == ():
                return "subst without a substitution"
            if p.premises[0].uses_hypotheses():
                return "subst applied to a derivation that depends on hypotheses"
            if substitute(prem[0], by.sigma) != s:
                return "conclusion is not the substitution instance of the premise"
            return None
        if len(prem) != 2:
            return f"{by.tag} takes two premises"
        a, b = prem
        if by.tag == "cut":
            if a.rhs != b.lhs:
                return "cut formulas differ"
            if s != Sequent(a.lhs, b.rhs):
                return "cut conclusion mismatch"
            return None
        if by.tag == "lower":
            if a.lhs != b.lhs:
                return "lower bound premises have different antecedents"
            if s != Sequent(a.lhs, And(a.rhs, b.rhs)):
                return "lower bound conclusion mismatch"
            return None
        if by.tag == "upper":
            if a.rhs != b.rhs:
                return "upper bound premises have different succedents"
            if s != Sequent(Or(a.lhs, b.lhs), a.rhs):
                return "upper bound conclusion mismatch"
            return None
        return f"unknown rule {by.tag!r}"
    return f"unknown justification {by!r}"


def check_proof(p: Proof, gamma: Sequence[Sequent], sig: LogicSignature) -> Verdict:
    """Validate bottom-up; the first failure in left-to-right post-order is reported."""

    def walk(node: Proof, path: tuple[int, ...]) -> Optional[Verdict]:
        for i, child in enumerate(node.premises):
            bad = walk(child, path + (i,))
            if bad is not None:
                return bad
        reason = _check_node(node, gamma, sig)
        if reason is not None:
            return Verdict(False, path, reason)
        return None

    bad = walk(p, ())
    return bad if bad is not None else Verdict(True)


def rule_instances(p: Proof):
    """Every rule node of ``p`` (macros looked through), pre-order."""
    if isinstance(p.by, Rule):
        yield p
    for q in p.premises:
        yield from rule_instances(q)


def render(p: Proof, sig: LogicSignature, indent: int = 0) -> str:
    """Human-readable tree, one node per line."""
    by = p.by
    if isinstance(by, Axiom):
        label = f"axiom {by.tag}"
    elif isinstance(by, Hypothesis):
        label = f"hyp {by.index}"
    elif isinstance(by, Macro):
        label = f"macro {by.name}"
    else:
        label = f"rule {by.tag}"
    lines = [f"{'  ' * indent}{format_sequent(p.conclusion, sig)}    [{label}]"]
    for q in p.premises:
        lines.append(render(q, sig, indent + 1))
    return "\n".join(lines)
