"""Proof synthesis from a single valuation.

Given v and a sequent it satisfies, build a derivation from the literal
theory of v: ``T |- L`` and ``L |- T`` for every relevant literal L true under
v, ``L |- F`` and ``F |- L`` for every relevant literal false under v.

``affirm(P)`` proves ``T |- P`` for true P and ``refute(P)`` proves
``P |- F`` for false P, by structural recursion through the expansion axioms.
A modal index over a non-literal that is neither ``&`` nor ``|`` (for example
``[0]([half](imp(A,B)))`` or ``[1](T)``) has no axiom to push through, so such
formulae are reported as outside the synthesizable fragment.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import LogicSignature
from ..errors import SynthesisError
from ..reduction import bool_expansion, mv_expansion
from ..semantics import eval_modal, satisfies_sequent
from ..syntax import format_modal, format_sequent
from ..terms import (
    BOT,
    TOP,
    And,
    App,
    BBox,
    Bot,
    Box,
    Const,
    ModalLiteral,
    Or,
    Sequent,
    Top,
    as_literal,
    modal_subformulas,
)
from .axioms import AxiomId, generate_axiom
from .proof import Proof, axiom, cut, hyp, lower, macro, upper


def _relevant_literals(sig: LogicSignature, s: Sequent) -> list[ModalLiteral]:
    lits: set = set()
    seen: set = set()
    work = [s.lhs, s.rhs]
    while work:
        f = work.pop()
        for g in modal_subformulas(f):
            if g in seen:
                continue
            seen.add(g)
            lit = as_literal(g)
            if lit is not None:
                lits.add(lit)
            elif isinstance(g, Box) and isinstance(g.inner, App):
                work.append(mv_expansion(sig, g.index, g.inner))
            elif isinstance(g, BBox) and isinstance(g.inner, (And, Or)):
                work.append(bool_expansion(sig, g.index, g.inner))
    return sorted(lits, key=lambda lit: lit.key)


def literal_theory(sig: LogicSignature, v, s: Sequent) -> list[Sequent]:
    """The literal theory of v restricted to literals reachable from ``s``."""
    out = []
    for lit in _relevant_literals(sig, s):
        f = lit.to_formula()
        if eval_modal(sig, v, f):
            out += [Sequent(TOP, f), Sequent(f, TOP)]
        else:
            out += [Sequent(f, BOT), Sequent(BOT, f)]
    return out


@dataclass
class _Synth:
    sig: LogicSignature
    v: object
    index: dict

    def truth(self, f) -> int:
        return eval_modal(self.sig, self.v, f)

    def stuck(self, f):
        raise SynthesisError(f"no axiom pushes the index of {format_modal(f, self.sig)} inward")

    def affirm(self, f) -> Proof:
        """Proof of ``T |- f``; requires f true under v."""
        if isinstance(f, Top):
            return axiom(Sequent(TOP, TOP), "reflexive")
        lit = as_literal(f)
        if lit is not None:
            s = Sequent(TOP, f)
            return hyp(s, self.index[s])
        if isinstance(f, And):
            return lower(self.affirm(f.left), self.affirm(f.right))
        if isinstance(f, Or):
            if self.truth(f.left):
                step = axiom(Sequent(f.left, f), "join_inj_l")
                return macro("weaken_right", cut(self.affirm(f.left), step))
            step = axiom(Sequent(f.right, f), "join_inj_r")
            return macro("weaken_right", cut(self.affirm(f.right), step))
        intro = self._expansion_axiom(f, "intro")
        if intro.conclusion.lhs == TOP:
            return intro
        return cut(self.affirm(intro.conclusion.lhs), intro)

    def refute(self, f) -> Proof:
        """Proof of ``f |- F``; requires f false under v."""
        if isinstance(f, Bot):
            return axiom(Sequent(BOT, BOT), "reflexive")
        lit = as_literal(f)
        if lit is not None:
            s = Sequent(f, BOT)
            return hyp(s, self.index[s])
        if isinstance(f, Or):
            return upper(self.refute(f.left), self.refute(f.right))
        if isinstance(f, And):
            if not self.truth(f.left):
                step = axiom(Sequent(f, f.left), "meet_proj_l")
                return macro("strengthen_left", cut(step, self.refute(f.left)))
            step = axiom(Sequent(f, f.right), "meet_proj_r")
            return macro("strengthen_left", cut(step, self.refute(f.right)))
        elim = self._expansion_axiom(f, "elim")
        if elim.conclusion.rhs == BOT:
            return elim
        return cut(elim, self.refute(elim.conclusion.rhs))

    def _expansion_axiom(self, f, kind: str) -> Proof:
        sig = self.sig
        if isinstance(f, Box):
            inner = f.inner
            if isinstance(inner, Const):
                ax = AxiomId(f"{kind}_const", sig.symbol(inner.value), f.index)
                return axiom(generate_axiom(sig, ax), ax.tag)
            if isinstance(inner, App):
                arity = len(inner.args)
                tag = {0: "const", 1: "unary", 2: "binary"}[arity]
                ax = AxiomId(f"{kind}_{tag}", inner.op, f.index)
                holes = {"phi": inner.args[0], "psi": inner.args[-1]} if arity else {}
                return axiom(generate_axiom(sig, ax, holes), ax.tag)
        if isinstance(f, BBox) and isinstance(f.inner, (And, Or)):
            op = "and" if isinstance(f.inner, And) else "or"
            ax = AxiomId(f"{kind}_bool", op, f.index)
            return axiom(generate_axiom(sig, ax, {"Phi": f.inner.left, "Psi": f.inner.right}), ax.tag)
        self.stuck(f)


def synthesize_completeness_proof(sig: LogicSignature, v, s: Sequent) -> tuple[Proof, list[Sequent]]:
    """Return ``(proof, theory)`` with the proof checkable against ``theory``."""
    if not satisfies_sequent(sig, v, s):
        raise SynthesisError(f"valuation does not satisfy {format_sequent(s, sig)}")
    theory = literal_theory(sig, v, s)
    index = {}
    for i, t in enumerate(theory):
        index.setdefault(t, i)
    syn = _Synth(sig, v, index)
    lhs_true = eval_modal(sig, v, s.lhs)
    if isinstance(s.lhs, Top):
        return syn.affirm(s.rhs), theory
    if isinstance(s.rhs, Bot):
        return syn.refute(s.lhs), theory
    if not lhs_true:
        return cut(syn.refute(s.lhs), axiom(Sequent(BOT, s.rhs), "bottom")), theory
    return cut(axiom(Sequent(s.lhs, TOP), "top"), syn.affirm(s.rhs)), theory
