"""Bounded forward proof search.

The search works over a finite candidate set of modal formulae: the
subformulae of the theory and goal, closed under one-step connective
expansions, plus ``T`` and ``F``.  Level 0 holds every axiom instance and
hypothesis between candidates; level h+1 adds everything derivable by Cut,
LowerBound or UpperBound from facts of level at most h.  The first proof
found for a sequent has minimal height, and iteration order is fixed, so the
result is deterministic.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ..core import LogicSignature
from ..reduction import bool_expansion, mv_expansion
from ..syntax import format_modal
from ..terms import BOT, TOP, And, App, BBox, Box, Const, Or, Sequent, modal_subformulas
from .axioms import match_axioms
from .proof import Proof, axiom, cut, hyp, lower, upper


def candidate_formulas(sig: LogicSignature, gamma: Sequence[Sequent], goal: Sequent) -> list:
    seen: set = set()
    work = []
    for s in list(gamma) + [goal]:
        work += [s.lhs, s.rhs]
    work += [TOP, BOT]
    while work:
        f = work.pop()
        for g in modal_subformulas(f):
            if g in seen:
                continue
            seen.add(g)
            if isinstance(g, Box) and isinstance(g.inner, App):
                work.append(mv_expansion(sig, g.index, g.inner))
            elif isinstance(g, Box) and isinstance(g.inner, Const):
                work.append(TOP if g.inner.value == g.index else BOT)
            elif isinstance(g, BBox) and isinstance(g.inner, (And, Or)):
                work.append(bool_expansion(sig, g.index, g.inner))
    return sorted(seen, key=lambda f: (len(format_modal(f, sig)), format_modal(f, sig)))


def prove_bounded(
    sig: LogicSignature, gamma: Sequence[Sequent], goal: Sequent, depth: int, max_facts: int = 200_000
) -> Optional[Proof]:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    cands = candidate_formulas(sig, gamma, goal)
    rank = {f: i for i, f in enumerate(cands)}
    hyp_index = {}
    for i, s in enumerate(gamma):
        hyp_index.setdefault(s, i)

    facts: dict[Sequent, Proof] = {}
    by_lhs: dict = {}
    by_rhs: dict = {}

    def add(p: Proof) -> None:
        s = p.conclusion
        if s in facts:
            return
        facts[s] = p
        by_lhs.setdefault(s.lhs, []).append(s)
        by_rhs.setdefault(s.rhs, []).append(s)

    for s, i in sorted(hyp_index.items(), key=lambda kv: kv[1]):
        add(hyp(s, i))
    for lhs in cands:
        for rhs in cands:
            s = Sequent(lhs, rhs)
            if s in facts:
                continue
            found = match_axioms(s, sig)
            if found:
                add(axiom(s, found[0].tag))
    if goal in facts:
        return facts[goal]

    for _ in range(depth):
        new: list[Proof] = []
        snapshot = sorted(facts, key=lambda s: (rank.get(s.lhs, -1), rank.get(s.rhs, -1)))
        pending: set = set()

        def offer(p: Proof) -> None:
            c = p.conclusion
            if c not in facts and c not in pending:
                pending.add(c)
                new.append(p)

        for s in snapshot:
            p = facts[s]
            for t in list(by_lhs.get(s.rhs, ())):
                if t in facts:
                    offer(cut(p, facts[t]))
            for t in list(by_lhs.get(s.lhs, ())):
                if And(s.rhs, t.rhs) in rank:
                    offer(lower(p, facts[t]))
            for t in list(by_rhs.get(s.rhs, ())):
                if Or(s.lhs, t.lhs) in rank:
                    offer(upper(p, facts[t]))
        if not new:
            return None
        for p in new:
            add(p)
            if len(facts) > max_facts:
                return facts.get(goal)
        if goal in facts:
            return facts[goal]
    return None
