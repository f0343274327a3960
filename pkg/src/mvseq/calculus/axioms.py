"""Axiom schemas of the sequent system, generated from truth tables, and their recognizer.

Recognition works modulo associativity and commutativity of ``&`` and ``|``:
both sides are flattened into argument multisets and sorted before comparison.
Duplicates are kept, so ``(P | P) |- P`` is *not* an axiom instance.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from ..core import LogicSignature
from ..errors import MvseqError
from ..reduction import bool_expansion, mv_expansion
from ..syntax import format_sequent
from ..terms import (
    BOT,
    TOP,
    And,
    App,
    Atom,
    BBox,
    Bot,
    Box,
    Const,
    MVar,
    Or,
    Sequent,
    Top,
)

STRUCTURAL_TAGS = (
    "reflexive",
    "top",
    "bottom",
    "meet_proj_l",
    "meet_proj_r",
    "join_inj_l",
    "join_inj_r",
    "distrib",
)
CONNECTIVE_TAGS = (
    "intro_bool",
    "elim_bool",
    "intro_unary",
    "elim_unary",
    "intro_binary",
    "elim_binary",
    "intro_const",
    "elim_const",
)
ALL_TAGS = STRUCTURAL_TAGS + CONNECTIVE_TAGS
BOOL_OPS = {"and": And, "or": Or}


@dataclass(frozen=True)
class AxiomId:
    """A schema name; connective schemas also carry the connective and target value.

    For ``intro_bool``/``elim_bool`` the connective is ``"and"`` or ``"or"`` and
    the value is a boolean anchor.  For ``intro_const``/``elim_const`` the
    connective is a nullary connective or a value symbol.
    """

    tag: str
    connective: Optional[str] = None
    value: Optional[int] = None

    def describe(self, sig: LogicSignature) -> str:
        parts = [self.tag]
        if self.connective is not None:
            parts.append(self.connective)
        if self.value is not None:
            parts.append(sig.symbol(self.value))
        return " ".join(parts)


DEFAULT_PLACEHOLDERS = {
    "phi": Atom("phi"),
    "psi": Atom("psi"),
    "Phi": MVar("Phi"),
    "Psi": MVar("Psi"),
    "Ups": MVar("Ups"),
}


def _const_node(sig: LogicSignature, symbol: str):
    if sig.has_connective(symbol) and sig.connective(symbol).arity == 0:
        return App(symbol, ())
    if sig.has_value(symbol) and sig.in_x(sig.value_id(symbol)):
        return Const(sig.value_id(symbol))
    raise MvseqError(f"{symbol!r} is neither a nullary connective nor a value of X")


def generate_axiom(sig: LogicSignature, ax: AxiomId, placeholders: Optional[dict] = None) -> Sequent:
    """Instantiate one schema.  Missing placeholders default to ``phi``, ``psi``, ``$Phi``..."""
    p = dict(DEFAULT_PLACEHOLDERS)
    p.update(placeholders or {})
    P, Q, U = p["Phi"], p["Psi"], p["Ups"]
    tag = ax.tag
    if tag == "reflexive":
        return Sequent(P, P)
    if tag == "top":
        return Sequent(P, TOP)
    if tag == "bottom":
        return Sequent(BOT, P)
    if tag == "meet_proj_l":
        return Sequent(And(P, Q), P)
    if tag == "meet_proj_r":
        return Sequent(And(P, Q), Q)
    if tag == "join_inj_l":
        return Sequent(P, Or(P, Q))
    if tag == "join_inj_r":
        return Sequent(P, Or(Q, P))
    if tag == "distrib":
        return Sequent(And(P, Or(Q, U)), Or(And(P, Q), And(P, U)))

    x = ax.value
    if tag in ("intro_bool", "elim_bool"):
        if ax.connective not in BOOL_OPS or x is None or not sig.is_anchor(x):
            raise MvseqError(f"{tag} needs 'and'/'or' and a boolean anchor")
        target = BBox(x, BOOL_OPS[ax.connective](P, Q))
        expansion = bool_expansion(sig, x, target.inner)
    else:
        if ax.connective is None or x is None or not sig.in_x(x):
            raise MvseqError(f"{tag} needs a connective and a value of X")
        if tag in ("intro_const", "elim_const"):
            node = _const_node(sig, ax.connective)
            target = Box(x, node)
            expansion = (TOP if node.value == x else BOT) if isinstance(node, Const) else mv_expansion(sig, x, node)
        else:
            arity = 1 if tag.endswith("unary") else 2
            if not sig.has_connective(ax.connective) or sig.connective(ax.connective).arity != arity:
                raise MvseqError(f"{tag} needs a connective of arity {arity}, got {ax.connective!r}")
            args = (p["phi"],) if arity == 1 else (p["phi"], p["psi"])
            target = Box(x, App(ax.connective, args))
            expansion = mv_expansion(sig, x, target.inner)
    if tag.startswith("intro"):
        return Sequent(expansion, target)
    return Sequent(target, expansion)


def connective_axioms(
    sig: LogicSignature, connective: Optional[str] = None, value: Optional[int] = None
) -> list[tuple[AxiomId, Sequent]]:
    """Intro schemas then Elim schemas for the many-valued connectives, values ascending."""
    out = []
    for kind in ("intro", "elim"):
        for conn in sig.connectives:
            if connective is not None and conn.symbol != connective:
                continue
            tag = {0: f"{kind}_const", 1: f"{kind}_unary", 2: f"{kind}_binary"}[conn.arity]
            for x in sig.x_ids:
                if value is not None and x != value:
                    continue
                ax = AxiomId(tag, conn.symbol, x)
                out.append((ax, generate_axiom(sig, ax)))
    return out


def format_axiom_listing(sig: LogicSignature, connective=None, value=None) -> str:
    lines = []
    for ax, seq in connective_axioms(sig, connective, value):
        kind = ax.tag.split("_", 1)[0]
        lines.append(f"{kind} {ax.connective} {sig.symbol(ax.value)}: {format_sequent(seq, sig)}")
    return "\n".join(lines) + ("\n" if lines else "")


# ------------------------------------------------------------ AC normal form


def _mv_key(phi) -> tuple:
    if isinstance(phi, Atom):
        return ("a", phi.predicate, phi.args)
    if isinstance(phi, Const):
        return ("c", phi.value)
    return ("p", phi.op, tuple(_mv_key(a) for a in phi.args))


def _flatten(f, kind: type) -> list:
    out, stack = [], [f]
    while stack:
        node = stack.pop()
        if isinstance(node, kind):
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node)
    return out


def ac_key(f) -> tuple:
    """A key equal for two modal formulae iff they agree up to AC of ``&`` and ``|``."""
    if isinstance(f, Top):
        return ("T",)
    if isinstance(f, Bot):
        return ("F",)
    if isinstance(f, MVar):
        return ("v", f.name)
    if isinstance(f, Box):
        return ("b", f.index, _mv_key(f.inner))
    if isinstance(f, BBox):
        return ("m", f.index, ac_key(f.inner))
    if isinstance(f, (And, Or)):
        tag = "&" if isinstance(f, And) else "|"
        return (tag, tuple(sorted(ac_key(g) for g in _flatten(f, type(f)))))
    if isinstance(f, Sequent):
        return ("s", ac_key(f.lhs), ac_key(f.rhs))
    raise TypeError(f"not a modal formula: {f!r}")


def _multiset(f, kind: type) -> Counter:
    return Counter(ac_key(g) for g in _flatten(f, kind))


def _proper_submultiset(small: Counter, big: Counter) -> bool:
    return sum(small.values()) < sum(big.values()) and all(big[k] >= n for k, n in small.items())


def _two_splits(items: list):
    """Every way to split ``items`` into two nonempty groups, first group in index order."""
    n = len(items)
    for size in range(1, n):
        for chosen in combinations(range(n), size):
            left = [items[i] for i in chosen]
            right = [items[i] for i in range(n) if i not in chosen]
            yield left, right


def _rebuild(items: list, kind: type):
    out = items[-1]
    for item in reversed(items[:-1]):
        out = kind(item, out)
    return out


_SPLIT_LIMIT = 12


def _distrib_match(s: Sequent) -> bool:
    rhs_key = ac_key(s.rhs)
    if rhs_key[0] != "|":
        return False
    conj = _flatten(s.lhs, And)
    if len(conj) < 2:
        return False
    for i, elem in enumerate(conj):
        if not isinstance(elem, Or):
            continue
        rest = conj[:i] + conj[i + 1 :]
        phi = _rebuild(rest, And)
        disj = _flatten(elem, Or)
        if len(disj) > _SPLIT_LIMIT:
            continue
        for left, right in _two_splits(disj):
            psi, ups = _rebuild(left, Or), _rebuild(right, Or)
            if ac_key(Or(And(phi, psi), And(phi, ups))) == rhs_key:
                return True
    return False


def _connective_matches(s: Sequent, sig: LogicSignature) -> list[AxiomId]:
    out = []
    for side, kind in ((s.rhs, "intro"), (s.lhs, "elim")):
        other = s.lhs if kind == "intro" else s.rhs
        if isinstance(side, Box) and sig.in_x(side.index):
            inner = side.inner
            if isinstance(inner, Const) or (isinstance(inner, App) and not inner.args):
                name = inner.op if isinstance(inner, App) else sig.symbol(inner.value)
                tag = f"{kind}_const"
                placeholders = {}
            elif isinstance(inner, App) and len(inner.args) in (1, 2):
                name = inner.op
                tag = f"{kind}_unary" if len(inner.args) == 1 else f"{kind}_binary"
                placeholders = {"phi": inner.args[0], "psi": inner.args[-1]}
            else:
                continue
            if not sig.has_connective(name) and tag != f"{kind}_const":
                continue
            ax = AxiomId(tag, name, side.index)
            try:
                generated = generate_axiom(sig, ax, placeholders)
            except MvseqError:
                continue
            if ac_key(generated) == ac_key(s):
                out.append(ax)
        elif isinstance(side, BBox) and sig.is_anchor(side.index) and isinstance(side.inner, (And, Or)):
            op = "and" if isinstance(side.inner, And) else "or"
            ax = AxiomId(f"{kind}_bool", op, side.index)
            parts = _flatten(side.inner, type(side.inner))
            if len(parts) > _SPLIT_LIMIT:
                continue
            target = ac_key(s)
            other_key = ac_key(other)
            for left, right in _two_splits(parts):
                ph = {"Phi": _rebuild(left, type(side.inner)), "Psi": _rebuild(right, type(side.inner))}
                generated = generate_axiom(sig, ax, ph)
                gen_other = generated.lhs if kind == "intro" else generated.rhs
                if ac_key(gen_other) == other_key and ac_key(generated) == target:
                    out.append(ax)
                    break
    return out


def match_axioms(s: Sequent, sig: LogicSignature) -> list[AxiomId]:
    """Every schema that ``s`` instantiates (modulo AC), in fixed schema order."""
    out: list[AxiomId] = []
    lhs_key, rhs_key = ac_key(s.lhs), ac_key(s.rhs)
    if lhs_key == rhs_key:
        out.append(AxiomId("reflexive"))
    if isinstance(s.rhs, Top):
        out.append(AxiomId("top"))
    if isinstance(s.lhs, Bot):
        out.append(AxiomId("bottom"))
    if isinstance(s.lhs, And) and _proper_submultiset(_multiset(s.rhs, And), _multiset(s.lhs, And)):
        out += [AxiomId("meet_proj_l"), AxiomId("meet_proj_r")]
    if isinstance(s.rhs, Or) and _proper_submultiset(_multiset(s.lhs, Or), _multiset(s.rhs, Or)):
        out += [AxiomId("join_inj_l"), AxiomId("join_inj_r")]
    if isinstance(s.lhs, And) and _distrib_match(s):
        out.append(AxiomId("distrib"))
    conn = _connective_matches(s, sig)
    conn.sort(key=lambda a: ALL_TAGS.index(a.tag))
    return out + conn


def is_axiom(s: Sequent, sig: LogicSignature) -> Optional[AxiomId]:
    found = match_axioms(s, sig)
    return found[0] if found else None
