"""Truth-table driven rewriting of modal formulae into disjunctive normal form.

Three rewrite rules push a modal index towards the atoms:

* ``[x](~phi)``      becomes the disjunction of ``[y]phi`` over all y with ``~y = x``;
* ``[x](phi * psi)`` becomes the disjunction of ``[y]phi & [z]psi`` over y*z = x;
* ``[b](P op Q)``    does the same for the modal ``&``/``|`` with b, y, z boolean.

Index tuples are enumerated in ascending id order.  An empty disjunction is
``F``; a singleton is left unwrapped.  ``[x](#c)`` and ``[b](T)``/``[b](F)``
evaluate directly to ``T`` or ``F``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .core import LogicSignature
from .errors import AlreadyLiteral, ReductionError
from .syntax import format_modal, well_formed
from .terms import (
    BOT,
    TOP,
    And,
    App,
    Atom,
    BBox,
    Bot,
    Box,
    Const,
    ModalLiteral,
    MVar,
    Or,
    Top,
    as_literal,
    big_and,
    big_or,
    is_literal,
    spine,
)


def preimages(sig: LogicSignature, op: str, x: int) -> list[tuple[int, ...]]:
    """All argument tuples, in ascending id order, that ``op`` maps to ``x``."""
    conn = sig.connective(op)
    table = conn.table
    return [args for args in itertools.product(sig.x_ids, repeat=conn.arity) if table[args] == x]


def bool_preimages(sig: LogicSignature, op: type, b: int) -> list[tuple[int, int]]:
    """Anchor pairs (y, z), ascending by id, with ``y op z == b`` in the lattice 2."""
    want = sig.bool_of(b)
    anchors = sorted(sig.anchors)
    out = []
    for y, z in itertools.product(anchors, repeat=2):
        by, bz = sig.bool_of(y), sig.bool_of(z)
        got = (by & bz) if op is And else (by | bz)
        if got == want:
            out.append((y, z))
    return out


def mv_expansion(sig: LogicSignature, x: int, app: App):
    """Right-hand side of the rewrite for ``[x](app)``."""
    return big_or(
        big_and(Box(y, arg) for y, arg in zip(args, app.args))
        for args in preimages(sig, app.op, x)
    )


def bool_expansion(sig: LogicSignature, b: int, node):
    """Right-hand side of the rewrite for ``[b](node)`` with node an ``And``/``Or``."""
    return big_or(
        And(BBox(y, node.left), BBox(z, node.right))
        for y, z in bool_preimages(sig, type(node), b)
    )


def is_redex(node) -> bool:
    if isinstance(node, Box):
        return isinstance(node.inner, (Const, App))
    if isinstance(node, BBox):
        return isinstance(node.inner, (And, Or, Top, Bot))
    return False


def reduce_step(node, sig: LogicSignature):
    """Apply one rewrite rule at ``node`` itself."""
    if isinstance(node, Box):
        inner = node.inner
        if isinstance(inner, Const):
            return TOP if inner.value == node.index else BOT
        if isinstance(inner, App):
            return mv_expansion(sig, node.index, inner)
        if isinstance(inner, Atom):
            raise AlreadyLiteral("already literal")
    elif isinstance(node, BBox):
        inner = node.inner
        if isinstance(inner, (And, Or)):
            return bool_expansion(sig, node.index, inner)
        if isinstance(inner, (Top, Bot)):
            truth = 1 if isinstance(inner, Top) else 0
            return TOP if sig.bool_of(node.index) == truth else BOT
        if as_literal(node) is not None:
            raise AlreadyLiteral("already literal")
        raise ReductionError("no rule applies here; reduce the body first")
    elif isinstance(node, MVar):
        raise ReductionError(f"schematic placeholder ${node.name} cannot be reduced")
    raise ReductionError(f"no rule applies to {type(node).__name__}")


# --------------------------------------------------------------- normal form


@dataclass(frozen=True)
class Dnf:
    """Sorted, duplicate-free disjunction of conjunctions of modal literals.

    ``()`` is ``F``; ``((),)`` is ``T``.
    """

    disjuncts: tuple[tuple[ModalLiteral, ...], ...]

    @property
    def is_top(self) -> bool:
        return self.disjuncts == ((),)

    @property
    def is_bot(self) -> bool:
        return self.disjuncts == ()

    def embed(self):
        """The Dnf as a modal formula (right-nested ``|`` of right-nested ``&``)."""
        return big_or(big_and(lit.to_formula() for lit in conj) for conj in self.disjuncts)

    def literals(self) -> set[ModalLiteral]:
        return {lit for conj in self.disjuncts for lit in conj}

    def format(self, sig: LogicSignature) -> str:
        return format_modal(self.embed(), sig)


def collapse_prefix(prefix: tuple[int, ...]) -> tuple[int, ...]:
    """Cancel adjacent equal boolean indices (``[0][0]`` and ``[1][1]`` are identities)."""
    stack: list[int] = []
    for index in prefix[:-1]:
        if stack and stack[-1] == index:
            stack.pop()
        else:
            stack.append(index)
    return tuple(stack) + prefix[-1:]


_TOP_SET = frozenset([frozenset()])
_BOT_SET: frozenset = frozenset()


def _sorted_dnf(sets: frozenset) -> Dnf:
    conjs = [tuple(sorted(c, key=lambda lit: lit.key)) for c in sets]
    conjs.sort(key=lambda c: tuple(lit.key for lit in c))
    return Dnf(tuple(conjs))


class _Reducer:
    _LIMIT = 200_000

    def __init__(self, sig: LogicSignature):
        self.sig = sig
        self._rw: dict = {}
        self._dnf: dict = {}

    def rewrite(self, f):
        hit = self._rw.get(f)
        if hit is not None:
            return hit
        if isinstance(f, BBox):
            inner = self.rewrite(f.inner)
            node = f if inner is f.inner else BBox(f.index, inner)
        elif isinstance(f, (And, Or)):
            kind = type(f)
            items = spine(f, kind)
            done = [self.rewrite(item) for item in items]
            if all(a is b for a, b in zip(items, done)):
                node = f
            else:
                node = done[-1]
                for item in reversed(done[:-1]):
                    node = kind(item, node)
            self._store(f, node)
            return node
        elif isinstance(f, MVar):
            raise ReductionError(f"schematic placeholder ${f.name} cannot be reduced")
        else:
            node = f
        out = self.rewrite(reduce_step(node, self.sig)) if is_redex(node) else node
        self._store(f, out)
        return out

    def _store(self, f, out) -> None:
        if len(self._rw) > self._LIMIT:
            self._rw.clear()
        self._rw[f] = out

    def dnf_sets(self, f) -> frozenset:
        hit = self._dnf.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Top):
            out = _TOP_SET
        elif isinstance(f, Bot):
            out = _BOT_SET
        elif isinstance(f, Or):
            out = frozenset().union(*(self.dnf_sets(item) for item in spine(f, Or)))
        elif isinstance(f, And):
            out = _TOP_SET
            for item in spine(f, And):
                part = self.dnf_sets(item)
                out = frozenset(a | b for a in out for b in part)
        else:
            lit = as_literal(f)
            if lit is None:
                raise ReductionError(f"not in reduced form: {type(f).__name__}")
            out = frozenset([frozenset([ModalLiteral(collapse_prefix(lit.prefix), lit.atom)])])
        if frozenset() in out:
            out = _TOP_SET
        if len(self._dnf) > self._LIMIT:
            self._dnf.clear()
        self._dnf[f] = out
        return out


@lru_cache(maxsize=16)
def _reducer(sig: LogicSignature) -> _Reducer:
    return _Reducer(sig)


def rewrite(phi, sig: LogicSignature):
    """Apply the rewrite rules everywhere; the result has only literals under ``&``/``|``."""
    return _reducer(sig).rewrite(phi)


def canonical(phi, sig: LogicSignature) -> Dnf:
    ok, diags = well_formed(phi, sig)
    if not ok:
        raise ReductionError("ill-formed input: " + "; ".join(diags))
    r = _reducer(sig)
    return _sorted_dnf(r.dnf_sets(r.rewrite(phi)))


def dnf_of_reduced(f, sig: LogicSignature) -> Dnf:
    """Distribute a fully rewritten formula into a Dnf (no further rewriting)."""
    return _sorted_dnf(_Reducer(sig).dnf_sets(f))


def is_dnf_shape(f) -> bool:
    """True iff ``f`` is T, F, or an ``|``-tree of ``&``-trees of modal literals."""
    if isinstance(f, (Top, Bot)):
        return True

    def conj(g) -> bool:
        if isinstance(g, And):
            return all(conj(item) for item in spine(g, And))
        return is_literal(g)

    def disj(g) -> bool:
        if isinstance(g, Or):
            return all(disj(item) for item in spine(g, Or))
        return conj(g)

    return disj(f)


# --------------------------------------------------------------------- trace


def _step_once(f, sig):
    """Rewrite the leftmost-innermost redex; None when there is none."""
    if isinstance(f, (And, Or)):
        left = _step_once(f.left, sig)
        if left is not None:
            return type(f)(left, f.right)
        right = _step_once(f.right, sig)
        if right is not None:
            return type(f)(f.left, right)
        return None
    if isinstance(f, BBox):
        inner = _step_once(f.inner, sig)
        if inner is not None:
            return BBox(f.index, inner)
    if is_redex(f):
        return reduce_step(f, sig)
    return None


def reduction_trace(phi, sig: LogicSignature, max_steps: int = 10_000) -> tuple[list, Dnf]:
    """Every intermediate formula of innermost-first rewriting, then the Dnf."""
    steps = [phi]
    current = phi
    for _ in range(max_steps):
        nxt = _step_once(current, sig)
        if nxt is None:
            return steps, dnf_of_reduced(current, sig)
        steps.append(nxt)
        current = nxt
    raise ReductionError(f"trace exceeded {max_steps} steps")
