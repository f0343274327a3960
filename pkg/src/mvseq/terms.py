"""Immutable syntax trees for many-valued formulae, modal formulae and sequents.

Nodes are frozen dataclasses whose hash is computed once at construction,
so deeply shared trees can be used as dictionary keys cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import cached_property
from operator import attrgetter
from typing import Callable, Iterable, Iterator, Union


def _node(cls):
    getter = None
    tag = cls.__name__
    setter = object.__setattr__

    def __post_init__(self):
        setter(self, "_h", hash((tag, getter(self))))

    def __hash__(self):
        return self._h

    cls.__post_init__ = __post_init__
    cls = dataclass(frozen=True)(cls)
    names = tuple(f.name for f in fields(cls))
    getter = attrgetter(*names) if names else (lambda _self: ())
    cls.__hash__ = __hash__
    return cls


# ---------------------------------------------------------------- many-valued


@_node
class Atom:
    """A ground atom; ``args`` empty means a propositional letter."""

    predicate: str
    args: tuple[str, ...] = ()

    @cached_property
    def key(self) -> tuple:
        return (self.predicate, self.args)

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(self.args)})"


@_node
class Const:
    value: int


@_node
class App:
    op: str
    args: tuple


MvFormula = Union[Atom, Const, App]


# ---------------------------------------------------------------------- modal


@_node
class Top:
    pass


@_node
class Bot:
    pass


TOP = Top()
BOT = Bot()


@_node
class Box:
    """``[index](inner)`` with ``inner`` a many-valued formula."""

    index: int
    inner: object


@_node
class BBox:
    """``[index](inner)`` with boolean ``index`` and modal ``inner``."""

    index: int
    inner: object


@_node
class And:
    left: object
    right: object


@_node
class Or:
    left: object
    right: object


@_node
class MVar:
    """Schematic modal placeholder (written ``$Name``); never ground."""

    name: str


ModalFormula = Union[Top, Bot, Box, BBox, And, Or, MVar]


@_node
class Sequent:
    lhs: object
    rhs: object


@_node
class ModalLiteral:
    """``[y1]...[yk]A``; ``prefix`` is outermost first, the last index boxes the atom."""

    prefix: tuple[int, ...]
    atom: Atom

    @cached_property
    def key(self) -> tuple:
        return (self.atom.key, self.prefix)

    @cached_property
    def formula(self):
        out = Box(self.prefix[-1], self.atom)
        for index in reversed(self.prefix[:-1]):
            out = BBox(index, out)
        return out

    def to_formula(self):
        return self.formula


# -------------------------------------------------------------------- helpers


def big_and(items: Iterable):
    """Right-nested conjunction; empty is ``T``."""
    items = list(items)
    if not items:
        return TOP
    out = items[-1]
    for item in reversed(items[:-1]):
        out = And(item, out)
    return out


def big_or(items: Iterable):
    """Right-nested disjunction; empty is ``F``."""
    items = list(items)
    if not items:
        return BOT
    out = items[-1]
    for item in reversed(items[:-1]):
        out = Or(item, out)
    return out


def spine(f, kind: type) -> list:
    """Items along the right spine of a ``kind`` chain: ``a & (b & c)`` gives ``[a, b, c]``."""
    items = []
    while isinstance(f, kind):
        items.append(f.left)
        f = f.right
    items.append(f)
    return items


def is_modal(f) -> bool:
    return isinstance(f, (Top, Bot, Box, BBox, And, Or, MVar))


def is_mv(f) -> bool:
    return isinstance(f, (Atom, Const, App))


def is_literal(f) -> bool:
    """True iff ``f`` is a ``BBox* Box(x, Atom)`` chain."""
    while isinstance(f, BBox):
        f = f.inner
    return isinstance(f, Box) and isinstance(f.inner, Atom)


def as_literal(f) -> ModalLiteral | None:
    """Read a ``BBox* Box(x, Atom)`` chain as a modal literal."""
    prefix = []
    while isinstance(f, BBox):
        prefix.append(f.index)
        f = f.inner
    if isinstance(f, Box) and isinstance(f.inner, Atom):
        prefix.append(f.index)
        return ModalLiteral(tuple(prefix), f.inner)
    return None


def atoms_of(f) -> set[Atom]:
    out: set[Atom] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node)
        elif isinstance(node, App):
            stack.extend(node.args)
        elif isinstance(node, (Box, BBox)):
            stack.append(node.inner)
        elif isinstance(node, (And, Or)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Sequent):
            stack.append(node.lhs)
            stack.append(node.rhs)
    return out


def mvars_of(f) -> set[str]:
    out: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, MVar):
            out.add(node.name)
        elif isinstance(node, BBox):
            stack.append(node.inner)
        elif isinstance(node, (And, Or)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Sequent):
            stack.append(node.lhs)
            stack.append(node.rhs)
    return out


def atom_sort_key(atom: Atom) -> tuple:
    return atom.key


def mv_depth(f) -> int:
    if isinstance(f, App) and f.args:
        return 1 + max(mv_depth(a) for a in f.args)
    return 0


def modal_depth(f) -> int:
    """Nesting depth; ``T``/``F`` count 0, ``[x]phi`` counts 1 plus the depth of phi."""
    if isinstance(f, Box):
        return 1 + mv_depth(f.inner)
    if isinstance(f, BBox):
        return 1 + modal_depth(f.inner)
    if isinstance(f, (And, Or)):
        return 1 + max(modal_depth(f.left), modal_depth(f.right))
    return 0


def modal_subformulas(f) -> Iterator:
    """Pre-order walk over the modal layer (does not enter Box inners)."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, BBox):
            stack.append(node.inner)
        elif isinstance(node, (And, Or)):
            stack.append(node.right)
            stack.append(node.left)


def map_values(f, fn: Callable[[int], int]):
    """Rename every value id occurring in a formula, sequent or literal."""
    if isinstance(f, (Atom, Top, Bot, MVar)):
        return f
    if isinstance(f, Const):
        return Const(fn(f.value))
    if isinstance(f, App):
        return App(f.op, tuple(map_values(a, fn) for a in f.args))
    if isinstance(f, Box):
        return Box(fn(f.index), map_values(f.inner, fn))
    if isinstance(f, BBox):
        return BBox(fn(f.index), map_values(f.inner, fn))
    if isinstance(f, And):
        return And(map_values(f.left, fn), map_values(f.right, fn))
    if isinstance(f, Or):
        return Or(map_values(f.left, fn), map_values(f.right, fn))
    if isinstance(f, Sequent):
        return Sequent(map_values(f.lhs, fn), map_values(f.rhs, fn))
    if isinstance(f, ModalLiteral):
        return ModalLiteral(tuple(fn(i) for i in f.prefix), f.atom)
    raise TypeError(f"not a formula: {f!r}")


def substitute(f, sigma: dict):
    """Uniform substitution: ``Atom -> MvFormula`` and ``MVar name -> ModalFormula``."""
    if isinstance(f, Atom):
        return sigma.get(f, f)
    if isinstance(f, MVar):
        return sigma.get(f.name, f)
    if isinstance(f, (Const, Top, Bot)):
        return f
    if isinstance(f, App):
        return App(f.op, tuple(substitute(a, sigma) for a in f.args))
    if isinstance(f, Box):
        return Box(f.index, substitute(f.inner, sigma))
    if isinstance(f, BBox):
        return BBox(f.index, substitute(f.inner, sigma))
    if isinstance(f, And):
        return And(substitute(f.left, sigma), substitute(f.right, sigma))
    if isinstance(f, Or):
        return Or(substitute(f.left, sigma), substitute(f.right, sigma))
    if isinstance(f, Sequent):
        return Sequent(substitute(f.lhs, sigma), substitute(f.rhs, sigma))
    raise TypeError(f"not a formula: {f!r}")
