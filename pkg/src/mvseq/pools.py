"""Deterministic formula pools for exhaustive and seeded property checks.

Random choices of truth values are made over value *symbols* rather than ids,
so a pool drawn for a relabelled signature denotes the same formulae.
"""

from __future__ import annotations

import random
from typing import Sequence

from .core import Connective, LogicSignature, TruthValue
from .terms import BOT, TOP, And, App, Atom, BBox, Box, Or, Sequent

ATOMS_AB = (Atom("A"), Atom("B"))
ATOMS_ABC = (Atom("A"), Atom("B"), Atom("C"))


def x_by_symbol(sig: LogicSignature) -> list[int]:
    """Ids of X ordered by symbol, so iteration order survives relabelling."""
    return sorted(sig.x_ids, key=sig.symbol)


def mv_pool(sig: LogicSignature, atoms: Sequence[Atom], depth: int) -> list:
    """Every many-valued formula of depth <= ``depth`` over ``atoms`` (atoms as the only leaves)."""
    levels = [list(atoms)]
    everything = list(atoms)
    for d in range(1, depth + 1):
        prev_all = list(everything)
        newest = set(levels[-1])
        fresh = []
        for conn in sig.connectives:
            if conn.arity == 1:
                fresh += [App(conn.symbol, (a,)) for a in levels[-1]]
            elif conn.arity == 2:
                for a in prev_all:
                    for b in prev_all:
                        if a in newest or b in newest:
                            fresh.append(App(conn.symbol, (a, b)))
        levels.append(fresh)
        everything += fresh
    return everything


def pick_value(rng: random.Random, sig: LogicSignature, pool: Sequence[int] | None = None) -> int:
    ids = list(sig.x_ids) if pool is None else list(pool)
    return sig.value_id(rng.choice(sorted(sig.symbol(i) for i in ids)))


def random_mv(rng: random.Random, sig: LogicSignature, atoms: Sequence[Atom], depth: int):
    conns = sorted((c for c in sig.connectives if c.arity > 0), key=lambda c: c.symbol)
    if depth == 0 or not conns or rng.random() < 0.25:
        return rng.choice(list(atoms))
    conn = rng.choice(conns)
    return App(conn.symbol, tuple(random_mv(rng, sig, atoms, depth - 1) for _ in range(conn.arity)))


def random_valuation(rng: random.Random, sig: LogicSignature, atoms: Sequence[Atom]) -> dict:
    return {a: pick_value(rng, sig) for a in atoms}


def modal_pool(sig: LogicSignature, atoms: Sequence[Atom] = ATOMS_AB, depth: int = 3) -> list:
    """All modal formulae of depth <= ``depth`` built from literals ``[x]A`` and ``T``/``F``.

    ``&`` and ``|`` take ordered pairs; boolean indices range over both anchors.
    """
    base = [TOP, BOT] + [Box(x, a) for a in atoms for x in x_by_symbol(sig)]
    levels = [[TOP, BOT], base[2:]]
    everything = list(base)
    anchors = [sig.bool_false, sig.bool_true]
    for _ in range(2, depth + 1):
        prev_all = list(everything)
        newest = set(levels[-1])
        fresh = [BBox(b, f) for b in anchors for f in levels[-1]]
        for ctor in (And, Or):
            for a in prev_all:
                for b in prev_all:
                    if a in newest or b in newest:
                        fresh.append(ctor(a, b))
        levels.append(fresh)
        everything += fresh
    return everything


def _literal_chain(rng: random.Random, sig: LogicSignature, atoms: Sequence[Atom]):
    out = Box(pick_value(rng, sig), rng.choice(list(atoms)))
    for _ in range(rng.choice((0, 0, 1, 2))):
        out = BBox(sig.anchor(rng.randrange(2)), out)
    return out


def _boolean_body(rng: random.Random, sig: LogicSignature, atoms: Sequence[Atom], depth: int):
    """A body a boolean index can be pushed all the way through: literal chains under ``&``/``|``."""
    roll = rng.random()
    if depth <= 0 or roll < 0.4:
        return _literal_chain(rng, sig, atoms)
    ctor = And if rng.random() < 0.5 else Or
    return ctor(_boolean_body(rng, sig, atoms, depth - 1), _boolean_body(rng, sig, atoms, depth - 1))


def random_synthesizable(rng: random.Random, sig: LogicSignature, atoms: Sequence[Atom], depth: int):
    """A random modal formula whose boolean indices all sit over literals, ``&`` or ``|``."""
    roll = rng.random()
    if depth <= 0 or roll < 0.3:
        choice = rng.random()
        if choice < 0.08:
            return TOP
        if choice < 0.16:
            return BOT
        return Box(pick_value(rng, sig), random_mv(rng, sig, atoms, 2))
    if roll < 0.45:
        ctor = And if rng.random() < 0.5 else Or
        body = ctor(_boolean_body(rng, sig, atoms, depth - 1), _boolean_body(rng, sig, atoms, depth - 1))
        return BBox(sig.anchor(rng.randrange(2)), body)
    ctor = And if roll < 0.72 else Or
    return ctor(
        random_synthesizable(rng, sig, atoms, depth - 1),
        random_synthesizable(rng, sig, atoms, depth - 1),
    )


def sequent_pool(sig: LogicSignature, size: int = 200, seed: int = 7, atoms: Sequence[Atom] = ATOMS_AB) -> list:
    """``size`` distinct sequents over ``atoms`` inside the synthesizable fragment."""
    rng = random.Random(seed)
    out: list[Sequent] = []
    seen: set = set()
    while len(out) < size:
        s = Sequent(random_synthesizable(rng, sig, atoms, 3), random_synthesizable(rng, sig, atoms, 3))
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def random_signature(seed: int, n: int = 4, fresh_anchors: bool = True) -> LogicSignature:
    """A random logic with ``n`` values, one unary and one binary connective."""
    rng = random.Random(seed)
    values = [TruthValue(i, f"v{i}") for i in range(n)]
    if fresh_anchors:
        values += [TruthValue(n, "bot"), TruthValue(n + 1, "top")]
        bf, bt = n, n + 1
    else:
        bf, bt = 0, n - 1
    neg = Connective.from_mapping("u", 1, {(a,): rng.randrange(n) for a in range(n)})
    op = Connective.from_mapping("o", 2, {(a, b): rng.randrange(n) for a in range(n) for b in range(n)})
    return LogicSignature(f"random{n}_{seed}", tuple(values), bf, bt, (neg, op), n_x=n)
