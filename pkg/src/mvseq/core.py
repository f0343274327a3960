"""Truth-value domains, logic signatures and many-valued evaluation."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ArityMismatch, SignatureError, UnboundAtom, UnknownConnective
from .terms import App, Atom, Const

SYMBOL_RE = re.compile(r"[A-Za-z0-9_]+\Z")
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED = frozenset({"T", "F"})


@dataclass(frozen=True)
class TruthValue:
    id: int
    symbol: str


@dataclass(frozen=True)
class Connective:
    symbol: str
    arity: int
    # ((args...), out) pairs; kept as a tuple so the signature stays hashable
    cells: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_mapping(cls, symbol: str, arity: int, table: Mapping) -> "Connective":
        cells = tuple(sorted((tuple(k), v) for k, v in table.items()))
        return cls(symbol, arity, cells)

    @cached_property
    def table(self) -> dict[tuple[int, ...], int]:
        return dict(self.cells)


@dataclass(frozen=True)
class LogicSignature:
    name: str
    values: tuple[TruthValue, ...]
    bool_false: int
    bool_true: int
    connectives: tuple[Connective, ...]
    # number of leading entries of ``values`` that make up X; the rest are
    # fresh boolean anchors appended to form Y
    n_x: int = field(default=-1)

    def __post_init__(self):
        if self.n_x < 0:
            object.__setattr__(self, "n_x", len(self.values))

    @property
    def x_ids(self) -> range:
        return range(self.n_x)

    @property
    def y_ids(self) -> range:
        return range(len(self.values))

    @property
    def anchors(self) -> tuple[int, int]:
        return (self.bool_false, self.bool_true)

    def is_anchor(self, value: int) -> bool:
        return value == self.bool_false or value == self.bool_true

    def in_x(self, value: int) -> bool:
        return 0 <= value < self.n_x

    @cached_property
    def _by_symbol(self) -> dict[str, int]:
        return {v.symbol: v.id for v in self.values}

    @cached_property
    def _connectives(self) -> dict[str, Connective]:
        return {c.symbol: c for c in self.connectives}

    def value_id(self, symbol: str) -> int:
        try:
            return self._by_symbol[symbol]
        except KeyError:
            raise SignatureError(f"unknown truth value {symbol!r} in logic {self.name!r}") from None

    def has_value(self, symbol: str) -> bool:
        return symbol in self._by_symbol

    def symbol(self, value: int) -> str:
        return self.values[value].symbol

    def connective(self, symbol: str) -> Connective:
        try:
            return self._connectives[symbol]
        except KeyError:
            raise UnknownConnective(f"unknown connective {symbol!r} in logic {self.name!r}") from None

    def has_connective(self, symbol: str) -> bool:
        return symbol in self._connectives

    def bool_of(self, value: int) -> int:
        """Map an anchor id to 0/1."""
        if value == self.bool_true:
            return 1
        if value == self.bool_false:
            return 0
        raise SignatureError(f"{self.symbol(value)!r} is not a boolean anchor")

    def anchor(self, bit: int) -> int:
        return self.bool_true if bit else self.bool_false


def validate_signature(sig: LogicSignature) -> list[str]:
    """Return one diagnostic per violated invariant; empty means valid."""
    diags: list[str] = []
    n = sig.n_x
    if n < 2:
        diags.append(f"logic {sig.name!r}: need at least 2 truth values, got {n}")
    seen: dict[str, int] = {}
    for pos, v in enumerate(sig.values):
        if v.id != pos:
            diags.append(f"value {v.symbol!r}: id {v.id} is not its position {pos}")
        if v.symbol in seen:
            diags.append(f"value {v.symbol!r}: duplicate symbol")
        seen[v.symbol] = pos
        if not SYMBOL_RE.match(v.symbol):
            diags.append(f"value {v.symbol!r}: symbol must match [A-Za-z0-9_]+")
    if not (0 <= n <= len(sig.values) <= n + 2):
        diags.append("value list: at most two fresh boolean anchors may follow X")
    for name, b in (("bool_false", sig.bool_false), ("bool_true", sig.bool_true)):
        if not 0 <= b < len(sig.values):
            diags.append(f"{name}: id {b} is not a declared value")
    if sig.bool_false == sig.bool_true:
        diags.append("bool_false and bool_true must differ")
    for extra in range(n, len(sig.values)):
        if not sig.is_anchor(extra):
            diags.append(f"value {sig.values[extra].symbol!r}: appended value is not a boolean anchor")
    symbols: set[str] = set()
    for conn in sig.connectives:
        where = f"connective {conn.symbol!r}"
        if conn.symbol in symbols:
            diags.append(f"{where}: declared twice")
        symbols.add(conn.symbol)
        if not IDENT_RE.match(conn.symbol) or conn.symbol in RESERVED:
            diags.append(f"{where}: symbol must be an identifier other than T/F")
        if conn.arity not in (0, 1, 2):
            diags.append(f"{where}: arity {conn.arity} not supported (0, 1 or 2)")
            continue
        if conn.arity == 0 and conn.symbol in seen:
            diags.append(f"{where}: nullary symbol clashes with a truth value")
        keys = [k for k, _ in conn.cells]
        if len(keys) != len(set(keys)):
            diags.append(f"{where}: duplicate table cells")
        present = set(keys)
        for args in itertools.product(range(n), repeat=conn.arity):
            if args not in present:
                diags.append(f"{where}: missing cell {_fmt_cell(sig, args)}")
        for args, out in conn.cells:
            if len(args) != conn.arity or any(not 0 <= a < n for a in args):
                diags.append(f"{where}: illegal input cell {args}")
            elif not 0 <= out < n:
                diags.append(f"{where}: illegal output {out} at cell {_fmt_cell(sig, args)}")
    return diags


def _fmt_cell(sig: LogicSignature, args: tuple[int, ...]) -> str:
    syms = [sig.values[a].symbol if 0 <= a < len(sig.values) else str(a) for a in args]
    return "(" + ",".join(syms) + ")"


def eval_connective(sig: LogicSignature, conn: str, args: Sequence[int]) -> int:
    c = sig.connective(conn)
    if len(args) != c.arity:
        raise ArityMismatch(f"{conn!r} takes {c.arity} arguments, got {len(args)}")
    return c.table[tuple(args)]


class Valuation(Mapping):
    """Immutable assignment of truth-value ids to ground atoms."""

    __slots__ = ("_map", "_hash")

    def __init__(self, assignment: Mapping[Atom, int] | Iterable[tuple[Atom, int]] = ()):
        self._map = dict(assignment)
        self._hash = None

    def __getitem__(self, atom: Atom) -> int:
        return self._map[atom]

    def __iter__(self) -> Iterator[Atom]:
        return iter(sorted(self._map, key=lambda a: a.key))

    def __len__(self) -> int:
        return len(self._map)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Valuation):
            return self._map == other._map
        return NotImplemented

    def __repr__(self) -> str:
        inner = ", ".join(f"{a}={v}" for a, v in self.items())
        return f"Valuation({inner})"

    @property
    def universe(self) -> frozenset[Atom]:
        return frozenset(self._map)

    def extend(self, more: Mapping[Atom, int]) -> "Valuation":
        merged = dict(self._map)
        merged.update(more)
        return Valuation(merged)

    def format(self, sig: LogicSignature) -> str:
        return ", ".join(f"{a}={sig.symbol(v)}" for a, v in self.items())


def check_valuation(sig: LogicSignature, v: Valuation) -> None:
    for atom, value in v.items():
        if not sig.in_x(value):
            raise SignatureError(f"valuation assigns {value} to {atom}, which is not in X")


def all_valuations(sig: LogicSignature, universe: Iterable[Atom]) -> Iterator[Valuation]:
    """Every valuation over ``universe``, first atom most significant, ids ascending."""
    atoms = sorted(set(universe), key=lambda a: a.key)
    for combo in itertools.product(sig.x_ids, repeat=len(atoms)):
        yield Valuation(zip(atoms, combo))


def eval_mv(sig: LogicSignature, v: Mapping[Atom, int], phi) -> int:
    if isinstance(phi, Atom):
        try:
            return v[phi]
        except KeyError:
            raise UnboundAtom(f"atom {phi} is not bound by the valuation") from None
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, App):
        c = sig.connective(phi.op)
        if len(phi.args) != c.arity:
            raise ArityMismatch(f"{phi.op!r} takes {c.arity} arguments, got {len(phi.args)}")
        return c.table[tuple(eval_mv(sig, v, a) for a in phi.args)]
    raise TypeError(f"not a many-valued formula: {phi!r}")


# ------------------------------------------------------------------ JSON I/O


def logic_from_dict(data: Mapping) -> LogicSignature:
    """Build a signature from the logic-definition JSON object.

    Raises SignatureError carrying every diagnostic when the result is invalid.
    """
    diags: list[str] = []
    try:
        name = str(data["name"])
        symbols = [str(s) for s in data["values"]]
        false_sym = str(data["bool_false"])
        true_sym = str(data["bool_true"])
        raw_conns = list(data.get("connectives", []))
    except (KeyError, TypeError) as exc:
        raise SignatureError(f"logic definition lacks required field: {exc}") from None
    index = {s: i for i, s in enumerate(symbols)}
    values = [TruthValue(i, s) for i, s in enumerate(symbols)]
    n_x = len(values)
    for sym in (false_sym, true_sym):
        if sym not in index:
            index[sym] = len(values)
            values.append(TruthValue(len(values), sym))

    flagged: set[str] = set()  # "missing cell" lines already covered by an illegal-output report

    def lookup(sym, where, conn=None, args=()):
        if sym is None:
            return None
        if not isinstance(sym, str) or sym not in index or index[sym] >= n_x:
            diags.append(f"{where}: illegal output {sym!r}")
            if conn is not None:
                flagged.add(f"connective {conn!r}: missing cell ({','.join(symbols[a] for a in args)})")
            return None
        return index[sym]

    conns = []
    for raw in raw_conns:
        try:
            symbol = str(raw["symbol"])
            arity = int(raw["arity"])
            table = raw["table"]
        except (KeyError, TypeError, ValueError):
            diags.append(f"connective entry {raw!r}: needs symbol, arity and table")
            continue
        where = f"connective {symbol!r}"
        cells: dict[tuple[int, ...], int] = {}
        if arity == 0:
            out = lookup(table, where, symbol, ())
            if out is not None:
                cells[()] = out
        elif arity == 1:
            for i, sym in enumerate(table if isinstance(table, list) else []):
                if i < n_x:
                    out = lookup(sym, f"{where} cell ({symbols[i]})", symbol, (i,))
                    if out is not None:
                        cells[(i,)] = out
                else:
                    diags.append(f"{where}: table has more than {n_x} entries")
        elif arity == 2:
            for i, row in enumerate(table if isinstance(table, list) else []):
                if i >= n_x or not isinstance(row, list):
                    diags.append(f"{where}: malformed row {i}")
                    continue
                for j, sym in enumerate(row):
                    if j < n_x:
                        out = lookup(sym, f"{where} cell ({symbols[i]},{symbols[j]})", symbol, (i, j))
                        if out is not None:
                            cells[(i, j)] = out
                    else:
                        diags.append(f"{where}: row {symbols[i]} has more than {n_x} entries")
        conns.append(Connective.from_mapping(symbol, arity, cells))
    sig = LogicSignature(
        name=name,
        values=tuple(values),
        bool_false=index[false_sym],
        bool_true=index[true_sym],
        connectives=tuple(conns),
        n_x=n_x,
    )
    diags.extend(d for d in validate_signature(sig) if d not in flagged)
    if diags:
        raise SignatureError(f"invalid logic {name!r}: {len(diags)} problem(s)", diags)
    return sig


def logic_to_dict(sig: LogicSignature) -> dict:
    xs = [sig.symbol(i) for i in sig.x_ids]
    conns = []
    for c in sig.connectives:
        t = c.table
        if c.arity == 0:
            table = sig.symbol(t[()])
        elif c.arity == 1:
            table = [sig.symbol(t[(i,)]) for i in sig.x_ids]
        else:
            table = [[sig.symbol(t[(i, j)]) for j in sig.x_ids] for i in sig.x_ids]
        conns.append({"symbol": c.symbol, "arity": c.arity, "table": table})
    return {
        "name": sig.name,
        "values": xs,
        "bool_false": sig.symbol(sig.bool_false),
        "bool_true": sig.symbol(sig.bool_true),
        "connectives": conns,
    }


def load_logic(path: str | Path) -> LogicSignature:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SignatureError(f"{path}: not valid JSON: {exc}") from None
    return logic_from_dict(data)


# ------------------------------------------------------------- permutations


def permute_signature(sig: LogicSignature, perm: Sequence[int]) -> LogicSignature:
    """Relabel X so that old id ``i`` becomes ``perm[i]``; fresh anchors keep their ids.

    Symbols are unchanged, so text parsed against the result denotes the
    same objects under new ids.
    """
    n = sig.n_x
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation of X's ids")
    full = list(perm) + list(range(n, len(sig.values)))
    new_values = [None] * len(sig.values)
    for old, new in enumerate(full):
        new_values[new] = TruthValue(new, sig.values[old].symbol)
    conns = []
    for c in sig.connectives:
        cells = {tuple(full[a] for a in args): full[out] for args, out in c.cells}
        conns.append(Connective.from_mapping(c.symbol, c.arity, cells))
    return LogicSignature(
        name=sig.name,
        values=tuple(new_values),
        bool_false=full[sig.bool_false],
        bool_true=full[sig.bool_true],
        connectives=tuple(conns),
        n_x=n,
    )


def value_map(perm: Sequence[int], sig: LogicSignature):
    """The id renaming induced by ``permute_signature(sig, perm)``."""
    full = list(perm) + list(range(sig.n_x, len(sig.values)))
    return full.__getitem__
