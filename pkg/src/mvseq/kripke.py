"""Kripke models whose worlds are the truth values themselves.

Worlds are the ids of Y (X plus any fresh boolean anchors).  The relation
for index x links every world to x alone, so ``[x]G`` holds at any world
exactly when G holds at world x.  A many-valued formula holds at world w
when its value under the model's valuation is w.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import LogicSignature, Valuation, eval_mv
from .errors import ModelError
from .semantics import eval_modal
from .terms import And, Atom, BBox, Bot, Box, Or, Top, is_modal, is_mv, modal_subformulas


@dataclass(frozen=True)
class KripkeModel:
    sig: LogicSignature
    atoms: tuple[Atom, ...]
    interp: frozenset  # pairs (world, atom) where the atom holds
    _valuation: Optional[Valuation] = field(default=None, compare=False, repr=False)

    @property
    def worlds(self) -> tuple[int, ...]:
        return tuple(self.sig.y_ids)

    def holds(self, world: int, atom: Atom) -> bool:
        return (world, atom) in self.interp

    @property
    def valuation(self) -> Valuation:
        if self._valuation is None:
            object.__setattr__(self, "_valuation", extract_valuation(self))
        return self._valuation


def build_model(sig: LogicSignature, v: Valuation) -> KripkeModel:
    interp = frozenset((x, a) for a, x in v.items())
    return KripkeModel(sig, tuple(v), interp, v)


def model_from_interp(sig: LogicSignature, atoms: Iterable[Atom], interp: Iterable) -> KripkeModel:
    return KripkeModel(sig, tuple(sorted(set(atoms), key=lambda a: a.key)), frozenset(interp))


def extract_valuation(m: KripkeModel) -> Valuation:
    out = {}
    for atom in m.atoms:
        homes = [w for w in m.worlds if m.holds(w, atom)]
        if len(homes) != 1:
            raise ModelError(f"non-unique world for {atom}: {len(homes)} worlds make it true")
        if not m.sig.in_x(homes[0]):
            raise ModelError(f"{atom} holds only at {m.sig.symbol(homes[0])!r}, which is not in X")
        out[atom] = homes[0]
    return Valuation(out)


def _check_world(m: KripkeModel, w: int) -> None:
    if w not in m.sig.y_ids:
        raise ModelError(f"unknown world {w}")


def sat(m: KripkeModel, w: int, f) -> int:
    """Pointwise satisfaction of a many-valued or modal formula at world ``w``."""
    _check_world(m, w)
    if is_mv(f):
        return int(eval_mv(m.sig, m.valuation, f) == w)
    if isinstance(f, (Box, BBox)):
        return sat(m, f.index, f.inner)
    if isinstance(f, And):
        return sat(m, w, f.left) & sat(m, w, f.right)
    if isinstance(f, Or):
        return sat(m, w, f.left) | sat(m, w, f.right)
    if isinstance(f, Top):
        return 1
    if isinstance(f, Bot):
        return 0
    raise ModelError(f"cannot evaluate {type(f).__name__} in a Kripke model")


def extension(m: KripkeModel, f, cache: Optional[dict] = None) -> frozenset:
    """The set of worlds satisfying ``f``, computed set-wise (not via ``sat``).

    ``cache`` may be a dict reused across calls on the same model.
    """
    if cache is not None:
        hit = cache.get(f)
        if hit is not None:
            return hit
    all_worlds = frozenset(m.worlds)
    if is_mv(f):
        out = frozenset({eval_mv(m.sig, m.valuation, f)}) & all_worlds
    elif isinstance(f, (Box, BBox)):
        out = all_worlds if f.index in extension(m, f.inner, cache) else frozenset()
    elif isinstance(f, And):
        out = extension(m, f.left, cache) & extension(m, f.right, cache)
    elif isinstance(f, Or):
        out = extension(m, f.left, cache) | extension(m, f.right, cache)
    elif isinstance(f, Top):
        out = all_worlds
    elif isinstance(f, Bot):
        out = frozenset()
    else:
        raise ModelError(f"cannot evaluate {type(f).__name__} in a Kripke model")
    if cache is not None:
        cache[f] = out
    return out


def check_two_valued(m: KripkeModel, f) -> bool:
    if not is_modal(f):
        raise ModelError("two-valuedness applies to modal formulae only")
    ext = extension(m, f)
    return not ext or ext == frozenset(m.worlds)


def correspondence_check(sig: LogicSignature, v: Valuation, phi, x: int) -> bool:
    """``v(phi) = x``, the modal truth of ``[x]phi`` and ``||[x]phi|| = W`` all agree."""
    m = build_model(sig, v)
    boxed = Box(x, phi)
    algebraic = eval_mv(sig, v, phi) == x
    modal = eval_modal(sig, v, boxed) == 1
    kripke = extension(m, boxed) == frozenset(m.worlds)
    return algebraic == modal == kripke


def has_false_indexed_bbox(sig: LogicSignature, f) -> bool:
    """True iff some modal-over-modal index in ``f`` is the false anchor."""
    return any(isinstance(g, BBox) and g.index == sig.bool_false for g in modal_subformulas(f))


@dataclass(frozen=True)
class Discrepancy:
    formula: object
    valuation: Valuation
    modal_value: int
    extension: frozenset


def discrepancies(sig: LogicSignature, formulas: Iterable, valuations: Iterable[Valuation]) -> list[Discrepancy]:
    """Cases where the modal valuation and the Kripke extension disagree."""
    models = [(v, build_model(sig, v)) for v in valuations]
    out = []
    for f in formulas:
        for v, m in models:
            alpha = eval_modal(sig, v, f)
            ext = extension(m, f)
            if (alpha == 1) != (ext == frozenset(m.worlds)):
                out.append(Discrepancy(f, v, alpha, ext))
    return out


__all__ = [
    "KripkeModel",
    "build_model",
    "model_from_interp",
    "extract_valuation",
    "sat",
    "extension",
    "check_two_valued",
    "correspondence_check",
    "has_false_indexed_bbox",
    "Discrepancy",
    "discrepancies",
]
