"""Modal valuations, sequent bivaluations and the three entailment relations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .core import LogicSignature, Valuation, all_valuations, eval_mv
from .errors import MvseqError
from .terms import TOP, And, Atom, BBox, Bot, Box, MVar, Or, Sequent, Top, atoms_of


def eval_modal(sig: LogicSignature, v, phi) -> int:
    """Two-valued truth of a modal formula under the lift of ``v``."""
    if isinstance(phi, Box):
        return int(eval_mv(sig, v, phi.inner) == phi.index)
    if isinstance(phi, BBox):
        return int(sig.anchor(eval_modal(sig, v, phi.inner)) == phi.index)
    if isinstance(phi, And):
        # walk the right spine iteratively so long normal forms do not exhaust the stack
        while isinstance(phi, And):
            if not eval_modal(sig, v, phi.left):
                return 0
            phi = phi.right
        return eval_modal(sig, v, phi)
    if isinstance(phi, Or):
        while isinstance(phi, Or):
            if eval_modal(sig, v, phi.left):
                return 1
            phi = phi.right
        return eval_modal(sig, v, phi)
    if isinstance(phi, Top):
        return 1
    if isinstance(phi, Bot):
        return 0
    if isinstance(phi, MVar):
        raise MvseqError(f"schematic placeholder ${phi.name} has no truth value")
    raise TypeError(f"not a modal formula: {phi!r}")


@dataclass(frozen=True)
class ModalValuation:
    """The two-valued valuation induced on modal formulae by a many-valued one."""

    underlying: Valuation
    sig: LogicSignature

    def __call__(self, phi) -> int:
        return eval_modal(self.sig, self.underlying, phi)


def lift(sig: LogicSignature, v: Valuation) -> ModalValuation:
    return ModalValuation(v, sig)


def invert(alpha, universe: Iterable[Atom], sig: LogicSignature) -> Valuation:
    """Recover v from a modal valuation: v(A) is the unique x with alpha([x]A) = 1."""
    out = {}
    for atom in universe:
        hits = [x for x in sig.x_ids if alpha(Box(x, atom))]
        if len(hits) != 1:
            raise MvseqError(f"{atom}: {len(hits)} values satisfy [x]{atom}, expected exactly 1")
        out[atom] = hits[0]
    return Valuation(out)


def satisfies_sequent(sig: LogicSignature, v, s: Sequent) -> int:
    return int(eval_modal(sig, v, s.lhs) <= eval_modal(sig, v, s.rhs))


def query_universe(*items) -> list[Atom]:
    """Atoms of the given formulae/sequents in canonical order."""
    atoms: set[Atom] = set()
    for item in items:
        if isinstance(item, (list, tuple)):
            for sub in item:
                atoms |= atoms_of(sub)
        else:
            atoms |= atoms_of(item)
    return sorted(atoms, key=lambda a: a.key)


def enumerate_models(
    sig: LogicSignature, gamma: Sequence[Sequent], universe: Optional[Iterable[Atom]] = None
) -> Iterator[Valuation]:
    """Valuations over ``universe`` satisfying every sequent of ``gamma``, in lexicographic order."""
    if universe is None:
        universe = query_universe(list(gamma))
    for v in all_valuations(sig, universe):
        if all(satisfies_sequent(sig, v, s) for s in gamma):
            yield v


@dataclass(frozen=True)
class EntailmentResult:
    entailed: bool
    vacuous: bool
    countermodel: Optional[Valuation]
    models_checked: int


def entails_m(
    sig: LogicSignature,
    gamma: Sequence[Sequent],
    s: Sequent,
    universe: Optional[Iterable[Atom]] = None,
) -> EntailmentResult:
    """Does every model of ``gamma`` satisfy ``s``?  Stops at the first countermodel."""
    if universe is None:
        universe = query_universe(list(gamma), s)
    checked = 0
    for v in enumerate_models(sig, gamma, universe):
        checked += 1
        if not satisfies_sequent(sig, v, s):
            return EntailmentResult(False, False, v, checked)
    return EntailmentResult(True, checked == 0, None, checked)


@dataclass(frozen=True)
class InvarianceResult:
    value: Optional[int]
    vacuous: bool
    models_checked: int
    witnesses: tuple = ()  # two models with different values when ``value`` is None


def truth_invariant(
    sig: LogicSignature,
    gamma: Sequence[Sequent],
    phi,
    universe: Optional[Iterable[Atom]] = None,
) -> InvarianceResult:
    """The single value ``phi`` takes in every model of ``gamma``, if there is one."""
    if universe is None:
        universe = query_universe(list(gamma), phi)
    seen: Optional[int] = None
    first: Optional[Valuation] = None
    checked = 0
    for v in enumerate_models(sig, gamma, universe):
        checked += 1
        x = eval_mv(sig, v, phi)
        if seen is None:
            seen, first = x, v
        elif x != seen:
            return InvarianceResult(None, False, checked, (first, v))
    if checked == 0:
        return InvarianceResult(None, True, 0)
    return InvarianceResult(seen, False, checked)


@dataclass(frozen=True)
class MatrixResult:
    entailed: bool
    countermodel: Optional[Valuation]
    models_checked: int


def matrix_entails(
    sig: LogicSignature,
    premises: Sequence,
    phi,
    designated: Iterable[int],
    universe: Optional[Iterable[Atom]] = None,
) -> MatrixResult:
    """Designated-value consequence: every v designating all premises designates ``phi``."""
    designated = frozenset(designated)
    if not designated or not all(sig.in_x(d) for d in designated):
        raise MvseqError("designated set must be a nonempty subset of X")
    if universe is None:
        universe = query_universe(list(premises), phi)
    checked = 0
    for v in all_valuations(sig, universe):
        if all(eval_mv(sig, v, p) in designated for p in premises):
            checked += 1
            if eval_mv(sig, v, phi) not in designated:
                return MatrixResult(False, v, checked)
    return MatrixResult(True, None, checked)


def pin_theory(sig: LogicSignature, formulas: Sequence, value: int) -> list[Sequent]:
    """Encode "each formula takes ``value``" as the sequents ``T |- [value](psi)``."""
    return [Sequent(TOP, Box(value, psi)) for psi in formulas]
