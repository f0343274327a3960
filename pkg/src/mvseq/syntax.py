"""Parsers and printers for the formula, modal and sequent grammars.

Grammar (whitespace-insensitive)::

    mv      := NAME | NAME '(' NAME {',' NAME} ')' | '#' NAME | NAME '(' mv {',' mv} ')'
    modal   := 'T' | 'F' | '$' NAME | '[' NAME ']' '(' mv ')' | '[' NAME ']' '(' modal ')'
             | '(' modal '&' modal ')' | '(' modal '|' modal ')'
    sequent := modal '|-' modal

``NAME(...)`` is an application when NAME is a declared connective and a
ground atom otherwise.  ``[v](...)`` reads its body as modal only when v is a
boolean anchor and the body starts with ``T``, ``F``, ``$``, ``[`` or ``(``.
``$Name`` is a schematic placeholder used by axiom schemas and substitution.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import IDENT_RE, RESERVED, LogicSignature
from .errors import ParseError
from .terms import (
    App,
    Atom,
    BBox,
    Bot,
    Box,
    Const,
    MVar,
    And,
    Or,
    Sequent,
    Top,
    TOP,
    BOT,
    ModalLiteral,
    spine,
)

_TOKEN_RE = re.compile(r"(\s+)|(\|-)|([A-Za-z0-9_]+)|(.)", re.S)
_MODAL_START = {"T", "F", "$", "[", "("}


@dataclass(frozen=True)
class _Tok:
    kind: str  # "name", "punct", "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        ws, arrow, name, other = m.groups()
        col = m.start() - line_start + 1
        if ws is not None:
            for k, ch in enumerate(ws):
                if ch == "\n":
                    line, line_start = line + 1, m.start() + k + 1
        elif arrow is not None:
            toks.append(_Tok("punct", "|-", line, col))
        elif name is not None:
            toks.append(_Tok("name", name, line, col))
        elif other in "()[],#&|$":
            toks.append(_Tok("punct", other, line, col))
        else:
            raise ParseError(f"unexpected character {other!r}", line, col)
    toks.append(_Tok("eof", "", line, len(text) - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str, sig: LogicSignature):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.cur
        raise ParseError(msg, tok.line, tok.col)

    def take(self, text: str | None = None, kind: str | None = None) -> _Tok:
        tok = self.cur
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            self.fail(f"expected {want}, found {got}")
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.cur.kind != "eof" and self.cur.text == text

    def end(self):
        if self.cur.kind != "eof":
            self.fail(f"unexpected trailing input {self.cur.text!r}")

    # many-valued layer

    def value(self, tok: _Tok) -> int:
        if not self.sig.has_value(tok.text):
            self.fail(f"unknown truth value {tok.text!r}", tok)
        return self.sig.value_id(tok.text)

    def mv(self):
        if self.at("#"):
            self.take("#")
            tok = self.take(kind="name")
            if self.sig.has_value(tok.text):
                v = self.sig.value_id(tok.text)
                if not self.sig.in_x(v):
                    self.fail(f"constant {tok.text!r} is not a member of X", tok)
                return Const(v)
            if self.sig.has_connective(tok.text) and self.sig.connective(tok.text).arity == 0:
                return App(tok.text, ())
            self.fail(f"unknown constant {tok.text!r}", tok)
        tok = self.take(kind="name")
        name = tok.text
        if self.sig.has_connective(name):
            conn = self.sig.connective(name)
            if conn.arity == 0:
                self.fail(f"nullary connective {name!r} must be written #{name}", tok)
            self.take("(")
            args = [self.mv()]
            while self.at(","):
                self.take(",")
                args.append(self.mv())
            self.take(")")
            if len(args) != conn.arity:
                self.fail(f"{name!r} takes {conn.arity} argument(s), got {len(args)}", tok)
            return App(name, tuple(args))
        if not IDENT_RE.match(name):
            self.fail(f"{name!r} is not an identifier", tok)
        if name in RESERVED:
            self.fail(f"{name!r} is reserved for the modal constants", tok)
        if self.at("("):
            self.take("(")
            args = [self.take(kind="name").text]
            while self.at(","):
                self.take(",")
                args.append(self.take(kind="name").text)
            self.take(")")
            return Atom(name, tuple(args))
        return Atom(name)

    # modal layer

    def modal(self):
        tok = self.cur
        if tok.kind == "name" and tok.text == "T":
            self.i += 1
            return TOP
        if tok.kind == "name" and tok.text == "F":
            self.i += 1
            return BOT
        if self.at("$"):
            self.take("$")
            return MVar(self.take(kind="name").text)
        if self.at("["):
            self.take("[")
            vtok = self.take(kind="name")
            index = self.value(vtok)
            self.take("]")
            self.take("(")
            body_tok = self.cur
            if self.sig.is_anchor(index) and body_tok.text in _MODAL_START and body_tok.kind != "eof":
                inner = self.modal()
                self.take(")")
                return BBox(index, inner)
            if body_tok.text in _MODAL_START and body_tok.kind != "eof":
                self.fail(f"modal body under [{vtok.text}], which is not a boolean anchor", vtok)
            if not self.sig.in_x(index):
                self.fail(f"[{vtok.text}] over a many-valued formula, but {vtok.text!r} is not in X", vtok)
            inner = self.mv()
            self.take(")")
            return Box(index, inner)
        if self.at("("):
            self.take("(")
            left = self.modal()
            if self.at("&"):
                self.take("&")
                ctor = And
            elif self.at("|"):
                self.take("|")
                ctor = Or
            else:
                self.fail("expected '&' or '|'")
            right = self.modal()
            self.take(")")
            return ctor(left, right)
        got = repr(tok.text) if tok.kind != "eof" else "end of input"
        self.fail(f"expected a modal formula, found {got}")


def parse_mv(text: str, sig: LogicSignature):
    p = _Parser(text, sig)
    out = p.mv()
    p.end()
    return out


def parse_modal(text: str, sig: LogicSignature):
    p = _Parser(text, sig)
    out = p.modal()
    p.end()
    return out


def parse_sequent(text: str, sig: LogicSignature) -> Sequent:
    p = _Parser(text, sig)
    lhs = p.modal()
    p.take("|-")
    rhs = p.modal()
    p.end()
    return Sequent(lhs, rhs)


def parse_gamma(text: str, sig: LogicSignature) -> list[Sequent]:
    """One sequent per line; blank lines and lines starting with ``#`` are skipped."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            out.append(parse_sequent(stripped, sig))
        except ParseError as exc:
            raise ParseError(str(exc).rsplit(" (line", 1)[0], lineno, exc.column) from None
    return out


# ------------------------------------------------------------------ printing


def format_mv(phi, sig: LogicSignature) -> str:
    if isinstance(phi, Atom):
        return str(phi)
    if isinstance(phi, Const):
        return "#" + sig.symbol(phi.value)
    if isinstance(phi, App):
        if not phi.args:
            return "#" + phi.op
        return f"{phi.op}({','.join(format_mv(a, sig) for a in phi.args)})"
    raise TypeError(f"not a many-valued formula: {phi!r}")


def format_modal(f, sig: LogicSignature) -> str:
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, MVar):
        return "$" + f.name
    if isinstance(f, Box):
        return f"[{sig.symbol(f.index)}]({format_mv(f.inner, sig)})"
    if isinstance(f, BBox):
        return f"[{sig.symbol(f.index)}]({format_modal(f.inner, sig)})"
    if isinstance(f, (And, Or)):
        op = " & " if isinstance(f, And) else " | "
        items = spine(f, type(f))
        head = "".join("(" + format_modal(item, sig) + op for item in items[:-1])
        return head + format_modal(items[-1], sig) + ")" * (len(items) - 1)
    if isinstance(f, ModalLiteral):
        return format_modal(f.to_formula(), sig)
    raise TypeError(f"not a modal formula: {f!r}")


def format_sequent(s: Sequent, sig: LogicSignature) -> str:
    return f"{format_modal(s.lhs, sig)} |- {format_modal(s.rhs, sig)}"


def format_any(f, sig: LogicSignature) -> str:
    if isinstance(f, Sequent):
        return format_sequent(f, sig)
    if isinstance(f, (Atom, Const, App)):
        return format_mv(f, sig)
    return format_modal(f, sig)


# ------------------------------------------------------------ well-formedness


def mv_diagnostics(phi, sig: LogicSignature) -> list[str]:
    out: list[str] = []
    if isinstance(phi, Atom):
        if not IDENT_RE.match(phi.predicate) or phi.predicate in RESERVED:
            out.append(f"atom {phi.predicate!r}: bad predicate name")
        if sig.has_connective(phi.predicate):
            out.append(f"atom {phi.predicate!r}: clashes with a connective")
    elif isinstance(phi, Const):
        if not sig.in_x(phi.value):
            out.append(f"constant {phi.value}: not a member of X")
    elif isinstance(phi, App):
        if not sig.has_connective(phi.op):
            out.append(f"unknown connective {phi.op!r}")
        else:
            arity = sig.connective(phi.op).arity
            if arity != len(phi.args):
                out.append(f"{phi.op!r}: arity {arity}, applied to {len(phi.args)}")
        for a in phi.args:
            out.extend(mv_diagnostics(a, sig))
    else:
        out.append(f"not a many-valued formula: {type(phi).__name__}")
    return out


def modal_diagnostics(f, sig: LogicSignature) -> list[str]:
    out: list[str] = []
    if isinstance(f, (Top, Bot, MVar)):
        pass
    elif isinstance(f, Box):
        if not sig.in_x(f.index):
            out.append(f"[{f.index}] over a many-valued formula: index not in X")
        out.extend(mv_diagnostics(f.inner, sig))
    elif isinstance(f, BBox):
        if not sig.is_anchor(f.index):
            out.append(f"[{f.index}] over a modal formula: index is not a boolean anchor")
        out.extend(modal_diagnostics(f.inner, sig))
    elif isinstance(f, (And, Or)):
        out.extend(modal_diagnostics(f.left, sig))
        out.extend(modal_diagnostics(f.right, sig))
    else:
        out.append(f"not a modal formula: {type(f).__name__}")
    return out


def well_formed(f, sig: LogicSignature) -> tuple[bool, list[str]]:
    """Check a modal formula or sequent against the signature."""
    if isinstance(f, Sequent):
        diags = modal_diagnostics(f.lhs, sig) + modal_diagnostics(f.rhs, sig)
    else:
        diags = modal_diagnostics(f, sig)
    return (not diags, diags)
