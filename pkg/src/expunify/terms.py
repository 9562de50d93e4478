"""Terms over exp/g/*/@ (plus inv, i and the unit 1 for the abelian-group oracle).

Terms are immutable, hashable dataclasses. Variables start with an uppercase
letter, free constants with a lowercase one. Names starting with ``_`` are
reserved for generated variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

__all__ = [
    "Var", "Const", "One", "Exp", "G", "Mul", "CMul", "Inv", "IInv",
    "Term", "Substitution", "ParseError", "parse_term", "parse_equation",
    "format_term", "apply_subst", "term_vars", "term_depth", "is_fresh_name",
    "name_key", "has_group_symbols", "RESERVED_PREFIX",
]

RESERVED_PREFIX = "_"


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Const:
    name: str


@dataclass(frozen=True, slots=True)
class One:
    pass


@dataclass(frozen=True, slots=True)
class Exp:
    base: Term
    exponent: Term


@dataclass(frozen=True, slots=True)
class G:
    arg: Term


@dataclass(frozen=True, slots=True)
class Mul:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class CMul:
    """The exponent-level product, written ``@`` in text."""

    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Inv:
    arg: Term


@dataclass(frozen=True, slots=True)
class IInv:
    arg: Term


Term = Union[Var, Const, One, Exp, G, Mul, CMul, Inv, IInv]
Substitution = Mapping[str, Term]

_FUNCTIONS = {"exp": 2, "g": 1, "inv": 1, "i": 1}


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def is_fresh_name(name: str) -> bool:
    return name.startswith(RESERVED_PREFIX)


def name_key(name: str) -> tuple:
    """Order parsed names before generated ones; generated ones by index."""
    if is_fresh_name(name):
        digits = re.sub(r"\D", "", name)
        return (1, int(digits) if digits else -1, name)
    return (0, 0, name)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|(\d+)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("ident", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("num", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_fresh: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_fresh = allow_fresh

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if kind != "op" or val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def term(self) -> Term:
        left = self.atom()
        chain_op = None
        while True:
            kind, val, pos = self.peek()
            if kind != "op" or val not in "*@":
                return left
            if chain_op is not None and val != chain_op:
                raise ParseError("mixing '*' and '@' requires parentheses", pos)
            chain_op = val
            self.take()
            right = self.atom()
            left = Mul(left, right) if val == "*" else CMul(left, right)

    def atom(self) -> Term:
        kind, val, pos = self.take()
        if kind == "num":
            if val != "1":
                raise ParseError(f"unexpected number {val!r}", pos)
            return One()
        if kind == "op" and val == "(":
            inner = self.term()
            self.expect(")")
            return inner
        if kind != "ident":
            raise ParseError(f"unexpected {val or 'end of input'!r}", pos)
        nxt = self.peek()
        if nxt[0] == "op" and nxt[1] == "(":
            if val not in _FUNCTIONS:
                raise ParseError(f"unknown operator {val!r}", pos)
            self.take()
            args = [self.term()]
            for _ in range(_FUNCTIONS[val] - 1):
                self.expect(",")
                args.append(self.term())
            self.expect(")")
            match val:
                case "exp":
                    return Exp(args[0], args[1])
                case "g":
                    return G(args[0])
                case "inv":
                    return Inv(args[0])
                case _:
                    return IInv(args[0])
        if val in _FUNCTIONS:
            raise ParseError(f"operator {val!r} used without arguments", pos)
        if is_fresh_name(val):
            if not self.allow_fresh:
                raise ParseError(f"name {val!r} uses the reserved '_' prefix", pos)
            return Var(val)
        if val[0].isupper():
            return Var(val)
        return Const(val)


def parse_term(text: str, *, allow_fresh: bool = False) -> Term:
    """Parse a term. ``*`` and ``@`` chains are left-associative and may not be mixed."""
    p = _Parser(text, allow_fresh)
    t = p.term()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing {val!r}", pos)
    return t


def parse_equation(text: str, *, allow_fresh: bool = False) -> tuple[Term, Term]:
    """Parse ``s =? t``."""
    left, sep, right = text.partition("=?")
    if not sep:
        raise ParseError("expected '=?'", len(text))
    try:
        s = parse_term(left, allow_fresh=allow_fresh)
    except ParseError as e:
        raise ParseError(str(e).rsplit(" at position", 1)[0], e.pos) from None
    try:
        t = parse_term(right, allow_fresh=allow_fresh)
    except ParseError as e:
        offset = len(left) + 2
        raise ParseError(str(e).rsplit(" at position", 1)[0], e.pos + offset) from None
    return s, t


# ---------------------------------------------------------------- printing

def format_term(t: Term) -> str:
    match t:
        case Var(name) | Const(name):
            return name
        case One():
            return "1"
        case Exp(b, e):
            return f"exp({format_term(b)}, {format_term(e)})"
        case G(a):
            return f"g({format_term(a)})"
        case Inv(a):
            return f"inv({format_term(a)})"
        case IInv(a):
            return f"i({format_term(a)})"
        case Mul(l, r) | CMul(l, r):
            cls = type(t)
            op = " * " if cls is Mul else " @ "
            ls = format_term(l)
            if isinstance(l, (Mul, CMul)) and type(l) is not cls:
                ls = f"({ls})"
            rs = format_term(r)
            if isinstance(r, (Mul, CMul)):
                rs = f"({rs})"
            return ls + op + rs
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------- traversal

def apply_subst(s: Substitution, t: Term) -> Term:
    """Simultaneous substitution; unbound variables are left alone."""
    if not s:
        return t
    match t:
        case Var(name):
            return s.get(name, t)
        case Const() | One():
            return t
        case Exp(b, e):
            return Exp(apply_subst(s, b), apply_subst(s, e))
        case G(a):
            return G(apply_subst(s, a))
        case Mul(l, r):
            return Mul(apply_subst(s, l), apply_subst(s, r))
        case CMul(l, r):
            return CMul(apply_subst(s, l), apply_subst(s, r))
        case Inv(a):
            return Inv(apply_subst(s, a))
        case IInv(a):
            return IInv(apply_subst(s, a))
    raise TypeError(f"not a term: {t!r}")


def _walk(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        match u:
            case Exp(a, b) | Mul(a, b) | CMul(a, b):
                stack.append(b)
                stack.append(a)
            case G(a) | Inv(a) | IInv(a):
                stack.append(a)


def term_vars(t: Term) -> list[str]:
    """Variable names in left-to-right first-occurrence order."""
    seen: dict[str, None] = {}
    for u in _walk(t):
        if isinstance(u, Var):
            seen.setdefault(u.name)
    return list(seen)


def term_depth(t: Term) -> int:
    """Leaves have depth 1."""
    match t:
        case Exp(a, b) | Mul(a, b) | CMul(a, b):
            return 1 + max(term_depth(a), term_depth(b))
        case G(a) | Inv(a) | IInv(a):
            return 1 + term_depth(a)
    return 1


def has_group_symbols(t: Term) -> bool:
    return any(isinstance(u, (Inv, IInv, One)) for u in _walk(t))
