"""Abstract syntax, signatures, parser and printer.

Grammar (ASCII core, Unicode aliases in brackets)::

    formula ::= iff
    iff     ::= imp ("<->" imp)*                 [↔]   left associative
    imp     ::= or ("->" imp)?                   [→]   right associative
    or      ::= and ("|" and)*                   [∨]
    and     ::= unary ("&" unary)*               [∧]
    unary   ::= "~" unary | head var "." formula | atomic     [¬]
    head    ::= "forall" | "exists" | "Q[" tv tv tv "]"       [∀ ∃]
              | "exactly(" int ")" | "atleast(" int ")" | "atmost(" int ")"
    atomic  ::= "(" formula ")" | P | P "(" term ("," term)* ")" | term "=" term
    term    ::= x | c | f "(" term ("," term)* ")"

A quantifier body extends as far right as possible. ``forall`` and ``exists``
are sugar for ``Q[TFF]`` and ``Q[TFT]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from .kernel import (
    EXISTS,
    FORALL,
    AtLeast,
    AtMost,
    CustomTable,
    Exactly,
    MultisetQuantifier,
    QuantifierFunction,
)

__all__ = [
    "Signature", "parse_signature",
    "Var", "Const", "App", "Term",
    "Atom", "Equals", "Not", "And", "Or", "Implies", "Iff", "QF", "MQ", "Formula",
    "ParseError", "parse", "infer_signature", "print_formula", "print_term",
    "free_variables", "all_names", "fresh_variable", "substitute", "symbols_of",
    "forall", "exists", "conj", "disj",
]

RESERVED = frozenset({"forall", "exists", "exactly", "atleast", "atmost"})


class ParseError(ValueError):
    def __init__(self, message: str, pos: Optional[int] = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at position {pos})")


# ---------------------------------------------------------------------------
# signatures


@dataclass(frozen=True)
class Signature:
    constants: Tuple[str, ...] = ()
    functions: Tuple[Tuple[str, int], ...] = ()
    predicates: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        names = list(self.constants) + [n for n, _ in self.functions] + [n for n, _ in self.predicates]
        seen = set()
        for n in names:
            if n in seen:
                raise ValueError(f"symbol {n!r} declared twice")
            if n in RESERVED or not _IDENT_RE.fullmatch(n):
                raise ValueError(f"bad symbol name {n!r}")
            seen.add(n)
        for n, k in self.functions:
            if k < 1:
                raise ValueError(f"function {n} needs arity >= 1")
        for n, k in self.predicates:
            if k < 0:
                raise ValueError(f"predicate {n} has negative arity")

    @classmethod
    def build(cls, constants: Iterable[str] = (), functions: Dict[str, int] = None,
              predicates: Dict[str, int] = None) -> "Signature":
        return cls(tuple(constants), tuple((functions or {}).items()),
                   tuple((predicates or {}).items()))

    @property
    def function_arity(self) -> Dict[str, int]:
        return dict(self.functions)

    @property
    def predicate_arity(self) -> Dict[str, int]:
        return dict(self.predicates)

    def names(self) -> FrozenSet[str]:
        return frozenset(self.constants) | frozenset(self.function_arity) | frozenset(self.predicate_arity)

    def merge(self, other: "Signature") -> "Signature":
        consts = list(self.constants) + [c for c in other.constants if c not in self.constants]
        funcs = dict(self.functions)
        preds = dict(self.predicates)
        for n, k in other.functions:
            if funcs.setdefault(n, k) != k:
                raise ValueError(f"function {n} used with arities {funcs[n]} and {k}")
        for n, k in other.predicates:
            if preds.setdefault(n, k) != k:
                raise ValueError(f"predicate {n} used with arities {preds[n]} and {k}")
        return Signature.build(consts, funcs, preds)

    def render(self) -> str:
        lines = [f"const {c}" for c in self.constants]
        lines += [f"fun {n}/{k}" for n, k in self.functions]
        lines += [f"pred {n}/{k}" for n, k in self.predicates]
        return "\n".join(lines) + ("\n" if lines else "")


_SIG_LINE = re.compile(r"(const)\s+(\w+)|(fun|pred)\s+(\w+)\s*/\s*(\d+)")


def parse_signature(text: str) -> Signature:
    """Read the line format ``const a`` / ``fun f/2`` / ``pred P/1``; ``#`` starts a comment."""
    consts, funcs, preds = [], {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SIG_LINE.fullmatch(line)
        if not m:
            raise ParseError(f"bad signature line {lineno}: {raw!r}")
        if m.group(1):
            consts.append(m.group(2))
        elif m.group(3) == "fun":
            funcs[m.group(4)] = int(m.group(5))
        else:
            preds[m.group(4)] = int(m.group(5))
    return Signature.build(consts, funcs, preds)


# ---------------------------------------------------------------------------
# terms and formulas


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    func: str
    args: Tuple["Term", ...]

    def __str__(self):
        return print_term(self)


Term = Union[Var, Const, App]


class _Printable:
    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Atom(_Printable):
    pred: str
    args: Tuple[Term, ...] = ()


@dataclass(frozen=True)
class Equals(_Printable):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(_Printable):
    body: "Formula"


@dataclass(frozen=True)
class And(_Printable):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or(_Printable):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies(_Printable):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff(_Printable):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class QF(_Printable):
    """A logical quantifier: binds ``var`` and applies a quantifier function."""
    q: QuantifierFunction
    var: str
    body: "Formula"


@dataclass(frozen=True)
class MQ(_Printable):
    """A cardinal quantifier: binds ``var`` and applies a multiset rule."""
    m: MultisetQuantifier
    var: str
    body: "Formula"


Formula = Union[Atom, Equals, Not, And, Or, Implies, Iff, QF, MQ]
BINARY = (And, Or, Implies, Iff)


def forall(var: str, body: Formula) -> QF:
    return QF(FORALL, var, body)


def exists(var: str, body: Formula) -> QF:
    return QF(EXISTS, var, body)


def conj(parts: List[Formula]) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: List[Formula]) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


# ---------------------------------------------------------------------------
# printing

_ASCII = {And: "&", Or: "|", Implies: "->", Iff: "<->", Not: "~"}
_UNICODE = {And: "∧", Or: "∨", Implies: "→", Iff: "↔", Not: "¬"}


def print_term(t: Term) -> str:
    if isinstance(t, App):
        return f"{t.func}(" + ", ".join(print_term(a) for a in t.args) + ")"
    return t.name


def _head(node, unicode: bool) -> str:
    if isinstance(node, QF):
        if node.q == FORALL:
            return "∀" if unicode else "forall "
        if node.q == EXISTS:
            return "∃" if unicode else "exists "
        return node.q.name + " "
    if isinstance(node.m, CustomTable):
        raise ValueError("table-defined multiset quantifiers have no concrete syntax")
    return node.m.name + " "


def print_formula(phi: Formula, unicode: bool = False) -> str:
    """Canonical text. Binary connectives are always parenthesized."""
    ops = _UNICODE if unicode else _ASCII

    def operand(f):
        s = go(f)
        return f"({s})" if isinstance(f, (QF, MQ)) else s

    def go(f):
        if isinstance(f, Atom):
            if not f.args:
                return f.pred
            return f"{f.pred}(" + ", ".join(print_term(a) for a in f.args) + ")"
        if isinstance(f, Equals):
            return f"{print_term(f.left)} = {print_term(f.right)}"
        if isinstance(f, Not):
            return ops[Not] + operand(f.body)
        if isinstance(f, BINARY):
            return f"({operand(f.left)} {ops[type(f)]} {operand(f.right)})"
        if isinstance(f, (QF, MQ)):
            return f"{_head(f, unicode)}{f.var}. {go(f.body)}"
        raise TypeError(f"not a formula: {f!r}")

    return go(phi)


# ---------------------------------------------------------------------------
# variables


def _term_vars(t: Term, out: set):
    if isinstance(t, Var):
        out.add(t.name)
    elif isinstance(t, App):
        for a in t.args:
            _term_vars(a, out)


def free_variables(phi: Formula) -> FrozenSet[str]:
    out: set = set()
    if isinstance(phi, Atom):
        for a in phi.args:
            _term_vars(a, out)
    elif isinstance(phi, Equals):
        _term_vars(phi.left, out)
        _term_vars(phi.right, out)
    elif isinstance(phi, Not):
        out |= free_variables(phi.body)
    elif isinstance(phi, BINARY):
        out |= free_variables(phi.left) | free_variables(phi.right)
    elif isinstance(phi, (QF, MQ)):
        out |= free_variables(phi.body) - {phi.var}
    else:
        raise TypeError(f"not a formula: {phi!r}")
    return frozenset(out)


def _term_names(t: Term, out: set):
    if isinstance(t, App):
        out.add(t.func)
        for a in t.args:
            _term_names(a, out)
    else:
        out.add(t.name)


def all_names(phi: Formula) -> FrozenSet[str]:
    """Every name in ``phi``: variables (free or bound) and symbols."""
    out: set = set()

    def go(f):
        if isinstance(f, Atom):
            out.add(f.pred)
            for a in f.args:
                _term_names(a, out)
        elif isinstance(f, Equals):
            _term_names(f.left, out)
            _term_names(f.right, out)
        elif isinstance(f, Not):
            go(f.body)
        elif isinstance(f, BINARY):
            go(f.left)
            go(f.right)
        else:
            out.add(f.var)
            go(f.body)

    go(phi)
    return frozenset(out)


def fresh_variable(avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    i = 0
    while f"v{i}" in avoid:
        i += 1
    return f"v{i}"


def _subst_term(t: Term, var: str, new: Term) -> Term:
    if isinstance(t, Var):
        return new if t.name == var else t
    if isinstance(t, App):
        return App(t.func, tuple(_subst_term(a, var, new) for a in t.args))
    return t


def substitute(phi: Formula, var: str, new: Term) -> Formula:
    """Replace free occurrences of ``var`` by ``new``; refuses to capture."""
    new_vars: set = set()
    _term_vars(new, new_vars)

    def go(f):
        if isinstance(f, Atom):
            return Atom(f.pred, tuple(_subst_term(a, var, new) for a in f.args))
        if isinstance(f, Equals):
            return Equals(_subst_term(f.left, var, new), _subst_term(f.right, var, new))
        if isinstance(f, Not):
            return Not(go(f.body))
        if isinstance(f, BINARY):
            return type(f)(go(f.left), go(f.right))
        if f.var == var:
            return f
        if f.var in new_vars and var in free_variables(f.body):
            raise ValueError(f"substituting for {var} would capture {f.var}")
        return type(f)(f.q if isinstance(f, QF) else f.m, f.var, go(f.body))

    return go(phi)


def symbols_of(phi: Formula) -> Signature:
    """The symbols ``phi`` uses, as a signature. Unbound names are not included."""
    consts: list = []
    funcs: dict = {}
    preds: dict = {}

    def term(t):
        if isinstance(t, Const):
            if t.name not in consts:
                consts.append(t.name)
        elif isinstance(t, App):
            if funcs.setdefault(t.func, len(t.args)) != len(t.args):
                raise ValueError(f"function {t.func} used with two arities")
            for a in t.args:
                term(a)

    def go(f):
        if isinstance(f, Atom):
            if preds.setdefault(f.pred, len(f.args)) != len(f.args):
                raise ValueError(f"predicate {f.pred} used with two arities")
            for a in f.args:
                term(a)
        elif isinstance(f, Equals):
            term(f.left)
            term(f.right)
        elif isinstance(f, Not):
            go(f.body)
        elif isinstance(f, BINARY):
            go(f.left)
            go(f.right)
        else:
            go(f.body)

    go(phi)
    return Signature.build(consts, funcs, preds)


# ---------------------------------------------------------------------------
# lexer

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<qlit>Q\[[TF]{3}\])
  | (?P<mqhead>(?:exactly|atleast|atmost)\(\s*\d+\s*\))
  | (?P<iff><->|↔)
  | (?P<imp>->|→)
  | (?P<and>&|∧)
  | (?P<or>\||∨)
  | (?P<not>~|¬)
  | (?P<forall>∀)
  | (?P<exists>∃)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<lp>\()
  | (?P<rp>\))
  | (?P<comma>,)
  | (?P<dot>\.)
  | (?P<eq>=)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group(kind)
            if kind == "ident" and tok in ("forall", "exists"):
                kind = tok
            elif kind == "ident" and tok in RESERVED:
                raise ParseError(f"{tok} must be followed by (k)", pos)
            out.append(Token(kind, tok, pos))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


# ---------------------------------------------------------------------------
# parser


class _Backtrack(Exception):
    pass


class _Parser:
    def __init__(self, text: str, sig: Optional[Signature], sentence: bool):
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig
        self.sentence = sentence
        self.bound: List[str] = []
        # inference mode records (kind, name, arity, pos)
        self.uses: List[Tuple[str, str, int, int]] = []

    # helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind: str) -> Token:
        t = self.tok
        if t.kind != kind:
            what = repr(t.text) if t.text else "end of input"
            raise ParseError(f"expected {kind}, found {what}", t.pos)
        self.i += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    # grammar
    def parse(self) -> Formula:
        f = self.formula()
        if self.tok.kind != "eof":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return f

    def formula(self) -> Formula:
        left = self.implication()
        while self.accept("iff"):
            left = Iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.accept("imp"):
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.accept("or"):
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.accept("and"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        t = self.tok
        if self.accept("not"):
            return Not(self.unary())
        if t.kind in ("forall", "exists", "qlit", "mqhead"):
            self.i += 1
            return self.quantified(t)
        return self.atomic()

    def quantified(self, head: Token) -> Formula:
        vt = self.take("ident")
        if self.sig is not None and vt.text in self.sig.names():
            raise ParseError(f"cannot bind symbol {vt.text!r}", vt.pos)
        self.take("dot")
        self.bound.append(vt.text)
        try:
            body = self.formula()
        finally:
            self.bound.pop()
        if head.kind == "forall":
            return QF(FORALL, vt.text, body)
        if head.kind == "exists":
            return QF(EXISTS, vt.text, body)
        if head.kind == "qlit":
            return QF(QuantifierFunction(*(c == "T" for c in head.text[2:5])), vt.text, body)
        name, k = re.fullmatch(r"(\w+)\(\s*(\d+)\s*\)", head.text).groups()
        family = {"exactly": Exactly, "atleast": AtLeast, "atmost": AtMost}[name]
        return MQ(family(int(k)), vt.text, body)

    def atomic(self) -> Formula:
        t = self.tok
        if t.kind == "lp":
            self.i += 1
            f = self.formula()
            self.take("rp")
            return f
        if t.kind != "ident":
            what = repr(t.text) if t.text else "end of input"
            raise ParseError(f"expected a formula, found {what}", t.pos)
        if self.sig is not None:
            if t.text in self.sig.predicate_arity:
                return self.atom()
            return self.equation()
        # inference: an equation if a term followed by '=' parses here
        mark, umark = self.i, len(self.uses)
        try:
            return self.equation(backtrack=True)
        except (_Backtrack, ParseError):
            self.i = mark
            del self.uses[umark:]
        return self.atom()

    def equation(self, backtrack: bool = False) -> Formula:
        left = self.term()
        if self.tok.kind != "eq":
            if backtrack:
                raise _Backtrack
            if isinstance(left, (Var, Const)) and self.sig is not None and left.name not in self.sig.names() \
                    and left.name not in self.bound:
                raise ParseError(f"unknown predicate {left.name!r}", self.toks[self.i - 1].pos)
            raise ParseError(f"expected '=', found {self.tok.text or 'end of input'!r}", self.tok.pos)
        self.i += 1
        return Equals(left, self.term())

    def args(self) -> Tuple[Term, ...]:
        self.take("lp")
        out = [self.term()]
        while self.accept("comma"):
            out.append(self.term())
        self.take("rp")
        return tuple(out)

    def atom(self) -> Formula:
        t = self.take("ident")
        args = self.args() if self.tok.kind == "lp" else ()
        if self.sig is None:
            self.uses.append(("pred", t.text, len(args), t.pos))
        else:
            k = self.sig.predicate_arity[t.text]
            if k != len(args):
                raise ParseError(f"predicate {t.text} expects {k} arguments, got {len(args)}", t.pos)
        return Atom(t.text, args)

    def term(self) -> Term:
        t = self.take("ident")
        name = t.text
        if self.tok.kind == "lp":
            args = self.args()
            if self.sig is None:
                self.uses.append(("fun", name, len(args), t.pos))
                return App(name, args)
            fa = self.sig.function_arity
            if name not in fa:
                raise ParseError(f"unknown function symbol {name!r}", t.pos)
            if fa[name] != len(args):
                raise ParseError(f"function {name} expects {fa[name]} arguments, got {len(args)}", t.pos)
            return App(name, args)
        if name in self.bound:
            return Var(name)
        if self.sig is None:
            self.uses.append(("const", name, 0, t.pos))
            return Const(name)
        if name in self.sig.constants:
            return Const(name)
        if name in self.sig.function_arity:
            raise ParseError(f"function {name} used without arguments", t.pos)
        if name in self.sig.predicate_arity:
            raise ParseError(f"predicate {name} used as a term", t.pos)
        if self.sentence:
            raise ParseError(f"unbound name {name!r}", t.pos)
        return Var(name)


def parse(text: str, sig: Optional[Signature] = None, sentence: bool = False) -> Formula:
    """Parse ``text`` against ``sig``.

    Without a signature, one is inferred first (see :func:`infer_signature`).
    With ``sentence=True`` a name that is neither bound nor a symbol is an error;
    otherwise it is read as a free variable.
    """
    if sig is None:
        sig = infer_signature([text])
    return _Parser(text, sig, sentence).parse()


def infer_signature(texts: Iterable[str], base: Optional[Signature] = None) -> Signature:
    """Guess a signature from usage.

    A name applied in formula position is a predicate, a name applied in term
    position is a function, and an unbound bare name in term position is a
    constant. Names already in ``base`` keep their declared kind.
    """
    sig = base or Signature()
    for text in texts:
        p = _Parser(text, None, False)
        p.parse()
        consts, funcs, preds = [], {}, {}
        for kind, name, k, pos in p.uses:
            if kind == "const":
                if name not in consts:
                    consts.append(name)
                continue
            table = funcs if kind == "fun" else preds
            if table.setdefault(name, k) != k:
                raise ParseError(f"{name} used with arities {table[name]} and {k}", pos)
        known = sig.names()
        clash = (set(consts) & set(funcs)) | (set(consts) & set(preds)) | (set(funcs) & set(preds))
        if clash:
            raise ParseError(f"symbol used in two roles: {sorted(clash)}")
        extra = Signature.build(
            [c for c in consts if c not in known],
            {n: k for n, k in funcs.items() if n not in known or n in sig.function_arity},
            {n: k for n, k in preds.items() if n not in known or n in sig.predicate_arity},
        )
        sig = sig.merge(extra)
    return sig
