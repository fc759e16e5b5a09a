"""Truth-value algebra.

Truth values are plain Python ``bool``. A quantifier function reads only which
truth values occur (a :class:`TruthSet`); a multiset quantifier reads how often
each occurs (a :class:`CountPair`).
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple, Tuple, Union

__all__ = [
    "TruthSet",
    "QuantifierFunction",
    "FORALL",
    "EXISTS",
    "CountPair",
    "Exactly",
    "AtLeast",
    "AtMost",
    "CustomTable",
    "MultisetQuantifier",
    "BooleanFunction",
    "qf_eval",
    "support_of",
    "mq_eval",
    "enumerate_quantifier_functions",
    "as_multiset",
    "parse_quantifier_literal",
    "parse_multiset_literal",
    "tv_letter",
]


def tv_letter(value: bool) -> str:
    return "T" if value else "F"


class TruthSet(enum.Enum):
    """A non-empty subset of {True, False}."""

    ONLY_TRUE = frozenset({True})
    ONLY_FALSE = frozenset({False})
    MIXED = frozenset({True, False})

    @classmethod
    def of(cls, values) -> "TruthSet":
        s = frozenset(bool(v) for v in values)
        if not s:
            raise ValueError("a truth set is never empty")
        return cls(s)

    def union(self, other: "TruthSet") -> "TruthSet":
        return TruthSet(self.value | other.value)

    __or__ = union

    def __contains__(self, value) -> bool:
        return value in self.value


_LITERAL_RE = re.compile(r"Q\[([TF])([TF])([TF])\]\Z")


@dataclass(frozen=True)
class QuantifierFunction:
    """A total map from the three truth sets to truth values.

    Fields are listed in the order of the display name ``Q[XYZ]``.
    """

    on_only_true: bool
    on_only_false: bool
    on_mixed: bool

    def __call__(self, s: TruthSet) -> bool:
        return qf_eval(self, s)

    @property
    def triple(self) -> Tuple[bool, bool, bool]:
        return (self.on_only_true, self.on_only_false, self.on_mixed)

    @property
    def name(self) -> str:
        return "Q[" + "".join(tv_letter(b) for b in self.triple) + "]"

    @classmethod
    def from_map(cls, f: Callable[[TruthSet], bool]) -> "QuantifierFunction":
        return cls(bool(f(TruthSet.ONLY_TRUE)), bool(f(TruthSet.ONLY_FALSE)),
                   bool(f(TruthSet.MIXED)))

    def __str__(self) -> str:
        return self.name


FORALL = QuantifierFunction(True, False, False)
EXISTS = QuantifierFunction(True, False, True)


def qf_eval(q: QuantifierFunction, s: TruthSet) -> bool:
    if s is TruthSet.ONLY_TRUE:
        return q.on_only_true
    if s is TruthSet.ONLY_FALSE:
        return q.on_only_false
    return q.on_mixed


def enumerate_quantifier_functions() -> list:
    """All 8 quantifier functions, lexicographic on the triple with True < False."""
    return [QuantifierFunction(*t) for t in itertools.product((True, False), repeat=3)]


class CountPair(NamedTuple):
    true_count: int
    false_count: int

    @property
    def total(self) -> int:
        return self.true_count + self.false_count


def _check_counts(c: CountPair) -> CountPair:
    c = CountPair(*c)
    if c.true_count < 0 or c.false_count < 0:
        raise ValueError(f"negative multiplicity in {tuple(c)}")
    if c.total < 1:
        raise ValueError("empty count pair: domains are non-empty")
    return c


def support_of(c: CountPair) -> TruthSet:
    c = _check_counts(c)
    if c.false_count == 0:
        return TruthSet.ONLY_TRUE
    if c.true_count == 0:
        return TruthSet.ONLY_FALSE
    return TruthSet.MIXED


@dataclass(frozen=True)
class Exactly:
    k: int

    def rule(self, c: CountPair) -> bool:
        return c.true_count == self.k

    @property
    def name(self) -> str:
        return f"exactly({self.k})"


@dataclass(frozen=True)
class AtLeast:
    k: int

    def rule(self, c: CountPair) -> bool:
        return c.true_count >= self.k

    @property
    def name(self) -> str:
        return f"atleast({self.k})"


@dataclass(frozen=True)
class AtMost:
    k: int

    def rule(self, c: CountPair) -> bool:
        return c.true_count <= self.k

    @property
    def name(self) -> str:
        return f"atmost({self.k})"


@dataclass(frozen=True)
class CustomTable:
    """Explicit finite table of count pairs, with a tail value per support class.

    Count pairs missing from ``entries`` fall back to ``tails[support_of(c)]``,
    which keeps the rule total without an unbounded table.
    """

    entries: Tuple[Tuple[CountPair, bool], ...] = ()
    tails: Tuple[Tuple[TruthSet, bool], ...] = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        supports = {s for s, _ in self.tails}
        if supports != set(TruthSet):
            raise ValueError("CustomTable needs a tail value for every truth set")

    @classmethod
    def build(cls, entries: Mapping = None, tails: Mapping = None, label: str = ""):
        entries = entries or {}
        tails = tails or {}
        es = tuple(sorted((CountPair(*k), bool(v)) for k, v in entries.items()))
        ts = tuple(sorted(((s, bool(v)) for s, v in tails.items()), key=lambda p: p[0].name))
        return cls(es, ts, label)

    def rule(self, c: CountPair) -> bool:
        for key, value in self.entries:
            if key == c:
                return value
        s = support_of(c)
        return dict(self.tails)[s]

    @property
    def name(self) -> str:
        return self.label or "table(...)"


MultisetQuantifier = Union[Exactly, AtLeast, AtMost, CustomTable]


def mq_eval(m: MultisetQuantifier, c: CountPair) -> bool:
    return bool(m.rule(_check_counts(c)))


def as_multiset(q: QuantifierFunction) -> CustomTable:
    """Recast a quantifier function as a multiset rule that reads only the support."""
    return CustomTable.build(tails={s: qf_eval(q, s) for s in TruthSet}, label=q.name)


def parse_quantifier_literal(text: str) -> QuantifierFunction:
    m = _LITERAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a quantifier-function literal: {text!r}")
    return QuantifierFunction(*(g == "T" for g in m.groups()))


_MQ_RE = re.compile(r"(exactly|atleast|atmost)\(\s*(\d+)\s*\)\Z")
_MQ_FAMILIES = {"exactly": Exactly, "atleast": AtLeast, "atmost": AtMost}


def parse_multiset_literal(text: str) -> MultisetQuantifier:
    m = _MQ_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a multiset-quantifier literal: {text!r}")
    return _MQ_FAMILIES[m.group(1)](int(m.group(2)))


@dataclass(frozen=True)
class BooleanFunction:
    """A total truth table over ``arity`` inputs.

    ``table[i]`` is the value on the i-th row of
    ``itertools.product((False, True), repeat=arity)``, so the first argument
    is the most significant bit.
    """

    arity: int
    table: Tuple[bool, ...]

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be non-negative")
        if len(self.table) != 2 ** self.arity:
            raise ValueError(f"table needs {2 ** self.arity} rows, got {len(self.table)}")

    @staticmethod
    def rows(arity: int):
        return list(itertools.product((False, True), repeat=arity))

    @classmethod
    def from_callable(cls, arity: int, f: Callable[..., bool]) -> "BooleanFunction":
        return cls(arity, tuple(bool(f(*row)) for row in cls.rows(arity)))

    def __call__(self, *args: bool) -> bool:
        if len(args) != self.arity:
            raise TypeError(f"expected {self.arity} arguments, got {len(args)}")
        index = 0
        for a in args:
            index = 2 * index + bool(a)
        return self.table[index]

    @classmethod
    def all_of_arity(cls, arity: int) -> list:
        return [cls(arity, t) for t in itertools.product((False, True), repeat=2 ** arity)]
