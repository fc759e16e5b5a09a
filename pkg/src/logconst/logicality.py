"""Is a quantifier a logical symbol?

The internal criterion: a multiset rule is logical iff its value depends only
on which truth values occur, never on how often (it factors through the
support and so is a quantifier function). Two invariance criteria are checked
alongside by brute force at a size bound: bijection invariance, which every
count-based rule passes, and surjection invariance, which separates the
logical rules from the cardinal ones.

Invariance checks build a real interpretation for the pulled-back predicate
and evaluate ``m v. P(v)`` there, instead of reading counts directly.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from .kernel import (
    AtLeast,
    AtMost,
    CountPair,
    CustomTable,
    Exactly,
    MultisetQuantifier,
    QuantifierFunction,
    TruthSet,
    as_multiset,
    mq_eval,
    support_of,
)
from .semantics import Interpretation, eval_formula
from .syntax import MQ, Atom, Var

__all__ = [
    "NotLogical",
    "Verdict",
    "SurjectionCounterexample",
    "Classification",
    "count_pairs",
    "factors_through_support",
    "induced_quantifier_function",
    "surjections",
    "surjection_invariant",
    "bijection_invariant",
    "classify",
    "render_matrix",
]

DEFAULT_BOUND = 4

_PROBE = Atom("P", (Var("v"),))


class NotLogical(ValueError):
    pass


class Verdict(enum.Enum):
    LOGICAL = "Logical"
    CARDINAL_NOT_LOGICAL = "CardinalNotLogical"
    OTHER = "Other"


def count_pairs(max_count: int) -> Iterator[CountPair]:
    """Count pairs with total in 1..max_count, lexicographically."""
    for t in range(max_count + 1):
        for f in range(max_count + 1 - t):
            if t + f:
                yield CountPair(t, f)


def factors_through_support(m: MultisetQuantifier, max_count: int = DEFAULT_BOUND
                            ) -> Tuple[bool, Optional[Tuple[CountPair, CountPair]]]:
    """(True, None), or (False, (c1, c2)) for the first same-support pair that ``m`` separates."""
    if max_count < 2:
        raise ValueError("max_count must be at least 2")
    pairs = list(count_pairs(max_count))
    for i, c1 in enumerate(pairs):
        for c2 in pairs[i + 1:]:
            if support_of(c1) is support_of(c2) and mq_eval(m, c1) != mq_eval(m, c2):
                return False, (c1, c2)
    return True, None


_REPRESENTATIVES = {
    TruthSet.ONLY_TRUE: CountPair(1, 0),
    TruthSet.ONLY_FALSE: CountPair(0, 1),
    TruthSet.MIXED: CountPair(1, 1),
}


def induced_quantifier_function(m: MultisetQuantifier, max_count: int = DEFAULT_BOUND) -> QuantifierFunction:
    ok, witness = factors_through_support(m, max_count)
    if not ok:
        c1, c2 = witness
        raise NotLogical(f"{m.name} separates {tuple(c1)} from {tuple(c2)}")
    return QuantifierFunction.from_map(lambda s: mq_eval(m, _REPRESENTATIVES[s]))


def _value_on(m: MultisetQuantifier, size: int, extension) -> bool:
    interp = Interpretation(size, predicates={"P": frozenset((e,) for e in extension)})
    return eval_formula(MQ(m, "v", _PROBE), interp)


def surjections(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Surjections [n] -> [k] as graphs, lexicographically."""
    for h in itertools.product(range(k), repeat=n):
        if len(set(h)) == k:
            yield h


def _subsets(k: int):
    for mask in range(2 ** k):
        yield frozenset(e for e in range(k) if mask >> e & 1)


@dataclass(frozen=True)
class SurjectionCounterexample:
    source_size: int
    target_size: int
    h: Tuple[int, ...]
    target_extension: frozenset
    source_value: bool
    target_value: bool

    @property
    def pullback(self) -> frozenset:
        return frozenset(x for x, y in enumerate(self.h) if y in self.target_extension)

    @property
    def source_counts(self) -> CountPair:
        t = len(self.pullback)
        return CountPair(t, self.source_size - t)

    @property
    def target_counts(self) -> CountPair:
        t = len(self.target_extension)
        return CountPair(t, self.target_size - t)

    def render(self) -> str:
        return (f"h={list(self.h)}:[{self.source_size}]->[{self.target_size}] "
                f"P'={sorted(self.target_extension)} "
                f"counts {tuple(self.source_counts)}->{self.source_value} vs "
                f"{tuple(self.target_counts)}->{self.target_value}")


def surjection_invariant(m: MultisetQuantifier, max_size: int = DEFAULT_BOUND
                         ) -> Tuple[bool, Optional[SurjectionCounterexample]]:
    """Compare ``m`` on every P' over [k] with ``m`` on its pullback along every surjection [n] -> [k].

    Cases run with n ascending, then k ascending, then h and P' in canonical order.
    """
    if max_size < 2:
        raise ValueError("max_size must be at least 2")
    for n in range(1, max_size + 1):
        for k in range(1, n + 1):
            for h in surjections(n, k):
                for ext in _subsets(k):
                    pullback = [x for x in range(n) if h[x] in ext]
                    src = _value_on(m, n, pullback)
                    tgt = _value_on(m, k, ext)
                    if src != tgt:
                        return False, SurjectionCounterexample(n, k, h, ext, src, tgt)
    return True, None


_COUNT_BASED = (Exactly, AtLeast, AtMost, CustomTable)


def bijection_invariant(m: MultisetQuantifier, max_size: int = DEFAULT_BOUND) -> bool:
    """Structurally true for count-based rules; confirmed over all permutations up to ``max_size``."""
    if not isinstance(m, _COUNT_BASED):
        raise TypeError(f"not a multiset quantifier: {m!r}")
    for n in range(1, max_size + 1):
        for ext in _subsets(n):
            before = _value_on(m, n, ext)
            for perm in itertools.permutations(range(n)):
                if _value_on(m, n, [perm[e] for e in ext]) != before:
                    return False
    return True


@dataclass(frozen=True)
class Classification:
    name: str
    factors_through_support: bool
    support_counterexample: Optional[Tuple[CountPair, CountPair]]
    surjection_invariant: bool
    surjection_counterexample: Optional[SurjectionCounterexample]
    bijection_invariant: bool
    induced: Optional[QuantifierFunction]
    bound: int

    @property
    def verdict(self) -> Verdict:
        if self.factors_through_support:
            return Verdict.LOGICAL
        if self.bijection_invariant and not self.surjection_invariant:
            return Verdict.CARDINAL_NOT_LOGICAL
        return Verdict.OTHER

    @property
    def consistent(self) -> bool:
        return self.factors_through_support == self.surjection_invariant

    def row(self) -> Tuple[str, str, str, str, str]:
        yn = lambda b: "yes" if b else "no"
        return (self.name, yn(self.factors_through_support), yn(self.surjection_invariant),
                yn(self.bijection_invariant), self.verdict.value)


def classify(quantifier, max_count: int = DEFAULT_BOUND, max_size: int = DEFAULT_BOUND) -> Classification:
    """Run all three checks. A quantifier function is first recast as a support-only rule."""
    m = as_multiset(quantifier) if isinstance(quantifier, QuantifierFunction) else quantifier
    factors, witness = factors_through_support(m, max_count)
    surj, surj_witness = surjection_invariant(m, max_size)
    induced = induced_quantifier_function(m, max_count) if factors else None
    return Classification(m.name, factors, witness, surj, surj_witness,
                          bijection_invariant(m, max_size), induced, max(max_count, max_size))


MATRIX_HEADER = ("quantifier", "support-factoring", "surjection-invariant", "bijection-invariant", "verdict")


def render_matrix(rows) -> str:
    table = [MATRIX_HEADER] + [c.row() for c in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(MATRIX_HEADER))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table)
