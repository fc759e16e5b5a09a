"""Bounded finite-model search: logical truth, consequence, equivalence.

Every check ascends domain sizes 1..max_size and walks interpretations in
canonical order, so the countermodel reported is the smallest and first one.
``HoldsUpTo(n)`` only says no countermodel exists up to size ``n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .semantics import Interpretation, eval_formula, render_model
from .syntax import Formula, Signature, free_variables, symbols_of

__all__ = [
    "DEFAULT_MAX_SIZE",
    "DEFAULT_BUDGET",
    "MAX_ARITY",
    "BudgetExceeded",
    "HoldsUpTo",
    "Countermodel",
    "Verdict",
    "interpretation_count",
    "enumerate_interpretations",
    "search",
    "is_logical_truth",
    "consequence",
    "check_equivalence",
]

DEFAULT_MAX_SIZE = 3
DEFAULT_BUDGET = 10 ** 6
MAX_ARITY = 2


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class HoldsUpTo:
    max_size: int
    checked: int = 0  # interpretations visited

    @property
    def holds(self) -> bool:
        return True

    def render(self) -> str:
        return f"HoldsUpTo({self.max_size})"


@dataclass(frozen=True)
class Countermodel:
    interpretation: Interpretation
    valuation: Dict[str, int] = field(default_factory=dict)
    checked: int = 0

    @property
    def holds(self) -> bool:
        return False

    def render(self) -> str:
        return render_model(self.interpretation)


Verdict = Union[HoldsUpTo, Countermodel]


def interpretation_count(sig: Signature, n: int) -> int:
    count = n ** len(sig.constants)
    for _, k in sig.functions:
        count *= n ** (n ** k)
    for _, k in sig.predicates:
        count *= 2 ** (n ** k)
    return count


def _check_arity(sig: Signature) -> None:
    for name, k in sig.functions + sig.predicates:
        if k > MAX_ARITY:
            raise BudgetExceeded(f"{name} has arity {k}; the cap is {MAX_ARITY}")


def _subsets(points: List[Tuple[int, ...]]) -> Iterator[frozenset]:
    # binary counter with points[0] as the lowest bit
    for mask in range(2 ** len(points)):
        yield frozenset(p for i, p in enumerate(points) if mask >> i & 1)


def enumerate_interpretations(sig: Signature, n: int,
                              budget: int = DEFAULT_BUDGET) -> Iterator[Interpretation]:
    """Every interpretation of ``sig`` over ``{0..n-1}``, each once, in canonical order.

    Symbols vary in signature order (constants, functions, predicates) with the
    last one varying fastest. Constants take values ``0..n-1``; function graphs
    are enumerated lexicographically; predicate extensions count up in binary
    with the lexicographically first tuple as the lowest bit.
    """
    if n < 1:
        raise ValueError("domain size must be at least 1")
    _check_arity(sig)
    total = interpretation_count(sig, n)
    if total > budget:
        raise BudgetExceeded(f"{total} interpretations of size {n} exceed the budget of {budget}")
    domain = range(n)
    axes = []
    for _ in sig.constants:
        axes.append(list(domain))
    for _, k in sig.functions:
        rows = list(itertools.product(domain, repeat=k))
        axes.append([dict(zip(rows, g)) for g in itertools.product(domain, repeat=len(rows))])
    for _, k in sig.predicates:
        axes.append(list(_subsets(list(itertools.product(domain, repeat=k)))))
    nc, nf = len(sig.constants), len(sig.functions)
    for combo in itertools.product(*axes):
        yield Interpretation(
            n,
            dict(zip(sig.constants, combo[:nc])),
            {name: g for (name, _), g in zip(sig.functions, combo[nc:nc + nf])},
            {name: e for (name, _), e in zip(sig.predicates, combo[nc + nf:])},
        )


def _budget_check(sig: Signature, max_size: int, budget: int) -> None:
    _check_arity(sig)
    total = sum(interpretation_count(sig, n) for n in range(1, max_size + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} interpretations up to size {max_size} exceed the budget of {budget}")


def _closed(formulas: Sequence[Formula]) -> None:
    for f in formulas:
        fv = free_variables(f)
        if fv:
            raise ValueError(f"{f} is not a sentence: free {sorted(fv)}")


def _full_signature(sig: Signature, formulas: Sequence[Formula]) -> Signature:
    used = Signature()
    for f in formulas:
        used = used.merge(symbols_of(f))
    missing = used.names() - sig.names()
    if missing:
        raise ValueError(f"symbols not in the signature: {sorted(missing)}")
    # arity agreement is checked by merge
    sig.merge(used)
    return sig


def search(refutes: Callable[[Interpretation], bool], sig: Signature, max_size: int,
           budget: int = DEFAULT_BUDGET,
           on_size: Optional[Callable[[int], None]] = None) -> Verdict:
    """Return the first interpretation for which ``refutes`` is true, else HoldsUpTo.

    ``on_size(n)`` is called after size ``n`` has been exhausted without a refutation.
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    _budget_check(sig, max_size, budget)
    seen = 0
    for n in range(1, max_size + 1):
        for interp in enumerate_interpretations(sig, n, budget):
            seen += 1
            if refutes(interp):
                return Countermodel(interp, {}, seen)
        if on_size is not None:
            on_size(n)
    return HoldsUpTo(max_size, seen)


def is_logical_truth(phi: Formula, sig: Signature, max_size: int = DEFAULT_MAX_SIZE,
                     budget: int = DEFAULT_BUDGET, on_size=None) -> Verdict:
    _closed([phi])
    sig = _full_signature(sig, [phi])
    return search(lambda i: not eval_formula(phi, i), sig, max_size, budget, on_size)


def consequence(premises: Sequence[Formula], conclusion: Formula, sig: Signature,
                max_size: int = DEFAULT_MAX_SIZE, budget: int = DEFAULT_BUDGET,
                on_size=None) -> Verdict:
    formulas = list(premises) + [conclusion]
    _closed(formulas)
    sig = _full_signature(sig, formulas)

    def refutes(i):
        return all(eval_formula(p, i) for p in premises) and not eval_formula(conclusion, i)

    return search(refutes, sig, max_size, budget, on_size)


def check_equivalence(phi: Formula, psi: Formula, sig: Signature,
                      max_size: int = DEFAULT_MAX_SIZE, budget: int = DEFAULT_BUDGET,
                      on_size=None) -> Verdict:
    _closed([phi, psi])
    sig = _full_signature(sig, [phi, psi])
    return search(lambda i: eval_formula(phi, i) != eval_formula(psi, i), sig, max_size, budget, on_size)
