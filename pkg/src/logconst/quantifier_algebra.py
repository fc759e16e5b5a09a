"""Definability of quantifier functions and connectives from a small basis.

Every quantifier function is a disjunction over three basic sentences about a
schematic unary predicate ``S``::

    A := forall v. S(v)                         S has truth set {True}
    B := forall v. ~S(v)                        S has truth set {False}
    M := (exists v. S(v)) & (exists v. ~S(v))   S has truth set {True, False}

Definitions are always checked by exhaustive model search, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .entailment import Countermodel, HoldsUpTo, Verdict, check_equivalence, search
from .kernel import BooleanFunction, QuantifierFunction, enumerate_quantifier_functions
from .semantics import Interpretation, eval_formula
from .syntax import (
    QF,
    And,
    Atom,
    Equals,
    Formula,
    Implies,
    Not,
    Signature,
    Var,
    all_names,
    conj,
    disj,
    exists,
    forall,
    fresh_variable,
    free_variables,
    print_formula,
    substitute,
    symbols_of,
)

__all__ = [
    "SCHEMATIC",
    "schematic_atom",
    "DefinabilityReport",
    "LawCheck",
    "DualityReport",
    "canonical_definition",
    "verify_definition",
    "verify_duality",
    "DUALITY_LAWS",
    "completeness_table",
    "render_table",
    "expand_unique",
    "define_connective",
    "connective_table",
]

SCHEMATIC = Signature.build(predicates={"S": 1})


def schematic_atom(var: str = "v") -> Atom:
    return Atom("S", (Var(var),))


_S = schematic_atom()
ALL_TRUE = forall("v", _S)
ALL_FALSE = forall("v", Not(_S))
MIXED = And(exists("v", _S), exists("v", Not(_S)))
CONTRADICTION = And(forall("v", _S), exists("v", Not(_S)))

# A|M and B|M collapse to a single existential
_SIMPLIFIED = {
    (True, False, True): exists("v", _S),
    (False, True, True): exists("v", Not(_S)),
}


@dataclass(frozen=True)
class DefinabilityReport:
    quantifier: QuantifierFunction
    definition: Formula
    verified_up_to: int
    countermodel: Optional[Interpretation] = None
    checked: int = 0  # interpretations compared

    @property
    def verified(self) -> bool:
        return self.countermodel is None

    @property
    def status(self) -> str:
        return "Verified" if self.verified else "Failed"

    def render(self) -> str:
        text = f"{self.quantifier.name} := {print_formula(self.definition)}"
        if self.verified:
            return f"{text} — verified up to n={self.verified_up_to}"
        return f"{text} — FAILED at n={self.countermodel.size}"


def _raw_definition(q: QuantifierFunction) -> Formula:
    chosen = [atom for atom, on in zip((ALL_TRUE, ALL_FALSE, MIXED), q.triple) if on]
    if not chosen:
        return CONTRADICTION
    return disj(chosen)


def canonical_definition(q: QuantifierFunction) -> Formula:
    """A sentence over {forall, exists, ~, &, |} and ``S`` defining ``Q(v. S(v))``."""
    raw = _raw_definition(q)
    simple = _SIMPLIFIED.get(q.triple)
    if simple is None:
        return raw
    # sizes 1-2 realise all three truth sets
    if isinstance(check_equivalence(raw, simple, SCHEMATIC, 2), HoldsUpTo):
        return simple
    return raw


def verify_definition(q: QuantifierFunction, definition: Formula, max_size: int) -> DefinabilityReport:
    """Compare ``Q v. S(v)`` with ``definition`` on every S-interpretation of size 1..max_size."""
    extra = symbols_of(definition).names() - SCHEMATIC.names()
    if extra:
        raise ValueError(f"definition uses symbols outside the schematic signature: {sorted(extra)}")
    if free_variables(definition):
        raise ValueError(f"definition has free variables {sorted(free_variables(definition))}")
    target = QF(q, "v", _S)
    verdict = search(lambda i: eval_formula(target, i) != eval_formula(definition, i),
                     SCHEMATIC, max_size)
    if isinstance(verdict, Countermodel):
        cm = verdict.interpretation
        return DefinabilityReport(q, definition, cm.size - 1, cm, verdict.checked)
    return DefinabilityReport(q, definition, max_size, None, verdict.checked)


def completeness_table(max_size: int = 3) -> List[DefinabilityReport]:
    return [verify_definition(q, canonical_definition(q), max_size)
            for q in enumerate_quantifier_functions()]


def render_table(reports: Sequence[DefinabilityReport]) -> str:
    return "\n".join(r.render() for r in reports)


# ---------------------------------------------------------------------------
# duality


@dataclass(frozen=True)
class LawCheck:
    name: str
    lhs: Formula
    rhs: Formula
    verdict: Verdict

    @property
    def verified(self) -> bool:
        return isinstance(self.verdict, HoldsUpTo)


@dataclass(frozen=True)
class DualityReport:
    checks: Tuple[LawCheck, ...]

    @property
    def verified(self) -> bool:
        return all(c.verified for c in self.checks)


DUALITY_LAWS = (
    ("forall = ~exists~", ALL_TRUE, Not(exists("v", Not(_S)))),
    ("exists = ~forall~", exists("v", _S), Not(forall("v", Not(_S)))),
)


def verify_duality(max_size: int = 3, laws=DUALITY_LAWS) -> DualityReport:
    return DualityReport(tuple(
        LawCheck(name, lhs, rhs, check_equivalence(lhs, rhs, SCHEMATIC, max_size))
        for name, lhs, rhs in laws
    ))


# ---------------------------------------------------------------------------
# unique existence


def expand_unique(phi: Formula, var: str) -> Formula:
    """``exists x. phi(x) & forall y. forall z. (phi(y) & phi(z) -> y = z)``, with x, y, z fresh."""
    avoid = set(all_names(phi)) | {var}
    x = fresh_variable(avoid)
    y = fresh_variable(avoid | {x})
    z = fresh_variable(avoid | {x, y})
    at = lambda name: substitute(phi, var, Var(name))
    return And(
        exists(x, at(x)),
        forall(y, forall(z, Implies(And(at(y), at(z)), Equals(Var(y), Var(z))))),
    )


# ---------------------------------------------------------------------------
# connectives


def _letter(i: int) -> Atom:
    return Atom(f"p{i}")


def define_connective(bf: BooleanFunction) -> Formula:
    """Full disjunctive normal form over ``p1..pn``, minterms in truth-table row order."""
    if bf.arity < 1:
        raise ValueError("nullary connectives are not supported")
    minterms = []
    for row, value in zip(BooleanFunction.rows(bf.arity), bf.table):
        if value:
            lits = [_letter(i + 1) if b else Not(_letter(i + 1)) for i, b in enumerate(row)]
            minterms.append(conj(lits))
    if not minterms:
        return And(_letter(1), Not(_letter(1)))
    return disj(minterms)


def connective_table(phi: Formula, arity: int) -> BooleanFunction:
    """Recompute the truth table of a formula over ``p1..p{arity}``."""
    names = [f"p{i + 1}" for i in range(arity)]

    def value(*row):
        preds = {n: frozenset({()}) if b else frozenset() for n, b in zip(names, row)}
        return eval_formula(phi, Interpretation(1, predicates=preds))

    return BooleanFunction.from_callable(arity, value)
