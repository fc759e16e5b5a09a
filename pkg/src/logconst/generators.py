"""Seeded random formulas for round-trip and property checks."""

from __future__ import annotations

import random
from typing import List, Optional

from .kernel import AtLeast, AtMost, Exactly, enumerate_quantifier_functions
from .syntax import MQ, QF, And, App, Atom, Const, Equals, Formula, Iff, Implies, Not, Or, Signature, Term, Var

DEFAULT_SIGNATURE = Signature.build(
    constants=["a", "b"],
    functions={"f": 1, "g": 2},
    predicates={"A": 0, "P": 1, "Q": 1, "R": 2},
)
VARIABLES = ("x", "y", "z", "u")


class FormulaGenerator:
    def __init__(self, sig: Signature = DEFAULT_SIGNATURE, seed: int = 0,
                 variables=VARIABLES, max_depth: int = 5, closed: bool = False):
        self.sig = sig
        self.rng = random.Random(seed)
        self.variables = tuple(variables)
        self.max_depth = max_depth
        self.closed = closed
        self.quantifiers = enumerate_quantifier_functions()

    def term(self, depth: int, bound: List[str]) -> Term:
        rng = self.rng
        free_ok = bool(bound) or not self.closed
        options = ["var"] * free_ok + ["const"] * bool(self.sig.constants)
        if depth > 0 and self.sig.functions:
            options.append("app")
        kind = rng.choice(options or ["var"])
        if kind == "var":
            if bound and (self.closed or rng.random() < 0.7):
                return Var(rng.choice(bound))
            return Var(rng.choice(self.variables))
        if kind == "const":
            return Const(rng.choice(self.sig.constants))
        name, k = rng.choice(self.sig.functions)
        return App(name, tuple(self.term(depth - 1, bound) for _ in range(k)))

    def formula(self, depth: Optional[int] = None, bound: Optional[List[str]] = None) -> Formula:
        rng = self.rng
        depth = self.max_depth if depth is None else depth
        bound = [] if bound is None else bound
        if depth <= 0 or rng.random() < 0.2:
            if self.sig.predicates and rng.random() < 0.8:
                name, k = rng.choice(self.sig.predicates)
                return Atom(name, tuple(self.term(1, bound) for _ in range(k)))
            return Equals(self.term(1, bound), self.term(1, bound))
        kind = rng.choice(["not", "and", "or", "imp", "iff", "qf", "qf", "mq"])
        if kind == "not":
            return Not(self.formula(depth - 1, bound))
        if kind in ("qf", "mq"):
            v = rng.choice(self.variables)
            body = self.formula(depth - 1, bound + [v])
            if kind == "qf":
                return QF(rng.choice(self.quantifiers), v, body)
            family = rng.choice([Exactly, AtLeast, AtMost])
            return MQ(family(rng.randrange(4)), v, body)
        ctor = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[kind]
        return ctor(self.formula(depth - 1, bound), self.formula(depth - 1, bound))
