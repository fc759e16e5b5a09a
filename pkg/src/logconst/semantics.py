"""Finite interpretations and evaluation.

Domain elements are the integers ``0 .. size-1``. Functions are stored as their
graphs (argument tuple -> value), predicates as sets of argument tuples; a
nullary predicate is true iff its extension contains ``()``.
"""

from __future__ import annotations

import ast
import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from .kernel import CountPair, TruthSet, mq_eval, qf_eval
from .syntax import (
    MQ,
    QF,
    And,
    Atom,
    Const,
    Equals,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Signature,
    Term,
    Var,
    free_variables,
)

__all__ = [
    "Interpretation",
    "EvaluationError",
    "eval_term",
    "eval_formula",
    "truth_set",
    "truth_count",
    "holds",
    "load_model",
    "render_model",
]

Valuation = Mapping[str, int]


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class Interpretation:
    size: int
    constants: Dict[str, int] = field(default_factory=dict)
    functions: Dict[str, Dict[Tuple[int, ...], int]] = field(default_factory=dict)
    predicates: Dict[str, FrozenSet[Tuple[int, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("the domain must be non-empty")
        for c, e in self.constants.items():
            self._check_element(e, f"constant {c}")
        for f, graph in self.functions.items():
            arities = {len(k) for k in graph}
            if len(arities) != 1:
                raise ValueError(f"function {f} has no uniform arity")
            (k,) = arities
            if set(graph) != set(itertools.product(range(self.size), repeat=k)):
                raise ValueError(f"function {f} is not total on the domain")
            for e in graph.values():
                self._check_element(e, f"value of {f}")
        for p, ext in self.predicates.items():
            for tup in ext:
                for e in tup:
                    self._check_element(e, f"extension of {p}")

    def _check_element(self, e, what):
        if not isinstance(e, int) or not 0 <= e < self.size:
            raise ValueError(f"{what} is {e!r}, outside domain of size {self.size}")

    @property
    def domain(self) -> range:
        return range(self.size)

    def function_arity(self, name: str) -> int:
        return len(next(iter(self.functions[name])))

    def check_signature(self, sig: Signature) -> None:
        """Every symbol of ``sig`` must have a denotation of the right shape."""
        for c in sig.constants:
            if c not in self.constants:
                raise EvaluationError(f"constant {c} has no denotation")
        for f, k in sig.functions:
            if f not in self.functions:
                raise EvaluationError(f"function {f} has no denotation")
            if self.function_arity(f) != k:
                raise EvaluationError(f"function {f} should have arity {k}")
        for p, k in sig.predicates:
            if p not in self.predicates:
                raise EvaluationError(f"predicate {p} has no denotation")
            if any(len(t) != k for t in self.predicates[p]):
                raise EvaluationError(f"predicate {p} should have arity {k}")

    def __eq__(self, other):
        if not isinstance(other, Interpretation):
            return NotImplemented
        return (self.size, self.constants, self.functions, self.predicates) == \
            (other.size, other.constants, other.functions, other.predicates)

    def __hash__(self):
        return hash(render_model(self))


def eval_term(t: Term, interp: Interpretation, val: Valuation) -> int:
    if isinstance(t, Var):
        try:
            return val[t.name]
        except KeyError:
            raise EvaluationError(f"unbound variable {t.name}") from None
    if isinstance(t, Const):
        try:
            return interp.constants[t.name]
        except KeyError:
            raise EvaluationError(f"constant {t.name} has no denotation") from None
    try:
        graph = interp.functions[t.func]
    except KeyError:
        raise EvaluationError(f"function {t.func} has no denotation") from None
    return graph[tuple(eval_term(a, interp, val) for a in t.args)]


def _values(phi: Formula, var: str, interp: Interpretation, val: Valuation):
    v = dict(val)
    for e in interp.domain:
        v[var] = e
        yield eval_formula(phi, interp, v)


def truth_set(phi: Formula, var: str, interp: Interpretation, val: Valuation) -> TruthSet:
    """Truth values of ``phi`` as ``var`` ranges over the whole domain."""
    return TruthSet.of(_values(phi, var, interp, val))


def truth_count(phi: Formula, var: str, interp: Interpretation, val: Valuation) -> CountPair:
    trues = sum(1 for b in _values(phi, var, interp, val) if b)
    return CountPair(trues, interp.size - trues)


def eval_formula(phi: Formula, interp: Interpretation, val: Valuation = None) -> bool:
    val = {} if val is None else val
    if isinstance(phi, Atom):
        try:
            ext = interp.predicates[phi.pred]
        except KeyError:
            raise EvaluationError(f"predicate {phi.pred} has no denotation") from None
        return tuple(eval_term(a, interp, val) for a in phi.args) in ext
    if isinstance(phi, Equals):
        return eval_term(phi.left, interp, val) == eval_term(phi.right, interp, val)
    if isinstance(phi, Not):
        return not eval_formula(phi.body, interp, val)
    if isinstance(phi, And):
        return eval_formula(phi.left, interp, val) and eval_formula(phi.right, interp, val)
    if isinstance(phi, Or):
        return eval_formula(phi.left, interp, val) or eval_formula(phi.right, interp, val)
    if isinstance(phi, Implies):
        return (not eval_formula(phi.left, interp, val)) or eval_formula(phi.right, interp, val)
    if isinstance(phi, Iff):
        return eval_formula(phi.left, interp, val) == eval_formula(phi.right, interp, val)
    if isinstance(phi, QF):
        return qf_eval(phi.q, truth_set(phi.body, phi.var, interp, val))
    if isinstance(phi, MQ):
        return mq_eval(phi.m, truth_count(phi.body, phi.var, interp, val))
    raise TypeError(f"not a formula: {phi!r}")


def holds(phi: Formula, interp: Interpretation, val: Valuation = None) -> bool:
    """Like :func:`eval_formula`, but checks the valuation covers the free variables first."""
    val = {} if val is None else val
    missing = free_variables(phi) - set(val)
    if missing:
        raise EvaluationError(f"no value for free variables {sorted(missing)}")
    return eval_formula(phi, interp, val)


# ---------------------------------------------------------------------------
# model files

_MODEL_LINE = re.compile(r"(domain)\s+(\d+)|(const|fun|pred)\s+(\w+)\s*(?:/\s*(\d+))?\s*=\s*(.+)")


def _literal(text: str, lineno: int):
    text = text.strip()
    if text == "{}":
        return set()
    if text in ("true", "false"):
        return {()} if text == "true" else set()
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        raise ValueError(f"line {lineno}: cannot read value {text!r}") from None


def load_model(text: str, sig: Optional[Signature] = None) -> Interpretation:
    """Read the line format::

        domain 3
        const c = 0
        fun f = [1, 2, 0]          # graph in row-major domain order
        pred P = {0, 2}
        pred R = {(0, 1), (1, 2)}
        pred A = {()}              # nullary, true

    Arities come from ``sig`` when given, else from an optional ``name/k``
    annotation, else from the data (defaulting to 1 when ambiguous).
    """
    size = None
    consts: dict = {}
    funcs: dict = {}
    preds: dict = {}
    fa = sig.function_arity if sig else {}
    pa = sig.predicate_arity if sig else {}
    pending = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _MODEL_LINE.fullmatch(line)
        if not m:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
        if m.group(1):
            size = int(m.group(2))
        else:
            pending.append((lineno, m.group(3), m.group(4), m.group(5), m.group(6)))
    if size is None:
        raise ValueError("model has no 'domain' line")
    for lineno, kind, name, ann, value in pending:
        data = _literal(value, lineno)
        if kind == "const":
            consts[name] = data
        elif kind == "fun":
            data = list(data)
            k = fa.get(name, int(ann) if ann else None)
            if k is None:
                k = 1
                while size ** k < len(data) and size > 1:
                    k += 1
            rows = list(itertools.product(range(size), repeat=k))
            if len(rows) != len(data):
                raise ValueError(f"line {lineno}: {name} needs {len(rows)} values, got {len(data)}")
            funcs[name] = dict(zip(rows, data))
        else:
            k = pa.get(name, int(ann) if ann else None)
            tuples = set()
            for item in data:
                tuples.add(item if isinstance(item, tuple) else (item,))
            if k is not None and any(len(t) != k for t in tuples):
                raise ValueError(f"line {lineno}: {name} should have arity {k}")
            preds[name] = frozenset(tuples)
    interp = Interpretation(size, consts, funcs, preds)
    if sig is not None:
        interp.check_signature(sig)
    return interp


def _fmt_tuple(t: Tuple[int, ...]) -> str:
    if len(t) == 1:
        return str(t[0])
    return "(" + ",".join(map(str, t)) + ")"


def render_model(interp: Interpretation) -> str:
    lines = [f"domain {interp.size}"]
    for c, e in interp.constants.items():
        lines.append(f"const {c} = {e}")
    for f, graph in interp.functions.items():
        lines.append(f"fun {f} = [" + ",".join(str(graph[k]) for k in sorted(graph)) + "]")
    for p, ext in interp.predicates.items():
        lines.append(f"pred {p} = {{" + ",".join(_fmt_tuple(t) for t in sorted(ext)) + "}")
    return "\n".join(lines)
