"""Logical constants of first-order languages, made executable.

Quantifier functions on truth sets, cardinal quantifiers on truth-value
counts, definability of all quantifier functions from forall/exists, a
logicality classifier, and a bounded finite-model entailment checker.
"""

from .kernel import (
    EXISTS,
    FORALL,
    AtLeast,
    AtMost,
    BooleanFunction,
    CountPair,
    CustomTable,
    Exactly,
    QuantifierFunction,
    TruthSet,
    enumerate_quantifier_functions,
    mq_eval,
    qf_eval,
    support_of,
)
from .semantics import Interpretation, eval_formula, load_model, render_model, truth_count, truth_set
from .syntax import Signature, free_variables, fresh_variable, parse, parse_signature, print_formula

__version__ = "0.1.0"
