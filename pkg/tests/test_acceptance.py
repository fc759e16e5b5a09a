"""Exit criteria. One test per criterion; conftest prints a PASS/FAIL line for each."""

import subprocess
import sys
import time

from logconst.entailment import Countermodel, HoldsUpTo, check_equivalence, consequence, interpretation_count, \
    is_logical_truth
from logconst.generators import DEFAULT_SIGNATURE, FormulaGenerator
from logconst.kernel import AtLeast, BooleanFunction, Exactly, enumerate_quantifier_functions, mq_eval
from logconst.logicality import Verdict, classify, factors_through_support, surjection_invariant
from logconst.quantifier_algebra import SCHEMATIC, completeness_table, connective_table, define_connective, \
    expand_unique, verify_duality
from logconst.semantics import eval_formula
from logconst.syntax import MQ, Atom, Not, Signature, Var, exists, forall, infer_signature, parse, print_formula

from oracles import equivalent_on_unary, prop_eval

P = Atom("P", (Var("v"),))


def test_criterion_1_quantifier_count_and_completeness():
    assert sum(interpretation_count(SCHEMATIC, n) for n in (1, 2, 3)) == 14
    start = time.perf_counter()
    reports = completeness_table(3)
    elapsed = time.perf_counter() - start
    assert len(reports) == 8
    assert len({r.quantifier for r in reports}) == 8
    assert all(r.status == "Verified" and r.verified_up_to == 3 and r.checked == 14 for r in reports)
    assert elapsed < 1.0
    for r in reports:
        # definition only uses the basis and the schematic predicate
        assert set(print_formula(r.definition).replace("forall", "").replace("exists", "")) <= set(" ().&|~vS")


def test_criterion_2_duality():
    report = verify_duality(3)
    assert report.verified and len(report.checks) == 2
    S = Atom("S", (Var("v"),))
    mutated = verify_duality(3, (("forall = exists~", forall("v", S), exists("v", Not(S))),))
    assert not mutated.verified
    cm = mutated.checks[0].verdict
    assert isinstance(cm, Countermodel)
    lhs, rhs = mutated.checks[0].lhs, mutated.checks[0].rhs
    assert eval_formula(lhs, cm.interpretation) != eval_formula(rhs, cm.interpretation)


def test_criterion_3_unique_existence_bridge():
    sig = Signature.build(predicates={"P": 1})
    unique = MQ(Exactly(1), "v", P)
    expansion = expand_unique(P, "v")
    assert check_equivalence(unique, expansion, sig, 3) == HoldsUpTo(3, 14)
    assert equivalent_on_unary(unique, expansion, 3)


COUNT_SENSITIVE = [Exactly(1), Exactly(2), Exactly(3), AtLeast(2), AtLeast(3)]


def test_criterion_4_classification_matrix():
    for q in enumerate_quantifier_functions():
        c = classify(q, 4, 4)
        assert c.verdict is Verdict.LOGICAL and c.induced == q and c.consistent
    assert classify(AtLeast(1)).verdict is Verdict.LOGICAL
    for m in COUNT_SENSITIVE:
        c = classify(m, 4, 4)
        assert c.verdict is Verdict.CARDINAL_NOT_LOGICAL
        assert c.bijection_invariant and not c.surjection_invariant and c.consistent
        cx = c.surjection_counterexample
        assert classify(m, 4, 4).surjection_counterexample == cx
        assert mq_eval(m, cx.source_counts) == cx.source_value != cx.target_value == mq_eval(m, cx.target_counts)
    for m in COUNT_SENSITIVE + [AtLeast(1)]:
        assert factors_through_support(m, 4)[0] == surjection_invariant(m, 4)[0]


def test_criterion_5_logical_truths_and_consequences():
    texts = ["~A | A", "forall x. x = x", "A & B", "B", "exists v. P(v)"]
    sig = infer_signature(texts)
    lem, refl, ab, b, ex = (parse(t, sig, sentence=True) for t in texts)
    assert is_logical_truth(lem, sig, 3) == HoldsUpTo(3, sum(interpretation_count(sig, n) for n in (1, 2, 3)))
    assert isinstance(is_logical_truth(refl, sig, 3), HoldsUpTo)
    assert isinstance(consequence([ab], b, sig, 3), HoldsUpTo)
    v = consequence([], ex, Signature.build(predicates={"P": 1}), 3)
    assert isinstance(v, Countermodel) and v.interpretation.size == 1
    assert not eval_formula(ex, v.interpretation)


def test_criterion_6_connective_completeness():
    functions = BooleanFunction.all_of_arity(1) + BooleanFunction.all_of_arity(2)
    assert len(functions) == 20
    for bf in functions:
        phi = define_connective(bf)
        assert connective_table(phi, bf.arity) == bf
        rows = BooleanFunction.rows(bf.arity)
        assert tuple(prop_eval(phi, {f"p{i + 1}": x for i, x in enumerate(r)}) for r in rows) == bf.table


def test_criterion_7_parser_round_trip():
    gen = FormulaGenerator(DEFAULT_SIGNATURE, seed=0)
    failures = 0
    for _ in range(1000):
        phi = gen.formula()
        if parse(print_formula(phi), DEFAULT_SIGNATURE) != phi:
            failures += 1
    assert failures == 0


def _machine_runs(cwd, args, times=3):
    outs = set()
    for _ in range(times):
        proc = subprocess.run([sys.executable, "-m", "logconst", "--machine", *args], cwd=cwd,
                              capture_output=True)
        outs.add((proc.returncode, proc.stdout))
    return outs


def test_criterion_8_determinism(tmp_path):
    (tmp_path / "m.txt").write_text("domain 2\npred P = {0}\n")
    (tmp_path / "prem.txt").write_text("A & B\n")
    (tmp_path / "empty.txt").write_text("")
    commands = [
        ["--model", "m.txt", "eval", "exactly(1) v. P(v)"],
        ["table"],
        ["define", "Q[FFT]"],
        ["classify"],
        ["equiv", "forall v. P(v)", "exists v. P(v)"],
        ["truth", "exists v. P(v)"],
        ["consequence", "prem.txt", "B"],
        ["consequence", "empty.txt", "P(c)"],
        ["duality"],
        ["roundtrip", "--count", "200"],
        ["--jobs", "3", "table"],
        ["--jobs", "3", "classify"],
    ]
    for args in commands:
        outs = _machine_runs(tmp_path, args)
        assert len(outs) == 1, args
        (code, stdout), = outs
        assert code in (0, 1) and stdout
    # parallel and sequential runs agree byte for byte
    for args in (["table"], ["classify"]):
        assert _machine_runs(tmp_path, args, 1) == _machine_runs(tmp_path, ["--jobs", "3", *args], 1)
