import itertools

import pytest

from logconst.kernel import (
    EXISTS,
    FORALL,
    AtLeast,
    AtMost,
    CountPair,
    CustomTable,
    Exactly,
    QuantifierFunction,
    TruthSet,
    as_multiset,
    enumerate_quantifier_functions,
    mq_eval,
)
from logconst.logicality import (
    NotLogical,
    Verdict,
    bijection_invariant,
    classify,
    count_pairs,
    factors_through_support,
    induced_quantifier_function,
    render_matrix,
    surjection_invariant,
    surjections,
)

FORALL_RULE = CustomTable.build(tails={TruthSet.ONLY_TRUE: True, TruthSet.ONLY_FALSE: False, TruthSet.MIXED: False})
BUILTINS = [fam(k) for fam in (Exactly, AtLeast, AtMost) for k in range(4)]


def oracle_surjection_violation(m, max_size):
    # counts only: pulling P' back along h multiplies each point by its fibre size
    for n in range(1, max_size + 1):
        for k in range(1, n + 1):
            for h in itertools.product(range(k), repeat=n):
                if len(set(h)) != k:
                    continue
                for bits in itertools.product((False, True), repeat=k):
                    target = CountPair(sum(bits), k - sum(bits))
                    t = sum(1 for x in h if bits[x])
                    source = CountPair(t, n - t)
                    if mq_eval(m, source) != mq_eval(m, target):
                        return n, k, h, source, target
    return None


def test_count_pairs():
    pairs = list(count_pairs(2))
    assert pairs == [(0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


@pytest.mark.parametrize("m, expected", [
    (AtLeast(1), (True, None)),
    (Exactly(1), (False, (CountPair(1, 0), CountPair(2, 0)))),
    (AtMost(0), (True, None)),
    (FORALL_RULE, (True, None)),
])
def test_factors_through_support(m, expected):
    assert factors_through_support(m, 4) == expected


def test_factoring_counterexample_is_first_brute_force():
    pairs = [CountPair(t, f) for t in range(5) for f in range(5) if 1 <= t + f <= 4]
    pairs.sort()
    brute = next((a, b) for a, b in itertools.combinations(pairs, 2)
                 if (a.true_count > 0) == (b.true_count > 0) and (a.false_count > 0) == (b.false_count > 0)
                 and mq_eval(Exactly(1), a) != mq_eval(Exactly(1), b))
    assert brute == (CountPair(1, 0), CountPair(2, 0))
    with pytest.raises(ValueError):
        factors_through_support(Exactly(1), 1)


@pytest.mark.parametrize("m, expected", [
    (AtLeast(1), EXISTS),
    (AtMost(0), QuantifierFunction(False, True, False)),
    (FORALL_RULE, FORALL),
])
def test_induced_quantifier_function(m, expected):
    assert induced_quantifier_function(m) == expected


def test_induced_fails_for_cardinals():
    with pytest.raises(NotLogical):
        induced_quantifier_function(Exactly(1))


def test_surjections_enumeration():
    assert list(surjections(3, 2)) == [(0, 0, 1), (0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1), (1, 1, 0)]
    # Stirling numbers of the second kind times k!
    assert len(list(surjections(4, 2))) == 14
    assert len(list(surjections(4, 3))) == 36


def test_surjection_invariance_examples():
    ok, cx = surjection_invariant(FORALL_RULE, 4)
    assert ok and cx is None

    ok, cx = surjection_invariant(Exactly(1), 4)
    assert not ok
    assert (cx.source_size, cx.target_size, cx.h, cx.target_extension) == (2, 1, (0, 0), frozenset({0}))
    assert (cx.source_counts, cx.source_value) == ((2, 0), False)
    assert (cx.target_counts, cx.target_value) == ((1, 0), True)

    ok, cx = surjection_invariant(AtLeast(2), 4)
    assert not ok
    assert (cx.h, cx.target_extension, cx.source_value, cx.target_value) == ((0, 0), frozenset({0}), True, False)


@pytest.mark.parametrize("m", BUILTINS + [as_multiset(q) for q in enumerate_quantifier_functions()],
                         ids=lambda m: m.name)
def test_surjection_matches_count_oracle(m):
    ok, cx = surjection_invariant(m, 4)
    oracle = oracle_surjection_violation(m, 4)
    assert ok == (oracle is None)
    if cx is not None:
        assert (cx.source_size, cx.target_size, cx.h, cx.source_counts, cx.target_counts) == oracle
        # re-evaluating both sides reproduces the inequality
        assert mq_eval(m, cx.source_counts) == cx.source_value != cx.target_value == mq_eval(m, cx.target_counts)


@pytest.mark.parametrize("m", BUILTINS, ids=lambda m: m.name)
def test_factoring_agrees_with_surjection_invariance(m):
    assert factors_through_support(m, 4)[0] == surjection_invariant(m, 4)[0]


@pytest.mark.parametrize("m", [Exactly(1), AtLeast(3), FORALL_RULE])
def test_bijection_invariant(m):
    assert bijection_invariant(m)


@pytest.mark.parametrize("m, verdict", [
    (AtLeast(1), Verdict.LOGICAL),
    (Exactly(1), Verdict.CARDINAL_NOT_LOGICAL),
    (AtMost(0), Verdict.LOGICAL),
    (AtLeast(2), Verdict.CARDINAL_NOT_LOGICAL),
])
def test_classify(m, verdict):
    c = classify(m)
    assert c.verdict is verdict
    assert c.consistent
    if verdict is Verdict.LOGICAL:
        assert c.induced is not None and c.surjection_counterexample is None
    else:
        assert c.induced is None and c.surjection_counterexample is not None


@pytest.mark.parametrize("q", enumerate_quantifier_functions(), ids=lambda q: q.name)
def test_quantifier_functions_are_logical_and_round_trip(q):
    c = classify(q)
    assert c.name == q.name
    assert c.verdict is Verdict.LOGICAL
    assert c.induced == q


def test_matrix_rendering():
    text = render_matrix([classify(EXISTS), classify(Exactly(1))])
    lines = text.splitlines()
    assert lines[0].split() == ["quantifier", "support-factoring", "surjection-invariant",
                                "bijection-invariant", "verdict"]
    assert lines[1].split() == ["Q[TFT]", "yes", "yes", "yes", "Logical"]
    assert lines[2].split() == ["exactly(1)", "no", "no", "yes", "CardinalNotLogical"]
