import pytest
from hypothesis import given, strategies as st

from logconst.generators import DEFAULT_SIGNATURE, FormulaGenerator
from logconst.kernel import EXISTS, FORALL, AtLeast, AtMost, Exactly, QuantifierFunction, enumerate_quantifier_functions
from logconst.syntax import (
    MQ,
    QF,
    And,
    App,
    Atom,
    Const,
    Equals,
    Iff,
    Implies,
    Not,
    Or,
    ParseError,
    Signature,
    Var,
    free_variables,
    fresh_variable,
    infer_signature,
    parse,
    parse_signature,
    print_formula,
    substitute,
)

SIG = Signature.build(constants=["c", "d"], functions={"f": 1, "g": 2},
                      predicates={"A": 0, "B": 0, "P": 1, "Q": 1, "R": 2})
x, y, v = Var("x"), Var("y"), Var("v")


@st.composite
def terms(draw, bound):
    leaves = [st.sampled_from([Const("c"), Const("d")])]
    if bound:
        leaves.append(st.sampled_from([Var(n) for n in bound]))
    leaf = st.one_of(leaves)
    return draw(st.recursive(leaf, lambda t: st.one_of(
        st.builds(lambda a: App("f", (a,)), t),
        st.builds(lambda a, b: App("g", (a, b)), t, t)), max_leaves=3))


def formulas(bound=("x", "y", "z")):
    atoms = st.one_of(
        st.sampled_from([Atom("A"), Atom("B")]),
        st.builds(lambda t: Atom("P", (t,)), terms(bound)),
        st.builds(lambda s, t: Atom("R", (s, t)), terms(bound), terms(bound)),
        st.builds(Equals, terms(bound), terms(bound)),
    )
    heads = st.one_of(
        st.sampled_from(enumerate_quantifier_functions()),
        st.builds(lambda fam, k: fam(k), st.sampled_from([Exactly, AtLeast, AtMost]), st.integers(0, 9)),
    )

    def extend(children):
        def quant(h, name, body):
            return (QF if isinstance(h, QuantifierFunction) else MQ)(h, name, body)
        return st.one_of(
            st.builds(Not, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
            st.builds(Iff, children, children),
            st.builds(quant, heads, st.sampled_from(bound), children),
        )

    return st.recursive(atoms, extend, max_leaves=12)


# --- parse examples ---------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("forall x. P(x)", QF(FORALL, "x", Atom("P", (x,)))),
    ("Q[TTF] v. P(v)", QF(QuantifierFunction(True, True, False), "v", Atom("P", (v,)))),
    ("exactly(1) v. P(v)", MQ(Exactly(1), "v", Atom("P", (v,)))),
    ("∃x. P(x)", QF(EXISTS, "x", Atom("P", (x,)))),
    ("~A | A", Or(Not(Atom("A")), Atom("A"))),
    ("¬A ∨ A", Or(Not(Atom("A")), Atom("A"))),
    ("c = f(d)", Equals(Const("c"), App("f", (Const("d"),)))),
])
def test_parse_examples(text, expected):
    assert parse(text, SIG) == expected


@pytest.mark.parametrize("text, expected", [
    ("A & B | A", Or(And(Atom("A"), Atom("B")), Atom("A"))),
    ("A | B & A", Or(Atom("A"), And(Atom("B"), Atom("A")))),
    ("A -> B -> A", Implies(Atom("A"), Implies(Atom("B"), Atom("A")))),
    ("A <-> B -> A", Iff(Atom("A"), Implies(Atom("B"), Atom("A")))),
    ("~A & B", And(Not(Atom("A")), Atom("B"))),
    ("A & forall x. P(x) | B", And(Atom("A"), QF(FORALL, "x", Or(Atom("P", (x,)), Atom("B"))))),
    ("~c = d", Not(Equals(Const("c"), Const("d")))),
])
def test_precedence(text, expected):
    assert parse(text, SIG) == expected


@pytest.mark.parametrize("text, fragment, pos", [
    ("P(x", "expected rp", 3),
    ("P(c, d)", "expects 1 arguments", 0),
    ("Z(c)", "unknown function symbol", 0),
    ("forall x. P(x) $", "unexpected character", 15),
    ("forall c. P(c)", "cannot bind symbol", 7),
    ("P(f)", "without arguments", 2),
    ("x = P", "used as a term", 4),
    ("A &", "expected a formula", 3),
])
def test_parse_errors_carry_position(text, fragment, pos):
    with pytest.raises(ParseError) as info:
        parse(text, SIG)
    assert fragment in str(info.value)
    assert info.value.pos == pos


def test_unbound_name_in_sentence_mode():
    assert parse("P(x)", SIG) == Atom("P", (x,))
    with pytest.raises(ParseError, match="unbound name 'x'") as info:
        parse("P(x)", SIG, sentence=True)
    assert info.value.pos == 2


# --- printing ---------------------------------------------------------------

def test_print_examples():
    assert print_formula(QF(FORALL, "x", Atom("P", (x,)))) == "forall x. P(x)"
    assert print_formula(Equals(Const("c"), Const("d"))) == "c = d"
    assert print_formula(Or(Not(Atom("A")), Atom("A"))) == "(~A | A)"
    assert print_formula(Or(Not(Atom("A")), Atom("A")), unicode=True) == "(¬A ∨ A)"
    assert print_formula(Not(QF(EXISTS, "x", Atom("P", (x,))))) == "~(exists x. P(x))"
    assert str(MQ(AtMost(2), "y", Atom("R", (y, App("g", (y, Const("c"))))))) == "atmost(2) y. R(y, g(y, c))"


@given(formulas())
def test_round_trip(phi):
    assert parse(print_formula(phi), SIG) == phi
    assert parse(print_formula(phi, unicode=True), SIG) == phi


def test_round_trip_generator():
    gen = FormulaGenerator(DEFAULT_SIGNATURE, seed=7)
    for _ in range(300):
        phi = gen.formula()
        assert parse(print_formula(phi), DEFAULT_SIGNATURE) == phi


@given(formulas())
def test_lowering(phi):
    body = print_formula(phi)
    assert parse(f"forall v. {body}", SIG) == parse(f"Q[TFF] v. {body}", SIG)
    assert parse(f"exists v. {body}", SIG) == parse(f"Q[TFT] v. {body}", SIG)


# --- variables --------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("forall x. P(x)", set()),
    ("P(x) & Q(y)", {"x", "y"}),
    ("forall x. P(y)", {"y"}),
    ("exactly(2) x. R(x, y) | P(x)", {"y"}),
])
def test_free_variables(text, expected):
    assert free_variables(parse(text, SIG)) == expected


@given(formulas(), st.sampled_from(enumerate_quantifier_functions()), st.sampled_from("xyz"))
def test_binder_removes_variable(phi, q, name):
    assert free_variables(QF(q, name, phi)) == free_variables(phi) - {name}


@pytest.mark.parametrize("avoid, expected", [({"x", "y"}, "v0"), ({"v0"}, "v1"), (set(), "v0"),
                                             ({"v0", "v1", "v3"}, "v2")])
def test_fresh_variable(avoid, expected):
    assert fresh_variable(avoid) == expected


def test_substitute():
    phi = parse("P(v) & forall v. P(v)", SIG)
    assert substitute(phi, "v", Var("w")) == parse("P(w) & forall v. P(v)", SIG)
    with pytest.raises(ValueError, match="capture"):
        substitute(parse("forall x. R(x, v)", SIG), "v", Var("x"))


# --- signatures -------------------------------------------------------------

def test_signature_file():
    sig = parse_signature("# demo\nconst a\nfun f/2\npred P/1\npred A/0\n")
    assert sig == Signature.build(["a"], {"f": 2}, {"P": 1, "A": 0})
    assert parse_signature(sig.render()) == sig
    with pytest.raises(ParseError):
        parse_signature("fun f")
    with pytest.raises(ValueError):
        Signature.build(["P"], predicates={"P": 1})
    with pytest.raises(ValueError):
        Signature.build(functions={"f": 0})


def test_infer_signature():
    sig = infer_signature(["forall x. x = x", "P(c) & R(f(c), d)", "A"])
    assert sig.constants == ("c", "d")
    assert sig.function_arity == {"f": 1}
    assert sig.predicate_arity == {"P": 1, "R": 2, "A": 0}
    with pytest.raises(ParseError):
        infer_signature(["P(c) & P(c, c)"])
    base = parse_signature("pred S/1")
    assert infer_signature(["exists v. S(v)"], base) == base
