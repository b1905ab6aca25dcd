import pytest

from robusttl.formulas import (
    Alt,
    Always,
    And,
    Atom,
    Box,
    Concat,
    Diamond,
    Eventually,
    Ff,
    LogicId,
    LogicViolationError,
    NegAtom,
    Not,
    PromptDiamond,
    PromptEventually,
    Prop,
    Release,
    Star,
    Tt,
    Until,
    check_logic,
    closure,
    format_formula,
    format_guard,
    guard_length,
    guard_tests,
    propositions,
    require_logic,
    size,
)
from robusttl.formulas import Test as GuardTest
from robusttl.gen import make_rng, random_formula
from robusttl.parser import FormulaSyntaxError, parse, parse_guard


@pytest.mark.parametrize(
    "text",
    [
        "tt",
        "ff",
        "p",
        "!p",
        "p & q | r",
        "p -> q -> r",
        "X p",
        "p U q",
        "p R q",
        "F G p",
        "G Fp s",
        "<tt*> p",
        "[ (tt;tt)* ] p",
        "<p (q;tt)* + ff> (p & q)",
        "[{p U q}? ; tt*] ff",
        "<p tt*> ff",
    ],
)
def test_parse_format_round_trip(text):
    phi = parse(text)
    assert parse(format_formula(phi)) == phi


def test_precedence():
    assert parse("p & q | r") == parse("(p & q) | r")
    assert parse("p -> q -> r") == parse("p -> (q -> r)")
    assert parse("p U q U r") == parse("p U (q U r)")
    assert parse("!p & q") == parse("(!p) & q")
    assert parse("G p | q") == parse("(G p) | q")


def test_guard_syntax():
    g = parse_guard("(p;q)* + {tt}?")
    assert g == Alt(Star(Concat(Prop(Atom("p")), Prop(Atom("q")))), GuardTest(Tt()))
    assert parse_guard(format_guard(g)) == g
    assert parse_guard("p ; q ; r") == parse_guard("(p ; q) ; r")
    assert parse_guard("p + q ; r") == parse_guard("p + (q ; r)")


def test_compound_prop_guard_atoms_round_trip():
    g = Star(Prop(Not(Atom("t"))))
    assert format_guard(g) == "(!t)*"
    # Reparsing gives the same guard language even if !t normalizes.
    assert format_guard(parse_guard(format_guard(g))) == "(!t)*"


@pytest.mark.parametrize(
    "text",
    ["", "p &", "(p", "<tt* p", "[tt*]", "p q", "{p?", "Fp", "p +", "<>p"],
)
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse(text)


def test_surfaces_accept():
    require_logic(parse("p U q"), LogicId.LTL)
    require_logic(parse("<tt*> !p"), LogicId.LDL)
    require_logic(parse("G Fp s"), LogicId.PROMPT_LTL)
    require_logic(parse("[tt*] <p p;tt*> q"), LogicId.PROMPT_LDL)
    require_logic(parse("G p -> G q"), LogicId.RLTL)
    require_logic(parse("G Fp s"), LogicId.RPROMPT_LTL)
    require_logic(parse("[(tt;tt)*] p -> ff"), LogicId.RLDL)
    require_logic(parse("[(tt;tt)*] <p tt*> s"), LogicId.RPROMPT_LDL)


@pytest.mark.parametrize(
    ("text", "logic"),
    [
        # Next/Until/Release have no robust variants.
        ("X p", LogicId.RLTL),
        ("p U q", LogicId.RLTL),
        ("p R q", LogicId.RPROMPT_LTL),
        # Prompt logics admit no general negation or implication.
        ("!(G p)", LogicId.RPROMPT_LTL),
        ("p -> q", LogicId.PROMPT_LTL),
        ("!(p & q)", LogicId.PROMPT_LDL),
        # Guards only in the dynamic logics.
        ("<tt*> p", LogicId.LTL),
        ("[tt*] p", LogicId.RLTL),
        # Prompt diamond only in the prompt dynamic logics.
        ("<p tt*> s", LogicId.RLDL),
        ("F p", LogicId.LDL),
    ],
)
def test_surfaces_reject(text, logic):
    phi = parse(text)
    assert check_logic(phi, logic)
    with pytest.raises(LogicViolationError):
        require_logic(phi, logic)


def test_guard_tests_recurse_same_logic():
    # A test inside an RLDL guard may itself use guards, not Until.
    phi = parse("[{<tt*> p}? ; tt*] q")
    require_logic(phi, LogicId.RLDL)
    bad = parse("[{p U q}? ; tt*] q")
    with pytest.raises(LogicViolationError):
        require_logic(bad, LogicId.RLDL)


def test_negation_in_guard_atoms_is_always_allowed():
    # Propositional guard atoms admit full propositional syntax even in
    # prompt logics, where formula-level Not is rejected.
    phi = parse("<(!p & !q)*> s")
    require_logic(phi, LogicId.PROMPT_LDL)


def test_closure_and_size():
    phi = parse("<p*> (q & q)")
    sub = closure(phi)
    assert Atom("q") in sub
    assert And(Atom("q"), Atom("q")) in sub
    assert size(phi) == len(sub) + guard_length(parse_guard("p*"))
    assert guard_length(parse_guard("(p;q)* + {tt}?")) == 6


def test_closure_includes_test_formulas():
    phi = parse("[{F p}? ; tt*] q")
    assert Eventually(Atom("p")) in closure(phi)
    assert Atom("p") in closure(phi)


def test_propositions():
    phi = parse("[{s}? ; a*] (b | !c)")
    assert propositions(phi) == frozenset({"s", "a", "b", "c"})


def test_guard_tests_listing():
    g = parse_guard("{p}? ; ({q}? + tt)*")
    assert guard_tests(g) == (Atom("p"), Atom("q"))


def test_prompt_tokens():
    assert parse("Fp s") == PromptEventually(Atom("s"))
    assert parse("<p tt*> s") == PromptDiamond(Star(Prop(Tt())), Atom("s"))
    assert format_formula(parse("G F Fp s")) == "G F Fp s"


def test_random_formulas_stay_admissible():
    rng = make_rng(3)
    for logic in LogicId:
        for _ in range(40):
            phi = random_formula(rng, logic, rng.randint(1, 10), ("p", "q"))
            require_logic(phi, logic)
            assert parse(format_formula(phi)) is not None
