import pytest

from robusttl.apa import APA, PBAnd, PBVar, from_rldl, pb_and, pb_or
from robusttl.formulas import LogicId
from robusttl.gen import make_rng, random_formula, random_lasso
from robusttl.guards import all_letters
from robusttl.hoa import dpa_to_hoa, nba_to_hoa
from robusttl.omega import (
    NBA,
    NotWeakError,
    apa_to_nba,
    dpa_accepts_lasso,
    dpa_complement,
    ldl_to_dpa,
    nba_accepts_lasso,
    nba_emptiness,
    nba_intersection,
    nba_to_dpa,
    rldl_to_dpa,
    rldl_to_nba,
)
from robusttl.parser import parse
from robusttl.semantics import eval_ldl, eval_rldl
from robusttl.traces import LassoTrace, parse_trace
from robusttl.truth import POSITIVE_VALUES, from_string

PQ = ("p", "q")


def letter(*props):
    return frozenset(props)


def simple_nba(accept_on_p: bool) -> NBA:
    # Accepts words with infinitely many p (or q when flipped).
    target = "p" if accept_on_p else "q"
    transitions = {}
    for a in all_letters(PQ):
        transitions[(0, a)] = (1,) if target in a else (0,)
        transitions[(1, a)] = (1,) if target in a else (0,)
    return NBA(PQ, 2, 0, transitions, frozenset({1}))


def test_apa_to_nba_equivalence_samples():
    rng = make_rng(7)
    for _ in range(30):
        phi = random_formula(rng, LogicId.RLDL, rng.randint(1, 8), PQ)
        beta = POSITIVE_VALUES[rng.randrange(4)]
        apa = from_rldl(phi, beta, PQ)
        nba = apa_to_nba(apa)
        for _ in range(4):
            w = random_lasso(rng, PQ)
            assert nba_accepts_lasso(nba, w) == (eval_rldl(w, phi) >= beta)


def test_apa_to_nba_requires_weak():
    # A two-state odd/even alternation with colors 0 and 1 is not weak.
    letters = all_letters(("p",))
    delta = {}
    for a in letters:
        delta[(0, a)] = PBVar(1)
        delta[(1, a)] = PBVar(0)
    bad = APA(("p",), 2, 0, delta, (0, 1))
    with pytest.raises(NotWeakError):
        apa_to_nba(bad)


def test_nba_accepts_lasso_infinitely_often():
    nba = simple_nba(True)
    assert nba_accepts_lasso(nba, parse_trace("; {p}"))
    assert nba_accepts_lasso(nba, parse_trace("; {} {p}"))
    assert not nba_accepts_lasso(nba, parse_trace("{p} ; {}"))


def test_nba_emptiness_witness():
    nba = simple_nba(True)
    witness = nba_emptiness(nba)
    assert witness is not None
    assert nba_accepts_lasso(nba, witness)


def test_nba_emptiness_empty_language():
    apa = from_rldl(parse("[tt*] ff & <tt*> p"), from_string("1111"), ("p",))
    nba = apa_to_nba(apa)
    assert nba_emptiness(nba) is None


def test_nba_intersection_language_and_size():
    b1 = simple_nba(True)
    b2 = simple_nba(False)
    prod = nba_intersection(b1, b2)
    assert prod.n_states == b1.n_states * b2.n_states * 2
    assert nba_accepts_lasso(prod, parse_trace("; {p} {q}"))
    assert nba_accepts_lasso(prod, parse_trace("; {p,q}"))
    assert not nba_accepts_lasso(prod, parse_trace("; {p}"))
    assert not nba_accepts_lasso(prod, parse_trace("{q} ; {p}"))


def test_nba_to_dpa_equivalence_basic():
    for text, beta in [("[tt*] p", "0111"), ("[tt*] p", "0011"), ("<tt*> p", "1111")]:
        nba = rldl_to_nba(parse(text), from_string(beta), PQ)
        dpa = nba_to_dpa(nba)
        rng = make_rng(5)
        for _ in range(25):
            w = random_lasso(rng, PQ)
            assert dpa_accepts_lasso(dpa, w) == nba_accepts_lasso(nba, w), (
                text,
                beta,
                w,
            )


def test_nba_to_dpa_regression_infinitely_often_pattern():
    # A cycle seeing both a node death and a re-spawn at the same tree name
    # must reject; found by differential search, kept as a fixed case.
    nba = rldl_to_nba(parse("[tt*] p"), from_string("0111"), PQ)
    dpa = nba_to_dpa(nba)
    w = LassoTrace((letter(), letter("p")), (letter("p"), letter(), letter("p")))
    assert not nba_accepts_lasso(nba, w)
    assert not dpa_accepts_lasso(dpa, w)


def test_dpa_is_total_and_deterministic():
    dpa = rldl_to_dpa(parse("[(tt;tt)*] p"), from_string("0011"), PQ)
    for q in range(dpa.n_states):
        for a in all_letters(PQ):
            assert (q, a) in dpa.delta


def test_dpa_complement():
    dpa = rldl_to_dpa(parse("<tt*> (p & q)"), from_string("1111"), PQ)
    comp = dpa_complement(dpa)
    rng = make_rng(9)
    for _ in range(20):
        w = random_lasso(rng, PQ)
        assert dpa_accepts_lasso(dpa, w) != dpa_accepts_lasso(comp, w)


def test_ldl_to_dpa_classical():
    dpa = ldl_to_dpa(parse("[ (tt;tt)* ] p", LogicId.LDL), PQ)
    for trace_text in ["; {p} {}", "; {p}", "; {p} {p} {}", "{} ; {p} {}"]:
        w = parse_trace(trace_text)
        assert dpa_accepts_lasso(dpa, w) == (eval_ldl(w, parse("[ (tt;tt)* ] p")) == 1)


def test_full_chain_random_agreement():
    rng = make_rng(31)
    for _ in range(25):
        phi = random_formula(rng, LogicId.RLDL, rng.randint(1, 7), PQ)
        beta = POSITIVE_VALUES[rng.randrange(4)]
        nba = rldl_to_nba(phi, beta, PQ)
        dpa = rldl_to_dpa(phi, beta, PQ)
        for _ in range(3):
            w = random_lasso(rng, PQ)
            want = eval_rldl(w, phi) >= beta
            assert nba_accepts_lasso(nba, w) == want
            assert dpa_accepts_lasso(dpa, w) == want


def test_hoa_headers():
    nba = rldl_to_nba(parse("[tt*] p"), from_string("1111"), ("p",))
    text = nba_to_hoa(nba, name="always p")
    lines = text.splitlines()
    assert lines[0] == "HOA: v1"
    assert lines[1] == 'name: "always p"'
    assert lines[2] == f"States: {nba.n_states}"
    assert lines[3] == f"Start: {nba.initial}"
    assert lines[4] == 'AP: 1 "p"'
    assert lines[5] == "acc-name: Buchi"
    assert lines[6] == "Acceptance: 1 Inf(0)"
    assert "--BODY--" in lines and lines[-1] == "--END--"

    dpa = rldl_to_dpa(parse("[tt*] p"), from_string("0111"), ("p",))
    text = dpa_to_hoa(dpa)
    lines = text.splitlines()
    n_colors = max(dpa.color) + 1
    assert lines[0] == "HOA: v1"
    assert f"acc-name: parity max even {n_colors}" in lines
    assert any(line.startswith("Acceptance:") for line in lines)
    assert "deterministic" in text


def test_hoa_parity_acceptance_formula():
    dpa = rldl_to_dpa(parse("[tt*] p -> [tt*] q"), from_string("0011"), PQ)
    text = dpa_to_hoa(dpa)
    acc_line = next(l for l in text.splitlines() if l.startswith("Acceptance:"))
    n_colors = int(acc_line.split()[1])
    # Max-even acceptance mentions every color exactly once.
    for c in range(n_colors):
        kind = "Inf" if c % 2 == 0 else "Fin"
        assert f"{kind}({c})" in acc_line
