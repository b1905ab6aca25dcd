import pytest

from robusttl.apa import (
    APA,
    AlphabetMismatchError,
    EmptyListError,
    PBAnd,
    PBFalse,
    PBOr,
    PBTrue,
    PBVar,
    apa_accepts_lasso,
    apa_complement,
    apa_intersection,
    apa_union,
    from_rldl,
    is_weak,
    normalize_colors,
    pb_and,
    pb_dual,
    pb_models,
    pb_or,
    weak_components,
)
from robusttl.formulas import LogicId, size
from robusttl.gen import make_rng, random_formula, random_lasso
from robusttl.parser import parse
from robusttl.semantics import eval_rldl
from robusttl.truth import POSITIVE_VALUES, TOP, V0011, V0111, from_string
from robusttl.traces import parse_trace

PQ = ("p", "q")


def compile_at(text, beta):
    return from_rldl(parse(text, LogicId.RLDL), from_string(beta), PQ)


def agrees(apa, phi, beta, trace):
    want = eval_rldl(trace, phi) >= beta
    return apa_accepts_lasso(apa, trace) == want


def test_pb_constructors_fold_constants():
    x, y = PBVar(0), PBVar(1)
    assert pb_and([PBTrue(), x]) == x
    assert pb_and([PBFalse(), x]) == PBFalse()
    assert pb_or([PBFalse(), x]) == x
    assert pb_or([PBTrue(), x]) == PBTrue()
    assert pb_and([x, x]) == x
    assert pb_and([pb_and([x, y]), x]) == pb_and([x, y])


def test_pb_dual():
    x, y = PBVar(0), PBVar(1)
    assert pb_dual(pb_and([x, y])) == pb_or([x, y])
    assert pb_dual(PBTrue()) == PBFalse()
    assert pb_dual(pb_or([x, pb_and([x, y])])) == pb_and([x, pb_or([x, y])])


def test_pb_models_are_minimal():
    x, y, z = PBVar(0), PBVar(1), PBVar(2)
    models = pb_models(pb_or([x, pb_and([y, z])]))
    assert set(models) == {frozenset({0}), frozenset({1, 2})}
    # Absorption: x | (x & y) has the single minimal model {x}.
    assert set(pb_models(pb_or([x, pb_and([x, y])]))) == {frozenset({0})}
    assert pb_models(PBFalse()) == ()
    assert pb_models(PBTrue()) == (frozenset(),)


def test_from_rldl_is_weak():
    for text in ["[tt*] p", "<(p;q)*> (p & q)", "[tt*] p -> [tt*] q", "<{p}? ; tt*> q"]:
        for beta in POSITIVE_VALUES:
            apa = from_rldl(parse(text, LogicId.RLDL), beta, PQ)
            assert is_weak(apa)


def test_apa_matches_oracle_on_examples():
    phi = parse("[tt*] p", LogicId.RLDL)
    for beta_text, trace_text, want in [
        ("1111", "; {p}", True),
        ("1111", "{} ; {p}", False),
        ("0111", "{} ; {p}", True),
        ("0011", "; {} {p}", True),
        ("0111", "; {} {p}", False),
        ("0001", "{p} ; {}", True),
        ("0001", "; {}", False),
    ]:
        apa = compile_at("[tt*] p", beta_text)
        assert apa_accepts_lasso(apa, parse_trace(trace_text)) is want, (
            beta_text,
            trace_text,
        )


def test_complement_flips_acceptance():
    rng = make_rng(23)
    for _ in range(25):
        phi = random_formula(rng, LogicId.RLDL, rng.randint(1, 7), PQ)
        beta = POSITIVE_VALUES[rng.randrange(4)]
        apa = from_rldl(phi, beta, PQ)
        comp = apa_complement(apa)
        for _ in range(4):
            w = random_lasso(rng, PQ)
            assert apa_accepts_lasso(apa, w) != apa_accepts_lasso(comp, w)


def test_union_intersection():
    a = compile_at("[tt*] p", "0111")
    b = compile_at("[tt*] q", "0111")
    both = apa_intersection([a, b])
    either = apa_union([a, b])
    for trace_text in ["; {p,q}", "{} ; {p}", "; {q}", "; {}"]:
        w = parse_trace(trace_text)
        va, vb = apa_accepts_lasso(a, w), apa_accepts_lasso(b, w)
        assert apa_accepts_lasso(both, w) == (va and vb)
        assert apa_accepts_lasso(either, w) == (va or vb)
    with pytest.raises(EmptyListError):
        apa_union([])
    with pytest.raises(AlphabetMismatchError):
        apa_intersection([a, from_rldl(parse("[tt*] p"), V0111, ("p",))])


def test_normalize_colors_preserves_language():
    apa = compile_at("[tt*] p -> <tt*> q", "0011")
    shifted = APA(
        apa.props,
        apa.n_states,
        apa.initial,
        apa.delta,
        tuple(c + 4 for c in apa.color),
    )
    norm = normalize_colors(shifted)
    assert max(norm.color) <= max(shifted.color)
    rng = make_rng(3)
    for _ in range(12):
        w = random_lasso(rng, PQ)
        assert apa_accepts_lasso(norm, w) == apa_accepts_lasso(apa, w)


def test_weak_components_uniform_colors():
    apa = compile_at("[(tt;tt)*] (p -> <tt*> q)", "0111")
    comp = weak_components(apa)
    for group in comp:
        colors = {apa.color[q] for q in group}
        assert len(colors) == 1


def test_state_count_linear_in_size():
    # 10 is the documented constant: each subformula is compiled at most
    # once per degree and dual, each guard block costing 2 NFA copies.
    rng = make_rng(41)
    for _ in range(60):
        phi = random_formula(rng, LogicId.RLDL, rng.randint(1, 10), PQ)
        for beta in POSITIVE_VALUES:
            apa = from_rldl(phi, beta, PQ)
            assert apa.n_states <= 10 * size(phi)


def test_random_agreement_with_oracle():
    rng = make_rng(97)
    for _ in range(40):
        phi = random_formula(rng, LogicId.RLDL, rng.randint(1, 8), PQ)
        beta = POSITIVE_VALUES[rng.randrange(4)]
        apa = from_rldl(phi, beta, PQ)
        for _ in range(4):
            w = random_lasso(rng, PQ)
            assert agrees(apa, phi, beta, w), (phi, beta, w)


def test_props_must_cover_formula():
    with pytest.raises(ValueError):
        from_rldl(parse("[tt*] p"), TOP, ("q",))


def test_bottom_threshold_always_accepts():
    from robusttl.truth import BOTTOM

    apa = from_rldl(parse("[tt*] ff"), BOTTOM, ("p",))
    rng = make_rng(1)
    for _ in range(5):
        w = random_lasso(rng, ("p",))
        assert apa_accepts_lasso(apa, w)


def test_implication_chain_thresholds():
    # p -> q at 0011 asks: value of q at least min(value p, 0011).
    phi = parse("[tt*] p -> [tt*] q", LogicId.RLDL)
    apa = from_rldl(phi, V0011, PQ)
    for trace_text in ["; {p,q}", "{q} ; {p}", "{p} ; {q}", "; {p}", "; {q} {}"]:
        w = parse_trace(trace_text)
        assert apa_accepts_lasso(apa, w) == (eval_rldl(w, phi) >= V0011)
