"""Model checking of finite transition systems.

Thresholded checks compile the negated property to an automaton and
intersect with the system; prompt checks use the alternating-color
technique, solving a one-player recoloring game where the verifier
controls only the fresh color proposition.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formulas import (
    And,
    Atom,
    Box,
    Diamond,
    Ff,
    Formula,
    LogicId,
    NegAtom,
    Next,
    Or,
    PromptDiamond,
    PromptEventually,
    Prop,
    Release,
    Star,
    Test,
    Tt,
    Until,
    Always,
    Eventually,
    Guard,
    LogicViolationError,
    propositions,
    require_logic,
)
from .guards import determinize, dfa_product, extract_regex, thompson
from .semantics import eval_rldl
from .traces import LassoTrace
from .truth import BOTTOM, TOP, TruthValue4


class TerminalStateError(ValueError):
    """Raised when a transition-system state has no outgoing edge."""


class SystemFormatError(ValueError):
    """Raised on malformed transition-system text."""


@dataclass(frozen=True)
class TransitionSystem:
    """Finite system; every state has a successor, so paths are infinite."""

    states: tuple[str, ...]
    initial: str
    edges: dict  # state -> tuple of successor states
    labels: dict  # state -> frozenset of propositions

    def validate(self) -> None:
        if self.initial not in self.states:
            msg = f"unknown initial state {self.initial!r}"
            raise SystemFormatError(msg)
        for s in self.states:
            if not self.edges.get(s):
                msg = f"state {s!r} has no outgoing edge"
                raise TerminalStateError(msg)

    @property
    def propositions(self) -> frozenset[str]:
        out: set[str] = set()
        for s in self.states:
            out |= self.labels[s]
        return frozenset(out)


def parse_transition_system(text: str) -> TransitionSystem:
    """Text format: `state <name> [init] { p, q }` and `edge <a> <b>`."""
    states: list[str] = []
    labels: dict = {}
    edges: dict = {}
    initial = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "state":
            rest = line[len("state"):].strip()
            name, _, brace = rest.partition("{")
            tokens = name.split()
            if not tokens or not brace.rstrip().endswith("}"):
                msg = f"malformed state line: {raw.strip()!r}"
                raise SystemFormatError(msg)
            state = tokens[0]
            if len(tokens) > 2 or (len(tokens) == 2 and tokens[1] != "init"):
                msg = f"malformed state line: {raw.strip()!r}"
                raise SystemFormatError(msg)
            if len(tokens) == 2:
                if initial is not None:
                    msg = "multiple init states"
                    raise SystemFormatError(msg)
                initial = state
            body = brace.rstrip()[:-1]
            props = frozenset(
                p.strip() for p in body.split(",") if p.strip()
            )
            if state in labels:
                msg = f"duplicate state {state!r}"
                raise SystemFormatError(msg)
            states.append(state)
            labels[state] = props
            edges[state] = ()
        elif parts[0] == "edge":
            if len(parts) != 3:
                msg = f"malformed edge line: {raw.strip()!r}"
                raise SystemFormatError(msg)
            src, dst = parts[1], parts[2]
            if src not in labels or dst not in labels:
                msg = f"edge references unknown state: {raw.strip()!r}"
                raise SystemFormatError(msg)
            edges[src] = (*edges[src], dst)
        else:
            msg = f"unrecognized line: {raw.strip()!r}"
            raise SystemFormatError(msg)
    if initial is None:
        msg = "no init state declared"
        raise SystemFormatError(msg)
    ts = TransitionSystem(tuple(states), initial, edges, labels)
    ts.validate()
    return ts


def format_transition_system(ts: TransitionSystem) -> str:
    lines = []
    for s in ts.states:
        tag = " init" if s == ts.initial else ""
        body = ", ".join(sorted(ts.labels[s]))
        lines.append(f"state {s}{tag} {{ {body} }}".replace("{  }", "{ }"))
    for s in ts.states:
        for t in ts.edges[s]:
            lines.append(f"edge {s} {t}")
    return "\n".join(lines)


def ts_to_nba(ts: TransitionSystem, props=None):
    """Buechi automaton over the system's traces; all states accepting."""
    from .guards import all_letters
    from .omega import NBA

    ts.validate()
    names = set(ts.propositions)
    if props is not None:
        extra = set(props)
        if not names <= extra:
            msg = "props must cover the labels of the system"
            raise ValueError(msg)
        names = extra
    prop_tuple = tuple(sorted(names))
    index = {s: i for i, s in enumerate(ts.states)}
    transitions: dict = {}
    for s in ts.states:
        succs = tuple(index[t] for t in ts.edges[s])
        for letter in all_letters(prop_tuple):
            transitions[(index[s], letter)] = (
                succs if letter == ts.labels[s] else ()
            )
    return NBA(
        prop_tuple,
        len(ts.states),
        index[ts.initial],
        transitions,
        frozenset(range(len(ts.states))),
    )


@dataclass(frozen=True)
class McResult:
    holds: bool
    counterexample: LassoTrace | None = None
    bound: int | None = None


def is_trace_of(ts: TransitionSystem, trace: LassoTrace) -> bool:
    """Whether some path of the system produces the lasso's word."""
    n = len(trace.prefix) + len(trace.loop)
    nodes = {
        (s, c)
        for s in ts.states
        for c in range(n)
        if ts.labels[s] == trace.letter_at(c)
    }
    # Largest subset where every node has a successor in the subset.
    changed = True
    while changed:
        changed = False
        for node in sorted(nodes):
            s, c = node
            c2 = trace.canonical_index(c + 1)
            if not any((t, c2) in nodes for t in ts.edges[s]):
                nodes.discard(node)
                changed = True
    return (ts.initial, 0) in nodes


def shrink_lasso(trace: LassoTrace) -> LassoTrace:
    """Word-preserving reduction: fold the prefix, divide the loop."""
    prefix = list(trace.prefix)
    loop = list(trace.loop)
    # Rotate loop content absorbed at the prefix end into the loop start.
    while prefix and prefix[-1] == loop[-1]:
        prefix.pop()
        loop = [loop[-1], *loop[:-1]]
    for d in range(1, len(loop) + 1):
        if len(loop) % d == 0 and loop == loop[:d] * (len(loop) // d):
            loop = loop[:d]
            break
    return LassoTrace(tuple(prefix), tuple(loop))


def mc_rldl(ts: TransitionSystem, phi: Formula, beta: TruthValue4) -> McResult:
    """Do all traces of the system reach the threshold?

    Compiles the complement at the threshold, intersects with the system
    automaton, and extracts an oracle-verified counterexample lasso on
    emptiness failure.
    """
    from .apa import apa_complement, from_rldl
    from .omega import apa_to_nba, nba_emptiness, nba_intersection

    require_logic(phi, LogicId.RLDL)
    ts.validate()
    if beta == BOTTOM:
        return McResult(True)
    props = sorted(set(propositions(phi)) | set(ts.propositions))
    apa = from_rldl(phi, beta, props)
    bad = apa_to_nba(apa_complement(apa))
    sys_nba = ts_to_nba(ts, props)
    witness = nba_emptiness(nba_intersection(sys_nba, bad))
    if witness is None:
        return McResult(True)
    witness = shrink_lasso(witness)
    if eval_rldl(witness, phi) >= beta:
        msg = "internal error: counterexample meets the threshold"
        raise AssertionError(msg)
    if not is_trace_of(ts, witness):
        msg = "internal error: counterexample is not a system trace"
        raise AssertionError(msg)
    return McResult(False, witness)


def relax_prompt(psi: Formula, color_prop: str) -> Formula:
    """Replace prompt operators by color-window relaxations.

    A prompt eventuality must fire before the fresh color changes twice;
    a prompt diamond must complete its match within a window showing at
    most one color change.
    """
    c = Atom(color_prop)
    nc = NegAtom(color_prop)
    memo: dict = {}

    def rec(f: Formula) -> Formula:
        if f in memo:
            return memo[f]
        if isinstance(f, (Tt, Ff, Atom, NegAtom)):
            out: Formula = f
        elif isinstance(f, And):
            out = And(rec(f.left), rec(f.right))
        elif isinstance(f, Or):
            out = Or(rec(f.left), rec(f.right))
        elif isinstance(f, Next):
            out = Next(rec(f.arg))
        elif isinstance(f, Until):
            out = Until(rec(f.left), rec(f.right))
        elif isinstance(f, Release):
            out = Release(rec(f.left), rec(f.right))
        elif isinstance(f, Eventually):
            out = Eventually(rec(f.arg))
        elif isinstance(f, Always):
            out = Always(rec(f.arg))
        elif isinstance(f, PromptEventually):
            arg = rec(f.arg)
            out = Or(
                And(c, Until(c, Until(nc, arg))),
                And(nc, Until(nc, Until(c, arg))),
            )
        elif isinstance(f, Diamond):
            out = Diamond(rec_guard(f.guard), rec(f.arg))
        elif isinstance(f, Box):
            out = Box(rec_guard(f.guard), rec(f.arg))
        elif isinstance(f, PromptDiamond):
            out = Diamond(
                _window_guard(f.guard, color_prop), rec(f.arg)
            )
        else:
            msg = f"unsupported node {type(f).__name__}"
            raise ValueError(msg)
        memo[f] = out
        return out

    def rec_guard(g: Guard) -> Guard:
        if isinstance(g, Prop):
            return g
        if isinstance(g, Test):
            return Test(rec(g.formula))
        if isinstance(g, Star):
            return Star(rec_guard(g.arg))
        return type(g)(rec_guard(g.left), rec_guard(g.right))

    return rec(psi)


def _window_guard(guard: Guard, color_prop: str) -> Guard:
    """Intersect a test-free guard with 'at most one color change'."""
    from .formulas import Alt, Concat

    props = sorted(
        {
            p
            for f in _guard_prop_formulas(guard)
            for p in propositions(f)
        }
        | {color_prop}
    )
    c = Prop(Atom(color_prop))
    nc = Prop(NegAtom(color_prop))
    pattern = Alt(Concat(Star(c), Star(nc)), Concat(Star(nc), Star(c)))
    d1 = determinize(thompson(guard), props)
    d2 = determinize(thompson(pattern), props)
    product = dfa_product(d1, d2)
    return extract_regex(product, product.initial, product.finals)


def _guard_prop_formulas(guard: Guard):
    from .guards import _guard_prop_formulas as inner

    return inner(guard)


def _limit_prompt(psi: Formula) -> Formula:
    """Unbounded relaxation: prompt operators lose their bound."""

    def rec(f: Formula) -> Formula:
        if isinstance(f, (Tt, Ff, Atom, NegAtom)):
            return f
        if isinstance(f, (And, Or, Until, Release)):
            return type(f)(rec(f.left), rec(f.right))
        if isinstance(f, (Next, Eventually, Always)):
            return type(f)(rec(f.arg))
        if isinstance(f, PromptEventually):
            return Eventually(rec(f.arg))
        if isinstance(f, (Diamond, Box)):
            return type(f)(rec_guard(f.guard), rec(f.arg))
        if isinstance(f, PromptDiamond):
            return Diamond(rec_guard(f.guard), rec(f.arg))
        msg = f"unsupported node {type(f).__name__}"
        raise ValueError(msg)

    def rec_guard(g: Guard) -> Guard:
        if isinstance(g, Prop):
            return g
        if isinstance(g, Test):
            return Test(rec(g.formula))
        if isinstance(g, Star):
            return Star(rec_guard(g.arg))
        return type(g)(rec_guard(g.left), rec_guard(g.right))

    return rec(psi)


def _uniform_counterexample(ts: TransitionSystem, psi: Formula) -> LassoTrace:
    """Trace of the system violating the property at every bound.

    When no bound works on a finite system, some obligation can be
    delayed around a cycle that never discharges it, so the unbounded
    relaxation already fails on a lasso; such a lasso fails at every
    bound because bounded satisfaction implies unbounded satisfaction.
    """
    from .translate import embed_ldl_in_rldl, ltl_surface_to_ldl

    limit = ltl_surface_to_ldl(_limit_prompt(psi))
    checked = mc_rldl(ts, embed_ldl_in_rldl(limit), TOP)
    if checked.holds:
        msg = "internal error: no bound works yet the relaxation holds"
        raise AssertionError(msg)
    return checked.counterexample


def prompt_mc(ts: TransitionSystem, psi: Formula) -> McResult:
    """Is there a bound k under which every trace satisfies psi?

    Solved as a recoloring game on the system where the adversary picks
    transitions and the verifier only picks the color bit.
    """
    from .games import GameResult, LabeledGameGraph, solve_prompt_game

    try:
        require_logic(psi, LogicId.PROMPT_LTL)
    except LogicViolationError:
        require_logic(psi, LogicId.PROMPT_LDL)
    ts.validate()
    graph = LabeledGameGraph(
        vertices=tuple(ts.states),
        owner={s: 1 for s in ts.states},
        edges=dict(ts.edges),
        labels=dict(ts.labels),
    )
    result: GameResult = solve_prompt_game(graph, psi, ts.initial)
    if result.winner == 0:
        return McResult(True, bound=result.bound)
    return McResult(False, _uniform_counterexample(ts, psi))


def mc_rprompt_ltl(
    ts: TransitionSystem, phi: Formula, beta: TruthValue4
) -> McResult:
    """Thresholded robust prompt check via derobustification."""
    from .translate import rprompt_to_prompt

    require_logic(phi, LogicId.RPROMPT_LTL)
    if beta == BOTTOM:
        return McResult(True)
    return prompt_mc(ts, rprompt_to_prompt(phi, beta))


def mc_fragment(
    ts: TransitionSystem, phi: Formula, beta: TruthValue4
) -> McResult:
    """Thresholded check for the test-free limit-matching fragment."""
    from .translate import fragment_translate

    psi = fragment_translate(phi, beta)
    if beta == BOTTOM:
        return McResult(True)
    return prompt_mc(ts, psi)
