"""Guard automata: nondeterministic automata with tests for guard matching.

The Thompson construction yields one automaton per guard with a linear
number of states; tests sit on states and constrain runs passing through
them.  Test-free guards additionally support epsilon elimination, subset
determinization, regex extraction by state elimination, and the
limit-matching check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .formulas import (
    Alt,
    And,
    Atom,
    Concat,
    EPSILON_GUARD,
    Ff,
    Formula,
    Guard,
    NegAtom,
    Or,
    Prop,
    Star,
    Test,
    Tt,
)


class HasTestsError(ValueError):
    """Raised when a test-free guard is required but tests are present."""


def prop_holds(letter: frozenset[str], phi: Formula) -> bool:
    """Evaluate a propositional formula on a single letter."""
    from .formulas import Implies, Not

    if isinstance(phi, Tt):
        return True
    if isinstance(phi, Ff):
        return False
    if isinstance(phi, Atom):
        return phi.name in letter
    if isinstance(phi, NegAtom):
        return phi.name not in letter
    if isinstance(phi, Not):
        return not prop_holds(letter, phi.arg)
    if isinstance(phi, And):
        return prop_holds(letter, phi.left) and prop_holds(letter, phi.right)
    if isinstance(phi, Or):
        return prop_holds(letter, phi.left) or prop_holds(letter, phi.right)
    if isinstance(phi, Implies):
        return (not prop_holds(letter, phi.left)) or prop_holds(letter, phi.right)
    msg = f"not a propositional formula: {phi!r}"
    raise TypeError(msg)


def all_letters(props) -> tuple[frozenset[str], ...]:
    """The full alphabet 2^P in a deterministic order."""
    names = sorted(props)
    out = []
    for mask in range(1 << len(names)):
        out.append(frozenset(names[i] for i in range(len(names)) if mask >> i & 1))
    return tuple(out)


@dataclass(frozen=True)
class GuardNFA:
    """Thompson-style automaton; tests label states, finals are terminal."""

    n_states: int
    initial: int
    finals: frozenset[int]
    eps: tuple[tuple[int, ...], ...]
    letters: tuple[tuple[tuple[Formula, int], ...], ...]
    tests: dict[int, Formula]

    def has_tests(self) -> bool:
        return bool(self.tests)


class _Builder:
    def __init__(self) -> None:
        self.eps: list[list[int]] = []
        self.letters: list[list[tuple[Formula, int]]] = []
        self.tests: dict[int, Formula] = {}

    def new_state(self) -> int:
        self.eps.append([])
        self.letters.append([])
        return len(self.eps) - 1

    def build(self, guard: Guard) -> tuple[int, int]:
        if isinstance(guard, Prop):
            s, t = self.new_state(), self.new_state()
            self.letters[s].append((guard.formula, t))
            return s, t
        if isinstance(guard, Test):
            s, t = self.new_state(), self.new_state()
            self.tests[s] = guard.formula
            self.eps[s].append(t)
            return s, t
        if isinstance(guard, Alt):
            i0, f0 = self.build(guard.left)
            i1, f1 = self.build(guard.right)
            s, t = self.new_state(), self.new_state()
            self.eps[s].extend((i0, i1))
            self.eps[f0].append(t)
            self.eps[f1].append(t)
            return s, t
        if isinstance(guard, Concat):
            i0, f0 = self.build(guard.left)
            i1, f1 = self.build(guard.right)
            self.eps[f0].append(i1)
            return i0, f1
        if isinstance(guard, Star):
            i0, f0 = self.build(guard.arg)
            s, t = self.new_state(), self.new_state()
            self.eps[s].extend((i0, t))
            self.eps[f0].extend((i0, t))
            return s, t
        msg = f"unknown guard node {guard!r}"
        raise TypeError(msg)


def thompson(guard: Guard) -> GuardNFA:
    """Compile a guard into an automaton with at most two states per node."""
    builder = _Builder()
    initial, final = builder.build(guard)
    return GuardNFA(
        n_states=len(builder.eps),
        initial=initial,
        finals=frozenset({final}),
        eps=tuple(tuple(targets) for targets in builder.eps),
        letters=tuple(tuple(edges) for edges in builder.letters),
        tests=dict(builder.tests),
    )


def simple_eps_closure(nfa: GuardNFA, state: int) -> list[tuple[int, frozenset[Formula]]]:
    """States reachable by epsilon paths with their minimal test sets.

    A pair (q, T) means q is reachable from the given state along an
    epsilon path whose visited states carry exactly the tests in T; only
    minimal sets are kept (paths through extra cycles only add tests).
    """
    start_tests = frozenset(
        {nfa.tests[state]} if state in nfa.tests else set()
    )
    families: dict[int, set[frozenset[Formula]]] = {state: {start_tests}}
    work = [(state, start_tests)]
    while work:
        q, tests = work.pop()
        for succ in nfa.eps[q]:
            extra = nfa.tests.get(succ)
            new_tests = tests | {extra} if extra is not None else tests
            family = families.setdefault(succ, set())
            if any(old <= new_tests for old in family):
                continue
            for old in [old for old in family if new_tests < old]:
                family.discard(old)
            family.add(new_tests)
            work.append((succ, new_tests))
    out: list[tuple[int, frozenset[Formula]]] = []
    for q in sorted(families):
        for tests in sorted(families[q], key=lambda s: sorted(map(str, s))):
            out.append((q, tests))
    return out


def eps_eliminate_test_free(nfa: GuardNFA) -> GuardNFA:
    """Remove epsilon edges from a test-free automaton."""
    if nfa.has_tests():
        msg = "guard automaton contains tests"
        raise HasTestsError(msg)
    letters: list[list[tuple[Formula, int]]] = [[] for _ in range(nfa.n_states)]
    finals: set[int] = set()
    for q in range(nfa.n_states):
        seen: set[tuple[Formula, int]] = set()
        for target, _tests in simple_eps_closure(nfa, q):
            if target in nfa.finals:
                finals.add(q)
            for edge in nfa.letters[target]:
                if edge not in seen:
                    seen.add(edge)
                    letters[q].append(edge)
    return GuardNFA(
        n_states=nfa.n_states,
        initial=nfa.initial,
        finals=frozenset(finals),
        eps=tuple(() for _ in range(nfa.n_states)),
        letters=tuple(tuple(edges) for edges in letters),
        tests={},
    )


@dataclass(frozen=True)
class GuardDFA:
    """Complete deterministic automaton over the alphabet 2^props."""

    n_states: int
    initial: int
    finals: frozenset[int]
    props: tuple[str, ...]
    transitions: dict[tuple[int, frozenset[str]], int]

    def step(self, state: int, letter: frozenset[str]) -> int:
        return self.transitions[(state, letter)]


def dfa_product(d1: GuardDFA, d2: GuardDFA) -> GuardDFA:
    """Intersection of two complete automata over the same propositions."""
    if d1.props != d2.props:
        msg = f"propositions differ: {d1.props} vs {d2.props}"
        raise ValueError(msg)
    alphabet = all_letters(d1.props)
    start = (d1.initial, d2.initial)
    index = {start: 0}
    order = [start]
    transitions: dict[tuple[int, frozenset[str]], int] = {}
    queue = [start]
    while queue:
        pair = queue.pop(0)
        q1, q2 = pair
        for letter in alphabet:
            target = (d1.step(q1, letter), d2.step(q2, letter))
            if target not in index:
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            transitions[(index[pair], letter)] = index[target]
    finals = frozenset(
        index[(q1, q2)]
        for q1, q2 in order
        if q1 in d1.finals and q2 in d2.finals
    )
    return GuardDFA(
        n_states=len(order),
        initial=0,
        finals=finals,
        props=d1.props,
        transitions=transitions,
    )


def determinize(nfa: GuardNFA, props) -> GuardDFA:
    """Subset construction for a test-free guard automaton."""
    if nfa.has_tests():
        msg = "guard automaton contains tests"
        raise HasTestsError(msg)
    flat = nfa if all(not e for e in nfa.eps) else eps_eliminate_test_free(nfa)
    alphabet = all_letters(props)
    initial = frozenset({flat.initial})
    index: dict[frozenset[int], int] = {initial: 0}
    order = [initial]
    transitions: dict[tuple[int, frozenset[str]], int] = {}
    queue = [initial]
    while queue:
        subset = queue.pop(0)
        for letter in alphabet:
            target = frozenset(
                t
                for q in subset
                for formula, t in flat.letters[q]
                if prop_holds(letter, formula)
            )
            if target not in index:
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            transitions[(index[subset], letter)] = index[target]
    finals = frozenset(
        index[s] for s in order if any(q in flat.finals for q in s)
    )
    return GuardDFA(
        n_states=len(order),
        initial=0,
        finals=finals,
        props=tuple(sorted(props)),
        transitions=transitions,
    )


def _letter_formula(letter: frozenset[str], props) -> Formula:
    """The conjunction of literals pinning one letter exactly."""
    terms: list[Formula] = []
    for p in sorted(props):
        terms.append(Atom(p) if p in letter else NegAtom(p))
    if not terms:
        return Tt()
    out = terms[0]
    for term in terms[1:]:
        out = And(out, term)
    return out


def _galt(a: Guard | None, b: Guard | None) -> Guard | None:
    if a is None:
        return b
    if b is None:
        return a
    if a == b:
        return a
    return Alt(a, b)


def _gconcat(a: Guard | None, b: Guard | None) -> Guard | None:
    if a is None or b is None:
        return None
    if a == EPSILON_GUARD:
        return b
    if b == EPSILON_GUARD:
        return a
    return Concat(a, b)


def _gstar(a: Guard | None) -> Guard:
    if a is None or a == EPSILON_GUARD:
        return EPSILON_GUARD
    if isinstance(a, Star):
        return a
    return Star(a)


def extract_regex(dfa: GuardDFA, source: int, targets) -> Guard:
    """Language of paths from source to any target, by state elimination."""
    targets = frozenset(targets)
    alphabet = all_letters(dfa.props)
    full = frozenset(alphabet)
    start, end = dfa.n_states, dfa.n_states + 1
    edges: dict[tuple[int, int], Guard | None] = {}

    def add(i: int, j: int, guard: Guard | None) -> None:
        if guard is None:
            return
        edges[(i, j)] = _galt(edges.get((i, j)), guard)

    by_pair: dict[tuple[int, int], set[frozenset[str]]] = {}
    for (q, letter), q2 in dfa.transitions.items():
        by_pair.setdefault((q, q2), set()).add(letter)
    for (q, q2), letters in sorted(
        by_pair.items(), key=lambda item: item[0]
    ):
        if letters == full:
            add(q, q2, Prop(Tt()))
            continue
        formula: Formula | None = None
        for letter in sorted(letters, key=lambda s: tuple(sorted(s))):
            term = _letter_formula(letter, dfa.props)
            formula = term if formula is None else Or(formula, term)
        add(q, q2, Prop(formula))
    add(start, source, EPSILON_GUARD)
    for t in sorted(targets):
        add(t, end, EPSILON_GUARD)

    remaining = list(range(dfa.n_states))
    # Eliminate low-degree states first to keep the output small.
    while remaining:
        remaining.sort(
            key=lambda s: sum(1 for (i, j) in edges if i == s or j == s)
        )
        s = remaining.pop(0)
        loop = _gstar(edges.pop((s, s), None))
        incoming = [(i, g) for (i, j), g in edges.items() if j == s]
        outgoing = [(j, g) for (i, j), g in edges.items() if i == s]
        for i, j in [key for key in edges if s in key]:
            del edges[(i, j)]
        for (i, g_in), (j, g_out) in itertools.product(incoming, outgoing):
            add(i, j, _gconcat(_gconcat(g_in, loop), g_out))
    result = edges.get((start, end))
    if result is None:
        return Prop(Ff())
    return result


def is_limit_matching(guard: Guard, props=None) -> bool:
    """True when every trace has infinitely many prefixes matching the guard.

    Decided on the determinized guard automaton read with Buechi
    acceptance on its final states: the guard is limit-matching exactly
    when no reachable cycle avoids the final states.
    """
    from .formulas import guard_tests, propositions as formula_props

    if guard_tests(guard):
        msg = "limit-matching is defined for test-free guards only"
        raise HasTestsError(msg)
    if props is None:
        props = sorted(
            {p for f in _guard_prop_formulas(guard) for p in formula_props(f)}
        )
    dfa = determinize(thompson(guard), props)
    alphabet = all_letters(dfa.props)
    reachable = {dfa.initial}
    queue = [dfa.initial]
    while queue:
        q = queue.pop()
        for letter in alphabet:
            q2 = dfa.step(q, letter)
            if q2 not in reachable:
                reachable.add(q2)
                queue.append(q2)
    # Cycle detection within reachable non-final states.
    nodes = sorted(reachable - dfa.finals)
    succ = {
        q: {dfa.step(q, letter) for letter in alphabet} & set(nodes)
        for q in nodes
    }
    color: dict[int, int] = {}

    def has_cycle(q: int) -> bool:
        stack = [(q, iter(sorted(succ[q])))]
        color[q] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color.get(nxt) == 1:
                    return True
                if nxt not in color:
                    color[nxt] = 1
                    stack.append((nxt, iter(sorted(succ[nxt]))))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
        return False

    return not any(q not in color and has_cycle(q) for q in nodes)


def _guard_prop_formulas(guard: Guard):
    if isinstance(guard, Prop):
        yield guard.formula
    elif isinstance(guard, Test):
        yield guard.formula
    elif isinstance(guard, (Alt, Concat)):
        yield from _guard_prop_formulas(guard.left)
        yield from _guard_prop_formulas(guard.right)
    elif isinstance(guard, Star):
        yield from _guard_prop_formulas(guard.arg)
