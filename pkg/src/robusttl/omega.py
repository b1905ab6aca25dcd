"""Nondeterministic Buechi and deterministic parity automata.

Dealternation uses the breakpoint construction, which is sound for weak
alternating automata (each strongly connected component of the input has
one color, so every run path stabilizes in a single component and
acceptance reduces to visiting odd states finitely often on every path).
Determinization follows the compact-tree construction that produces
parity indices directly from tree events.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .apa import APA, AlphabetMismatchError, is_weak, pb_models
from .formulas import Formula, LogicId, require_logic
from .guards import all_letters
from .traces import LassoTrace
from .truth import TOP, TruthValue4


class NotWeakError(ValueError):
    """Raised when dealternation gets a non-weak alternating automaton."""


@dataclass(frozen=True)
class NBA:
    """Nondeterministic Buechi automaton over 2^props."""

    props: tuple[str, ...]
    n_states: int
    initial: int
    transitions: dict  # (state, letter) -> tuple of successor states
    accepting: frozenset[int]

    @property
    def alphabet(self) -> tuple[frozenset[str], ...]:
        return all_letters(self.props)

    def state_count(self) -> int:
        return self.n_states


@dataclass(frozen=True)
class DPA:
    """Deterministic max-parity automaton; highest color seen infinitely
    often along the run must be even."""

    props: tuple[str, ...]
    n_states: int
    initial: int
    delta: dict  # (state, letter) -> state
    color: tuple[int, ...]

    @property
    def alphabet(self) -> tuple[frozenset[str], ...]:
        return all_letters(self.props)

    def states(self) -> range:
        return range(self.n_states)

    def step(self, q: int, letter) -> int:
        return self.delta[(q, frozenset(letter))]

    def state_count(self) -> int:
        return self.n_states


def apa_to_nba(a: APA) -> NBA:
    """Breakpoint dealternation of a weak alternating automaton.

    States are pairs (slice, owing) where the slice is the set of active
    automaton states and owing tracks states whose run path has stayed
    odd-colored since the last breakpoint.
    """
    if not is_weak(a):
        msg = "dealternation requires a weak alternating automaton"
        raise NotWeakError(msg)
    letters = all_letters(a.props)
    bad = frozenset(q for q in range(a.n_states) if a.color[q] % 2 == 1)
    start = (frozenset((a.initial,)), frozenset())
    index = {start: 0}
    order = [start]
    transitions: dict = {}
    work = [start]
    while work:
        node = work.pop()
        slice_, owing = node
        for letter in letters:
            succs = set()
            model_lists = [pb_models(a.delta[(q, letter)]) for q in sorted(slice_)]
            owing_pos = [
                i for i, q in enumerate(sorted(slice_)) if q in owing
            ]
            for combo in itertools.product(*model_lists):
                new_slice = frozenset().union(*combo) if combo else frozenset()
                if owing:
                    carried = frozenset().union(
                        *(combo[i] for i in owing_pos)
                    ) if owing_pos else frozenset()
                    new_owing = carried & bad
                else:
                    new_owing = new_slice & bad
                succs.add((new_slice, new_owing))
            out = []
            for s in sorted(succs, key=_pair_key):
                if s not in index:
                    index[s] = len(order)
                    order.append(s)
                    work.append(s)
                out.append(index[s])
            transitions[(index[node], letter)] = tuple(out)
    accepting = frozenset(
        index[s] for s in order if not s[1]
    )
    return NBA(a.props, len(order), 0, transitions, accepting)


def _pair_key(pair):
    s, o = pair
    return (sorted(s), sorted(o))


def nba_accepts_lasso(nba: NBA, trace: LassoTrace) -> bool:
    """Product of the automaton with the lasso; look for a fair cycle."""
    if not trace.propositions <= set(nba.props):
        msg = "trace uses propositions outside the automaton alphabet"
        raise AlphabetMismatchError(msg)
    start = (nba.initial, 0)
    graph: dict = {}
    seen = {start}
    work = [start]
    while work:
        node = work.pop()
        q, cls = node
        letter = trace.letter_at(cls)
        nxt_cls = trace.canonical_index(cls + 1)
        succs = tuple(
            (q2, nxt_cls) for q2 in nba.transitions[(q, letter)]
        )
        graph[node] = succs
        for s in succs:
            if s not in seen:
                seen.add(s)
                work.append(s)
    for comp in _sccs(graph):
        comp_set = set(comp)
        has_edge = any(s in comp_set for n in comp for s in graph[n])
        if not has_edge:
            continue
        if any(q in nba.accepting for q, _ in comp):
            return True
    return False


def _sccs(graph: dict):
    """Tarjan over an explicit successor dict, iterative."""
    index: dict = {}
    low: dict = {}
    on_stack = set()
    stack: list = []
    counter = [0]
    components = []
    for root in graph:
        if root in index:
            continue
        call = [(root, 0)]
        while call:
            node, pos = call.pop()
            if pos == 0:
                index[node] = low[node] = counter[0]
                counter[0] += 1
                stack.append(node)
                on_stack.add(node)
            succs = graph[node]
            if pos > 0:
                prev = succs[pos - 1]
                low[node] = min(low[node], low[prev])
            advanced = False
            for i in range(pos, len(succs)):
                t = succs[i]
                if t not in index:
                    call.append((node, i + 1))
                    call.append((t, 0))
                    advanced = True
                    break
                if t in on_stack:
                    low[node] = min(low[node], index[t])
            if advanced:
                continue
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                components.append(tuple(comp))
    return components


def nba_emptiness(nba: NBA) -> LassoTrace | None:
    """A lasso witness in the language, or None when empty.

    The witness is rebuilt from a reachable accepting state lying on a
    cycle and checked against the automaton before being returned.
    """
    letters = all_letters(nba.props)
    parent: dict = {nba.initial: None}
    work = [nba.initial]
    reach_order = [nba.initial]
    while work:
        q = work.pop(0)
        for letter in letters:
            for q2 in nba.transitions[(q, letter)]:
                if q2 not in parent:
                    parent[q2] = (q, letter)
                    reach_order.append(q2)
                    work.append(q2)
    for target in reach_order:
        if target not in nba.accepting:
            continue
        cycle = _cycle_word(nba, letters, target)
        if cycle is None:
            continue
        prefix: list = []
        node = target
        while parent[node] is not None:
            q, letter = parent[node]
            prefix.append(letter)
            node = q
        prefix.reverse()
        witness = LassoTrace(tuple(prefix), tuple(cycle))
        if not nba_accepts_lasso(nba, witness):
            msg = "internal error: emptiness witness rejected"
            raise AssertionError(msg)
        return witness
    return None


def _cycle_word(nba: NBA, letters, target: int):
    """Shortest nonempty letter sequence from target back to target."""
    parent: dict = {target: None}
    queue = [target]
    while queue:
        q = queue.pop(0)
        for letter in letters:
            for q2 in nba.transitions[(q, letter)]:
                if q2 == target:
                    word = [letter]
                    node = q
                    while parent[node] is not None:
                        pq, pl = parent[node]
                        word.append(pl)
                        node = pq
                    word.reverse()
                    return word
                if q2 not in parent:
                    parent[q2] = (q, letter)
                    queue.append(q2)
    return None


def nba_intersection(b1: NBA, b2: NBA) -> NBA:
    """Two-track product over the full state space of both automata."""
    if b1.props != b2.props:
        msg = f"propositions differ: {b1.props} vs {b2.props}"
        raise AlphabetMismatchError(msg)
    letters = all_letters(b1.props)
    n2 = b2.n_states

    def idx(q1: int, q2: int, track: int) -> int:
        return (q1 * n2 + q2) * 2 + track

    transitions: dict = {}
    accepting = set()
    for q1 in range(b1.n_states):
        for q2 in range(b2.n_states):
            for track in (0, 1):
                if track == 0 and q1 in b1.accepting:
                    nxt_track = 1
                elif track == 1 and q2 in b2.accepting:
                    nxt_track = 0
                else:
                    nxt_track = track
                if track == 0 and q1 in b1.accepting:
                    accepting.add(idx(q1, q2, track))
                for letter in letters:
                    succs = tuple(
                        idx(s1, s2, nxt_track)
                        for s1 in b1.transitions[(q1, letter)]
                        for s2 in b2.transitions[(q2, letter)]
                    )
                    transitions[(idx(q1, q2, track), letter)] = succs
    return NBA(
        b1.props,
        b1.n_states * n2 * 2,
        idx(b1.initial, b2.initial, 0),
        transitions,
        frozenset(accepting),
    )


# -- determinization -------------------------------------------------------


def _tree_step(tree, label_sets, letter, transitions, acc, n_bound):
    """One compact-tree transition; returns (tree', labels', priority).

    The tree is a tuple of (name, parent_name) pairs in name order; label
    sets map names to state sets.  Priority is min-parity: 2f for the
    smallest green name f, 2e+1 for the smallest red name e, whichever
    name is smaller; 2*n_bound+1 when nothing happens.
    """
    names = [name for name, _ in tree]
    parent = dict(tree)
    children: dict = {name: [] for name in names}
    for name, par in tree:
        if par is not None:
            children[par].append(name)
    labels = {
        name: frozenset(
            q2
            for q in label_sets[name]
            for q2 in transitions[(q, letter)]
        )
        for name in names
    }
    next_fresh = max(names) + 1 if names else 1
    for name in list(names):
        spawn = labels[name] & acc
        if spawn:
            fresh = next_fresh
            next_fresh += 1
            names.append(fresh)
            parent[fresh] = name
            children[name].append(fresh)
            children[fresh] = []
            labels[fresh] = spawn

    def restrict(name, allowed):
        labels[name] = labels[name] & allowed
        claimed: frozenset = frozenset()
        for child in children[name]:
            restrict(child, labels[name] - claimed)
            claimed = claimed | labels[child]

    roots = [name for name in names if parent[name] is None]
    for root in roots:
        restrict(root, labels[root])
    dead = {name for name in names if not labels[name]}
    red = min(dead) if dead else None

    def subtree(name):
        out = [name]
        for child in children[name]:
            out.extend(subtree(child))
        return out

    removed = set()
    for name in dead:
        removed.update(subtree(name))
    survivors = [name for name in names if name not in removed]
    green_nodes = []
    for name in survivors:
        kids = [c for c in children[name] if c not in removed]
        if kids and labels[name] == frozenset().union(
            *(labels[c] for c in kids)
        ):
            green_nodes.append(name)
    green = min(green_nodes) if green_nodes else None
    for name in green_nodes:
        if name in removed:
            continue
        for child in children[name]:
            if child not in removed:
                removed.update(subtree(child))
    final = [name for name in names if name not in removed]
    rename = {old: i + 1 for i, old in enumerate(sorted(final))}
    new_tree = tuple(
        (rename[name], rename[parent[name]] if parent[name] is not None else None)
        for name in sorted(final)
    )
    new_labels = {rename[name]: labels[name] for name in final}
    # A death at name e dominates a green at the same name: the greens of
    # later incarnations of a dying name must not look accepting.
    if red is not None and (green is None or 2 * red - 1 < 2 * green):
        priority = 2 * red - 1
    elif green is not None:
        priority = 2 * green
    else:
        priority = 2 * n_bound + 1
    return new_tree, new_labels, priority


def nba_to_dpa(nba: NBA) -> DPA:
    """Determinize to a max-parity automaton via compact trees.

    Tree events give min-parity priorities on transitions; the result is
    converted to state-based max-parity by pairing each tree with the
    priority of its incoming transition.
    """
    letters = all_letters(nba.props)
    n_bound = max(nba.n_states, 1)
    init_tree = ((1, None),)
    init_labels = {1: frozenset((nba.initial,))}
    empty_tree = ()

    def canon(tree, labels):
        return (
            tree,
            tuple(frozenset(labels[name]) for name, _ in tree),
        )

    neutral = 2 * n_bound + 1
    max_priority = 2 * n_bound + 2
    start = canon(init_tree, init_labels)
    tree_index = {start: 0}
    tree_order = [start]
    edges: dict = {}
    work = [start]
    while work:
        node = work.pop()
        tree, label_tuple = node
        labels = {name: label_tuple[i] for i, (name, _) in enumerate(tree)}
        for letter in letters:
            if not tree:
                nxt = (empty_tree, ())
                priority = neutral
            else:
                t2, l2, priority = _tree_step(
                    tree, labels, letter, nba.transitions, nba.accepting, n_bound
                )
                nxt = canon(t2, l2)
            if nxt not in tree_index:
                tree_index[nxt] = len(tree_order)
                tree_order.append(nxt)
                work.append(nxt)
            edges[(tree_index[node], letter)] = (tree_index[nxt], priority)
    # Convert transition priorities to state colors (max parity).
    k_even = max_priority if max_priority % 2 == 0 else max_priority + 1
    state_index: dict = {}
    order: list = []
    delta: dict = {}

    def get_state(tree_id: int, priority: int) -> int:
        key2 = (tree_id, priority)
        if key2 not in state_index:
            state_index[key2] = len(order)
            order.append(key2)
        return state_index[key2]

    initial = get_state(0, neutral)
    pos = 0
    while pos < len(order):
        tree_id, _priority = order[pos]
        src = pos
        pos += 1
        for letter in letters:
            nxt_tree, nxt_priority = edges[(tree_id, letter)]
            delta[(src, letter)] = get_state(nxt_tree, nxt_priority)
    color = tuple(k_even - priority for _, priority in order)
    return normalize_dpa_colors(DPA(nba.props, len(order), initial, delta, color))


def dpa_complement(d: DPA) -> DPA:
    """Shift every color by one; same structure, complementary language."""
    return normalize_dpa_colors(
        DPA(d.props, d.n_states, d.initial, d.delta, tuple(c + 1 for c in d.color))
    )


def normalize_dpa_colors(d: DPA) -> DPA:
    used = sorted(set(d.color))
    if not used:
        return d
    mapping = {}
    prev_old = used[0]
    prev_new = used[0] & 1
    mapping[prev_old] = prev_new
    for c in used[1:]:
        prev_new += 1 if (c - prev_old) % 2 == 1 else 2
        mapping[c] = prev_new
        prev_old = c
    if all(mapping[c] == c for c in used):
        return d
    return DPA(
        d.props,
        d.n_states,
        d.initial,
        d.delta,
        tuple(mapping[c] for c in d.color),
    )


def dpa_accepts_lasso(d: DPA, trace: LassoTrace) -> bool:
    """Run the automaton on the lasso; decide by the cycle's top color."""
    if not trace.propositions <= set(d.props):
        msg = "trace uses propositions outside the automaton alphabet"
        raise AlphabetMismatchError(msg)
    seen: dict = {}
    q = d.initial
    cls = 0
    history = []
    while (q, cls) not in seen:
        seen[(q, cls)] = len(history)
        history.append((q, cls))
        q = d.delta[(q, trace.letter_at(cls))]
        cls = trace.canonical_index(cls + 1)
    start = seen[(q, cls)]
    top = max(d.color[state] for state, _ in history[start:])
    return top % 2 == 0


# -- compilation pipelines -------------------------------------------------


def rldl_to_nba(phi: Formula, beta: TruthValue4, props=None) -> NBA:
    from .apa import from_rldl

    return apa_to_nba(from_rldl(phi, beta, props))


def rldl_to_dpa(phi: Formula, beta: TruthValue4, props=None) -> DPA:
    return nba_to_dpa(rldl_to_nba(phi, beta, props))


def ldl_to_dpa(phi: Formula, props=None) -> DPA:
    """Classical dynamic-logic formula to a parity automaton.

    Classical truth agrees with the first bit of the embedded five-valued
    formula, so compiling the embedding at the top threshold is exact.
    """
    from .translate import embed_ldl_in_rldl

    require_logic(phi, LogicId.LDL)
    return rldl_to_dpa(embed_ldl_in_rldl(phi), TOP, props)
