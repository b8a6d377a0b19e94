"""Deciding the continuous-time synthesis problem on the finite arenas.

A positional choice fixes one outgoing edge per controller node; the
implicit timing plays the i-th block with duration scale 2^-i.  Against
such a choice the environment wins iff the one-player restriction has
(A) a reachable non-final block node (reach it and accept), or
(B) a reachable cycle through a big-labeled edge whose maximal priority is
odd (loop it with unit gaps on the big edge, forcing divergence).  Any
other infinite play interrupts inside lags only, and the geometric scales
make its total duration finite.

Cycle detection for (B): for each odd priority p, in the reachable
subgraph of edges with effective priority at most p, some strongly
connected component must contain both an edge of effective priority
exactly p and a big edge; a closed walk through both then realizes the
cycle.  Effective priority folds the source node's inherited priority into
the edge label, which preserves the maximum over any closed walk.

Enumeration is lazy: choices are extended only at controller nodes that
are reachable under the partial assignment, and the two violations are
monotone under extension, so a violated partial assignment prunes all its
completions.  Moves whose target block node behaves identically (same
finality, same labeled successor set) are deduplicated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arena import FV, I_UP, RC, Arena, ArenaEdge, ArenaNode, build_fv_arena, build_rc_arena
from .automaton import MAX_EVEN, ParityAutomaton, convert_convention
from .state_monoid import (
    build_UP,
    build_class_table,
    context_from_automaton,
)


class SynthError(Exception):
    pass


class ResourceCapError(SynthError):
    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind


@dataclass
class StrategyGraph:
    """One-player restriction of the arena under a positional choice."""

    arena: Arena
    choice: dict  # controller node -> ArenaEdge
    nodes: frozenset
    edges: tuple

    @property
    def reachable_up_nodes(self):
        return [n for n in self.nodes if n.kind == I_UP]


def effective_priority(arena: Arena, edge: ArenaEdge):
    """Edge label joined with the source node's inherited priority."""
    label = edge.priority if edge.labeled else None
    node = arena.node_priority(edge.src)
    if label is None:
        return node
    if node is None:
        return label
    return max(label, node)


def build_strategy_graph(arena: Arena, choice: dict) -> StrategyGraph:
    nodes, edges = _reachable(arena, choice)
    missing = [
        n for n in nodes if arena.owner(n) == "O" and n not in choice and arena.outgoing(n)
    ]
    if missing:
        raise SynthError(f"choice undefined at reachable controller node {missing[0]}")
    return StrategyGraph(arena, dict(choice), frozenset(nodes), tuple(sorted(edges)))


def _reachable(arena: Arena, choice: dict):
    """Nodes and edges reachable from fresh under a (possibly partial) choice."""
    seen = {arena.fresh}
    edges = []
    frontier = [arena.fresh]
    while frontier:
        node = frontier.pop()
        if arena.owner(node) == "O":
            outs = (choice[node],) if node in choice else ()
        else:
            outs = arena.outgoing(node)
        for e in outs:
            edges.append(e)
            if e.dst not in seen:
                seen.add(e.dst)
                frontier.append(e.dst)
    return seen, edges


def _sccs(nodes, succ):
    """Iterative Tarjan; returns the list of strongly connected components."""
    index, low = {}, {}
    stack, on_stack, out = [], set(), []
    counter = [0]
    for root in sorted(nodes):
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == node:
                        break
                out.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return out


@dataclass(frozen=True)
class Violation:
    kind: str  # 'A' | 'B'
    node: ArenaNode = None  # the non-final block node, for 'A'
    priority: int = -1  # the odd dominating priority, for 'B'
    cycle: tuple = ()  # closed walk of edges realizing 'B'
    entry: tuple = ()  # edges from fresh to the violation site


def _bfs_path(edges_by_src, start, goal_nodes, allowed=None):
    """Shortest edge path from start into goal_nodes; deterministic."""
    if start in goal_nodes:
        return ()
    prev = {start: None}
    frontier = [start]
    while frontier:
        new = []
        for v in sorted(frontier):
            for e in edges_by_src.get(v, ()):
                if allowed is not None and e not in allowed:
                    continue
                if e.dst in prev:
                    continue
                prev[e.dst] = e
                if e.dst in goal_nodes:
                    path = [e]
                    while prev[path[0].src] is not None:
                        path.insert(0, prev[path[0].src])
                    return tuple(path)
                new.append(e.dst)
        frontier = new
    return None


def find_violation(sg: StrategyGraph):
    """First reason the environment beats the choice, or None."""
    arena = sg.arena
    edges_by_src = {}
    for e in sg.edges:
        edges_by_src.setdefault(e.src, []).append(e)
    for v in edges_by_src:
        edges_by_src[v] = sorted(edges_by_src[v])

    bad_up = sorted(n for n in sg.nodes if n.kind == I_UP and n not in arena.final_up)
    if bad_up:
        entry = _bfs_path(edges_by_src, arena.fresh, {bad_up[0]})
        return Violation(kind="A", node=bad_up[0], entry=entry)

    prios = sorted(
        {p for e in sg.edges if (p := effective_priority(arena, e)) is not None},
        reverse=True,
    )
    for p in prios:
        if p % 2 == 0:
            continue
        sub_edges = [
            e
            for e in sg.edges
            if (effective_priority(arena, e) is None or effective_priority(arena, e) <= p)
        ]
        succ = {}
        for e in sub_edges:
            succ.setdefault(e.src, []).append(e.dst)
        comps = _sccs({e.src for e in sub_edges} | {e.dst for e in sub_edges}, succ)
        for comp in comps:
            inside = [e for e in sub_edges if e.src in comp and e.dst in comp]
            peak = [e for e in inside if effective_priority(arena, e) == p]
            big = [e for e in inside if e.size == "big"]
            if not peak or not big:
                continue
            e_p, e_b = sorted(peak)[0], sorted(big)[0]
            allowed = set(inside)
            inner_by_src = {}
            for e in inside:
                inner_by_src.setdefault(e.src, []).append(e)
            for v in inner_by_src:
                inner_by_src[v] = sorted(inner_by_src[v])
            if e_p == e_b:
                back = _bfs_path(inner_by_src, e_p.dst, {e_p.src}, allowed)
                cycle = (e_p,) + back
            else:
                mid = _bfs_path(inner_by_src, e_p.dst, {e_b.src}, allowed)
                back = _bfs_path(inner_by_src, e_b.dst, {e_p.src}, allowed)
                cycle = (e_p,) + mid + (e_b,) + back
            entry = _bfs_path(edges_by_src, arena.fresh, {e_p.src})
            return Violation(kind="B", priority=p, cycle=cycle, entry=entry)
    return None


def is_strategy_winning(sg: StrategyGraph) -> bool:
    """True iff the controller wins against every environment behavior."""
    return find_violation(sg) is None


# -- enumeration -------------------------------------------------------------


def _behavior_key(arena: Arena, edge: ArenaEdge):
    """Moves to behaviorally identical block nodes are interchangeable."""
    dst = edge.dst
    if dst.kind != I_UP:
        return ("node", dst)
    outs = frozenset(
        (e.dst, e.priority, e.size, e.kind) for e in arena.outgoing(dst)
    )
    return ("up", dst.state, dst.letter, dst in arena.final_up, outs)


def _candidate_edges(arena: Arena, node: ArenaNode):
    seen = set()
    out = []
    for e in arena.outgoing(node):
        key = _behavior_key(arena, e)
        if key in seen:
            continue
        seen.add(key)
        out.append(e)
    return out


@dataclass
class SynthStats:
    strategies_examined: int = 0
    pruned: int = 0
    class_counts: dict = field(default_factory=dict)
    up_sizes: dict = field(default_factory=dict)
    d_bound: int = 1


@dataclass
class SynthResult:
    realizable: bool
    semantics: str
    witness: dict | None
    arena: Arena
    stats: SynthStats
    violation: Violation | None = None  # witness for the empty-choice case


def partial_strategy_graph(arena: Arena, choice: dict) -> StrategyGraph:
    """Reachable restriction without requiring totality (search internals)."""
    nodes, edges = _reachable(arena, choice)
    restricted = {k: v for k, v in choice.items() if k in nodes}
    return StrategyGraph(arena, restricted, frozenset(nodes), tuple(sorted(edges)))


def enumerate_choices(arena: Arena, strategy_cap: int = 1_000_000, counters: dict | None = None):
    """Depth-first search over reachable partial choices.

    Yields (choice, violation-or-None) for every assignment whose verdict
    is decided: completed winning/losing assignments, and violated partial
    assignments (whose every completion loses, since reachability and both
    violation clauses only grow under extension).  Order is deterministic.
    """
    stats = counters if counters is not None else {}
    stats.setdefault("examined", 0)
    stats.setdefault("pruned", 0)

    def explore(choice):
        sg = partial_strategy_graph(arena, choice)
        pending = sorted(
            n
            for n in sg.nodes
            if arena.owner(n) == "O" and n not in choice and arena.outgoing(n)
        )
        violation = find_violation(sg)
        if violation is not None:
            stats["examined"] += 1
            if pending:
                stats["pruned"] += 1
            yield dict(sg.choice), violation
            return
        if not pending:
            stats["examined"] += 1
            yield dict(sg.choice), None
            return
        if stats["examined"] > strategy_cap:
            raise ResourceCapError(
                "strategies", f"strategy enumeration cap {strategy_cap} exceeded"
            )
        node = pending[0]
        for edge in _candidate_edges(arena, node):
            choice[node] = edge
            yield from explore(choice)
            del choice[node]

    yield from explore({})


def decide_continuous(
    spec: ParityAutomaton,
    semantics: str,
    monoid_cap: int = 200_000,
    strategy_cap: int = 1_000_000,
) -> SynthResult:
    """Top-level verdict: is the specification implementable in real time?

    Builds the per-input-letter block vocabularies, the arena for the
    requested semantics, and searches positional choices; realizable iff
    some choice survives the winning check.
    """
    if semantics not in (RC, FV):
        raise SynthError(f"semantics must be '{RC}' or '{FV}'")
    canonical = convert_convention(spec, MAX_EVEN)
    ctx = context_from_automaton(canonical)
    stats = SynthStats()
    up_by_letter = {}
    for x in canonical.sigma_in:
        table = build_class_table(ctx, cap=monoid_cap, letter=x)
        stats.class_counts[x] = table.class_count
        stats.d_bound = max(stats.d_bound, table.d_q)
        up_by_letter[x] = build_UP(table, only_runs=True)
        stats.up_sizes[x] = len(up_by_letter[x])
    builder = build_rc_arena if semantics == RC else build_fv_arena
    arena = builder(canonical, up_by_letter)
    stuck = [
        n for n in arena.nodes if arena.owner(n) == "O" and not arena.outgoing(n)
    ]
    if stuck:
        # cannot happen with a complete per-letter vocabulary over a total
        # automaton; a bare block vocabulary would silently skew the game
        raise SynthError(f"controller node without moves: {stuck[0]}")

    counters = {}
    last_violation = None
    result = None
    for choice, violation in enumerate_choices(arena, strategy_cap, counters):
        if violation is None:
            result = SynthResult(True, semantics, choice, arena, stats)
            break
        last_violation = violation
    stats.strategies_examined = counters.get("examined", 0)
    stats.pruned = counters.get("pruned", 0)
    if result is not None:
        return result
    return SynthResult(False, semantics, None, arena, stats, violation=last_violation)


def witness_to_player(arena: Arena, choice: dict):
    """Wrap a winning choice as an executable controller for the simulator."""
    from .game_sim import ChoiceController

    return ChoiceController(arena, choice)
