"""Finite arenas for the timed interrupt games.

Nodes follow the game structure: a fresh start node where the environment
fixes the first input letter; (q, a) nodes where the controller commits an
output; dagger nodes (q, +) / (q, +, a) in the finite-variability arena
where point outputs and the next input-for-a-while are fixed; and block
nodes (q, a, u) where the environment either accepts or interrupts the
controller's ultimately periodic block u.

Interrupt edges carry (priority, size) labels: the priority is the maximal
state priority over the traversed positions of u, and the edge is small
when the interrupt lands inside u's lag, big otherwise.  In the
finite-variability arena odd positions are interval values (interrupts
from the left) and even positions are point values (interrupts from the
right), and every non-fresh node inherits the priority of its automaton
state.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import MAX_EVEN, ParityAutomaton
from .state_monoid import UPMember

RC = "rc"
FV = "fv"

# node kinds
FRESH = "fresh"
O_PAIR = "o_pair"  # (q, a): controller picks the output at the point
O_DAG = "o_dag"  # (q, +): environment picks the input holding for a while
I_DAG = "i_dag"  # (q, +, a): controller picks the block u
I_UP = "i_up"  # (q, a, u): environment accepts or interrupts

# who moves at a node; the dagger kinds keep their structural names even
# though (q, +) is an environment decision and (q, +, a) a controller one
OWNER = {FRESH: "I", O_PAIR: "O", O_DAG: "I", I_DAG: "O", I_UP: "I"}

LEFT = "left"
RIGHT = "right"


class ArenaError(Exception):
    pass


@dataclass(frozen=True, order=True)
class ArenaNode:
    kind: str
    state: object = None
    letter: object = None
    up: int = -1  # index into Arena.members for i_up nodes

    def pretty(self, arena=None) -> str:
        if self.kind == FRESH:
            return "fresh"
        if self.kind == O_PAIR:
            return f"({self.state},{self.letter})"
        if self.kind == O_DAG:
            return f"({self.state},+)"
        if self.kind == I_DAG:
            return f"({self.state},+,{self.letter})"
        return f"({self.state},{self.letter},u{self.up})"


@dataclass(frozen=True, order=True)
class ArenaEdge:
    src: ArenaNode
    dst: ArenaNode
    priority: int = -1  # -1 for unlabeled edges
    size: str = ""  # 'small' | 'big' | ''
    kind: str = "plain"  # 'plain' | 'interrupt' | 'left' | 'right'

    @property
    def labeled(self) -> bool:
        return self.size != ""


@dataclass
class Arena:
    semantics: str
    automaton: ParityAutomaton
    members: tuple  # all UPMember objects referenced by i_up nodes
    nodes: tuple
    edges: tuple
    edges_from: dict
    fresh: ArenaNode
    final_up: frozenset  # i_up nodes whose period's max priority is even
    lag_bound: int  # max lag length among members (bounds small-edge spans)

    def owner(self, node: ArenaNode) -> str:
        return OWNER[node.kind]

    def node_priority(self, node: ArenaNode):
        """Inherited automaton priority; None in the right-continuous arena."""
        if self.semantics == RC or node.kind == FRESH:
            return None
        return self.automaton.priority[node.state]

    def member(self, node: ArenaNode) -> UPMember:
        return self.members[node.up]

    def outgoing(self, node: ArenaNode) -> tuple:
        return self.edges_from.get(node, ())


def _normalize_up(a: ParityAutomaton, up) -> dict:
    if isinstance(up, dict):
        return {x: list(up.get(x, ())) for x in a.sigma_in}
    return {x: list(up) for x in a.sigma_in}


def _interrupt_edges(a, src, member, letter, semantics):
    """Deduplicated labeled edges for all interrupt positions.

    Positions are scanned over the lag plus one period (two periods in the
    finite-variability arena, where position parity matters); later
    positions repeat earlier (target, label) combinations.
    """
    lag_len = len(member.lag)
    period_len = len(member.period)
    horizon = lag_len + (2 * period_len if semantics == FV else period_len)
    edges = set()
    running = -1
    for n in range(1, horizon + 1):
        q_n = member.letter(n)
        running = max(running, a.priority[q_n])
        size = "small" if n <= lag_len else "big"
        for b in a.sigma_in:
            if b == letter:
                continue
            if semantics == RC:
                dst = ArenaNode(O_PAIR, q_n, b)
                edges.add(ArenaEdge(src, dst, running, size, "interrupt"))
            else:
                if n % 2 == 1:
                    dst = ArenaNode(O_PAIR, q_n, b)
                    edges.add(ArenaEdge(src, dst, running, size, LEFT))
                else:
                    dst = ArenaNode(I_DAG, q_n, b)
                    edges.add(ArenaEdge(src, dst, running, size, RIGHT))
    return edges


def _finish(a, semantics, members, member_index, nodes, edges):
    edges = tuple(sorted(edges))
    nodes = tuple(sorted(nodes))
    edges_from = {}
    for e in edges:
        edges_from.setdefault(e.src, []).append(e)
    edges_from = {k: tuple(v) for k, v in edges_from.items()}
    final = set()
    for node in nodes:
        if node.kind != I_UP:
            continue
        member = members[node.up]
        if max(a.priority[q] for q in set(member.period)) % 2 == 0:
            final.add(node)
    lag_bound = max((len(m.lag) for m in members), default=1)
    return Arena(
        semantics=semantics,
        automaton=a,
        members=tuple(members),
        nodes=nodes,
        edges=edges,
        edges_from=edges_from,
        fresh=ArenaNode(FRESH),
        final_up=frozenset(final),
        lag_bound=max(lag_bound, 1),
    )


def _require_max_even(a):
    if a.convention != MAX_EVEN:
        raise ArenaError("arena construction expects the max-even convention")


def build_rc_arena(a: ParityAutomaton, up) -> Arena:
    """Arena for the right-continuous game.

    fresh -> (q_init, a); (q, a) -> (q, a, u) for blocks u that are valid
    runs under a and start at a successor of q; interrupts from (q, a, u)
    land on (u(n), b) for b != a.
    """
    _require_max_even(a)
    up_by_letter = _normalize_up(a, up)
    rels = a.edge_relations()
    members, member_index = [], {}
    nodes, edges = set(), set()
    fresh = ArenaNode(FRESH)
    nodes.add(fresh)
    for x in a.sigma_in:
        for q in a.states:
            nodes.add(ArenaNode(O_PAIR, q, x))
        edges.add(ArenaEdge(fresh, ArenaNode(O_PAIR, a.initial, x)))
    for x in a.sigma_in:
        for member in up_by_letter[x]:
            if not member.is_path_for(x):
                continue
            first = member.letter(1)
            for q in a.states:
                if (q, first) not in rels[x]:
                    continue
                if member not in member_index:
                    member_index[member] = len(members)
                    members.append(member)
                up_node = ArenaNode(I_UP, q, x, member_index[member])
                nodes.add(up_node)
                edges.add(ArenaEdge(ArenaNode(O_PAIR, q, x), up_node))
                edges.update(_interrupt_edges(a, up_node, member, x, RC))
    return _finish(a, RC, members, member_index, nodes, edges)


def build_fv_arena(a: ParityAutomaton, up) -> Arena:
    """Arena for the finite-variability game, with dagger nodes.

    (q, a) -> (q', +) consumes the point output; (q, +) -> (q, +, a) fixes
    the next input; (q, +, a) -> (q, a, u) commits a block.  Interrupts at
    odd positions are discontinuities from the left and land on (u(n), b);
    even positions are discontinuities from the right and land on
    (u(n), +, b).
    """
    _require_max_even(a)
    up_by_letter = _normalize_up(a, up)
    rels = a.edge_relations()
    members, member_index = [], {}
    nodes, edges = set(), set()
    fresh = ArenaNode(FRESH)
    nodes.add(fresh)
    for x in a.sigma_in:
        edges.add(ArenaEdge(fresh, ArenaNode(O_PAIR, a.initial, x)))
    for q in a.states:
        nodes.add(ArenaNode(O_DAG, q))
        for x in a.sigma_in:
            nodes.add(ArenaNode(O_PAIR, q, x))
            nodes.add(ArenaNode(I_DAG, q, x))
            edges.add(ArenaEdge(ArenaNode(O_DAG, q), ArenaNode(I_DAG, q, x)))
            for b in a.sigma_out:
                q2 = a.transition[(q, x, b)]
                edges.add(ArenaEdge(ArenaNode(O_PAIR, q, x), ArenaNode(O_DAG, q2)))
    for x in a.sigma_in:
        for member in up_by_letter[x]:
            if not member.is_path_for(x):
                continue
            first = member.letter(1)
            for q in a.states:
                if (q, first) not in rels[x]:
                    continue
                if member not in member_index:
                    member_index[member] = len(members)
                    members.append(member)
                up_node = ArenaNode(I_UP, q, x, member_index[member])
                nodes.add(up_node)
                edges.add(ArenaEdge(ArenaNode(I_DAG, q, x), up_node))
                edges.update(_interrupt_edges(a, up_node, member, x, FV))
    return _finish(a, FV, members, member_index, nodes, edges)


# -- inspection -------------------------------------------------------------


def export_dot(arena: Arena) -> str:
    """Deterministic DOT rendering; big interrupt edges are drawn bold."""
    lines = ["digraph arena {", '  rankdir="LR";']
    for node in arena.nodes:
        shape = {"I": "box", "O": "ellipse"}[arena.owner(node)]
        extras = ""
        if node in arena.final_up:
            extras = ", peripheries=2"
        prio = arena.node_priority(node)
        label = node.pretty(arena)
        if prio is not None:
            label += f" p{prio}"
        lines.append(f'  "{node.pretty(arena)}" [shape={shape}, label="{label}"{extras}];')
    for e in arena.edges:
        attrs = []
        if e.labeled:
            attrs.append(f'label="{e.priority},{e.size[0]}{e.kind[0] if e.kind in (LEFT, RIGHT) else ""}"')
            if e.size == "big":
                attrs.append("style=bold")
        body = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{e.src.pretty(arena)}" -> "{e.dst.pretty(arena)}"{body};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def arena_to_json(arena: Arena) -> dict:
    def node_dict(n):
        d = {"kind": n.kind, "owner": arena.owner(n)}
        if n.state is not None:
            d["state"] = n.state if isinstance(n.state, str) else repr(n.state)
        if n.letter is not None:
            d["letter"] = n.letter
        if n.kind == I_UP:
            d["up"] = n.up
            d["final"] = n in arena.final_up
        prio = arena.node_priority(n)
        if prio is not None:
            d["priority"] = prio
        return d

    def edge_dict(e):
        d = {"from": e.src.pretty(arena), "to": e.dst.pretty(arena), "kind": e.kind}
        if e.labeled:
            d["priority"] = e.priority
            d["size"] = e.size
        return d

    return {
        "semantics": arena.semantics,
        "members": [
            {"lag": list(m.lag), "period": list(m.period)} for m in arena.members
        ],
        "nodes": [node_dict(n) for n in arena.nodes],
        "edges": [edge_dict(e) for e in arena.edges],
    }
