"""Arena construction for both semantics."""

import random

import pytest

from chronosynth.arena import (
    FV,
    I_DAG,
    I_UP,
    LEFT,
    O_DAG,
    O_PAIR,
    RIGHT,
    ArenaError,
    arena_to_json,
    build_fv_arena,
    build_rc_arena,
    export_dot,
)
from chronosynth.automaton import MAX_EVEN, ParityAutomaton, convert_convention
from chronosynth.state_monoid import (
    build_UP,
    build_class_table,
    context_from_automaton,
)


def one_state_automaton(sigma_in=("0", "1"), priority=0):
    transition = {("q", a, b): "q" for a in sigma_in for b in ("0", "1")}
    return ParityAutomaton(
        ("q",), sigma_in, ("0", "1"), transition, "q", {"q": priority}, MAX_EVEN
    )


def random_automaton(rng, n_states=2):
    states = [f"q{i}" for i in range(n_states)]
    transition = {
        (q, a, b): rng.choice(states) for q in states for a in "01" for b in "01"
    }
    priority = {q: rng.randint(0, 3) for q in states}
    return ParityAutomaton(
        tuple(states), ("0", "1"), ("0", "1"), transition, states[0], priority, MAX_EVEN
    )


def up_for(a):
    ctx = context_from_automaton(a)
    return build_UP(build_class_table(ctx), only_runs=True)


def test_rc_arena_one_state_shape():
    a = one_state_automaton()
    up = up_for(a)
    arena = build_rc_arena(a, up)
    kinds = {}
    for n in arena.nodes:
        kinds.setdefault(n.kind, []).append(n)
    assert len(kinds["fresh"]) == 1
    assert len(kinds[O_PAIR]) == 2
    assert len(kinds[I_UP]) <= 2 * len(up)
    # from fresh, one edge per input letter
    assert len(arena.outgoing(arena.fresh)) == 2
    # every block node interrupts only to the other letter, via big edges too
    for node in kinds[I_UP]:
        outs = arena.outgoing(node)
        assert outs, "block nodes must allow interrupts with two input letters"
        assert all(e.dst.letter != node.letter for e in outs)
        assert any(e.size == "big" for e in outs)


def test_rc_arena_singleton_input_has_no_interrupts():
    a = one_state_automaton(sigma_in=("0",))
    arena = build_rc_arena(a, up_for(a))
    assert all(not e.labeled for e in arena.edges)


def test_rc_arena_requires_max_even():
    a = one_state_automaton()
    bad = convert_convention(a, "min_even")
    with pytest.raises(ArenaError):
        build_rc_arena(bad, up_for(a))


def test_big_edge_priority_is_member_max():
    rng = random.Random(3)
    for _ in range(10):
        a = random_automaton(rng)
        arena = build_rc_arena(a, up_for(a))
        checked = 0
        for e in arena.edges:
            if e.size != "big":
                continue
            member = arena.member(e.src)
            states = set(member.lag) | set(member.period)
            assert e.priority == max(a.priority[q] for q in states)
            checked += 1
        assert checked > 0


def test_small_edge_priority_bounded_by_big():
    rng = random.Random(5)
    a = random_automaton(rng)
    arena = build_rc_arena(a, up_for(a))
    for node in arena.nodes:
        if node.kind != I_UP:
            continue
        outs = arena.outgoing(node)
        bigs = [e.priority for e in outs if e.size == "big"]
        smalls = [e.priority for e in outs if e.size == "small"]
        if bigs and smalls:
            assert max(smalls) <= max(bigs)


def test_small_edges_land_in_lag_targets():
    rng = random.Random(7)
    a = random_automaton(rng)
    arena = build_rc_arena(a, up_for(a))
    for e in arena.edges:
        if e.size == "small":
            member = arena.member(e.src)
            assert e.dst.state in set(member.lag)
        elif e.size == "big":
            member = arena.member(e.src)
            period_targets = {
                member.letter(n)
                for n in range(len(member.lag) + 1, len(member.lag) + 2 * len(member.period) + 1)
            }
            assert e.dst.state in period_targets


def test_fv_arena_structure():
    a = one_state_automaton()
    arena = build_fv_arena(a, up_for(a))
    dag_nodes = [n for n in arena.nodes if n.kind == O_DAG]
    assert dag_nodes
    for n in dag_nodes:
        outs = arena.outgoing(n)
        assert len(outs) == len(a.sigma_in)
        assert all(e.dst.kind == I_DAG for e in outs)
    # both interrupt kinds appear, with the position parity rule
    lefts = [e for e in arena.edges if e.kind == LEFT]
    rights = [e for e in arena.edges if e.kind == RIGHT]
    assert lefts and rights
    assert all(e.dst.kind == O_PAIR for e in lefts)
    assert all(e.dst.kind == I_DAG for e in rights)


def test_fv_left_interrupts_come_from_odd_positions():
    rng = random.Random(11)
    a = random_automaton(rng)
    arena = build_fv_arena(a, up_for(a))
    for e in arena.edges:
        if e.kind not in (LEFT, RIGHT):
            continue
        member = arena.member(e.src)
        horizon = len(member.lag) + 2 * len(member.period)
        parities = {
            n % 2
            for n in range(1, horizon + 1)
            if member.letter(n) == e.dst.state
        }
        if e.kind == LEFT:
            assert 1 in parities
        else:
            assert 0 in parities


def test_fv_final_set_matches_period_priority():
    rng = random.Random(13)
    a = random_automaton(rng)
    arena = build_fv_arena(a, up_for(a))
    for node in arena.nodes:
        if node.kind != I_UP:
            continue
        member = arena.member(node)
        expected = max(a.priority[q] for q in set(member.period)) % 2 == 0
        assert (node in arena.final_up) == expected


def test_fv_node_priorities_inherited():
    rng = random.Random(17)
    a = random_automaton(rng)
    arena = build_fv_arena(a, up_for(a))
    for n in arena.nodes:
        if n.kind == "fresh":
            assert arena.node_priority(n) is None
        else:
            assert arena.node_priority(n) == a.priority[n.state]
    rc = build_rc_arena(a, up_for(a))
    assert all(rc.node_priority(n) is None for n in rc.nodes)


def test_dot_export_deterministic_and_parses_back():
    a = one_state_automaton()
    arena = build_rc_arena(a, up_for(a))
    dot1 = export_dot(arena)
    dot2 = export_dot(build_rc_arena(a, up_for(a)))
    assert dot1 == dot2
    assert dot1.startswith("digraph")
    assert dot1.count("->") == len(arena.edges)


def test_json_dump_counts():
    a = one_state_automaton()
    arena = build_fv_arena(a, up_for(a))
    data = arena_to_json(arena)
    assert len(data["nodes"]) == len(arena.nodes)
    assert len(data["edges"]) == len(arena.edges)
    assert data["semantics"] == FV
    ups = [n for n in data["nodes"] if n["kind"] == I_UP]
    assert all("final" in n for n in ups)
