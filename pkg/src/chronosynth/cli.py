"""Command-line entry point.

Subcommands: solve-discrete, definable, synth, monoid, arena, play,
check-fixtures.  Exit codes: 0 success, 2 usage, 3 resource cap exceeded,
4 adjudication undecided.  Caps can be overridden with environment
variables CHRONOSYNTH_CAP_MONOID, CHRONOSYNTH_CAP_STRATEGIES,
CHRONOSYNTH_CAP_ROUNDS and CHRONOSYNTH_CAP_HORIZON.  All randomness is
seeded (--seed) and output is byte-deterministic for a fixed invocation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .arena import FV, RC, arena_to_json, build_fv_arena, build_rc_arena, export_dot
from .automaton import MAX_EVEN, convert_convention, load_automaton
from .continuous_synth import ResourceCapError, decide_continuous
from .definable_synth import solve_definable
from .discrete_game import machine_to_dot, machine_to_json, solve
from .game_sim import (
    ChoiceController,
    PlaySession,
    UndecidedError,
    script_reader,
)
from .state_monoid import (
    MonoidCapExceeded,
    build_UP,
    build_class_table,
    context_from_automaton,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_UNDECIDED = 4


@dataclass
class Config:
    monoid_cap: int = 200_000
    strategy_cap: int = 1_000_000
    round_cap: int = 60
    horizon: int = 64
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        for name in ("monoid_cap", "strategy_cap", "round_cap", "horizon"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def _env_cap(name, fallback):
    raw = os.environ.get(f"CHRONOSYNTH_CAP_{name}")
    return int(raw) if raw else fallback


def config_from_args(args) -> Config:
    return Config(
        monoid_cap=_env_cap("MONOID", args.monoid_cap),
        strategy_cap=_env_cap("STRATEGIES", args.strategy_cap),
        round_cap=_env_cap("ROUNDS", args.round_cap),
        horizon=_env_cap("HORIZON", args.horizon),
        seed=args.seed,
        jobs=args.jobs,
    )


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _witness_json(arena, choice):
    entries = []
    for node in sorted(choice):
        e = choice[node]
        entry = {"at": node.pretty(arena), "to": e.dst.pretty(arena)}
        if e.labeled:
            entry["priority"] = e.priority
            entry["size"] = e.size
        entries.append(entry)
    return entries


def cmd_solve_discrete(args, cfg, out, err):
    from .discrete_game import run_counter_machine, run_machine
    from .omega_word import format_lasso, parse_lasso

    a = load_automaton(args.spec)
    res = solve(a)
    payload = {"winner": res.winner}
    machine = res.mealy if res.winner == "output" else res.counter
    payload["machine"] = machine_to_json(machine)
    if args.run:
        word = parse_lasso(args.run)
        if res.winner == "output":
            payload["run"] = {"input": args.run, "output": format_lasso(run_machine(machine, word))}
        else:
            payload["run"] = {"output": args.run, "input": format_lasso(run_counter_machine(machine, word))}
    _emit(payload, out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(machine_to_dot(machine))
    return EXIT_OK


def cmd_definable(args, cfg, out, err):
    a = load_automaton(args.spec)
    res = solve_definable(a)
    payload = {"definable": res.definable}
    if res.definable:
        payload["witness"] = machine_to_json(res.witness)
    else:
        payload["counter"] = machine_to_json(res.counter)
        payload["losing_region_size"] = len(res.losing_region)
    _emit(payload, out)
    return EXIT_OK


def cmd_synth(args, cfg, out, err):
    a = load_automaton(args.spec)
    try:
        res = decide_continuous(
            a, args.semantics, monoid_cap=cfg.monoid_cap, strategy_cap=cfg.strategy_cap
        )
    except (ResourceCapError, MonoidCapExceeded) as exc:
        err.write(f"resource cap exceeded: {exc}\n")
        return EXIT_CAP
    payload = {"realizable": res.realizable, "semantics": res.semantics}
    if res.witness is not None:
        payload["witness"] = _witness_json(res.arena, res.witness)
    if args.stats:
        payload["stats"] = {
            "strategies_examined": res.stats.strategies_examined,
            "pruned": res.stats.pruned,
            "class_counts": res.stats.class_counts,
            "up_sizes": res.stats.up_sizes,
            "d_bound": res.stats.d_bound,
            "arena_nodes": len(res.arena.nodes),
            "arena_edges": len(res.arena.edges),
        }
    _emit(payload, out)
    return EXIT_OK


def cmd_monoid(args, cfg, out, err):
    a = load_automaton(args.spec)
    canonical = convert_convention(a, MAX_EVEN)
    ctx = context_from_automaton(canonical)
    try:
        table = build_class_table(ctx, cap=cfg.monoid_cap, letter=args.letter)
        up = build_UP(table)
    except MonoidCapExceeded as exc:
        err.write(f"resource cap exceeded: {exc}\n")
        return EXIT_CAP
    payload = {
        "classes": table.class_count,
        "d_Q": table.d_q,
        "idempotents": len(table.idempotents),
        "up_members": len(up),
    }
    if args.letter:
        payload["letter"] = args.letter
    if args.full:
        payload["representatives"] = ["".join(map(str, table.witnesses[s])) for s in table.order]
        payload["up"] = [
            {"lag": list(m.lag), "period": list(m.period)} for m in up
        ]
    _emit(payload, out)
    return EXIT_OK


def _build_arena(a, semantics, cfg):
    canonical = convert_convention(a, MAX_EVEN)
    ctx = context_from_automaton(canonical)
    up = {
        x: build_UP(build_class_table(ctx, cap=cfg.monoid_cap, letter=x), only_runs=True)
        for x in canonical.sigma_in
    }
    builder = build_rc_arena if semantics == RC else build_fv_arena
    return builder(canonical, up)


def cmd_arena(args, cfg, out, err):
    a = load_automaton(args.spec)
    try:
        arena = _build_arena(a, args.semantics, cfg)
    except MonoidCapExceeded as exc:
        err.write(f"resource cap exceeded: {exc}\n")
        return EXIT_CAP
    if args.dot:
        out.write(export_dot(arena))
    else:
        _emit(arena_to_json(arena), out)
    return EXIT_OK


def cmd_play(args, cfg, out, err):
    a = load_automaton(args.spec)
    try:
        res = decide_continuous(
            a, args.semantics, monoid_cap=cfg.monoid_cap, strategy_cap=cfg.strategy_cap
        )
    except (ResourceCapError, MonoidCapExceeded) as exc:
        err.write(f"resource cap exceeded: {exc}\n")
        return EXIT_CAP
    if not res.realizable:
        out.write("unrealizable: the environment wins; nothing to play against\n")
        return EXIT_OK
    controller = ChoiceController(res.arena, res.witness)
    if args.script:
        with open(args.script, "r", encoding="utf-8") as fh:
            lines = [line.rstrip("\n") for line in fh if line.strip()]
        reader = script_reader(lines)
    else:
        out.write("you play the environment; type 'help' for commands\n")

        def reader():
            try:
                return input("> ")
            except EOFError:
                return None

    session = PlaySession(
        res.arena, controller, reader, lambda s: out.write(s + "\n"),
        max_rounds=cfg.round_cap,
    )
    try:
        play, outcome = session.run()
    except UndecidedError as exc:
        err.write(f"undecided: {exc}\n")
        return EXIT_UNDECIDED
    out.write("transcript:\n")
    out.write(play.transcript())
    return EXIT_OK


def _fixture_checks(cfg):
    """The counterexample-construction property suite (runtime self-checks)."""
    from .definable_synth import solve_definable as _definable
    from .discrete_game import run_machine
    from .fixtures import (
        copy_spec,
        copy_spec_squared,
        indeterminate_spec_fv,
        jump_spec_fv,
        jump_spec_squared,
    )
    from .omega_word import LassoWord
    from .signal import (
        counter_operator,
        delta_signal,
        encode_D,
        integer_samples,
        signals_equal,
    )

    rng = random.Random(cfg.seed)
    checks = []

    def check(name, fn):
        checks.append((name, fn))

    def random_binary_signal():
        from chronosynth.signal import ConstantTail, FVSignal

        k = rng.randint(1, 3)
        bps = [Fraction(0)]
        for _ in range(k - 1):
            bps.append(bps[-1] + Fraction(rng.randint(1, 4), rng.randint(1, 3)))
        pv = tuple(rng.choice("01") for _ in range(k))
        iv = tuple(rng.choice("01") for _ in range(k - 1))
        return FVSignal(tuple(bps), pv, iv, ConstantTail(rng.choice("01")))

    def c_indicator_values():
        d1 = delta_signal(1)
        assert d1.value_at(1) == "1" and d1.value_at(Fraction(1, 2)) == "0"
        assert d1.jumps_at(1) and d1.jumps_at(0) and not d1.jumps_at(2)

    def c_indicator_encoding():
        w = encode_D(delta_signal(1), integer_samples())
        assert w == LassoWord((("0", "0"), ("1", "0")), (("0", "0"),))

    def c_counter_differs():
        for _ in range(50):
            y = random_binary_signal()
            assert not signals_equal(counter_operator(y), y)

    def c_counter_strong_causality():
        for _ in range(50):
            y = random_binary_signal()
            t0 = y.first_jump_after_zero()
            g = counter_operator(y)
            if t0 is None:
                continue
            flip = {"0": "1", "1": "0"}[y.right_limit(0)]
            assert g.value_at(t0 / 2) == flip
            assert g.value_at(t0) == flip and g.value_at(t0 + 1) == "1"

    def c_machine_causality_on_indicator_prefixes():
        res = _definable(copy_spec_squared())
        assert res.definable
        m = res.witness
        from .definable_synth import pair_letter

        for t in (Fraction(1, 2), Fraction(1, 3)):
            # letters of the two indicator signals agree strictly below the
            # divergence index; a causal machine must answer identically there
            w1 = encode_D(delta_signal(1), integer_samples(Fraction(1, 6)))
            w2 = encode_D(delta_signal(t), integer_samples(Fraction(1, 6)))
            k = 0
            while w1.letter_at(k) == w2.letter_at(k):
                k += 1
            outs1, outs2 = [], []
            q1 = q2 = m.initial
            for i in range(k):
                q1, b1 = m.react(q1, pair_letter(*w1.letter_at(i)))
                q2, b2 = m.react(q2, pair_letter(*w2.letter_at(i)))
                outs1.append(b1)
                outs2.append(b2)
            assert outs1 == outs2

    def c_gap_definable_no():
        assert not _definable(jump_spec_squared()).definable

    def c_gap_synth_yes():
        assert decide_continuous(jump_spec_fv(), FV).realizable

    def c_copy_both_yes():
        assert _definable(copy_spec_squared()).definable
        assert decide_continuous(copy_spec(), FV).realizable

    def c_indeterminate_unrealizable():
        assert not decide_continuous(indeterminate_spec_fv(), FV).realizable

    check("indicator_signal_values", c_indicator_values)
    check("indicator_signal_encoding", c_indicator_encoding)
    check("counter_operator_differs_everywhere", c_counter_differs)
    check("counter_operator_strong_causality", c_counter_strong_causality)
    check("machine_causality_on_indicator_prefixes", c_machine_causality_on_indicator_prefixes)
    check("jump_spec_not_definable", c_gap_definable_no)
    check("jump_spec_realizable_fv", c_gap_synth_yes)
    check("copy_spec_definable_and_realizable", c_copy_both_yes)
    check("indeterminate_spec_unrealizable", c_indeterminate_unrealizable)
    return checks


def cmd_check_fixtures(args, cfg, out, err):
    out.write(f"# seed={cfg.seed}\n")
    failures = 0
    for name, fn in _fixture_checks(cfg):
        try:
            fn()
            out.write(f"ok   {name}\n")
        except AssertionError as exc:
            failures += 1
            out.write(f"FAIL {name}: {exc}\n")
    out.write(f"{'all checks passed' if not failures else f'{failures} check(s) failed'}\n")
    return EXIT_OK if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chronosynth",
        description="synthesis of causal controllers over discrete and continuous time",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument("--monoid-cap", type=int, default=200_000)
    parser.add_argument("--strategy-cap", type=int, default=1_000_000)
    parser.add_argument("--round-cap", type=int, default=60)
    parser.add_argument("--horizon", type=int, default=64)
    parser.add_argument(
        "--jobs", type=int, default=1,
        help="reserved; strategy enumeration currently runs sequentially",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-discrete", help="solve the discrete synthesis game")
    p.add_argument("spec")
    p.add_argument("--dot", help="write the winning machine as DOT")
    p.add_argument(
        "--run", metavar="LASSO",
        help="drive the machine on a lasso like '01(10)^w' and show its answer",
    )
    p.set_defaults(fn=cmd_solve_discrete)

    p = sub.add_parser("definable", help="decide finite-state implementability over signals")
    p.add_argument("spec")
    p.set_defaults(fn=cmd_definable)

    p = sub.add_parser("synth", help="decide continuous-time realizability")
    p.add_argument("spec")
    p.add_argument("--semantics", choices=(RC, FV), required=True)
    p.add_argument("--stats", action="store_true")
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("monoid", help="print the state-string class table summary")
    p.add_argument("spec")
    p.add_argument("--letter", help="restrict to paths of one input letter")
    p.add_argument("--full", action="store_true", help="include representatives")
    p.set_defaults(fn=cmd_monoid)

    p = sub.add_parser("arena", help="dump the game arena")
    p.add_argument("spec")
    p.add_argument("--semantics", choices=(RC, FV), required=True)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(fn=cmd_arena)

    p = sub.add_parser("play", help="play the environment against a synthesized winner")
    p.add_argument("spec")
    p.add_argument("--semantics", choices=(RC, FV), required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--interactive", action="store_true")
    group.add_argument("--script", help="replay environment moves from a file")
    p.set_defaults(fn=cmd_play)

    p = sub.add_parser("check-fixtures", help="run the counterexample property suites")
    p.set_defaults(fn=cmd_check_fixtures)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        err.write(f"bad configuration: {exc}\n")
        return EXIT_USAGE
    return args.fn(args, cfg, out, err)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
