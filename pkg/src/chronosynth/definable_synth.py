"""Existence of finite-state (definable) causal operators over signals.

Specifications enter as parity automata over the squared alphabet: an input
letter encodes (value at the sample point, value on the following open
interval), and likewise for output letters.  A finite-state operator's
output can only jump where its input jumps, so the decision composes the
specification with a safety monitor enforcing exactly that discipline and
hands the product to the discrete solver.

Positive answers return a machine to be run on stuttering-free encodings;
negative answers carry the losing region and the counter machine as a
machine-checkable certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import (
    MAX_EVEN,
    AlphabetMismatchError,
    ParityAutomaton,
    SafetyMonitor,
    convert_convention,
    product_with_monitor,
)
from .discrete_game import (
    MealyMachine,
    MooreCounterMachine,
    game_from_automaton,
    solve,
    zielonka,
)

PAIR_SEP = ","


def pair_letter(point, interval) -> str:
    """Encode a (point value, interval value) pair as one alphabet letter."""
    point, interval = str(point), str(interval)
    if PAIR_SEP in point or PAIR_SEP in interval:
        raise ValueError(f"letters may not contain {PAIR_SEP!r}")
    return f"{point}{PAIR_SEP}{interval}"


def split_letter(letter: str) -> tuple:
    point, interval = letter.split(PAIR_SEP, 1)
    return point, interval


def square_alphabet(letters) -> tuple:
    return tuple(pair_letter(p, i) for p in letters for i in letters)


def is_squared_alphabet(letters) -> bool:
    try:
        pairs = [split_letter(x) for x in letters]
    except ValueError:
        return False
    base = sorted({p for p, _ in pairs} | {i for _, i in pairs})
    return sorted(letters) == sorted(square_alphabet(base))


def build_psi_star_monitor(sigma_in, sigma_out, constrain: str = "output") -> SafetyMonitor:
    """Safety monitor for the jump discipline of finite-state operators.

    Remembers the previous letter's interval components (a', b').  On the
    next letter ((c, c'), (d, d')): if a' = c (the constrained-side's input
    is left-continuous at the sample point) the other side must be too
    (b' = d); if additionally c = c' (continuous), d = d' is also required.
    The first letter is unconstrained: the clauses quantify over times
    strictly after 0.  ``constrain`` picks which side bears the burden:
    "output" guards Y against jumps where X is smooth, "input" the reverse.
    """
    if constrain not in ("output", "input"):
        raise ValueError("constrain must be 'output' or 'input'")
    base_in = sorted({piece for letter in sigma_in for piece in split_letter(letter)})
    base_out = sorted({piece for letter in sigma_out for piece in split_letter(letter)})
    states = ["start", "dead"]
    memories = [(x, y) for x in base_in for y in base_out]
    states.extend(f"m:{x}{PAIR_SEP}{y}" for x, y in memories)
    transition = {}
    for ain in sigma_in:
        c, c_prime = split_letter(ain)
        for aout in sigma_out:
            d, d_prime = split_letter(aout)
            next_mem = f"m:{c_prime}{PAIR_SEP}{d_prime}"
            transition[("start", ain, aout)] = next_mem
            transition[("dead", ain, aout)] = "dead"
            for x, y in memories:
                state = f"m:{x}{PAIR_SEP}{y}"
                if constrain == "output":
                    smooth_in, smooth_out = (x, c, c_prime), (y, d, d_prime)
                else:
                    smooth_in, smooth_out = (y, d, d_prime), (x, c, c_prime)
                prev_i, point_i, next_i = smooth_in
                prev_o, point_o, next_o = smooth_out
                violated = False
                if prev_i == point_i:  # left-continuous at the sample point
                    if prev_o != point_o:
                        violated = True
                    if point_i == next_i and point_o != next_o:  # continuous
                        violated = True
                transition[(state, ain, aout)] = "dead" if violated else next_mem
    return SafetyMonitor(tuple(states), "start", "dead", transition)


@dataclass(frozen=True)
class DefinableResult:
    definable: bool
    witness: MealyMachine | None
    counter: MooreCounterMachine | None
    losing_region: tuple = ()


@dataclass(frozen=True)
class ScCounterResult:
    exists: bool
    counter: MooreCounterMachine | None
    witness_against: MealyMachine | None


def _check_squared(spec: ParityAutomaton):
    if not is_squared_alphabet(spec.sigma_in) or not is_squared_alphabet(spec.sigma_out):
        raise AlphabetMismatchError(
            "definable synthesis expects squared (point,interval) alphabets; "
            "letters look like '0,1'"
        )


def solve_definable(spec: ParityAutomaton) -> DefinableResult:
    """Decide whether a finite-state causal operator implements the spec.

    The spec conjoined with the jump-discipline monitor goes to the
    discrete solver.  A Mealy witness is meant to be driven by
    stuttering-free input encodings; on the negative side the input
    player's winning region certifies impossibility.
    """
    _check_squared(spec)
    monitor = build_psi_star_monitor(spec.sigma_in, spec.sigma_out, constrain="output")
    product = product_with_monitor(spec, monitor, sink_accepting=False)
    res = solve(product)
    if res.winner == "output":
        return DefinableResult(True, res.mealy, None)
    g = game_from_automaton(convert_convention(product, MAX_EVEN))
    _, w_i, _, _ = zielonka(g)
    losing = tuple(sorted((repr(v) for v in w_i)))
    return DefinableResult(False, None, res.counter, losing)


def solve_definable_sc(spec: ParityAutomaton) -> ScCounterResult:
    """Decide whether a finite-state strongly causal counter-operator exists.

    The counter emits input letters before reading output letters and wants
    the spec to fail on the combined word; being finite-state, its own
    jump discipline (input jumps only where output jumps) is enforced by a
    transposed monitor whose violation counts against the counter.
    """
    _check_squared(spec)
    monitor = build_psi_star_monitor(spec.sigma_in, spec.sigma_out, constrain="input")
    product = product_with_monitor(spec, monitor, sink_accepting=True)
    res = solve(product)
    if res.winner == "input":
        return ScCounterResult(True, res.counter, None)
    return ScCounterResult(False, None, res.mealy)
