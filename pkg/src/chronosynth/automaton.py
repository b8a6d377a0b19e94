"""Deterministic parity automata over a product alphabet.

States are hashable values (strings when read from files).  A word letter is
a pair ``(in_letter, out_letter)``.  Two acceptance conventions coexist:
``min_even`` (minimum priority seen infinitely often is even) and
``max_even``; the game pipeline normalizes to ``max_even`` at ingestion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from .omega_word import LassoWord, inf_set

SINK = "__sink__"

MIN_EVEN = "min_even"
MAX_EVEN = "max_even"
CONVENTIONS = (MIN_EVEN, MAX_EVEN)


class AutomatonError(Exception):
    pass


class InputDomainError(AutomatonError):
    """A letter fell outside the automaton alphabet."""


class AlphabetMismatchError(AutomatonError):
    pass


@dataclass(frozen=True, eq=True)
class ParityAutomaton:
    """Complete deterministic parity automaton over Sigma_in x Sigma_out."""

    states: tuple
    sigma_in: tuple
    sigma_out: tuple
    transition: dict  # (state, in_letter, out_letter) -> state
    initial: object
    priority: dict  # state -> nonnegative int
    convention: str = MIN_EVEN

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "sigma_in", tuple(self.sigma_in))
        object.__setattr__(self, "sigma_out", tuple(self.sigma_out))
        if self.convention not in CONVENTIONS:
            raise AutomatonError(f"unknown convention {self.convention!r}")
        if self.initial not in self.states:
            raise AutomatonError("initial state not among states")
        state_set = set(self.states)
        for q in self.states:
            if q not in self.priority:
                raise AutomatonError(f"priority missing for state {q!r}")
            if self.priority[q] < 0:
                raise AutomatonError("priorities must be nonnegative")
            for a in self.sigma_in:
                for b in self.sigma_out:
                    tgt = self.transition.get((q, a, b))
                    if tgt is None:
                        raise AutomatonError(f"transition missing at ({q!r}, {a!r}, {b!r})")
                    if tgt not in state_set:
                        raise AutomatonError(f"transition target {tgt!r} not a state")

    def step(self, q, a, b):
        try:
            return self.transition[(q, a, b)]
        except KeyError:
            raise InputDomainError(f"letter ({a!r}, {b!r}) outside alphabet at state {q!r}")

    def max_priority(self) -> int:
        return max(self.priority[q] for q in self.states)

    def edge_relations(self) -> dict:
        """Per input letter a, the relation E_a(q, q') = exists b with d(q,(a,b)) = q'."""
        rels = {}
        for a in self.sigma_in:
            rel = set()
            for q in self.states:
                for b in self.sigma_out:
                    rel.add((q, self.transition[(q, a, b)]))
            rels[a] = frozenset(rel)
        return rels


def run_over(a: ParityAutomaton, word: LassoWord) -> LassoWord:
    """The unique run of the automaton over a lasso of (in, out) letters.

    Returned as a lasso over states starting from the initial state; the
    state sequence at period boundaries must repeat within |states| + 1
    pumpings, which closes the run lasso.
    """
    for i in range(len(word.prefix) + len(word.period)):
        letter = word.letter_at(i)
        if not (isinstance(letter, tuple) and len(letter) == 2):
            raise InputDomainError(f"word letter {letter!r} is not an (in, out) pair")
        ain, aout = letter
        if ain not in a.sigma_in or aout not in a.sigma_out:
            raise InputDomainError(f"letter ({ain!r}, {aout!r}) outside alphabet")

    states = [a.initial]
    cur = a.initial
    for letter in word.prefix:
        cur = a.step(cur, letter[0], letter[1])
        states.append(cur)
    boundary_index = {cur: len(states) - 1}
    while True:
        for letter in word.period:
            cur = a.step(cur, letter[0], letter[1])
            states.append(cur)
        pos = len(states) - 1
        if cur in boundary_index:
            start = boundary_index[cur]
            return LassoWord(tuple(states[:start]), tuple(states[start:pos]))
        boundary_index[cur] = pos


def accepts(a: ParityAutomaton, word: LassoWord) -> bool:
    run = run_over(a, word)
    inf = inf_set(run)
    prios = [a.priority[q] for q in inf]
    if a.convention == MIN_EVEN:
        return min(prios) % 2 == 0
    return max(prios) % 2 == 0


def convert_convention(a: ParityAutomaton, target: str) -> ParityAutomaton:
    """Language-preserving priority remap between min-even and max-even.

    Remaps p to M - p where M is the maximum priority rounded up to even,
    which swaps the roles of min and max while preserving parity of the
    extremal value.
    """
    if target not in CONVENTIONS:
        raise AutomatonError(f"unknown convention {target!r}")
    if a.convention == target:
        return a
    m = a.max_priority()
    if m % 2 == 1:
        m += 1
    new_priority = {q: m - a.priority[q] for q in a.states}
    return ParityAutomaton(
        states=a.states,
        sigma_in=a.sigma_in,
        sigma_out=a.sigma_out,
        transition=dict(a.transition),
        initial=a.initial,
        priority=new_priority,
        convention=target,
    )


@dataclass(frozen=True)
class SafetyMonitor:
    """Deterministic safety automaton with an absorbing rejecting sink."""

    states: tuple
    initial: object
    sink: object
    transition: dict  # (state, in_letter, out_letter) -> state

    def step(self, q, a, b):
        try:
            return self.transition[(q, a, b)]
        except KeyError:
            raise AlphabetMismatchError(f"monitor has no transition at ({q!r}, {a!r}, {b!r})")


def _worst_priority(a: ParityAutomaton) -> int:
    if a.convention == MIN_EVEN:
        return 1
    m = a.max_priority()
    return m if m % 2 == 1 else m + 1


def _best_priority(a: ParityAutomaton) -> int:
    if a.convention == MAX_EVEN:
        return 0
    m = a.max_priority()
    return m if m % 2 == 0 else m + 1


def product_with_monitor(a: ParityAutomaton, m: SafetyMonitor, sink_accepting: bool = False) -> ParityAutomaton:
    """Product automaton; entering the monitor sink fixes the verdict.

    By default sink states receive the worst (losing-for-acceptance)
    priority.  ``sink_accepting=True`` flips the burden: a monitor
    violation then counts in favor of acceptance (used when the monitored
    discipline binds the opponent).
    """
    for q in m.states:
        for ain in a.sigma_in:
            for aout in a.sigma_out:
                if (q, ain, aout) not in m.transition:
                    raise AlphabetMismatchError(
                        f"monitor does not cover letter ({ain!r}, {aout!r})"
                    )
    sink_prio = _best_priority(a) if sink_accepting else _worst_priority(a)
    states = []
    transition = {}
    priority = {}
    for qa in a.states:
        for qm in m.states:
            q = (qa, qm)
            states.append(q)
            priority[q] = sink_prio if qm == m.sink else a.priority[qa]
            for ain in a.sigma_in:
                for aout in a.sigma_out:
                    transition[(q, ain, aout)] = (
                        a.transition[(qa, ain, aout)],
                        m.step(qm, ain, aout),
                    )
    return ParityAutomaton(
        states=tuple(states),
        sigma_in=a.sigma_in,
        sigma_out=a.sigma_out,
        transition=transition,
        initial=(a.initial, m.initial),
        priority=priority,
        convention=a.convention,
    )


def accept_all_monitor(sigma_in, sigma_out) -> SafetyMonitor:
    transition = {("ok", a, b): "ok" for a in sigma_in for b in sigma_out}
    transition.update({("dead", a, b): "dead" for a in sigma_in for b in sigma_out})
    return SafetyMonitor(states=("ok", "dead"), initial="ok", sink="dead", transition=transition)


def automaton_from_json(data) -> ParityAutomaton:
    """Load the file format; missing transitions complete to the sink.

    Expected fields: states, sigma_in, sigma_out, initial, priority,
    convention, transitions (list of {from, in, out, to}).
    """
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    states = list(data["states"])
    sigma_in = tuple(data["sigma_in"])
    sigma_out = tuple(data["sigma_out"])
    convention = data.get("convention", MIN_EVEN)
    priority = {q: int(p) for q, p in data["priority"].items()}
    transition = {}
    for entry in data["transitions"]:
        q, ain, aout, tgt = entry["from"], entry["in"], entry["out"], entry["to"]
        if q not in states:
            raise AutomatonError(f"transition from undeclared state {q!r}")
        if ain not in sigma_in or aout not in sigma_out:
            raise AutomatonError(f"transition letter ({ain!r}, {aout!r}) undeclared")
        key = (q, ain, aout)
        if key in transition:
            raise AutomatonError(f"duplicate transition at {key!r}")
        transition[key] = tgt

    referenced_sink = any(t == SINK for t in transition.values()) and SINK not in states
    incomplete = any(
        (q, a, b) not in transition for q in states for a in sigma_in for b in sigma_out
    )
    if referenced_sink or incomplete:
        if SINK not in states:
            states.append(SINK)
            sink_prio = 1
            if convention == MAX_EVEN:
                m = max(priority.values()) if priority else 0
                sink_prio = m if m % 2 == 1 else m + 1
            priority[SINK] = sink_prio
        for q in states:
            for a in sigma_in:
                for b in sigma_out:
                    transition.setdefault((q, a, b), SINK)
    for tgt in transition.values():
        if tgt not in states:
            raise AutomatonError(f"transition target {tgt!r} undeclared")
    return ParityAutomaton(
        states=tuple(states),
        sigma_in=sigma_in,
        sigma_out=sigma_out,
        transition=transition,
        initial=data["initial"],
        priority=priority,
        convention=convention,
    )


def automaton_to_json(a: ParityAutomaton) -> dict:
    def name(q):
        return q if isinstance(q, str) else repr(q)

    return {
        "states": [name(q) for q in a.states],
        "sigma_in": list(a.sigma_in),
        "sigma_out": list(a.sigma_out),
        "initial": name(a.initial),
        "priority": {name(q): a.priority[q] for q in a.states},
        "convention": a.convention,
        "transitions": sorted(
            (
                {"from": name(q), "in": ain, "out": aout, "to": name(t)}
                for (q, ain, aout), t in a.transition.items()
            ),
            key=lambda e: (e["from"], e["in"], e["out"]),
        ),
    }


def load_automaton(path) -> ParityAutomaton:
    with open(path, "r", encoding="utf-8") as fh:
        return automaton_from_json(fh.read())
