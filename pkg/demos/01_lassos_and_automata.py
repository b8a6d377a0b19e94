"""Lasso words and parity automata.

An ultimately periodic word is stored as a prefix plus a repeating period.
Normal forms make equality of the underlying infinite words a tuple
comparison, and the set of letters occurring infinitely often is just the
normalized period.  Automaton runs over such words are again lassos, so
acceptance is decidable by inspecting finitely much data.
"""

from chronosynth.automaton import (
    MAX_EVEN,
    MIN_EVEN,
    ParityAutomaton,
    accepts,
    convert_convention,
    run_over,
)
from chronosynth.omega_word import LassoWord, format_lasso, inf_set, normalize, parse_lasso

print("== lasso normal forms ==")
for text in ("ab(abab)^w", "a(bb)^w", "ab(ba)^w"):
    w = parse_lasso(text)
    print(f"  {text:12} ->  {format_lasso(normalize(w))}   inf = {sorted(inf_set(w))}")

print()
print("== a two-state toggler ==")


def step(q, a, b):
    # the automaton flips state exactly on the letter (1, 0)
    if (a, b) == ("1", "0"):
        return "s" if q == "r" else "r"
    return q


toggler = ParityAutomaton(
    states=("r", "s"),
    sigma_in=("0", "1"),
    sigma_out=("0", "1"),
    transition={(q, a, b): step(q, a, b) for q in "rs" for a in "01" for b in "01"},
    initial="r",
    priority={"r": 0, "s": 1},
    convention=MIN_EVEN,
)

word = LassoWord((), (("1", "0"),))
run = run_over(toggler, word)
print(f"  word ((1,0))^w gives the run {format_lasso(run)}")
print(f"  accepted under min-even? {accepts(toggler, word)}")

flipped = convert_convention(toggler, MAX_EVEN)
print(f"  priorities after max-even conversion: {flipped.priority}")
print(f"  accepted under max-even? {accepts(flipped, word)} (language unchanged)")
