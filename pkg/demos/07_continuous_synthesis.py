"""Continuous-time verdicts for three specifications.

Copy is realizable in both timed semantics.  The output-must-jump
specification is realizable over finite-variability signals even though no
finite-state operator implements it: the controller schedules its jump
ever later at geometrically shrinking scales, so an environment racing to
interrupt first runs out of time.  The specification asking for an output
jump strictly inside the input's initial constancy window is unrealizable:
whatever block the controller commits, the environment either accepts
before the jump or cuts the window right before it.
"""

from chronosynth.arena import FV, RC
from chronosynth.continuous_synth import decide_continuous
from chronosynth.fixtures import copy_spec, indeterminate_spec_fv, jump_spec_fv

jobs = [
    ("copy, right-continuous", copy_spec(), RC),
    ("copy, finite-variability", copy_spec(), FV),
    ("output must jump, finite-variability", jump_spec_fv(), FV),
    ("jump inside the constancy window", indeterminate_spec_fv(), FV),
]

for name, spec, sem in jobs:
    res = decide_continuous(spec, sem)
    verdict = "REALIZABLE" if res.realizable else "UNREALIZABLE"
    print(f"== {name} ==")
    print(f"  {verdict}  (examined {res.stats.strategies_examined} strategy assignments, "
          f"arena: {len(res.arena.nodes)} nodes)")
    if res.witness:
        picks = sorted(res.witness)
        print(f"  winning choice fixes {len(picks)} controller nodes, e.g. "
              f"{picks[0].pretty(res.arena)} -> {res.witness[picks[0]].dst.pretty(res.arena)}")
    elif res.violation is not None:
        print(f"  last refutation: clause {res.violation.kind}")
    print()
