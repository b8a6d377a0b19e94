"""chronosynth: decide and construct winners for causal synthesis games.

The library covers the full pipeline from parity-automaton specifications to
synthesis verdicts, for three settings:

* discrete time (classical finite-state synthesis via parity games),
* right-continuous signals over the nonnegative reals,
* finite-variability signals over the nonnegative reals.

All timing is exact rational arithmetic; no floats enter the core.
"""

__version__ = "0.1.0"
