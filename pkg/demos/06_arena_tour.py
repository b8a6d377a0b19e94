"""A walk through the finite game arenas.

The environment owns the fresh start, the dagger nodes where it fixes the
next input, and the block nodes where it interrupts; the controller owns
the output commitments.  Interrupt edges say where an interrupt lands
(small: inside the block's lag; big: in its period) and what the worst
priority seen on the way was.
"""

from chronosynth.arena import build_fv_arena, build_rc_arena, export_dot
from chronosynth.fixtures import copy_spec
from chronosynth.state_monoid import build_UP, build_class_table, context_from_automaton

spec = copy_spec()
ctx = context_from_automaton(spec)
up = {
    x: build_UP(build_class_table(ctx, letter=x), only_runs=True)
    for x in spec.sigma_in
}

for name, builder in (("right-continuous", build_rc_arena), ("finite-variability", build_fv_arena)):
    arena = builder(spec, up)
    kinds = {}
    for n in arena.nodes:
        kinds[n.kind] = kinds.get(n.kind, 0) + 1
    bigs = sum(1 for e in arena.edges if e.size == "big")
    smalls = sum(1 for e in arena.edges if e.size == "small")
    print(f"== {name} arena ==")
    print(f"  nodes by kind: {dict(sorted(kinds.items()))}")
    print(f"  edges: {len(arena.edges)} ({bigs} big, {smalls} small interrupts)")
    print(f"  final block nodes: {len(arena.final_up)}")
    print()

print("== DOT rendering of the right-continuous arena ==")
print(export_dot(build_rc_arena(spec, up)))
