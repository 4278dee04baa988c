"""Reducing a nondeterministic automaton without determinising it.

Downward simulation is computed as a greatest fixpoint directly on the
shared diagrams; its mutual kernel merges states that can stand in for
each other.  Unlike minimisation this never builds macrostates, so it
also works when determinisation would blow up.
"""

from symta import parse_timbuk
from symta.ops import downward_simulation, reduce_by_simulation
from symta.oracle import language_upto, to_explicit

TEXT = """\
Ops a:0 b:0 g:1
Automaton dupes
States p q top
Final States top
Transitions
a -> p
a -> q
b -> p
b -> q
g(p) -> top
g(q) -> top
g(top) -> top
"""

aut = parse_timbuk(TEXT)
sim = downward_simulation(aut)
print("downward simulation pairs:")
for p, q in sorted(sim):
    print(f"  {aut.state_name(p)} <= {aut.state_name(q)}")

reduced = reduce_by_simulation(aut)
print(f"\nstates before: {len(aut.states)}, after: {len(reduced.states)}")
assert language_upto(to_explicit(reduced), 3) == \
    language_upto(to_explicit(aut), 3)
print("language preserved up to height 3: True")
