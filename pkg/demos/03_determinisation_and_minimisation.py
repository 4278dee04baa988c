"""Subset construction and Myhill-Nerode minimisation on a redundant automaton.

The input is deliberately wasteful: two interchangeable copies of the same
state and an unreachable one.  Determinisation works macrostate by
macrostate on the shared diagram, and minimisation prunes, determinises,
computes the coarsest congruence and quotients by it.
"""

from symta import parse_timbuk, write_timbuk
from symta.ops import determinise, minimise
from symta.oracle import language_upto, minimal_state_count, to_explicit

TEXT = """\
Ops a:0 f:2
Automaton bloated
States p p' r dead
Final States r
Transitions
a -> p
a -> p'
f(p,p) -> r
f(p,p') -> r
f(p',p) -> r
f(p',p') -> r
"""

aut = parse_timbuk(TEXT)
det = determinise(aut)
small = minimise(aut)

print(f"input:        {len(aut.states)} states")
print(f"determinised: {len(det.states)} states (macrostates: "
      f"{[sorted(aut.state_name(q) for q in det.origins[s]) for s in det.states]})")
print(f"minimised:    {len(small.states)} states,"
      f" oracle minimum = {minimal_state_count(to_explicit(aut))}")

assert language_upto(to_explicit(small), 3) == language_upto(to_explicit(aut), 3)
again = minimise(small)
print(f"re-minimising is a fixpoint: {write_timbuk(again) == write_timbuk(small)}")
print()
print(write_timbuk(small))
