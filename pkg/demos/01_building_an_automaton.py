"""Build a small tree automaton and poke at its symbolic transition function.

The automaton below recognises the terms whose root reaches state q3:
leaves b and c feed states q1/q2, d lifts q2 to q3, and the binary b plus
unary c keep the loop alive.  Six symbols share a two-bit encoding because
codewords are per name: b:0 and b:2 both sit on code 01.
"""

from symta import Alphabet, Manager, TreeAutomaton, parse_term, to_dot, write_timbuk
from symta.io import extract_transitions
from symta.mtbdd import cube_to_text

alphabet = Alphabet()
for name, arity in [("a", 0), ("b", 0), ("b", 2), ("c", 0), ("c", 1), ("d", 1)]:
    alphabet.add_symbol(name, arity)
alphabet.freeze()
print(f"alphabet width: {alphabet.width} bits for {len(alphabet.symbols)} symbols")
for sym in alphabet.symbols:
    print(f"  {sym} -> {cube_to_text(alphabet.encode(sym))}")

aut = TreeAutomaton(alphabet, Manager(alphabet.width), name="demo")
for q in ("q1", "q2", "q3"):
    aut.add_state(q)
aut.set_final("q3")
aut.insert_transition("b", (), ["q1", "q2"])
aut.insert_transition("c", (), ["q2"])
aut.insert_transition("d", ("q2",), ["q3"])
aut.insert_transition("b", ("q1", "q3"), ["q1", "q2"])
aut.insert_transition("c", ("q3",), ["q1", "q2"])

print("\nstored super-states and their cubes:")
for tc in extract_transitions(aut):
    source = ",".join(aut.state_name(q) for q in tc.source)
    targets = "{" + ",".join(sorted(aut.state_name(q) for q in tc.targets)) + "}"
    print(f"  ({source}) --{cube_to_text(tc.cube)}--> {targets}")

print("\nmembership checks:")
for text in ("d(c)", "c", "b(b,d(c))", "d(d(c))"):
    verdict = "accepted" if aut.accepts(parse_term(text)) else "rejected"
    print(f"  {text:12} {verdict}")

print("\nsizes:", aut.stats())
print("\ncanonical text form:\n")
print(write_timbuk(aut))
print("DOT rendering is one call away: to_dot(aut) ->",
      len(to_dot(aut).splitlines()), "lines")
