"""Union, intersection and complement, checked against brute-force languages.

Two automata over one shared manager: `evens` accepts chains g^n(a) with
even n, `small` accepts chains of length at most one.  All three boolean
combinations are compared with plain set algebra on enumerated languages.
"""

from symta import Alphabet, Manager, TreeAutomaton, format_term
from symta.ops import complement, intersection, union
from symta.oracle import all_terms_upto, language_upto, to_explicit

alphabet = Alphabet()
alphabet.add_symbol("a", 0)
alphabet.add_symbol("g", 1)
alphabet.freeze()
manager = Manager(alphabet.width)

evens = TreeAutomaton(alphabet, manager, name="evens")
for q in ("e", "o"):
    evens.add_state(q)
evens.set_final("e")
evens.insert_transition("a", (), ["e"])
evens.insert_transition("g", ("e",), ["o"])
evens.insert_transition("g", ("o",), ["e"])

small = TreeAutomaton(alphabet, manager, name="small")
for q in ("z", "s"):
    small.add_state(q)
small.set_final("z")
small.set_final("s")
small.insert_transition("a", (), ["z"])
small.insert_transition("g", ("z",), ["s"])

HEIGHT = 4
lang_evens = language_upto(to_explicit(evens), HEIGHT)
lang_small = language_upto(to_explicit(small), HEIGHT)


def show(name, aut, expected):
    got = language_upto(to_explicit(aut), HEIGHT)
    listed = ", ".join(sorted(format_term(t) for t in got))
    status = "ok" if got == expected else "MISMATCH"
    print(f"  {name:14} {{{listed}}}  [{status}]")


print(f"languages up to height {HEIGHT}:")
show("evens", evens, lang_evens)
show("small", small, lang_small)
show("union", union(evens, small), lang_evens | lang_small)
show("intersection", intersection(evens, small), lang_evens & lang_small)

universe = set(all_terms_upto(alphabet, HEIGHT))
show("complement", complement(evens), universe - lang_evens)
print(f"\nunion needed exactly one Apply on the shared manager"
      f" (total so far: {manager.apply_calls}).")
