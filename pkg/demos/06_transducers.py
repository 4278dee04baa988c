"""Relabelling transducers: one rewriting step and composition.

A relabelling transducer keeps the tree shape and rewrites labels.  The
one below swaps the two unary symbols g and h; applying it twice through
composition gives back the original language.
"""

from symta import Alphabet, TreeAutomaton, format_term
from symta.oracle import language_upto, to_explicit
from symta.transducer import Transducer, apply_step, compose, transducer_manager

alphabet = Alphabet()
alphabet.add_symbol("a", 0)
alphabet.add_symbol("g", 1)
alphabet.add_symbol("h", 1)
alphabet.freeze()
manager = transducer_manager(alphabet)

swap = Transducer(alphabet, manager, name="swap")
swap.add_state("i")
swap.set_final("i")
swap.insert_rule("a", (), "a", ["i"])
swap.insert_rule("g", ("i",), "h", ["i"])
swap.insert_rule("h", ("i",), "g", ["i"])

ggs = TreeAutomaton(alphabet, manager, name="ggs")
for q in ("z", "one", "two"):
    ggs.add_state(q)
ggs.set_final("two")
ggs.insert_transition("a", (), ["z"])
ggs.insert_transition("g", ("z",), ["one"])
ggs.insert_transition("g", ("one",), ["two"])


def tell(label, aut):
    terms = sorted(format_term(t) for t in language_upto(to_explicit(aut), 4))
    print(f"  {label:12} {terms}")


print("one step of the swap transducer:")
tell("input", ggs)
once = apply_step(swap, ggs)
tell("swapped", once)

double = compose(swap, swap)
tell("swap o swap", apply_step(double, ggs))

assert language_upto(to_explicit(apply_step(double, ggs)), 4) == \
    language_upto(to_explicit(ggs), 4)
print("\nswap composed with itself is the identity on this language: True")
