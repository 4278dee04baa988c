"""Nondeterministic finite tree automata over shared multi-terminal BDDs.

The transition function of every automaton lives in one shared MTBDD whose
terminals are interned state sets, which keeps the standard operation
suite (union, intersection, determinisation, complementation, pruning,
minimisation, emptiness, downward-simulation reduction, antichain
inclusion) insensitive to the size of the ranked alphabet.  Relabelling
tree transducers ride on the same machinery over paired variable banks.
"""

from .alphabet import Alphabet, Symbol
from .automaton import SuperStateIndex, TreeAutomaton
from .io import (
    TimbukParseError,
    TransitionCube,
    extract_rules,
    extract_transitions,
    parse_timbuk,
    parse_timbuk_transducer,
    to_dot,
    write_timbuk,
    write_timbuk_transducer,
)
from .mtbdd import Leaf, Manager, Node, X, cube_from_text, cube_to_text
from .ops import (
    QuotientMap,
    check_inclusion_antichain,
    check_inclusion_classical,
    complement,
    compute_congruence,
    determinise,
    downward_simulation,
    intersection,
    is_empty,
    minimise,
    prune_unreachable,
    reduce_by_equivalence,
    reduce_by_simulation,
    union,
)
from .terms import format_term, parse_term, term
from .transducer import Transducer, apply_step, compose, identity_transducer, \
    transducer_manager

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Symbol", "SuperStateIndex", "TreeAutomaton",
    "TimbukParseError", "TransitionCube", "extract_rules",
    "extract_transitions", "parse_timbuk", "parse_timbuk_transducer",
    "to_dot", "write_timbuk", "write_timbuk_transducer",
    "Leaf", "Manager", "Node", "X", "cube_from_text", "cube_to_text",
    "QuotientMap", "check_inclusion_antichain", "check_inclusion_classical",
    "complement", "compute_congruence", "determinise", "downward_simulation",
    "intersection", "is_empty", "minimise", "prune_unreachable",
    "reduce_by_equivalence", "reduce_by_simulation", "union",
    "format_term", "parse_term", "term",
    "Transducer", "apply_step", "compose", "identity_transducer",
    "transducer_manager",
    "__version__",
]
