import pytest

from symta import Alphabet, Manager, TreeAutomaton


@pytest.fixture
def mixed_alphabet():
    """Six symbols over four names; b and c carry two arities each, so the
    encoding packs them into two bits: a=00, b=01, c=10, d=11."""
    alphabet = Alphabet()
    for name, arity in [("a", 0), ("b", 0), ("b", 2), ("c", 0), ("c", 1), ("d", 1)]:
        alphabet.add_symbol(name, arity)
    return alphabet.freeze()


@pytest.fixture
def sample_automaton(mixed_alphabet):
    """Three states, five rules; the running example used across modules.

    b -> {q1,q2}, c -> {q2}, d(q2) -> {q3}, b(q1,q3) -> {q1,q2},
    c(q3) -> {q1,q2}; q3 is final.
    """
    aut = TreeAutomaton(mixed_alphabet, Manager(mixed_alphabet.width))
    for q in ("q1", "q2", "q3"):
        aut.add_state(q)
    aut.set_final("q3")
    aut.insert_transition("b", (), ["q1", "q2"])
    aut.insert_transition("c", (), ["q2"])
    aut.insert_transition("d", ("q2",), ["q3"])
    aut.insert_transition("b", ("q1", "q3"), ["q1", "q2"])
    aut.insert_transition("c", ("q3",), ["q1", "q2"])
    return aut


def function_table(manager, root):
    """The represented function as a list indexed by the assignment read as
    a binary number, variable 0 most significant.  Independent of apply:
    pure structural expansion."""
    n = manager.num_vars

    def rec(ref, var):
        if var == n:
            assert ref.var == manager.bottom.var  # must be a terminal here
            return [ref.value]
        if ref.var == var:
            return rec(ref.low, var + 1) + rec(ref.high, var + 1)
        half = rec(ref, var + 1)
        return half + half

    return rec(root, 0)
