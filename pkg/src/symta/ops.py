"""Language and structural operations on MTBDD-backed tree automata.

Every operation here works through Apply/MonadicApply with purpose-built
leaf functors; the worklists run over super-states, never over individual
symbols, which is what makes the operations insensitive to alphabet size.
Result automata name their states ``s0..sk`` in discovery order, so output
files are reproducible.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .automaton import TreeAutomaton

#: Virtual sink marker used inside the congruence computation.  Never a
#: real state id (manager ids are non-negative).
_SINK = -1


def _require_compatible(a1: TreeAutomaton, a2: TreeAutomaton):
    if a1.alphabet is not a2.alphabet:
        raise ValueError("operands must share one alphabet")
    if a1.manager is not a2.manager:
        raise ValueError("operands must be registered to one manager")


def _result(a: TreeAutomaton, name: str) -> TreeAutomaton:
    return TreeAutomaton(a.alphabet, a.manager, name=name)


class _StateAllocator:
    """Hands out result states named s0..sk in first-come order."""

    def __init__(self, res: TreeAutomaton):
        self.res = res
        self.count = 0

    def fresh(self) -> int:
        sid = self.res.add_state(f"s{self.count}")
        self.count += 1
        return sid

    def adopt(self, sid: int) -> int:
        self.res.adopt_state(sid, f"s{self.count}")
        self.count += 1
        return sid


# -- union -----------------------------------------------------------------

def union(a1: TreeAutomaton, a2: TreeAutomaton) -> TreeAutomaton:
    """Language union by sharing both transition functions.

    States and finals are unioned, every non-initial super-state root is
    reused as-is, and only the two initial roots are merged, costing a
    single Apply no matter how large the alphabet is.  The result may be
    nondeterministic even for deterministic inputs.
    """
    _require_compatible(a1, a2)
    m = a1.manager
    res = _result(a1, "union")
    alloc = _StateAllocator(res)
    for aut in (a1, a2):
        for sid in aut.states:
            if not res.has_state_id(sid):
                alloc.adopt(sid)
            if sid in aut.finals:
                res.finals.add(sid)
    for sp, root in a1.index.items():
        if sp != ():
            res.index.set(sp, root, m.bottom)
    for sp, root in a2.index.items():
        if sp == ():
            continue
        prev = res.index.get(sp)
        if prev is None or prev is root:
            res.index.set(sp, root, m.bottom)
        else:
            # operands sharing states: unite the rule sets leafwise
            res.index.set(sp, m.apply(prev, root, lambda x, y: x | y), m.bottom)
    init = m.apply(a1.initial_root(), a2.initial_root(), lambda x, y: x | y)
    res.index.set((), init, m.bottom)
    return res


# -- intersection ------------------------------------------------------------

def intersection(a1: TreeAutomaton, a2: TreeAutomaton) -> TreeAutomaton:
    """Product automaton simulating a parallel run of both operands.

    Product states are discovered lazily from the initial super-states by
    an Apply whose functor forms the Cartesian product of the two leaf
    sets; pairs involving the sink never appear because the empty set has
    an empty product.  Only reachable product states are generated.
    """
    _require_compatible(a1, a2)
    m = a1.manager
    res = _result(a1, "intersection")
    alloc = _StateAllocator(res)
    pair_id: dict[tuple[int, int], int] = {}
    queue: deque[tuple[int, int]] = deque()

    def intersect(left, right):
        out = set()
        for qa in sorted(left):
            for qb in sorted(right):
                sid = pair_id.get((qa, qb))
                if sid is None:
                    sid = alloc.fresh()
                    pair_id[(qa, qb)] = sid
                    res.origins[sid] = (qa, qb)
                    queue.append((qa, qb))
                out.add(sid)
        return out

    res.index.set((), m.apply(a1.initial_root(), a2.initial_root(), intersect),
                  m.bottom)
    done: set[tuple[int, int]] = set()
    while queue:
        qa, qb = queue.popleft()
        done.add((qa, qb))
        if qa in a1.finals and qb in a2.finals:
            res.finals.add(pair_id[(qa, qb)])
        for n in a1.index.arities():
            if n == 0 or not a2.index.tuples(n):
                continue
            for sp1 in a1.index.containing(qa, n):
                for sp2 in a2.index.containing(qb, n):
                    if all((sp1[i], sp2[i]) in done for i in range(n)):
                        product_sp = tuple(pair_id[(sp1[i], sp2[i])]
                                           for i in range(n))
                        root = m.apply(a1.index.get(sp1), a2.index.get(sp2),
                                       intersect)
                        res.index.set(product_sp, root, m.bottom)
    return res


# -- determinisation -----------------------------------------------------------

def determinise(a: TreeAutomaton) -> TreeAutomaton:
    """Subset construction over macrostates, working leafwise.

    For every tuple of macrostates the union of the member super-states'
    diagrams is folded up with Apply, then a monadic pass interns each
    union leaf as one macrostate.  The empty macrostate is the sink and is
    neither created nor expanded, and only reachable macrostates appear.
    """
    m = a.manager
    res = _result(a, "determinise")
    alloc = _StateAllocator(res)
    position: dict[frozenset, int] = {}   # macrostate -> index into members
    members: list[frozenset] = []
    macro_sid: list[int] = []             # index -> result state id
    queue: deque[int] = deque()

    def collect_sets(leaf):
        if not leaf:
            return leaf
        pos = position.get(leaf)
        if pos is None:
            pos = len(members)
            position[leaf] = pos
            members.append(leaf)
            macro_sid.append(alloc.fresh())
            res.origins[macro_sid[pos]] = leaf
            queue.append(pos)
            if leaf & a.finals:
                res.finals.add(macro_sid[pos])
        return frozenset({macro_sid[pos]})

    union_op = lambda x, y: x | y
    res.index.set((), m.monadic_apply(a.initial_root(), collect_sets), m.bottom)
    processed: set[tuple[int, ...]] = set()
    while queue:
        current = queue.popleft()
        for n in a.index.arities():
            if n == 0:
                continue
            stored = [(sp, a.index.get(sp)) for sp in a.index.tuples(n)]
            for combo in itertools.product(range(len(members)), repeat=n):
                if current not in combo or combo in processed:
                    continue
                processed.add(combo)
                sets = [members[i] for i in combo]
                tmp = m.bottom
                for sp, root in stored:
                    if all(sp[i] in sets[i] for i in range(n)):
                        tmp = m.apply(tmp, root, union_op)
                if tmp is not m.bottom:
                    source = tuple(macro_sid[i] for i in combo)
                    res.index.set(source, m.monadic_apply(tmp, collect_sets),
                                  m.bottom)
    return res


# -- complementation -----------------------------------------------------------

def complement(a: TreeAutomaton) -> TreeAutomaton:
    """Determinise, materialise completeness, and invert the final states.

    The virtual sink becomes a genuine (accepting) state of the result so
    that membership queries on the complement are total without any
    special-casing: every missing transition is redirected to it.
    """
    d = determinise(a)
    m = a.manager
    res = _result(a, "complement")
    alloc = _StateAllocator(res)
    for sid in d.states:
        alloc.adopt(sid)
        if sid not in d.finals:
            res.finals.add(sid)
    sink = alloc.fresh()
    res.finals.add(sink)

    def fill(leaf):
        return leaf if leaf else frozenset({sink})

    all_states = list(d.states) + [sink]
    for n in a.alphabet.arities():
        for sp in itertools.product(all_states, repeat=n):
            root = d.index.get(sp) or m.bottom
            res.index.set(sp, m.monadic_apply(root, fill), m.bottom)
    return res


# -- pruning and emptiness ---------------------------------------------------

def prune_unreachable(a: TreeAutomaton) -> TreeAutomaton:
    """Drop states with no witness term, keeping the language.

    Simulates runs over all trees: states are collected from the initial
    root's leaves, and a super-state's root is copied (shared) once all of
    its components are reachable.
    """
    m = a.manager
    res = _result(a, "prune")
    queue: deque[int] = deque()

    def collect_reachable(leaf):
        queue.extend(sorted(leaf))
        return leaf

    pending: list[tuple[tuple[int, ...], object]] = []
    init = a.initial_root()
    if init is not m.bottom:
        pending.append(((), m.monadic_apply(init, collect_reachable)))
    reached: set[int] = set()
    order: list[int] = []
    while queue:
        q = queue.popleft()
        if q in reached:
            continue
        reached.add(q)
        order.append(q)
        for n in a.index.arities():
            if n == 0:
                continue
            for sp in a.index.containing(q, n):
                if all(c in reached for c in sp):
                    pending.append(
                        (sp, m.monadic_apply(a.index.get(sp), collect_reachable)))
    alloc = _StateAllocator(res)
    for sid in order:
        alloc.adopt(sid)
        if sid in a.finals:
            res.finals.add(sid)
    for sp, root in pending:
        res.index.set(sp, root, m.bottom)
    return res


def is_empty(a: TreeAutomaton) -> bool:
    """Emptiness via reachability, answering as soon as a final state turns up."""
    m = a.manager
    reached: set[int] = set()
    queue: deque[int] = deque()
    for leaf in m.leaf_values(a.initial_root()):
        queue.extend(sorted(leaf))
    while queue:
        q = queue.popleft()
        if q in reached:
            continue
        if q in a.finals:
            return False
        reached.add(q)
        for n in a.index.arities():
            if n == 0:
                continue
            for sp in a.index.containing(q, n):
                if all(c in reached for c in sp):
                    for leaf in m.leaf_values(a.index.get(sp)):
                        queue.extend(sorted(leaf))
    return True


# -- quotienting ---------------------------------------------------------------

@dataclass
class QuotientMap:
    """Total map from state ids to class indices, classes partitioning Q."""

    class_of: dict[int, int]
    representatives: list[int]  # class index -> least member id

    @classmethod
    def from_classes(cls, classes) -> "QuotientMap":
        blocks = [sorted(block) for block in classes]
        blocks.sort(key=lambda b: b[0])
        class_of = {}
        reps = []
        for idx, block in enumerate(blocks):
            reps.append(block[0])
            for q in block:
                if q in class_of:
                    raise ValueError(f"state {q} appears in two classes")
                class_of[q] = idx
        return cls(class_of, reps)

    @classmethod
    def identity(cls, states) -> "QuotientMap":
        return cls.from_classes([q] for q in states)

    def __len__(self):
        return len(self.representatives)


def reduce_by_equivalence(a: TreeAutomaton, quotient: QuotientMap) -> TreeAutomaton:
    """Quotient automaton: classes become states, targets are rewritten to
    class ids, and colliding source tuples are united leafwise."""
    missing = [q for q in a.states if q not in quotient.class_of]
    if missing:
        raise ValueError(f"quotient is not total; missing states {missing}")
    m = a.manager
    res = _result(a, "reduce")
    alloc = _StateAllocator(res)
    class_state = [alloc.fresh() for _ in quotient.representatives]
    for q in a.states:
        res.origins.setdefault(class_state[quotient.class_of[q]],
                               set()).add(q)
    for q in a.states:
        if q in a.finals:
            res.finals.add(class_state[quotient.class_of[q]])

    def relabel(acc, leaf):
        return acc | {class_state[quotient.class_of[q]] for q in leaf}

    for sp, root in a.index.items():
        mapped = tuple(class_state[quotient.class_of[q]] for q in sp)
        prev = res.index.get(mapped) or m.bottom
        res.index.set(mapped, m.apply(prev, root, relabel), m.bottom)
    return res


def _is_deterministic(a: TreeAutomaton) -> bool:
    return all(len(leaf) <= 1
               for _, root in a.index.items()
               for leaf in a.manager.leaf_values(root))


def compute_congruence(a: TreeAutomaton) -> QuotientMap:
    """Coarsest congruence of a reachable DFTA, for minimisation.

    Starts from the finality partition and repeatedly substitutes class
    mates into stored super-states, comparing the two target rows with a
    class-comparing functor.  A substituted super-state with no stored
    row compares as the bottom constant, and the virtual sink takes part
    as an ordinary non-final class, so two states that both lack some
    transition are never split spuriously.
    """
    if not _is_deterministic(a):
        raise ValueError("congruence computation requires a deterministic automaton")
    m = a.manager
    states = list(a.states)
    universe = states + [_SINK]
    eq: set[tuple[int, int]] = {
        (p, q) for p in universe for q in universe
        if (p in a.finals) == (q in a.finals)}

    while True:
        prev = frozenset(eq)
        mates: dict[int, list[int]] = {
            p: sorted(q for (x, q) in prev if x == p) for p in universe}
        rep: dict[int, int] = {p: min(mates[p]) for p in universe}

        def target_class(leaf):
            if not leaf:
                return rep[_SINK]
            (q,) = leaf
            return rep[q]

        for n in a.index.arities():
            for sp in a.index.tuples(n):
                root = a.index.get(sp)
                for i in range(n):
                    qi = sp[i]
                    for q in mates[qi]:
                        if q == qi or (q, qi) not in eq:
                            continue
                        other = a.index.get(sp[:i] + (q,) + sp[i + 1:]) or m.bottom
                        hit = []

                        def refine(left, right):
                            if target_class(left) != target_class(right):
                                hit.append(True)
                            return frozenset()

                        m.apply(root, other, refine)
                        if hit:
                            eq.discard((q, qi))
                            eq.discard((qi, q))
        if frozenset(eq) == prev:
            break

    # blocks of the pair relation restricted to real states
    blocks: list[set[int]] = []
    assigned: dict[int, set[int]] = {}
    for p in states:
        home = assigned.get(p)
        if home is None:
            home = {p}
            blocks.append(home)
            assigned[p] = home
            for q in states:
                if q != p and (p, q) in eq:
                    home.add(q)
                    assigned[q] = home
    return QuotientMap.from_classes(blocks)


def minimise(a: TreeAutomaton) -> TreeAutomaton:
    """Prune, determinise, compute the congruence, and quotient by it."""
    d = determinise(prune_unreachable(a))
    res = reduce_by_equivalence(d, compute_congruence(d))
    res.name = "minimise"
    return res


# -- downward simulation --------------------------------------------------------

def downward_simulation(a: TreeAutomaton) -> frozenset:
    """Greatest downward simulation as a set of ordered state-id pairs.

    Starts from Q x Q.  For each super-state the diagrams of all tuples
    that currently simulate it componentwise are united, and a refinement
    functor deletes (q, r) whenever q sits in the left leaf but r is
    missing from the right one.  Repeats to the fixpoint.
    """
    m = a.manager
    states = list(a.states)
    sim: set[tuple[int, int]] = {(p, q) for p in states for q in states}
    partners: dict[int, set[int]] = {p: set(states) for p in states}
    union_op = lambda x, y: x | y

    changed = True
    while changed:
        changed = False
        for n in a.index.arities():
            tuples = a.index.tuples(n)
            for sp in tuples:
                tmp = m.bottom
                for other in tuples:
                    if all((sp[i], other[i]) in sim for i in range(n)):
                        tmp = m.apply(tmp, a.index.get(other), union_op)

                def refine(left, right):
                    nonlocal changed
                    for q in sorted(left):
                        for r in sorted(partners[q] - right):
                            sim.discard((q, r))
                            partners[q].discard(r)
                            changed = True
                    return frozenset()

                m.apply(a.index.get(sp), tmp, refine)
    return frozenset(sim)


def reduce_by_simulation(a: TreeAutomaton) -> TreeAutomaton:
    """Quotient by mutual downward simulation; language preserved."""
    sim = downward_simulation(a)
    blocks: list[set[int]] = []
    placed: dict[int, set[int]] = {}
    for p in a.states:
        if p in placed:
            continue
        block = {p}
        for q in a.states:
            if q != p and (p, q) in sim and (q, p) in sim:
                block.add(q)
        for q in block:
            placed[q] = block
        blocks.append(block)
    return reduce_by_equivalence(a, QuotientMap.from_classes(blocks))


# -- language inclusion ----------------------------------------------------------

class Antichain:
    """Pairs (left state, partner set) with subset-minimal sets per state.

    Inserting a pair whose partner set is a superset of a stored one is a
    no-op; inserting a subset evicts the stored supersets.  At all times
    no two stored sets for one state are comparable by inclusion.
    """

    def __init__(self):
        self._families: dict[int, list[frozenset]] = {}

    def insert(self, state: int, partners: frozenset) -> bool:
        """Store the pair unless it is subsumed; True when stored."""
        family = self._families.setdefault(state, [])
        for kept in family:
            if kept <= partners:
                return False
        family[:] = [kept for kept in family if not partners <= kept]
        family.append(partners)
        return True

    def contains(self, state: int, partners: frozenset) -> bool:
        return partners in self._families.get(state, ())

    def family(self, state: int) -> tuple:
        return tuple(self._families.get(state, ()))

    def items(self):
        for state in sorted(self._families):
            for partners in self._families[state]:
                yield state, partners


def check_inclusion_antichain(a1: TreeAutomaton, a2: TreeAutomaton) -> bool:
    """Antichain-based inclusion test, no determinisation required.

    Explores pairs (q, D): a state of ``a1`` and the exact set of ``a2``
    states reachable over some common tree.  A pair with a final q and no
    final partner refutes inclusion.  Per left state only subset-minimal
    partner sets are kept: a new pair is dropped when a stored subset
    exists, and stored supersets are evicted on insertion.
    """
    _require_compatible(a1, a2)
    m = a1.manager
    antichain = Antichain()
    work: deque[tuple[int, frozenset]] = deque()

    def collect_products(left, right):
        for q in sorted(left):
            if antichain.insert(q, right):
                work.append((q, right))
        return frozenset()

    union_op = lambda x, y: x | y
    m.apply(a1.initial_root(), a2.initial_root(), collect_products)
    while work:
        q, partners = work.popleft()
        if not antichain.contains(q, partners):
            continue  # superseded by a smaller partner set
        if q in a1.finals and not (partners & a2.finals):
            return False
        for n in a1.index.arities():
            if n == 0:
                continue
            for sp1 in a1.index.containing(q, n):
                families = [antichain.family(c) for c in sp1]
                if any(not f for f in families):
                    continue
                for combo in itertools.product(*families):
                    if not any(sp1[i] == q and combo[i] == partners
                               for i in range(n)):
                        continue
                    tmp = m.bottom
                    for sp2 in a2.index.tuples(n):
                        if all(sp2[i] in combo[i] for i in range(n)):
                            tmp = m.apply(tmp, a2.index.get(sp2), union_op)
                    m.apply(a1.index.get(sp1), tmp, collect_products)
    return True


def check_inclusion_classical(a1: TreeAutomaton, a2: TreeAutomaton) -> bool:
    """Textbook inclusion: empty(L(a1) intersected with the complement of L(a2))."""
    _require_compatible(a1, a2)
    return is_empty(intersection(a1, complement(a2)))
