"""Statistical processes: words of oriented cells and their evaluation.

A process is an ordered word of steps (orientation, cell).  Steps act
top to bottom (the first list entry is applied first).  In the chain
picture a step with orientation +1 sends the state a to a + boundary
of the cell; orientation -1 applies the inverse.  In the dual cochain
picture the same step shifts the boundary configuration b by the dual
cochain h of the cell and contributes the modified excitation phase
of the bound action functional.

The inverse of an operator contributes the negated phase evaluated at
the state it lands on, which is what makes forward/backward pairs
through the same configuration cancel.
"""

from __future__ import annotations

from collections import Counter

from .actions import ActionFunctional
from .boundary import modified_excitation_phase
from .simplicial import (Chain, Cochain, Phase, check_simplex, dualize,
                         simplex_faces)

#: The 56-step membrane word on the boundary of the 5-simplex.  Each
#: entry is (orientation, tetrahedron); the first entry acts first.
MU56: tuple = (
    (+1, (0, 1, 4, 5)), (+1, (0, 2, 3, 5)), (-1, (0, 2, 4, 5)),
    (+1, (0, 3, 4, 5)), (-1, (0, 1, 2, 3)), (-1, (0, 3, 4, 5)),
    (+1, (0, 2, 4, 5)), (+1, (0, 2, 3, 4)), (+1, (0, 1, 2, 4)),
    (-1, (0, 1, 3, 4)), (-1, (0, 2, 3, 5)), (+1, (0, 1, 3, 4)),
    (-1, (0, 1, 2, 4)), (+1, (0, 1, 2, 3)), (-1, (0, 2, 3, 4)),
    (-1, (0, 1, 4, 5)), (+1, (0, 2, 3, 4)), (-1, (0, 1, 2, 3)),
    (-1, (0, 1, 3, 4)), (+1, (0, 1, 3, 5)), (+1, (0, 3, 4, 5)),
    (+1, (0, 1, 2, 4)), (-1, (0, 3, 4, 5)), (-1, (0, 1, 3, 5)),
    (+1, (0, 2, 3, 5)), (+1, (0, 3, 4, 5)), (-1, (0, 2, 4, 5)),
    (-1, (0, 2, 3, 4)), (+1, (0, 1, 3, 5)), (+1, (0, 2, 3, 4)),
    (+1, (0, 2, 4, 5)), (-1, (0, 1, 2, 4)), (-1, (0, 2, 3, 4)),
    (-1, (0, 2, 4, 5)), (-1, (0, 1, 3, 5)), (+1, (0, 1, 3, 4)),
    (+1, (0, 1, 2, 3)), (+1, (0, 2, 4, 5)), (+1, (0, 1, 2, 5)),
    (-1, (0, 1, 2, 3)), (-1, (0, 1, 3, 4)), (+1, (0, 2, 3, 4)),
    (-1, (0, 3, 4, 5)), (+1, (0, 1, 3, 4)), (-1, (0, 2, 3, 4)),
    (+1, (0, 3, 4, 5)), (+1, (0, 1, 2, 3)), (-1, (0, 1, 2, 5)),
    (+1, (0, 1, 3, 5)), (-1, (0, 2, 4, 5)), (-1, (0, 1, 3, 4)),
    (+1, (0, 2, 4, 5)), (+1, (0, 1, 3, 4)), (-1, (0, 1, 3, 5)),
    (-1, (0, 3, 4, 5)), (-1, (0, 2, 3, 5)),
)

#: The six-step particle exchange word on the boundary of the
#: 3-simplex (the T-junction word; rightmost operator acts first).
TJUNCTION: tuple = (
    (-1, (0, 1)), (+1, (0, 3)), (-1, (0, 2)),
    (+1, (0, 1)), (-1, (0, 3)), (+1, (0, 2)),
)

_BUILTIN = {"mu56": MU56, "tjunction": TJUNCTION}


def builtin(name: str):
    """Return a hardcoded process word by name (mu56 or tjunction)."""
    if name not in _BUILTIN:
        raise KeyError(f"unknown process {name!r}; "
                       f"known: {', '.join(sorted(_BUILTIN))}")
    return _BUILTIN[name]


def check_steps(steps):
    out = []
    for sign, cell in steps:
        if sign not in (1, -1):
            raise ValueError(f"step orientation must be +1 or -1: {sign}")
        out.append((sign, check_simplex(cell)))
    return tuple(out)


def step_cell_sum(steps) -> Chain:
    """Signed sum of the step cells as an integer chain."""
    steps = check_steps(steps)
    degree = len(steps[0][1]) - 1
    total = Chain(degree, {})
    for sign, cell in steps:
        total += Chain(degree, {cell: sign})
    return total


def is_closed(steps) -> bool:
    return not step_cell_sum(steps)


def trace(steps, initial: Chain):
    """Chain states visited by the word, starting from `initial`.

    Returns a list of length steps+1 over the integers (or whatever
    modulus `initial` carries); entry 0 is the initial state.
    """
    steps = check_steps(steps)
    a = initial
    out = [a]
    for sign, cell in steps:
        if len(cell) - 1 != initial.degree + 1:
            raise ValueError(f"cell {cell} does not move "
                             f"degree-{initial.degree} states")
        move = Chain(initial.degree, dict(simplex_faces(cell)),
                     initial.modulus)
        a = a + move if sign > 0 else a - move
        out.append(a)
    return out


def dual_hop(cell, k: int) -> Cochain:
    """Dual cochain of one moved cell inside the k-simplex, over Z."""
    cell = check_simplex(cell)
    return dualize(Chain(len(cell) - 1, {cell: 1}), k)


def evaluate(steps, action: ActionFunctional, initial: Cochain | None = None,
             require_closed: bool = True) -> Phase:
    """Total phase of the word under the bound action functional.

    The state is the boundary configuration b, reduced to canonical
    representatives mod N after every hop when the initial state
    carries modulus N (an integer-valued initial state is propagated
    without reduction).  The word must return b to its initial value;
    this is what justifies accumulating only the hop phases.
    """
    steps = check_steps(steps)
    D = action.spacetime
    k = D - 1
    S = tuple(range(D))
    if initial is None:
        initial = Cochain(action.degree - 1, {}, action.modulus)
    if initial.degree != action.degree - 1:
        raise ValueError(
            f"initial configuration must have degree {action.degree - 1}")
    if require_closed and not is_closed(steps):
        raise ValueError("process word does not return to its start")

    total = Phase(0, 1)
    b = initial
    for sign, cell in steps:
        if cell[-1] > k:
            raise ValueError(f"cell {cell} does not fit in a {k}-simplex")
        if len(cell) != D - action.degree:
            raise ValueError(
                f"cell {cell} dualizes to degree {k - len(cell)}, "
                f"but {action.name} hops have degree {action.degree - 1}")
        h = dual_hop(cell, k)
        shift = h.with_modulus(b.modulus) if b.modulus else h
        if sign > 0:
            total += modified_excitation_phase(action, b, h, S)
            b = b + shift
        else:
            b = b - shift
            total -= modified_excitation_phase(action, b, h, S)
    if b != initial:
        raise AssertionError("state did not return to the initial "
                             "configuration; phase would be gauge-dependent")
    return total


def random_closed_configuration(degree: int, k: int, modulus: int,
                                rng) -> Cochain:
    """Random coboundary-valued configuration: delta of a random
    cochain one degree down, reduced mod N."""
    from itertools import combinations

    if degree < 1:
        raise ValueError("need degree >= 1 to build an exact cochain")
    verts = range(k + 1)
    low = {}
    for t in combinations(verts, degree):
        v = rng.randrange(modulus)
        if v:
            low[t] = v
    eps = Cochain(degree - 1, low, 0)
    values = {}
    for t in combinations(verts, degree + 1):
        v = eps.on_boundary(t)
        if v % modulus:
            values[t] = v
    return Cochain(degree, values, 0).with_modulus(modulus)


class CancellationReport:
    """Outcome of the local cancellation check.

    ``residues`` maps (vertex, cell) to the multiset of signed local
    configurations that failed to cancel; the check passes when every
    multiset is empty.
    """

    __slots__ = ("residues", "pairs")

    def __init__(self, residues, pairs):
        self.residues = residues
        self.pairs = pairs

    @property
    def ok(self) -> bool:
        return not self.residues

    def __repr__(self):
        state = "pass" if self.ok else f"fail at {sorted(self.residues)}"
        return f"CancellationReport({len(self.pairs)} pairs, {state})"


def _truncate(a: Chain, v: int, modulus: int):
    """Restriction of a state to the simplices containing vertex v,
    frozen to a hashable canonical form."""
    items = []
    for t, c in a.items():
        if v in t:
            c = c % modulus if modulus else c
            if c:
                items.append((t, c))
    return tuple(sorted(items))


def check_cancellation(steps, modulus: int = 0,
                       initial: Chain | None = None) -> CancellationReport:
    """Check that every phase contribution cancels locally.

    Walk the word from `initial` (vacuum by default), recording for
    each step the configuration at which the forward operator acts: a
    step with orientation +1 acting at state a records (+1, cell, a);
    its inverse acting at a records (-1, cell, a - boundary(cell)),
    the state the forward operator would have been applied at.  The
    word cancels if, for every vertex v of every cell, the signed
    multiset of recorded configurations truncated to v sums to zero.
    """
    steps = check_steps(steps)
    degree = len(steps[0][1]) - 2
    if initial is None:
        initial = Chain(degree, {})
    a = initial
    books: dict = {}
    for sign, cell in steps:
        move = Chain(degree, dict(simplex_faces(cell)), initial.modulus)
        if sign > 0:
            recorded = a
            a = a + move
        else:
            a = a - move
            recorded = a
        for v in cell:
            key = (v, cell)
            books.setdefault(key, Counter())[
                _truncate(recorded, v, modulus)] += sign
    residues = {}
    for key, counter in books.items():
        bad = {state: n for state, n in counter.items() if n}
        if bad:
            residues[key] = bad
    return CancellationReport(residues, sorted(books))


def pauli_triviality_check(steps, assignment, N: int,
                           initial: Chain | None = None) -> Phase:
    """Accumulated phase when every operator is a generalized Pauli.

    ``assignment`` maps each cell to a cochain of the state degree;
    the phase of the forward operator at state a is its pairing with a
    divided by N (a linear functional, which is what being Pauli
    means).  For a closed word the total must vanish: contributions
    pair up through equal configurations regardless of the assignment.
    """
    steps = check_steps(steps)
    degree = len(steps[0][1]) - 2
    a = initial if initial is not None else Chain(degree, {})
    total = Phase(0, 1)
    for sign, cell in steps:
        lam = assignment[cell]
        move = Chain(degree, dict(simplex_faces(cell)), a.modulus)
        if sign > 0:
            total += Phase(lam.evaluate(a), N)
            a = a + move
        else:
            a = a - move
            total -= Phase(lam.evaluate(a), N)
    return total


def golden_trace_diff(steps, golden_rows, initial: Chain | None = None):
    """Compare a word's trace against golden (sign, cell, state) rows.

    Returns a list of human-readable mismatch strings, empty when the
    trace reproduces the golden rows exactly.
    """
    steps = check_steps(steps)
    problems = []
    if len(steps) != len(golden_rows):
        problems.append(f"step count {len(steps)} != golden "
                        f"{len(golden_rows)}")
        return problems
    degree = len(steps[0][1]) - 2
    if initial is None:
        initial = Chain(degree, {})
    states = trace(steps, initial)
    for i, ((sign, cell), (gsign, gcell, gstate)) in enumerate(
            zip(steps, golden_rows), start=1):
        if (sign, cell) != (gsign, gcell):
            problems.append(f"step {i}: word has {sign:+d} {cell}, "
                            f"golden has {gsign:+d} {gcell}")
        elif states[i] != gstate:
            problems.append(f"step {i}: state {dict(states[i].items())} "
                            f"!= golden {dict(gstate.items())}")
    return problems
