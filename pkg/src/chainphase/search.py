"""Search for statistical processes via expression-group linear algebra.

An excitation model fixes a fusion modulus N, an excitation dimension
p, and a space dimension d.  Configurations form the finite group of
p-boundaries of the (d+1)-simplex boundary with mod-N coefficients;
generators are the (p+1)-simplices, each moving a configuration by its
chain boundary.  Phase measurements live in the free abelian group E
over (generator, configuration) pairs; nested commutators of
generators with empty common vertex support expand to expressions that
every realization maps to zero, and the torsion of E modulo those
identities classifies the nontrivial statistical processes.

The membrane-scale run (d=4 with sign-function legality lifting) is a
resumable batch job, far beyond test budgets; see ``legality_search``.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from itertools import combinations
from pathlib import Path

from .intmat import SparseIntMatrix, smith_invariant_factors
from .simplicial import Chain, Phase, simplex_faces

VACUUM_KEY = ()


def _state_key(state: Chain) -> tuple:
    return tuple(sorted(state.items()))


class ExcitationModel:
    """Finite configuration space of closed p-excitations on del Delta_{d+1}.

    Attributes: ``modulus`` (fusion group Z_N), ``p``, ``d``,
    ``generators`` (the (p+1)-simplices, ascending), ``configurations``
    (every p-boundary, as canonical state keys), ``moves`` (generator
    -> boundary Chain mod N).
    """

    __slots__ = ("modulus", "p", "d", "generators", "moves",
                 "configurations", "_config_set")

    def __init__(self, modulus, p, d, generators, moves, configurations):
        self.modulus = modulus
        self.p = p
        self.d = d
        self.generators = generators
        self.moves = moves
        self.configurations = configurations
        self._config_set = set(configurations)

    def support(self, s) -> frozenset:
        return frozenset(s)

    def state(self, key) -> Chain:
        return Chain(self.p, dict(key), self.modulus)

    def is_configuration(self, key) -> bool:
        return key in self._config_set

    def __repr__(self):
        return (f"ExcitationModel(Z_{self.modulus}, p={self.p}, "
                f"d={self.d}, |S|={len(self.generators)}, "
                f"|A|={len(self.configurations)})")


def build_model(modulus: int, p: int, d: int) -> ExcitationModel:
    """Enumerate the excitation model for fusion group Z_N.

    >>> m = build_model(2, 0, 2)
    >>> len(m.generators), len(m.configurations)
    (6, 8)
    """
    if modulus == 0:
        raise ValueError("integer fusion group is not enumerable; "
                         "use the legality-lifting path")
    if modulus < 2:
        raise ValueError("fusion modulus must be 0 or >= 2")
    if p + 1 > d:
        raise ValueError(f"excitation dimension {p} does not fit moving "
                         f"cells of dimension {p + 1} in dimension {d}")
    verts = range(d + 2)
    generators = list(combinations(verts, p + 2))
    moves = {s: Chain(p, dict(simplex_faces(s)), modulus)
             for s in generators}
    # Breadth-first closure of the subgroup generated by the moves.
    zero = Chain(p, {}, modulus)
    seen = {_state_key(zero)}
    frontier = [zero]
    while frontier:
        nxt = []
        for state in frontier:
            for move in moves.values():
                new = state + move
                key = _state_key(new)
                if key not in seen:
                    seen.add(key)
                    nxt.append(new)
        frontier = nxt
    return ExcitationModel(modulus, p, d, generators, moves,
                           tuple(sorted(seen)))


def expand_theta(word, a_key, model: ExcitationModel) -> dict:
    """Expand the phase of a word at a configuration into generator terms.

    ``word`` is a sequence of (sign, generator) steps applied first to
    last.  A forward step at state a contributes +theta(s, a); an
    inverse step first moves back and contributes -theta(s, a_new).
    Returns a sparse expression {(generator, state_key): coefficient}.
    """
    expr: dict = {}
    state = model.state(a_key)
    for sign, s in word:
        move = model.moves[s]
        if sign > 0:
            key = (s, _state_key(state))
            expr[key] = expr.get(key, 0) + 1
            state = state + move
        else:
            state = state - move
            key = (s, _state_key(state))
            expr[key] = expr.get(key, 0) - 1
    return {k: v for k, v in expr.items() if v}


def inverse_word(word):
    return tuple((-sign, s) for sign, s in reversed(word))


def commutator(word_a, word_b):
    """[a, b] = a^-1 b^-1 a b as a step word."""
    return (inverse_word(word_a) + inverse_word(word_b)
            + tuple(word_a) + tuple(word_b))


def identity_words(model: ExcitationModel, max_depth: int = 3):
    """Nested commutator words whose supports first empty out at depth <= k.

    Level 2 holds [s1, s2] for generator pairs; each level wraps one
    more distinct generator around a still-overlapping nest.  A word is
    emitted at the first level where the common intersection of all
    participating supports becomes empty (the locality axiom for that
    nest), and deeper wrapping of already-emitted nests is redundant.
    """
    if max_depth < 2:
        raise ValueError("commutators need depth >= 2")
    words = []
    pending = []
    for s1, s2 in combinations(model.generators, 2):
        word = commutator(((1, s1),), ((1, s2),))
        common = model.support(s1) & model.support(s2)
        if common:
            pending.append((word, common, frozenset((s1, s2))))
        else:
            words.append(word)
    depth = 3
    while depth <= max_depth and pending:
        deeper = []
        for word, common, used in pending:
            for s in model.generators:
                if s in used:
                    continue
                wrapped = commutator(word, ((1, s),))
                still = common & model.support(s)
                if still:
                    deeper.append((wrapped, still, used | {s}))
                else:
                    words.append(wrapped)
        pending = deeper
        depth += 1
    return words


def gen_identities(model: ExcitationModel, max_depth: int = 3) -> list[dict]:
    """Identity expressions: commutator words expanded at every state.

    Every realization maps these to zero; they are the rows of the
    relation matrix whose cokernel torsion classifies processes.
    Duplicates and empty expansions are dropped.
    """
    out = []
    seen = set()
    for word in identity_words(model, max_depth):
        for a_key in model.configurations:
            expr = expand_theta(word, a_key, model)
            if not expr:
                continue
            fingerprint = frozenset(expr.items())
            if fingerprint in seen:
                continue
            seen.add(fingerprint)
            out.append(expr)
    return out


def identity_matrix(model: ExcitationModel,
                    max_depth: int = 3) -> SparseIntMatrix:
    return SparseIntMatrix(gen_identities(model, max_depth))


def eliminate(matrix: SparseIntMatrix):
    """Unit-pivot elimination on a copy; returns (residual, log)."""
    residual = matrix.copy()
    log = residual.eliminate()
    return residual, log


def torsion(residual: SparseIntMatrix) -> list[int]:
    """Invariant factors > 1 of the expression group modulo identities."""
    dense, _ = residual.to_dense()
    return [f for f in smith_invariant_factors(dense) if f > 1]


def classify(model: ExcitationModel, max_depth: int = 3):
    """(torsion factors, residual, elimination log) for the model."""
    residual, log = eliminate(identity_matrix(model, max_depth))
    return torsion(residual), residual, log


def random_bilinear_realization(model: ExcitationModel, rng) -> dict:
    """A random Pauli-style phase assignment theta(s, a) = <lam_s, a>/N.

    Locality makes the commutator axioms hold: lam_s pairs only with
    the state restricted to the faces of s, so operators with disjoint
    supports accumulate no cross terms and every identity expression
    evaluates to zero.
    """
    lam = {}
    for s in model.generators:
        entries = {}
        for t in combinations(s, model.p + 1):
            v = rng.randrange(model.modulus)
            if v:
                entries[t] = v
        lam[s] = entries
    return lam


def evaluate_expression(expr: dict, lam: dict,
                        model: ExcitationModel) -> Phase:
    total = Phase(0, 1)
    for (s, a_key), coeff in expr.items():
        pairing = sum(lam[s].get(t, 0) * c for t, c in a_key)
        total += coeff * Phase(pairing, model.modulus)
    return total


class ReconstructError(ValueError):
    pass


def reconstruct_process(expr: dict, model: ExcitationModel):
    """A word g with expand_theta(g, vacuum) == expr, or ReconstructError.

    Each +theta(s, a) is an edge a -> a + ds and each -theta(s, a) the
    reverse; a word is an Eulerian circuit through the vacuum.  When
    the edge multigraph is disconnected, circuits are stitched through
    inverse-pair bridges, whose phase contributions cancel exactly.
    """
    edges: dict[tuple, list] = {}
    indeg: Counter = Counter()
    outdeg: Counter = Counter()
    for (s, a_key), coeff in expr.items():
        if not model.is_configuration(a_key):
            raise ReconstructError(f"state {a_key} is not a configuration")
        target = _state_key(model.state(a_key) + model.moves[s])
        if coeff > 0:
            src, step = a_key, (1, s, target)
        else:
            src, step = target, (-1, s, a_key)
        for _ in range(abs(coeff)):
            edges.setdefault(src, []).append(step)
            outdeg[src] += 1
            indeg[step[2]] += 1
    for node in set(indeg) | set(outdeg):
        if indeg[node] != outdeg[node]:
            raise ReconstructError(f"unbalanced flow at {node}")

    def circuit_from(start):
        """Hierholzer walk consuming every edge reachable from start."""
        if not edges.get(start):
            return []
        path = []
        stack = [(start, None)]
        while stack:
            node, via = stack[-1]
            if edges.get(node):
                sign, s, target = edges[node].pop()
                stack.append((target, (sign, s)))
            else:
                stack.pop()
                if via is not None:
                    path.append(via)
        return list(reversed(path))

    def bridge_to(target_key):
        """Generator steps walking vacuum -> target through move space."""
        seen = {VACUUM_KEY: ()}
        frontier = [VACUUM_KEY]
        while frontier:
            nxt = []
            for key in frontier:
                state = model.state(key)
                for s, move in model.moves.items():
                    for sign, new in ((1, state + move), (-1, state - move)):
                        nk = _state_key(new)
                        if nk not in seen:
                            seen[nk] = seen[key] + ((sign, s),)
                            if nk == target_key:
                                return seen[nk]
                            nxt.append(nk)
            frontier = nxt
        raise ReconstructError(f"no path from vacuum to {target_key}")

    word = list(circuit_from(VACUUM_KEY))
    while any(edges.values()):
        target = next(k for k, v in edges.items() if v)
        bridge = bridge_to(target)
        loop = circuit_from(target)
        if not loop:
            raise ReconstructError(f"stranded edges at {target}")
        word.extend(bridge)
        word.extend(loop)
        word.extend(inverse_word(bridge))
    word = tuple(word)
    if expand_theta(word, VACUUM_KEY, model) != expr:
        raise ReconstructError("re-expansion does not reproduce the "
                               "expression")
    return word


# --- legality-constrained lifting (membrane stretch mode) ---------------

def integer_lift(a_key, f: dict, p: int) -> Chain:
    """Integer lift of a mod-2 configuration via the sign function f."""
    return Chain(p, {t: f[t] * c for t, c in a_key}, 0)


def is_legal_config(a_key, f: dict, model: ExcitationModel) -> bool:
    lifted = integer_lift(a_key, f, model.p)
    return not lifted.boundary() if lifted else True


def is_legal_term(s, a_key, f: dict, model: ExcitationModel,
                  require_vertex0: bool = True) -> bool:
    """Legality of theta(s, a): the moved integer state stays within f.

    The lifted configuration plus the integer boundary of the moved
    cell must take values in {0, f(t)} on every supporting simplex,
    and (optionally) the moving cell must contain vertex 0.
    """
    if require_vertex0 and 0 not in s:
        return False
    lifted = integer_lift(a_key, f, model.p)
    moved = lifted + Chain(model.p, dict(simplex_faces(s)), 0)
    return all(v == f[t] for t, v in moved.items())


def legality_partition(matrix: SparseIntMatrix, f: dict,
                       model: ExcitationModel,
                       require_vertex0: bool = True) -> set:
    return {col for col in matrix.columns()
            if not is_legal_term(col[0], col[1], f, model, require_vertex0)}


def random_sign_function(model: ExcitationModel, rng) -> dict:
    return {t: rng.choice((1, -1))
            for t in combinations(range(model.d + 2), model.p + 1)}


def legality_attempt(base: SparseIntMatrix, f: dict,
                     model: ExcitationModel,
                     require_vertex0: bool = True):
    """One sign-function trial: eliminate only illegal columns.

    Returns (success, residual): success means every illegal column was
    eliminated, leaving a legal-term matrix for further reduction.
    """
    work = base.copy()
    illegal = legality_partition(work, f, model, require_vertex0)
    work.eliminate(allowed_cols=illegal)
    remaining = illegal & work.columns()
    return not remaining, work


def legality_search(model: ExcitationModel, attempts: int,
                    checkpoint: str | Path | None = None,
                    seed: int = 0, max_depth: int = 3,
                    require_vertex0: bool = True):
    """Resumable scan over random sign functions for a Z-liftable process.

    State (trial count, RNG state, successes) persists in the
    checkpoint file; rerunning continues where the last run stopped.
    This is the batch-scale mode: a full membrane scan is a multi-hour
    job and is not part of any test tier.
    """
    if model.modulus != 2:
        raise ValueError("legality lifting applies to the Z_2 model")
    base = identity_matrix(model, max_depth)
    rng = random.Random(seed)
    done = 0
    successes: list[dict] = []
    path = Path(checkpoint) if checkpoint else None
    if path and path.exists():
        saved = json.loads(path.read_text())
        done = saved["done"]
        successes = saved["successes"]
        rng.setstate((saved["rng"][0], tuple(saved["rng"][1]),
                      saved["rng"][2]))
    while done < attempts:
        f = random_sign_function(model, rng)
        ok, residual = legality_attempt(base, f, model, require_vertex0)
        done += 1
        if ok:
            successes.append({
                "trial": done,
                "f": {"".join(map(str, t)): v for t, v in sorted(f.items())},
                "residual_shape": list(residual.shape),
            })
        if path:
            state = rng.getstate()
            path.write_text(json.dumps({
                "done": done,
                "successes": successes,
                "rng": [state[0], list(state[1]), state[2]],
            }))
    return {"attempts": done, "successes": successes}
