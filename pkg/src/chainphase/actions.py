"""Topological action functionals on a single top simplex.

Every action here is a local density: a rational multiple of a sum of
products of cochain values on sub-simplices of one top cell.  A term
list encodes the sum positionally, so the same list evaluates the
action on any simplex of the right dimension.  Each factor is a pair
``(use_delta, positions)``: look up the input cochain (or its
coboundary) on the sub-simplex picked out by ``positions`` inside the
top cell.  All products are taken over the integer lifts of the input
and only the final total is divided down to a phase.
"""

from __future__ import annotations

from .cups import cup_k_terms
from .fileio import load_term_file
from .operad import p1_terms
from .simplicial import Cochain, Phase, check_simplex


def _shift(positions, offset):
    return tuple(p + offset for p in positions)


def _triple_cup_terms(p: int) -> tuple:
    """Terms of c cup c cup c for a p-cochain: one front/middle/back term."""
    front = tuple(range(p + 1))
    middle = tuple(range(p, 2 * p + 1))
    back = tuple(range(2 * p, 3 * p + 1))
    return ((1, ((False, front), (False, middle), (False, back))),)


def _cup1_delta_terms():
    """Terms of c cup_1 delta(c) for a 2-cochain, on a 4-simplex."""
    return tuple((sign, ((False, left), (True, right)))
                 for sign, left, right in cup_k_terms(2, 3, 1))


def _pontryagin9_terms() -> tuple:
    """Terms of the nine-dimensional quadratic refinement of the cube.

    The sum is c cup c cup c, plus (c cup_1 dc) cup c, minus
    c cup (c cup_1 dc), with the inner cup-1 terms spliced into the
    front (vertices 0..4) or back (vertices 2..6) face of the 6-simplex.
    """
    terms = list(_triple_cup_terms(2))
    for sign, factors in _cup1_delta_terms():
        terms.append((sign, factors + ((False, (4, 5, 6)),)))
    for sign, factors in _cup1_delta_terms():
        shifted = tuple((d, _shift(pos, 2)) for d, pos in factors)
        terms.append((-sign, ((False, (0, 1, 2)),) + shifted))
    return tuple(terms)


def _p1_action_terms(q: int) -> tuple:
    """Signed slot triples of the degree-q first fractional power."""
    name = {4: "d3_4_q4.txt", 5: "d3_6_q5.txt"}.get(q)
    if name is None:
        raw = p1_terms(q)
    else:
        # q = 3 is cheap to generate; the two big lists ship frozen.
        sign = -1 if (q * (q - 1) // 2 + 1) % 2 else 1
        raw = tuple((sign * coef, slots)
                    for coef, slots in load_term_file(name))
    return tuple((coef, tuple((False, slot) for slot in slots))
                 for coef, slots in raw)


class ActionFunctional:
    """A local action evaluating a degree-n cochain on one top simplex.

    Attributes: ``name``, ``degree`` (of the input cochain), ``spacetime``
    (dimension of the top simplex), ``modulus`` (coefficient modulus N of
    the theory), ``divisor`` (denominator of the phase).
    """

    __slots__ = ("name", "degree", "spacetime", "modulus", "divisor",
                 "terms")

    def __init__(self, name: str, degree: int, spacetime: int,
                 modulus: int, divisor: int, terms):
        self.name = name
        self.degree = degree
        self.spacetime = spacetime
        self.modulus = modulus
        self.divisor = divisor
        self.terms = terms

    def __repr__(self):
        return (f"ActionFunctional({self.name!r}, degree={self.degree}, "
                f"spacetime={self.spacetime}, modulus={self.modulus})")

    def density(self, B: Cochain, s) -> int:
        """Integer numerator of the action density on top simplex s."""
        s = check_simplex(s)
        if len(s) != self.spacetime + 1:
            raise ValueError(
                f"{self.name} wants a {self.spacetime}-simplex, got {s}")
        if B.degree != self.degree:
            raise ValueError(
                f"{self.name} wants a degree-{self.degree} cochain, "
                f"got degree {B.degree}")
        total = 0
        for coef, factors in self.terms:
            prod = coef
            for use_delta, positions in factors:
                sub = tuple(s[i] for i in positions)
                prod *= B.on_boundary(sub) if use_delta else B.value(sub)
                if prod == 0:
                    break
            total += prod
        return total

    def phase(self, B: Cochain, s) -> Phase:
        """Action phase on one top simplex, exact in Q/Z."""
        return Phase(self.density(B, s), self.divisor)

    def integral(self, B: Cochain, complex) -> Phase:
        """Signed sum of the action phase over the complex's top cells."""
        total = 0
        for cell, sign in complex.top_cells:
            total += sign * self.density(B, cell)
        return Phase(total, self.divisor)


def _require(name, N, ok, why):
    if not ok:
        raise ValueError(f"action {name} needs {why}, got N={N}")


_SPECS = {
    # name: (degree n, spacetime D, default N, divisor(N), check(N))
    "cube3": (2, 6, 2, lambda N: N, lambda N: N >= 2, "N >= 2"),
    "pontryagin9": (2, 6, 3, lambda N: 3 * N, lambda N: N % 3 == 0,
                    "N divisible by 3"),
    "p1b3": (3, 7, 3, lambda N: 3, lambda N: N % 3 == 0,
             "N divisible by 3"),
    "p1b4": (4, 8, 3, lambda N: 3, lambda N: N % 3 == 0,
             "N divisible by 3"),
    "p1b5": (5, 9, 3, lambda N: 3, lambda N: N % 3 == 0,
             "N divisible by 3"),
    "cs-b3": (3, 7, 2, lambda N: N * N, lambda N: N >= 2, "N >= 2"),
    "sq4-b5": (5, 9, 2, lambda N: 2, lambda N: N % 2 == 0, "even N"),
    "particle-quad": (2, 4, 3, lambda N: N, lambda N: N % 2 == 1,
                      "odd N"),
    "particle-quad-even": (2, 4, 2, lambda N: 2 * N, lambda N: N % 2 == 0,
                           "even N"),
}


def _cs_terms() -> tuple:
    return ((1, ((False, (0, 1, 2, 3)), (True, (3, 4, 5, 6, 7)))),)


def _sq4_terms() -> tuple:
    return tuple((sign, ((False, left), (False, right)))
                 for sign, left, right in cup_k_terms(5, 5, 1))


def _particle_quad_terms() -> tuple:
    return ((1, ((False, (0, 1, 2)), (False, (2, 3, 4)))),)


def _particle_quad_even_terms() -> tuple:
    terms = list(_particle_quad_terms())
    for sign, left, right in cup_k_terms(2, 3, 1):
        terms.append((sign, ((False, left), (True, right))))
    return tuple(terms)


_TERM_BUILDERS = {
    "cube3": lambda: _triple_cup_terms(2),
    "pontryagin9": _pontryagin9_terms,
    "p1b3": lambda: _p1_action_terms(3),
    "p1b4": lambda: _p1_action_terms(4),
    "p1b5": lambda: _p1_action_terms(5),
    "cs-b3": _cs_terms,
    "sq4-b5": _sq4_terms,
    "particle-quad": _particle_quad_terms,
    "particle-quad-even": _particle_quad_even_terms,
}

_TERM_CACHE: dict[str, tuple] = {}


def action_names() -> list[str]:
    return sorted(_SPECS)


def get_action(name: str, N: int | None = None) -> ActionFunctional:
    """Look up an action by name, binding the coefficient modulus N."""
    if name not in _SPECS:
        raise KeyError(f"unknown action {name!r}; "
                       f"known: {', '.join(action_names())}")
    degree, spacetime, default_N, divisor, check, why = _SPECS[name]
    if N is None:
        N = default_N
    _require(name, N, check(N), why)
    if name not in _TERM_CACHE:
        _TERM_CACHE[name] = _TERM_BUILDERS[name]()
    return ActionFunctional(name, degree, spacetime, N, divisor(N),
                            _TERM_CACHE[name])
