"""Cup and higher cup-k products with explicit sign bookkeeping.

The cup-k product of a p-cochain and a q-cochain is evaluated on a
(p+q-k)-simplex by summing over interval decompositions.  Relative to
the vertex positions 0..p+q-k of the simplex, a decomposition is a
strictly increasing tuple of k+1 alternation points j_1 < ... <
j_{k+1}; the closed segments [0,j_1], [j_1,j_2], ..., [j_{k+1}, n]
are handed alternately to the first and second argument, adjacent
segments sharing their endpoint.  Only decompositions in which the
two arguments receive exactly p+1 and q+1 vertices contribute.

The sign of a term is the parity of the shuffle taking the sequence
"first argument's full intervals, then the second's intervals with
the shared endpoints removed" to the natural order 0..n.  This is a
literal simulation of the verbal rule; the closed forms for k = 1,

    sum_i (-1)^((p-i)(q+1)) c(<0..i, q+i..p+q-1>) d(<i..q+i>),

and for k = 2 (sign (-1)^((p-i1)(i2-i1-1))) are recovered as test
oracles rather than being hardcoded.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .simplicial import Cochain, StandardComplex, check_simplex


def _inversion_parity(seq) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def cup_k_terms(p: int, q: int, k: int):
    """All (sign, left_positions, right_positions) terms of cup-k.

    Positions refer to indices 0..p+q-k within the target simplex.
    Deterministic order: lexicographic in the alternation points.
    """
    if p < 0 or q < 0:
        raise ValueError("cochain degrees must be non-negative")
    if k < 0 or k > min(p, q):
        raise ValueError(f"cup-{k} undefined for degrees ({p}, {q})")
    n = p + q - k
    terms = []
    for pts in combinations(range(n + 1), k + 1):
        cuts = (0,) + tuple(pts) + (n,)
        left, right, shaved = [], [], []
        for t in range(k + 2):
            a, b = cuts[t], cuts[t + 1]
            if t % 2 == 0:
                left.extend(range(a, b + 1))
            else:
                right.extend(range(a, b + 1))
                # Shared endpoints stay with the left intervals; the
                # final segment keeps its free right end.
                hi = b - 1 if t + 1 < k + 2 else b
                shaved.extend(range(a + 1, hi + 1))
        if (len(left), len(right)) == (p + 1, q + 1):
            terms.append((_inversion_parity(left + shaved),
                          tuple(left), tuple(right)))
    return tuple(terms)


def cup_k_value(c: Cochain, d: Cochain, k: int, s) -> int:
    """Value of (c cup_k d) on the simplex s, as an integer lift."""
    s = check_simplex(s)
    p, q = c.degree, d.degree
    if len(s) != p + q - k + 1:
        raise ValueError(f"simplex {s} has wrong size for cup-{k} "
                         f"of degrees ({p}, {q})")
    total = 0
    for sign, left, right in cup_k_terms(p, q, k):
        cv = c.value(tuple(s[i] for i in left))
        if not cv:
            continue
        dv = d.value(tuple(s[i] for i in right))
        if dv:
            total += sign * cv * dv
    return total


def cup_value(c: Cochain, d: Cochain, s) -> int:
    """Front-face times back-face; the plain cup product on s."""
    return cup_k_value(c, d, 0, s)


def cup_k_cochain(c: Cochain, d: Cochain, k: int,
                  complex: StandardComplex) -> Cochain:
    """(c cup_k d) as a cochain on every admissible simplex of complex."""
    if c.modulus != d.modulus:
        raise ValueError("modulus mismatch")
    degree = c.degree + d.degree - k
    values = {}
    for s in complex.simplices(degree):
        v = cup_k_value(c, d, k, s)
        if v:
            values[s] = v
    return Cochain(degree, values, c.modulus)


def cup_cochain(c: Cochain, d: Cochain, complex: StandardComplex) -> Cochain:
    return cup_k_cochain(c, d, 0, complex)


def leibniz_defect(c: Cochain, d: Cochain, i: int,
                   complex: StandardComplex) -> Cochain:
    """Defect of the coboundary recursion for cup-i; identically zero.

    delta(c cup_i d) - delta c cup_i d - (-1)^p c cup_i delta d
    - (-1)^(p+q-i) c cup_(i-1) d - (-1)^(pq+p+q) d cup_(i-1) c,
    where cup_(-1) is the zero operation.
    """
    if i < 0:
        raise ValueError("cup index must be non-negative")
    p, q = c.degree, d.degree
    dc = c.coboundary(complex)
    dd = d.coboundary(complex)
    out = cup_k_cochain(c, d, i, complex).coboundary(complex)
    out = out - cup_k_cochain(dc, d, i, complex)
    out = out - cup_k_cochain(c, dd, i, complex).scale(-1 if p % 2 else 1)
    if i >= 1 and i - 1 <= min(p, q):
        sign = -1 if (p + q - i) % 2 else 1
        out = out - cup_k_cochain(c, d, i - 1, complex).scale(sign)
        sign = -1 if (p * q + p + q) % 2 else 1
        out = out - cup_k_cochain(d, c, i - 1, complex).scale(sign)
    return out
