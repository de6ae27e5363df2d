"""Surjection operad actions and cochain-level reduced powers.

A surjection word u: {1..k} -> {1..r} (non-degenerate: no equal
adjacent letters) acts on r cochains by summing over weakly
increasing cut tuples 0 = i_0 <= i_1 <= ... <= i_k = n.  Interval t
is the closed vertex range [i_{t-1}, i_t]; slot s receives the
concatenation mu_s of the intervals with u(t) = s.  Terms whose slots
fail to be simplices, or whose sizes do not match the input degrees,
drop out.

Signs follow the interval bookkeeping rule.  An interval is final
when its slot never recurs later, otherwise inner; its weight is
i_t - i_{t-1} for final intervals and one more for inner ones.  The
permutation sign sorts the intervals by slot (stably), charging
(-1)**(w1*w2) per adjacent swap of weights w1, w2; the position sign
charges (-1)**i_t for every inner interval.

The May-Steenrod elements psi(r)(e_n) are built by the literal
recursion psi(e_0) = (1,...,r), then alternately h*T and h*N, where
T = rho - 1 and N = 1 + rho + ... + rho^(r-1) for the cyclic letter
rotation rho, and h = s + i*s*p + ... + i^(r-1)*s*p^(r-1) is the
contraction built from the three elementary word maps.  Words that
become degenerate at any step are dropped.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import factorial

from .simplicial import Cochain, check_simplex


def check_surjection(u) -> tuple[int, ...]:
    """Validate a non-degenerate surjection word onto {1..max(u)}."""
    u = tuple(u)
    if not u:
        raise ValueError("empty surjection word")
    r = max(u)
    if set(u) != set(range(1, r + 1)):
        raise ValueError(f"word {u} is not surjective onto 1..{r}")
    if any(a == b for a, b in zip(u, u[1:])):
        raise ValueError(f"word {u} is degenerate")
    return u


def _nondegenerate(u):
    return all(a != b for a, b in zip(u, u[1:]))


def _rho(u, r):
    return tuple(v % r + 1 for v in u)


def _map_s(u):
    w = (1,) + u
    return w if _nondegenerate(w) else None


def _map_i(u):
    w = (1,) + tuple(v + 1 for v in u)
    return w if _nondegenerate(w) else None


def _map_p(u):
    if u.count(1) != 1:
        return None
    w = tuple(v - 1 for v in u if v != 1)
    if not w or not _nondegenerate(w):
        return None
    return w


def _add_term(acc, word, coeff):
    if word is None or coeff == 0:
        return
    c = acc.get(word, 0) + coeff
    if c:
        acc[word] = c
    else:
        acc.pop(word, None)


def op_T(terms, r):
    out = {}
    for u, c in terms.items():
        _add_term(out, _rho(u, r), c)
        _add_term(out, u, -c)
    return out


def op_N(terms, r):
    out = {}
    for u, c in terms.items():
        w = u
        for _ in range(r):
            _add_term(out, w, c)
            w = _rho(w, r)
    return out


def op_h(terms, r):
    out = {}
    for u, c in terms.items():
        w = u
        for j in range(r):
            # Term i^j * s * p^j; w already holds p^j(u).
            sw = _map_s(w)
            for _ in range(j):
                if sw is None:
                    break
                sw = _map_i(sw)
            _add_term(out, sw, c)
            w = _map_p(w)
            if w is None:
                break
    return out


_PSI_CACHE: dict[tuple[int, int], dict] = {}


def psi(r: int, n: int) -> dict:
    """The formal surjection sum psi(r)(e_n), as word -> coefficient."""
    if r < 2 or n < 0:
        raise ValueError("need r >= 2 and n >= 0")
    key = (r, n)
    if key not in _PSI_CACHE:
        if n == 0:
            out = {tuple(range(1, r + 1)): 1}
        elif n % 2:
            out = op_h(op_T(psi(r, n - 1), r), r)
        else:
            out = op_h(op_N(psi(r, n - 1), r), r)
        _PSI_CACHE[key] = out
    return dict(_PSI_CACHE[key])


def phi_terms(u, degrees):
    """Positional term list of phi(u) on inputs of the given degrees.

    Returns tuples (sign, slots) where slots[s] lists the vertex
    positions (inside the target simplex <0..n>) fed to input s+1.
    Deterministic order: lexicographic in the cut tuple.
    """
    u = check_surjection(u)
    k, r = len(u), max(u)
    degrees = tuple(degrees)
    if len(degrees) != r:
        raise ValueError(f"word {u} needs {r} inputs, got {len(degrees)}")
    n = sum(d + 1 for d in degrees) - k
    if n < 0:
        raise ValueError("negative output degree")
    final = [u[t] not in u[t + 1:] for t in range(k)]
    terms = []
    for interior in combinations_with_replacement(range(n + 1), k - 1):
        cuts = (0,) + interior + (n,)
        slots = [[] for _ in range(r)]
        for t in range(k):
            slots[u[t] - 1].extend(range(cuts[t], cuts[t + 1] + 1))
        if any(len(slot) != d + 1 for slot, d in zip(slots, degrees)):
            continue
        if any(a >= b_
               for slot in slots for a, b_ in zip(slot, slot[1:])):
            continue
        weights = [cuts[t + 1] - cuts[t] + (0 if final[t] else 1)
                   for t in range(k)]
        exp = 0
        for t1 in range(k):
            for t2 in range(t1 + 1, k):
                if u[t1] > u[t2]:
                    exp += weights[t1] * weights[t2]
        for t in range(k):
            if not final[t]:
                exp += cuts[t + 1]
        sign = -1 if exp % 2 else 1
        terms.append((sign, tuple(tuple(slot) for slot in slots)))
    return terms


def phi_apply(u, inputs, s) -> int:
    """Evaluate phi(u)(inputs...) on the simplex s, as an integer lift."""
    s = check_simplex(s)
    degrees = tuple(c.degree for c in inputs)
    total = 0
    for sign, slots in phi_terms(u, degrees):
        prod = sign
        for c, slot in zip(inputs, slots):
            prod *= c.value(tuple(s[i] for i in slot))
            if not prod:
                break
        total += prod
    return total


def _check_prime(r):
    if r < 2 or any(r % j == 0 for j in range(2, r)):
        raise ValueError(f"{r} is not prime")


def d_terms(r: int, i: int, q: int):
    """Combined positional term list of D^r_i on a degree-q input.

    Concatenates phi term lists over the words of psi(r)(e_i), in the
    listing order of the words (sorted), scaling by word coefficients.
    """
    _check_prime(r)
    out = []
    for u in sorted(psi(r, i)):
        coeff = psi(r, i)[u]
        for sign, slots in phi_terms(u, (q,) * r):
            out.append((coeff * sign, slots))
    return out


def d_product(r: int, i: int, B: Cochain, s) -> int:
    """D^r_i(B)(s) = phi(psi(r)(e_i))(B, ..., B)(s), as an integer lift."""
    _check_prime(r)
    s = check_simplex(s)
    total = 0
    for u, coeff in psi(r, i).items():
        total += coeff * phi_apply(u, (B,) * r, s)
    return total


def nu(q: int, r: int) -> int:
    """Normalization (-1)**(q(q-1)m/2) * (m!)**q with m = (r-1)/2."""
    m = (r - 1) // 2
    sign = -1 if (q * (q - 1) * m // 2) % 2 else 1
    return sign * factorial(m) ** q


class ReducedPower:
    """Per-simplex evaluator of P^s(B) at the cochain level."""

    __slots__ = ("B", "r", "s", "q", "subscript", "coefficient", "degree")

    def __init__(self, B: Cochain, r: int, s: int):
        _check_prime(r)
        if r % 2 == 0:
            raise ValueError("reduced powers need an odd prime")
        q = B.degree
        subscript = (q - 2 * s) * (r - 1)
        if subscript < 0:
            raise ValueError(f"P^{s} vanishes on degree {q}: "
                             "negative cup-(r,i) subscript")
        self.B = B
        self.r = r
        self.s = s
        self.q = q
        self.subscript = subscript
        self.coefficient = (-1 if s % 2 else 1) * nu(q, r)
        self.degree = q + 2 * s * (r - 1)

    def value(self, simplex) -> int:
        return self.coefficient * d_product(self.r, self.subscript,
                                            self.B, simplex)


def reduced_power(B: Cochain, r: int, s: int) -> ReducedPower:
    return ReducedPower(B, r, s)


def p1_terms(q: int):
    """Signed positional term list of P^1(B_q) at r = 3.

    The global sign (-1)**(q(q-1)/2 + 1) is folded into every term.
    """
    if q < 2:
        raise ValueError("P^1 at r = 3 needs input degree >= 2")
    g = -1 if (q * (q - 1) // 2 + 1) % 2 else 1
    return [(g * coeff, slots) for coeff, slots in d_terms(3, 2 * (q - 2), q)]
