"""Boundary terms of a bulk action: cones, cylinders, local densities.

The two geometric constructions both extend data given on a spatial
simplex s into one extra dimension and evaluate a bulk action there:

* ``cone_phi``: extend the boundary configuration b by zero to the
  cone over s (apex appended as a new largest vertex) and evaluate the
  action of its coboundary on the cone.
* ``cylinder_theta``: pull a bulk cochain B back to the prism s x I,
  add the coboundary of the hopping cochain h placed on the bottom
  copy of s, and integrate the action over the prism's top cells.

The local densities ``boundary_symmetry_phase`` and
``explicit_hopping_phase`` are specific to the six-dimensional cubic
theory, where the boundary degrees of freedom have degree one.
"""

from __future__ import annotations

from itertools import combinations

from .actions import ActionFunctional
from .simplicial import (Cochain, Phase, StandardComplex, check_simplex,
                         cylinder_project)


def delta_on(b: Cochain, s) -> Cochain:
    """Coboundary of b on the faces of one simplex, over the integers.

    The result has modulus 0 regardless of b's modulus: it is the
    coboundary of the canonical integer lift, which is what every bulk
    functional consumes.
    """
    s = check_simplex(s)
    values = {}
    for t in combinations(s, b.degree + 2):
        v = b.on_boundary(t)
        if v:
            values[t] = v
    return Cochain(b.degree + 1, values, 0)


def cone_phi(action: ActionFunctional, b: Cochain, s) -> Phase:
    """Action of delta(b extended by zero) on the cone over s."""
    s = check_simplex(s)
    if len(s) != action.spacetime:
        raise ValueError(
            f"cone base must be a {action.spacetime - 1}-simplex, got {s}")
    if b.degree != action.degree - 1:
        raise ValueError(
            f"boundary configuration must have degree {action.degree - 1}")
    apex = s[-1] + 1
    cone = s + (apex,)
    values = {}
    for t in combinations(cone, action.degree + 1):
        if apex in t:
            # Faces through the apex carry no b; only dropping the
            # apex (the last vertex) contributes.
            v = b.value(t[:-1]) if len(t) % 2 else -b.value(t[:-1])
        else:
            v = b.on_boundary(t)
        if v:
            values[t] = v
    return action.phase(Cochain(action.degree, values, 0), cone)


def cylinder_theta(action: ActionFunctional, B: Cochain, h: Cochain,
                   s) -> Phase:
    """Action of (pullback of B) + delta(h on the bottom) over s x I."""
    s = check_simplex(s)
    k = action.spacetime - 1
    if len(s) != k + 1:
        raise ValueError(f"cylinder base must be a {k}-simplex, got {s}")
    if B.degree != action.degree or h.degree != action.degree - 1:
        raise ValueError("cochain degrees do not match the action")
    cyl = StandardComplex.cylinder(k)
    pos = {v: i for i, v in enumerate(s)}

    bottom = {}
    for t, c in h.items():
        if all(v in pos for v in t):
            bottom[tuple(2 * pos[v] for v in t)] = c
    delta_h = Cochain(h.degree, bottom, 0).coboundary(cyl)

    values = {}
    for t in cyl.simplices(action.degree):
        v = delta_h.value(t)
        base = cylinder_project(t)
        if base is not None:
            v += B.value(tuple(s[i] for i in base))
        if v:
            values[t] = v
    G = Cochain(action.degree, values, 0)

    total = 0
    for cell, sign in cyl.top_cells:
        total += sign * action.density(G, cell)
    return Phase(total, action.divisor)


def modified_excitation_phase(action: ActionFunctional, b: Cochain,
                              h: Cochain, s) -> Phase:
    """Phase attached to one hop: minus Theta of (coboundary of b, h)."""
    return -cylinder_theta(action, delta_on(b, s), h, s)


def boundary_action_phase(b: Cochain, N: int, s) -> Phase:
    """Density of the cubic theory's explicit boundary action on a
    5-simplex: (1/N) b cup delta(b) cup delta(b)."""
    s = check_simplex(s)
    if len(s) != 6:
        raise ValueError(f"expected a 5-simplex, got {s}")
    v = (b.value((s[0], s[1]))
         * b.on_boundary((s[1], s[2], s[3]))
         * b.on_boundary((s[3], s[4], s[5])))
    return Phase(v, N)


def boundary_symmetry_phase(b: Cochain, eps: Cochain, N: int, s) -> Phase:
    """Density of the cubic theory's boundary symmetry defect on a
    4-simplex: (1/N) eps cup delta(b) cup delta(b)."""
    s = check_simplex(s)
    if len(s) != 5:
        raise ValueError(f"expected a 4-simplex, got {s}")
    v = (eps.value(s[:1])
         * b.on_boundary((s[0], s[1], s[2]))
         * b.on_boundary((s[2], s[3], s[4])))
    return Phase(v, N)


def explicit_hopping_phase(b: Cochain, h: Cochain, N: int, s) -> Phase:
    """Density of the cubic theory's hopping counterterm on a 4-simplex:
    (1/N) b cup (h cup delta(b) + delta(b) cup h + h cup delta(h))."""
    s = check_simplex(s)
    if len(s) != 5:
        raise ValueError(f"expected a 4-simplex, got {s}")
    inner = (h.value((s[1], s[2])) * b.on_boundary((s[2], s[3], s[4]))
             + b.on_boundary((s[1], s[2], s[3])) * h.value((s[3], s[4]))
             + h.value((s[1], s[2])) * h.on_boundary((s[2], s[3], s[4])))
    return Phase(b.value((s[0], s[1])) * inner, N)


def coboundary_phase(density, s) -> Phase:
    """Alternating sum of a 4-simplex density over the faces of s.

    ``density`` maps a simplex to a Phase; this evaluates its formal
    coboundary on the simplex s one degree up.
    """
    s = check_simplex(s)
    total = Phase(0, 1)
    for i in range(len(s)):
        face = s[:i] + s[i + 1:]
        p = density(face)
        total = total + p if i % 2 == 0 else total - p
    return total
