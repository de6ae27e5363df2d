#!/usr/bin/env python3
"""Exchange two particles through a T-junction and read off a semion.

The six-step exchange word hops two identical particles around the
three legs of a T so that they end up swapped and swapped back.  Under
the even quadratic action at N=2 the accumulated phase is exactly 1/4
of a turn: the semion.  Repeating the exchange four times returns to a
trivial total, so the phase has exact order four.
"""

from chainphase.actions import get_action
from chainphase.process import TJUNCTION, evaluate, trace
from chainphase.simplicial import Chain

print("The exchange word, rightmost operator first:")
for sign, cell in reversed(TJUNCTION):
    print(f"  {'+' if sign > 0 else '-'}U{cell}")

print()
print("Particle positions along the way (starting from two particles):")
initial = Chain(0, {(1,): 1, (2,): 1})
for (sign, cell), state in zip(TJUNCTION, trace(TJUNCTION, initial)[1:]):
    print(f"  {'+' if sign > 0 else '-'}{cell} -> {dict(state.items())}")

print()
semion = get_action("particle-quad-even", 2)
phase = evaluate(TJUNCTION, semion)
print("Exchange phase under the even quadratic action at N=2:", phase)
print("Four exchanges in a row:", evaluate(TJUNCTION * 4, semion),
      "(order four, as a semion must)")

print()
print("The same word under other quadratic actions:")
for name, N in [("particle-quad", 3), ("particle-quad", 5),
                ("particle-quad-even", 4)]:
    print(f"  {name:18s} N={N}:  {evaluate(TJUNCTION, get_action(name, N))}")
