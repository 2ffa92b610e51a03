"""Exact semilinear sets over the rationals.

Finite unions of cells (conjunctions of strict/non-strict/equality
linear atoms) are closed under intersection, complement and projection,
and every question reduces to emptiness via Fourier-Motzkin elimination
with exact arithmetic.  Shadows on a variable support X are the
smallest X-definable superset and the largest X-definable subset.
"""

from latdev.semilinear import (complement, eliminate, includes, interpolant,
                               lower_shadow_set, parse_set, same_set,
                               upper_shadow_set, witness_point)

quadrant = parse_set([["x0 > 0", "x1 > 0"]], 2)
half = parse_set([["x0 > 0"]], 2)

print("quadrant included in half-plane:", includes(half, quadrant))
ok, w = includes(quadrant, half)
print("converse fails with witness:", ok, w)

# Projection: does some x1 work?  (yes, for any x0 > 0)
print("eliminate x1:", [list(map(str, c.atoms))
                        for c in eliminate(quadrant, [1]).cells])

# Complement is exact, including strictness bookkeeping.
print("complement of half-plane:",
      [list(map(str, c.atoms)) for c in complement(half).cells])

# Shadows on the support {x0}: the upper shadow of the open quadrant is
# the open half-plane; its lower shadow is empty (no x0-definable set
# fits inside: every vertical line escapes below).
up = upper_shadow_set(quadrant, [0])
lo = lower_shadow_set(quadrant, [0])
print("upper shadow == half-plane:", same_set(up, half))
print("lower shadow empty:", lo.cells == ())

# The interpolation step: with U over {0,1}, V over {0,2} and U ⊆ V,
# the upper shadow of U on the common support sits between them.
U = parse_set([["x0 > 0", "x1 - x0 > 0"]], 3)
Vv = parse_set([["2*x0 > -1"]], 3)
W = interpolant(U, [0, 1], Vv, [0, 2])
print("interpolant:", [list(map(str, c.atoms)) for c in W.cells])

# Witness extraction back-substitutes through the elimination tower.
cell = parse_set([["x0 > 0", "x1 - 2*x0 > 0", "1 - x1 >= 0"]], 2).cells[0]
print("witness for a thin wedge:", witness_point(cell))
