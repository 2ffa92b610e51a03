"""Principal-ideal calculus for vector-lattice terms.

Terms over generators g0..g{n-1} and the unit denote piecewise-linear
functions on ℚⁿ; the ideal generated by |g| is below the ideal of |h|
exactly when h vanishes wherever g does.  The deviation
(<g>, <h>) -> <(g-h)^+> is Cevian, and relative to the bounded region
Ω (0 <= u_i <= 1, u_j <= 2 u_k for 0 < j < k) the scaled-difference
ideals <(g0 - c*ga)^+> and <(c*ga - g0)^+> behave as pseudocomplements,
which is what the inclusion-failure ladders below exploit.
"""

from fractions import Fraction

from latdev import (cevian_dev, check_cevian_triple, evaluate, gen,
                    ideal_join, ideal_leq, noiso_probe, omega_extend,
                    parse_term, pseudocomplement_probe, zero_set)

g0, g1 = gen(0), gen(1)

t = parse_term("(g0 - 2*g1)^+ \\/ one")
print("t(5, 1) =", evaluate(t, (5, 1)))

# zero-set containment decides the ideal order, with witnesses
print("<|g0|> <= <|g0| v |g1|>:", ideal_leq(abs(g0), ideal_join(g0, g1), 2))
ok, w = ideal_leq(ideal_join(g0, g1), abs(g0), 2)
print("converse fails at:", w)

# the difference deviation and its Cevian triangle inequality
print("dev(g0, 0) zero set:",
      [list(map(str, c.atoms)) for c in zero_set(cevian_dev(g0, 0 * g0), 1).cells])
print("Cevian triple (g0, g1, g0+g1):",
      check_cevian_triple(g0, g1, g0 + g1, 2))

# the bounded region: completing a partial point
print("omega completion of u2 = 1/2 in dim 3:",
      omega_extend({2: Fraction(1, 2)}, 3))

# pseudocomplement behavior of the split pair, probed on sample terms
rep = pseudocomplement_probe(3, 1, Fraction(1, 2),
                             [g0.pos(), (g1 - g0).pos(), abs(g0 - 2 * g1)])
for e in rep.entries:
    print("probe", e.term, "-> counterexample:", e.is_counterexample)

# the anchor inclusion failure: <(4 g0 - g1)^+> is NOT below
# <(2 g0 - g1)^+> relative to Ω, witnessed at (1/2, 1)
rep = noiso_probe(k=3, m=1, n_coeff=2)
print("primary ladder inclusion holds?", not rep.primary.inclusion_false,
      "| anchor:", rep.primary.anchor_point)
print("dual ladder reproduced too:", rep.reproduced)
