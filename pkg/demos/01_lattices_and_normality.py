"""Build small distributive lattices and test complete normality.

A distributive lattice with 0 is completely normal when every pair a, b
splits as a∨b = a∨y = x∨b with x∧y = 0.  The property can fail already
at five elements, and it is equivalent to the prime ideals forming a
root system (every principal up-set a chain).
"""

from latdev import (FinitePoset, is_completely_normal, is_root_system,
                    is_zero_distributive, lattice_from_downsets,
                    prime_ideal_poset)

# The lattice of down-sets of a poset is always distributive.  Down-sets
# of a two-element antichain give the 2x2 square.
square = lattice_from_downsets(FinitePoset.antichain(["p", "q"]))
print("square:", square.elements)
print("  completely normal:", is_completely_normal(square))

# Down-sets of the "wedge" c < a, c < b give the five-element lattice
# 0 < c < {a, b} < 1, the smallest completely-normality failure:
# whatever x, y satisfy the join equations, x ∧ y >= c > 0.
wedge = FinitePoset(["c", "a", "b"], [("c", "a"), ("c", "b")])
five = lattice_from_downsets(wedge)
ok, pair = is_completely_normal(five)
print("five-element lattice completely normal:", ok, "witness pair:", pair)

# The equivalent spectral view: prime ideals under inclusion.
pip = prime_ideal_poset(five)
print("prime ideals:", [sorted(map(str, I)) for I in pip.ideals])
print("  root system:", is_root_system(pip))

pip2 = prime_ideal_poset(square)
print("square prime ideals:", len(pip2.ideals),
      "root system:", is_root_system(pip2))

# Zero-distributivity holds in every distributive lattice; it is the
# hypothesis under which disjointness survives the monotone adjustment.
print("five-element zero-distributive:", is_zero_distributive(five))
