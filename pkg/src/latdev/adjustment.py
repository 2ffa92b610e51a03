"""Monotone adjustment of a binary map along an enumeration.

Given a poset M, a distributive lattice D, a total map d: M×M -> D and an
enumeration of M (written ⊑ below), the *pair ordering* ⊴ compares the
one- and two-element subsets of M first by ⊑-maximum, then by ⊑-minimum.
Processing unordered pairs {a,b} in ⊴-ascending order, the adjustment
d' is defined by d'(a,b) = d'∧(a,b) ∨ d'∨(a,b) with

    d'∧(a,b) = d(a,b) ∧ ⋀ { d'(x,y) : {x,y} ⊴-below {a,b}, a <= x, y <= b }
    d'∨(a,b) =          ⋁ { d'(x,y) : {x,y} ⊴-below {a,b}, x <= a, b <= y }

(an empty meet leaves d'∧(a,b) = d(a,b); an empty join contributes the
lattice bottom).  The result is monotone — isotone in the first and
antitone in the second argument — and equals d iff d was already
monotone.  It depends on the chosen enumeration.

The default evaluation sweeps all ⊴-smaller pairs.  The shadow-based
path replaces the index sets by finite coinitial/cofinal subsets built
from the minimal shadows of a and b on their strict ⊑-prefixes; both
paths produce identical maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Tuple

from .errors import ContractError, InputError
from .lattices import FiniteDistributiveLattice
from .posets import ElementId, FinitePoset, check_enumeration, shadow


class PairOrderContext:
    """Total order ⊴ on the one- and two-element subsets of the base."""

    def __init__(self, base: Sequence[ElementId]):
        self.base = tuple(base)
        self.pos = {e: i for i, e in enumerate(self.base)}
        if len(self.pos) != len(self.base):
            raise InputError("base enumeration has duplicates")

    def key(self, s) -> tuple:
        """Sort key of a one- or two-element subset: (⊑-max, ⊑-min)."""
        ps = [self.pos[x] for x in s]
        if not 1 <= len(ps) <= 2:
            raise InputError("pair sets must have one or two elements")
        return (max(ps), min(ps))

    def blocks_ascending(self) -> list:
        """All unordered pairs (incl. singletons) in ⊴-ascending order,
        as (a, b) tuples with a ⊑ b."""
        out = []
        for j, b in enumerate(self.base):
            for i in range(j + 1):
                out.append((self.base[i], b))
        out.sort(key=lambda ab: self.key(set(ab)))
        return out


def pair_leq(ctx: PairOrderContext, s, t) -> bool:
    """s ⊴ t for one- or two-element subsets of the base."""
    s, t = set(s), set(t)
    for x in s | t:
        if x not in ctx.pos:
            raise InputError(f"element {x!r} not in base enumeration")
    return ctx.key(s) <= ctx.key(t)


@dataclass(frozen=True)
class TraceEntry:
    base_value: ElementId       # d(a,b)
    meetands: tuple             # index pairs (x,y) whose d' entered the meet
    joinands: tuple             # index pairs (x,y) whose d' entered the join


@dataclass(frozen=True)
class AdjustmentResult:
    d_prime: Mapping[Tuple[ElementId, ElementId], ElementId]
    trace: Mapping[Tuple[ElementId, ElementId], TraceEntry]


def prefix_shadows(M: FinitePoset, enumeration: Sequence[ElementId]) -> dict:
    """Minimal upper/lower shadows of each element on its strict prefix."""
    order = check_enumeration(M, enumeration)
    out = {}
    for i, x in enumerate(order):
        prefix = order[:i]
        out[x] = (shadow(M, prefix, x, "upper"),
                  shadow(M, prefix, x, "lower"))
    return out


def finitary_bounds(ctx: PairOrderContext, M: FinitePoset, shadows: Mapping,
                    d_prime_partial: Mapping, a: ElementId,
                    b: ElementId) -> tuple:
    """Finite coinitial/cofinal value sets replacing the full sweeps.

    With U_x / V_x the minimal upper/lower shadows of x on its strict
    prefix, returns

        A' = { d'(x,b) : x ∈ U_a } ∪ { d'(a,y) : y ∈ V_b }
        B' = { d'(x,b) : x ∈ V_a } ∪ { d'(a,y) : y ∈ U_b }

    The meet of A' equals the meet of the full meetand set and the join
    of B' equals the join of the full joinand set, provided d' is already
    monotone on all strictly ⊴-smaller pairs.
    """
    U_a, V_a = shadows[a]
    U_b, V_b = shadows[b]

    def fetch(x, y):
        if (x, y) not in d_prime_partial:
            raise ContractError(f"pair {(x, y)!r} not yet decided")
        return d_prime_partial[(x, y)]

    coinitial = (tuple(fetch(x, b) for x in sorted(U_a, key=M.index))
                 + tuple(fetch(a, y) for y in sorted(V_b, key=M.index)))
    cofinal = (tuple(fetch(x, b) for x in sorted(V_a, key=M.index))
               + tuple(fetch(a, y) for y in sorted(U_b, key=M.index)))
    return coinitial, cofinal


def monotone_adjustment(M: FinitePoset, D: FiniteDistributiveLattice,
                        d: Mapping, enumeration: Sequence[ElementId],
                        use_shadows: bool = False) -> AdjustmentResult:
    """The monotone adjustment of d along the given enumeration of M."""
    order = check_enumeration(M, enumeration)
    for x in M.elements:
        for y in M.elements:
            if (x, y) not in d:
                raise InputError(f"map not total: missing {(x, y)!r}")
            if d[(x, y)] not in D.poset:
                raise InputError(f"value {d[(x, y)]!r} outside lattice")
    ctx = PairOrderContext(order)
    shads = prefix_shadows(M, order) if use_shadows else None

    d_prime: dict = {}
    trace: dict = {}
    decided: list = []          # ordered pairs, in decision order

    def settle(a, b):
        if use_shadows:
            coin, cof = finitary_bounds(ctx, M, shads, d_prime, a, b)
            meet_val = D.meet_all(coin, start=d[(a, b)])
            join_val = D.join_all(cof)
            U_a, V_a = shads[a]
            U_b, V_b = shads[b]
            meet_idx = (tuple((x, b) for x in sorted(U_a, key=M.index))
                        + tuple((a, y) for y in sorted(V_b, key=M.index)))
            join_idx = (tuple((x, b) for x in sorted(V_a, key=M.index))
                        + tuple((a, y) for y in sorted(U_b, key=M.index)))
        else:
            meet_idx = tuple((x, y) for (x, y) in decided
                             if M.leq(a, x) and M.leq(y, b))
            join_idx = tuple((x, y) for (x, y) in decided
                             if M.leq(x, a) and M.leq(b, y))
            meet_val = D.meet_all((d_prime[p] for p in meet_idx),
                                  start=d[(a, b)])
            join_val = D.join_all(d_prime[p] for p in join_idx)
        d_prime[(a, b)] = D.join(meet_val, join_val)
        trace[(a, b)] = TraceEntry(d[(a, b)], meet_idx, join_idx)

    for (a, b) in ctx.blocks_ascending():
        settle(a, b)
        if a != b:
            settle(b, a)
        decided.append((a, b))
        if a != b:
            decided.append((b, a))
    return AdjustmentResult(d_prime, trace)
