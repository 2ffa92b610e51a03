"""Deviations on finite distributive lattices: verification, property
sweeps, and backtracking search.

A deviation is a total binary map d on the lattice with

    axiom 1:  x <= y ∨ d(x,y)          for all x, y
    axiom 2:  d(x,y) ∧ d(y,x) = 0      for all x, y

Deviations are represented as plain dicts mapping ordered id pairs to
ids of the host lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

from .errors import InputError
from .lattices import FiniteDistributiveLattice
from .posets import ElementId

DeviationMap = Dict[Tuple[ElementId, ElementId], ElementId]


@dataclass(frozen=True)
class DeviationViolation:
    axiom: int                 # 1 or 2
    pair: tuple


def check_deviation(D: FiniteDistributiveLattice,
                    d: DeviationMap) -> Optional[DeviationViolation]:
    """None if d is a deviation on D, else the first violated axiom.

    Pairs are scanned in canonical order; within a pair, axiom 1 is
    checked before axiom 2.
    """
    for x in D.elements:
        for y in D.elements:
            if (x, y) not in d:
                raise InputError(f"map not total: missing pair {(x, y)!r}")
            v = d[(x, y)]
            if v not in D.poset:
                raise InputError(f"value {v!r} at {(x, y)!r} outside carrier")
    for x in D.elements:
        for y in D.elements:
            if not D.leq(x, D.join(y, d[(x, y)])):
                return DeviationViolation(1, (x, y))
            if D.meet(d[(x, y)], d[(y, x)]) != D.bottom:
                return DeviationViolation(2, (x, y))
    return None


@dataclass(frozen=True)
class PropertyReport:
    """Monotonicity/Cevian flags of a deviation, with first counterexamples.

    Counterexample shapes (canonical-order minimal):
      left_isotone:   (x, x', y)  with x <= x' but d(x,y) not<= d(x',y)
      right_antitone: (x, y, y')  with y <= y' but d(x,y') not<= d(x,y)
      cevian:         (x, y, z)   with d(x,z) not<= d(x,y) ∨ d(y,z)
    """
    left_isotone: bool
    right_antitone: bool
    cevian: bool
    left_isotone_ce: Optional[tuple] = None
    right_antitone_ce: Optional[tuple] = None
    cevian_ce: Optional[tuple] = None

    @property
    def monotone(self) -> bool:
        return self.left_isotone and self.right_antitone


def deviation_properties(D: FiniteDistributiveLattice,
                         d: DeviationMap) -> PropertyReport:
    els = D.elements
    li_ce = None
    for x in els:
        for x2 in els:
            if li_ce:
                break
            if not D.leq(x, x2):
                continue
            for y in els:
                if not D.leq(d[(x, y)], d[(x2, y)]):
                    li_ce = (x, x2, y)
                    break
        if li_ce:
            break
    ra_ce = None
    for x in els:
        for y in els:
            if ra_ce:
                break
            for y2 in els:
                if D.leq(y, y2) and not D.leq(d[(x, y2)], d[(x, y)]):
                    ra_ce = (x, y, y2)
                    break
        if ra_ce:
            break
    cev_ce = None
    for x in els:
        for y in els:
            if cev_ce:
                break
            for z in els:
                if not D.leq(d[(x, z)], D.join(d[(x, y)], d[(y, z)])):
                    cev_ce = (x, y, z)
                    break
        if cev_ce:
            break
    return PropertyReport(li_ce is None, ra_ce is None, cev_ce is None,
                          li_ce, ra_ce, cev_ce)


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def _candidates(D: FiniteDistributiveLattice, x, y) -> list:
    """Values c with x <= y ∨ c, in canonical order (axiom-1 closure;
    a filter with a unique minimum since D is distributive)."""
    return [c for c in D.elements if D.leq(x, D.join(y, c))]


def _block_feasible(D: FiniteDistributiveLattice, x, y) -> bool:
    """Whether the mirrored pair {(x,y), (y,x)} admits axiom-respecting
    values at all.  Infeasibility here dooms any full table."""
    for u in _candidates(D, x, y):
        for v in _candidates(D, y, x):
            if D.meet(u, v) == D.bottom:
                return True
    return False


def _solutions(D: FiniteDistributiveLattice, require_monotone: bool,
               require_cevian: bool) -> Iterator[DeviationMap]:
    els = D.elements
    pairs = [(x, y) for x in els for y in els]
    for x in els:
        for y in els:
            if not _block_feasible(D, x, y):
                return

    d: DeviationMap = {}

    def consistent(x, y, c) -> bool:
        if x == y:                      # axiom 2 forces d(x,x) = c ∧ c = 0
            if c != D.bottom:
                return False
        elif (y, x) in d and D.meet(c, d[(y, x)]) != D.bottom:
            return False
        if require_monotone:
            for (p, q), v in d.items():
                if D.leq(p, x) and D.leq(y, q) and not D.leq(v, c):
                    return False
                if D.leq(x, p) and D.leq(q, y) and not D.leq(c, v):
                    return False
        if require_cevian:
            # triples all of whose pairs are decided once (x,y) is set
            for b in els:
                if (x, b) in d and (b, y) in d:
                    if not D.leq(c, D.join(d[(x, b)], d[(b, y)])):
                        return False
            for z in els:
                if (x, z) in d and (y, z) in d:
                    if not D.leq(d[(x, z)], D.join(c, d[(y, z)])):
                        return False
            for a in els:
                if (a, y) in d and (a, x) in d:
                    if not D.leq(d[(a, y)], D.join(d[(a, x)], c)):
                        return False
        return True

    def extend(k: int) -> Iterator[DeviationMap]:
        if k == len(pairs):
            yield dict(d)
            return
        x, y = pairs[k]
        for c in _candidates(D, x, y):
            if consistent(x, y, c):
                d[(x, y)] = c
                yield from extend(k + 1)
                del d[(x, y)]

    yield from extend(0)


def _verify(D, d, require_monotone, require_cevian) -> bool:
    if check_deviation(D, d) is not None:
        return False
    rep = deviation_properties(D, d)
    if require_monotone and not rep.monotone:
        return False
    if require_cevian and not rep.cevian:
        return False
    return True


def search_deviation(D: FiniteDistributiveLattice,
                     require_monotone: bool = False,
                     require_cevian: bool = False) -> Optional[DeviationMap]:
    """First deviation in search order satisfying the requested flags,
    or None after exhaustion.

    Backtracks over ordered pairs in canonical order; candidates for a
    pair are tried in canonical order among values respecting axiom 1.
    Partial assignments are pruned by axiom 2 on the mirrored pair and by
    the requested properties restricted to decided pairs/triples.  The
    returned table is re-verified by a full sweep before being returned.
    """
    for d in _solutions(D, require_monotone, require_cevian):
        if _verify(D, d, require_monotone, require_cevian):
            return d
        raise AssertionError("search produced an inconsistent table")
    return None


def enumerate_deviations(D: FiniteDistributiveLattice,
                         limit: int) -> list:
    """Up to ``limit`` distinct deviations in search order (deterministic)."""
    out = []
    for d in _solutions(D, False, False):
        if check_deviation(D, d) is not None:
            raise AssertionError("search produced an inconsistent table")
        out.append(d)
        if len(out) >= limit:
            break
    return out
