"""Finite distributive lattices with bottom.

Lattices are built either from an explicit order (join/meet tables are
computed and cross-checked as least upper / greatest lower bounds) or as
the lattice of down-sets of a poset (elements are tuples of member ids,
join is union, meet is intersection, bottom is the empty down-set).

The distributivity check can be switched off to admit non-distributive
tables as negative fixtures for the zero-distributivity test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError
from .posets import ElementId, FinitePoset, all_down_sets


class FiniteDistributiveLattice:
    """A finite lattice with least element, join/meet given by tables."""

    __slots__ = ("poset", "elements", "bottom", "top", "_join", "_meet")

    def __init__(self, poset: FinitePoset, check_distributive: bool = True):
        n = len(poset)
        if n == 0:
            raise InputError("a lattice needs at least one element")
        self.poset = poset
        self.elements = poset.elements
        join = [[None] * n for _ in range(n)]
        meet = [[None] * n for _ in range(n)]
        le = poset._le
        for i in range(n):
            for j in range(n):
                ubs = [k for k in range(n) if le[i][k] and le[j][k]]
                lub = [k for k in ubs if all(le[k][m] for m in ubs)]
                if len(lub) != 1:
                    raise InputError(
                        f"no least upper bound for "
                        f"{poset.elements[i]!r}, {poset.elements[j]!r}")
                join[i][j] = lub[0]
                lbs = [k for k in range(n) if le[k][i] and le[k][j]]
                glb = [k for k in lbs if all(le[m][k] for m in lbs)]
                if len(glb) != 1:
                    raise InputError(
                        f"no greatest lower bound for "
                        f"{poset.elements[i]!r}, {poset.elements[j]!r}")
                meet[i][j] = glb[0]
        self._join = tuple(tuple(r) for r in join)
        self._meet = tuple(tuple(r) for r in meet)
        bottoms = [i for i in range(n) if all(le[i][j] for j in range(n))]
        if len(bottoms) != 1:
            raise InputError("no least element")
        self.bottom = poset.elements[bottoms[0]]
        tops = [i for i in range(n) if all(le[j][i] for j in range(n))]
        self.top = poset.elements[tops[0]]
        if check_distributive:
            bad = self._distributivity_failure()
            if bad is not None:
                raise InputError(f"lattice is not distributive at {bad!r}")

    def _distributivity_failure(self) -> Optional[tuple]:
        n = len(self.elements)
        jn, mt = self._join, self._meet
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if mt[i][jn[j][k]] != jn[mt[i][j]][mt[i][k]]:
                        return (self.elements[i], self.elements[j],
                                self.elements[k])
        return None

    @property
    def is_distributive(self) -> bool:
        return self._distributivity_failure() is None

    def idx(self, x: ElementId) -> int:
        return self.poset.index(x)

    def leq(self, a: ElementId, b: ElementId) -> bool:
        return self.poset.leq(a, b)

    def join(self, a: ElementId, b: ElementId) -> ElementId:
        return self.elements[self._join[self.idx(a)][self.idx(b)]]

    def meet(self, a: ElementId, b: ElementId) -> ElementId:
        return self.elements[self._meet[self.idx(a)][self.idx(b)]]

    def join_all(self, xs: Iterable[ElementId]) -> ElementId:
        acc = self.bottom
        for x in xs:
            acc = self.join(acc, x)
        return acc

    def meet_all(self, xs: Iterable[ElementId], start: ElementId) -> ElementId:
        acc = start
        for x in xs:
            acc = self.meet(acc, x)
        return acc

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteDistributiveLattice({len(self.elements)} elements)"


def lattice_from_poset(elements: Sequence[ElementId], relation: Iterable[tuple],
                       check_distributive: bool = True) -> FiniteDistributiveLattice:
    return FiniteDistributiveLattice(FinitePoset(elements, relation),
                                     check_distributive=check_distributive)


def chain_lattice(n: int) -> FiniteDistributiveLattice:
    return FiniteDistributiveLattice(FinitePoset.chain(n))


def lattice_from_downsets(J: FinitePoset) -> FiniteDistributiveLattice:
    """The distributive lattice of down-sets of J, ordered by inclusion.

    Element ids are tuples of member ids in J's canonical order, so the
    bottom is the empty tuple.
    """
    downs = all_down_sets(J)
    key = {e: i for i, e in enumerate(J.elements)}
    ids = [tuple(sorted(S, key=key.get)) for S in downs]
    sets = {i: S for i, S in zip(ids, downs)}
    rel = [(a, b) for a in ids for b in ids if sets[a] <= sets[b]]
    return FiniteDistributiveLattice(FinitePoset(ids, rel))


# ---------------------------------------------------------------------------
# Structural checks
# ---------------------------------------------------------------------------

def is_zero_distributive(D: FiniteDistributiveLattice) -> tuple:
    """Whether x∧z = y∧z = 0 always implies (x∨y)∧z = 0.

    Returns (True, None) or (False, (x, y, z)) for the first failing
    triple in canonical order.
    """
    bot = D.idx(D.bottom)
    n = len(D)
    jn, mt = D._join, D._meet
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if (mt[i][k] == bot and mt[j][k] == bot
                        and mt[jn[i][j]][k] != bot):
                    return (False, (D.elements[i], D.elements[j],
                                    D.elements[k]))
    return (True, None)


def is_completely_normal(D: FiniteDistributiveLattice) -> tuple:
    """Whether every pair a, b admits x, y with
    a∨b = a∨y = x∨b and x∧y = 0.

    Returns (True, None) or (False, (a, b)) for the first pair with no
    such x, y.  Comparable pairs always succeed (take x or y to be 0).
    """
    n = len(D)
    le = D.poset._le
    jn, mt = D._join, D._meet
    bot = D.idx(D.bottom)
    for i in range(n):
        for j in range(n):
            if le[i][j] or le[j][i]:
                continue
            t = jn[i][j]
            ok = False
            for x in range(n):
                if jn[x][j] != t:
                    continue
                for y in range(n):
                    if jn[i][y] == t and mt[x][y] == bot:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return (False, (D.elements[i], D.elements[j]))
    return (True, None)


# ---------------------------------------------------------------------------
# Prime ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeIdealPoset:
    """Prime ideals of a lattice, ordered by inclusion.

    ``poset`` has one element per prime ideal; its id is the tuple of
    ideal members in the host lattice's canonical order.
    """
    ideals: tuple          # tuple of frozensets
    poset: FinitePoset


def prime_ideal_poset(D: FiniteDistributiveLattice) -> PrimeIdealPoset:
    """All prime ideals of D: nonempty proper down-sets closed under join
    such that x∧y ∈ I implies x ∈ I or y ∈ I."""
    els = D.elements
    primes = []
    for S in all_down_sets(D.poset):
        if not S or len(S) == len(els):
            continue
        if any(D.join(a, b) not in S for a in S for b in S):
            continue
        outside = [x for x in els if x not in S]
        if any(D.meet(a, b) in S for a in outside for b in outside):
            continue
        primes.append(S)
    key = {e: i for i, e in enumerate(els)}
    ids = [tuple(sorted(S, key=key.get)) for S in primes]
    sets = dict(zip(ids, primes))
    rel = [(a, b) for a in ids for b in ids if sets[a] <= sets[b]]
    return PrimeIdealPoset(tuple(primes), FinitePoset(ids, rel))


def is_root_system(p) -> tuple:
    """Whether every principal up-set of the poset is a chain.

    Accepts a FinitePoset or a PrimeIdealPoset.  Returns (True, None) or
    (False, x) for the first element whose up-set contains an
    incomparable pair.
    """
    P = p.poset if isinstance(p, PrimeIdealPoset) else p
    for x in P.elements:
        up = sorted(P.up_set([x]), key=P.index)
        for a in up:
            for b in up:
                if not P.comparable(a, b):
                    return (False, x)
    return (True, None)
