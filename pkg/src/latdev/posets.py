"""Finite posets with shadows, separability witnesses, and strong amalgams.

Conventions used throughout:

* Element ids are opaque hashable values (strings, ints, tuples).  The
  *canonical order* of a poset is the order in which its elements were
  declared; every deterministic tiebreak (seed selection, intra-block
  ordering, candidate enumeration elsewhere in the package) refers to
  canonical positions.
* A *lower shadow* of ``x`` on a subset ``A`` is a subset ``U`` of ``A``
  with ``A ∩ ↓x = A ∩ ↓U``; upper shadows are defined dually.  On a
  finite poset the inclusion-smallest lower shadow is
  ``Max(A ∩ ↓x)`` and the smallest upper shadow is ``Min(A ∩ ↑x)``.
* A *separability witness* is a pair of maps ``(A, B)`` assigning to each
  element a finite set of upper bounds (``A``) and lower bounds (``B``)
  such that ``x <= y`` implies ``A(x) ∩ B(y) != ∅``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .errors import InputError

ElementId = Hashable


class FinitePoset:
    """An immutable finite partial order.

    ``relation`` is any set of pairs ``(a, b)`` meaning ``a <= b``; the
    reflexive closure is added automatically, but the relation as given
    must already be transitive and antisymmetric.  Use
    :meth:`from_relation` to close an arbitrary acyclic relation.
    """

    __slots__ = ("elements", "_idx", "_le", "_pairs")

    def __init__(self, elements: Sequence[ElementId], relation: Iterable[tuple]):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise InputError("duplicate element ids")
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        le = [[False] * n for _ in range(n)]
        for i in range(n):
            le[i][i] = True
        for a, b in relation:
            if a not in idx or b not in idx:
                raise InputError(f"relation mentions unknown element: {(a, b)!r}")
            le[idx[a]][idx[b]] = True
        for i in range(n):
            for j in range(n):
                if le[i][j] and le[j][i] and i != j:
                    raise InputError(
                        f"antisymmetry fails at {elements[i]!r}, {elements[j]!r}")
        for i in range(n):
            for j in range(n):
                if not le[i][j]:
                    continue
                for k in range(n):
                    if le[j][k] and not le[i][k]:
                        raise InputError(
                            "relation is not transitive: "
                            f"{elements[i]!r} <= {elements[j]!r} <= {elements[k]!r}")
        self.elements = elements
        self._idx = idx
        self._le = tuple(tuple(row) for row in le)
        self._pairs = frozenset(
            (elements[i], elements[j]) for i in range(n) for j in range(n) if le[i][j])

    @classmethod
    def from_relation(cls, elements: Sequence[ElementId],
                      pairs: Iterable[tuple]) -> "FinitePoset":
        """Build a poset from generating pairs, taking the reflexive-transitive
        closure first.  Raises :class:`InputError` if the closure has a cycle
        through distinct elements."""
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        if len(idx) != len(elements):
            raise InputError("duplicate element ids")
        n = len(elements)
        le = [[False] * n for _ in range(n)]
        for i in range(n):
            le[i][i] = True
        for a, b in pairs:
            if a not in idx or b not in idx:
                raise InputError(f"relation mentions unknown element: {(a, b)!r}")
            le[idx[a]][idx[b]] = True
        for k in range(n):  # Warshall
            lk = le[k]
            for i in range(n):
                if le[i][k]:
                    li = le[i]
                    for j in range(n):
                        if lk[j]:
                            li[j] = True
        closed = [(elements[i], elements[j])
                  for i in range(n) for j in range(n) if le[i][j]]
        return cls(elements, closed)

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        """The chain 0 < 1 < ... < n-1 on integer ids."""
        return cls(range(n), [(i, j) for i in range(n) for j in range(i, n)])

    @classmethod
    def antichain(cls, ids: Sequence[ElementId]) -> "FinitePoset":
        return cls(ids, [])

    # -- order queries -----------------------------------------------------

    def index(self, x: ElementId) -> int:
        try:
            return self._idx[x]
        except KeyError:
            raise InputError(f"unknown element: {x!r}") from None

    def __contains__(self, x) -> bool:
        return x in self._idx

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FinitePoset)
                and self.elements == other.elements
                and self._le == other._le)

    def __hash__(self) -> int:
        return hash((self.elements, self._le))

    def __repr__(self) -> str:
        return f"FinitePoset({len(self.elements)} elements)"

    def leq(self, a: ElementId, b: ElementId) -> bool:
        return self._le[self.index(a)][self.index(b)]

    def lt(self, a: ElementId, b: ElementId) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: ElementId, b: ElementId) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def down_set(self, A: Iterable[ElementId]) -> frozenset:
        """All x with x <= a for some a in A."""
        ids = [self.index(a) for a in A]
        return frozenset(e for j, e in enumerate(self.elements)
                         if any(self._le[j][i] for i in ids))

    def up_set(self, A: Iterable[ElementId]) -> frozenset:
        ids = [self.index(a) for a in A]
        return frozenset(e for j, e in enumerate(self.elements)
                         if any(self._le[i][j] for i in ids))

    def maximal(self, X: Iterable[ElementId]) -> frozenset:
        X = list(X)
        for x in X:
            self.index(x)
        return frozenset(x for x in X
                         if not any(self.lt(x, y) for y in X))

    def minimal(self, X: Iterable[ElementId]) -> frozenset:
        X = list(X)
        for x in X:
            self.index(x)
        return frozenset(x for x in X
                         if not any(self.lt(y, x) for y in X))

    def covers(self) -> list:
        """Cover pairs (a, b) with a < b and nothing strictly between."""
        out = []
        for a in self.elements:
            for b in self.elements:
                if self.lt(a, b) and not any(
                        self.lt(a, c) and self.lt(c, b) for c in self.elements):
                    out.append((a, b))
        return out

    # -- constructions -----------------------------------------------------

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.elements,
                           [(b, a) for (a, b) in self._pairs])

    def product(self, other: "FinitePoset") -> "FinitePoset":
        """Componentwise order on pairs; elements are tuples."""
        els = [(a, b) for a in self.elements for b in other.elements]
        rel = [((a, b), (c, d)) for (a, b) in els for (c, d) in els
               if self.leq(a, c) and other.leq(b, d)]
        return FinitePoset(els, rel)

    def with_top(self, top: ElementId) -> "FinitePoset":
        if top in self._idx:
            raise InputError(f"id {top!r} already present")
        rel = list(self._pairs) + [(x, top) for x in self.elements] + [(top, top)]
        return FinitePoset(self.elements + (top,), rel)

    def with_bottom(self, bottom: ElementId) -> "FinitePoset":
        if bottom in self._idx:
            raise InputError(f"id {bottom!r} already present")
        rel = list(self._pairs) + [(bottom, x) for x in self.elements]
        rel.append((bottom, bottom))
        return FinitePoset((bottom,) + self.elements, rel)

    def restrict(self, subset: Iterable[ElementId]) -> "FinitePoset":
        """Induced subposet, keeping the canonical element order."""
        sub = set(subset)
        for x in sub:
            self.index(x)
        els = [e for e in self.elements if e in sub]
        rel = [(a, b) for (a, b) in self._pairs if a in sub and b in sub]
        return FinitePoset(els, rel)

    def is_order_convex(self, subset: Iterable[ElementId]) -> bool:
        sub = set(subset)
        for x in sub:
            self.index(x)
        return all(not (self.leq(a, c) and self.leq(c, b)) or c in sub
                   for a in sub for b in sub for c in self.elements)


def all_down_sets(P: FinitePoset) -> list:
    """All down-sets of P as frozensets, ordered by (size, canonical members)."""
    found = {frozenset()}
    frontier = [frozenset()]
    strict_below = {
        x: P.down_set([x]) - {x} for x in P.elements
    }
    while frontier:
        nxt = []
        for X in frontier:
            for x in P.elements:
                if x not in X and strict_below[x] <= X:
                    Y = X | {x}
                    if Y not in found:
                        found.add(Y)
                        nxt.append(Y)
        frontier = nxt
    key = {e: i for i, e in enumerate(P.elements)}
    return sorted(found, key=lambda S: (len(S), sorted(key[e] for e in S)))


# ---------------------------------------------------------------------------
# Shadows
# ---------------------------------------------------------------------------

def shadow(P: FinitePoset, A: Iterable[ElementId], x: ElementId,
           kind: str) -> frozenset:
    """The inclusion-smallest lower/upper shadow of ``x`` on ``A``.

    ``kind`` is ``"lower"`` (returns ``Max(A ∩ ↓x)``) or ``"upper"``
    (returns ``Min(A ∩ ↑x)``).
    """
    A = set(A)
    for a in A:
        P.index(a)
    P.index(x)
    if kind == "lower":
        return P.maximal({a for a in A if P.leq(a, x)})
    if kind == "upper":
        return P.minimal({a for a in A if P.leq(x, a)})
    raise InputError(f"kind must be 'lower' or 'upper', got {kind!r}")


# ---------------------------------------------------------------------------
# Separability witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparabilityWitness:
    """Maps A (finite upper-bound sets) and B (finite lower-bound sets)."""
    A: Mapping[ElementId, frozenset]
    B: Mapping[ElementId, frozenset]

    @classmethod
    def diagonal(cls, P: FinitePoset) -> "SeparabilityWitness":
        """A(x) = B(x) = {x}.  A witness iff P is an antichain: any
        strictly comparable pair x < y has A(x) ∩ B(y) empty."""
        return cls({x: frozenset([x]) for x in P.elements},
                   {x: frozenset([x]) for x in P.elements})

    @classmethod
    def full(cls, P: FinitePoset) -> "SeparabilityWitness":
        """A(x) = all upper bounds, B(x) = all lower bounds; a witness on
        every finite poset (x itself lies in A(x) ∩ B(y) when x <= y)."""
        return cls({x: P.up_set([x]) for x in P.elements},
                   {x: P.down_set([x]) for x in P.elements})


@dataclass(frozen=True)
class WitnessViolation:
    kind: str          # "upper_bound" | "lower_bound" | "intersection"
    data: tuple        # offending (element, member) or pair (x, y)


def check_separability_witness(P: FinitePoset,
                               W: SeparabilityWitness) -> Optional[WitnessViolation]:
    """None if W is a separability witness for P, else the first violation.

    Scan order: bound clauses element by element, then the intersection
    clause over strictly comparable pairs in canonical order, then over
    reflexive pairs.
    """
    for z in P.elements:
        if z not in W.A or z not in W.B:
            raise InputError(f"witness maps not total: missing {z!r}")
        for a in sorted(W.A[z], key=P.index):
            if not P.leq(z, a):
                return WitnessViolation("upper_bound", (z, a))
        for b in sorted(W.B[z], key=P.index):
            if not P.leq(b, z):
                return WitnessViolation("lower_bound", (z, b))
    for x in P.elements:
        for y in P.elements:
            if x != y and P.leq(x, y) and not (W.A[x] & W.B[y]):
                return WitnessViolation("intersection", (x, y))
    for x in P.elements:
        if not (W.A[x] & W.B[x]):
            return WitnessViolation("intersection", (x, x))
    return None


def is_separability_witness(P: FinitePoset, W: SeparabilityWitness) -> bool:
    return check_separability_witness(P, W) is None


def check_enumeration(P: FinitePoset, order: Sequence[ElementId]) -> tuple:
    order = tuple(order)
    if sorted(map(P.index, order)) != list(range(len(P))):
        raise InputError("enumeration must list every element exactly once")
    return order


def witness_from_order(P: FinitePoset,
                       order: Sequence[ElementId]) -> SeparabilityWitness:
    """Separability witness built along an enumeration.

    Processing elements c in enumeration order, with U_c / V_c the minimal
    upper / lower shadows of c on its strict prefix:

        A(c) = {c} ∪ ⋃ { A(u) : u ∈ U_c }
        B(c) = {c} ∪ ⋃ { B(v) : v ∈ V_c }

    The result satisfies: x ∈ A(y) ∪ B(y) implies x comes no later than y
    in the enumeration.
    """
    order = check_enumeration(P, order)
    A: dict = {}
    B: dict = {}
    for i, c in enumerate(order):
        prefix = order[:i]
        U = shadow(P, prefix, c, "upper")
        V = shadow(P, prefix, c, "lower")
        A[c] = frozenset([c]).union(*(A[u] for u in U)) if U else frozenset([c])
        B[c] = frozenset([c]).union(*(B[v] for v in V)) if V else frozenset([c])
    return SeparabilityWitness(A, B)


@dataclass(frozen=True)
class OrderFromWitnessResult:
    """Enumeration assembled from a witness, with its block structure and,
    per element, the minimal shadows on that element's strict prefix."""
    enumeration: tuple
    blocks: tuple
    prefix_shadows: Mapping[ElementId, tuple]  # x -> (upper, lower) frozensets


def order_from_witness(P: FinitePoset,
                       W: SeparabilityWitness) -> OrderFromWitnessResult:
    """Enumerate P in block order.

    Blocks are built greedily: the seed is the canonically-least element
    not yet covered; its block is the closure of the seed under
    z -> A(z) ∪ B(z), minus earlier blocks.  Elements inside a block are
    listed in canonical order.
    """
    v = check_separability_witness(P, W)
    if v is not None:
        raise InputError(f"invalid witness: {v.kind} at {v.data!r}")
    covered: set = set()
    blocks = []
    for seed in P.elements:
        if seed in covered:
            continue
        block = {seed}
        frontier = [seed]
        while frontier:
            z = frontier.pop()
            for w in (W.A[z] | W.B[z]) - covered:
                if w not in block:
                    block.add(w)
                    frontier.append(w)
        blocks.append(tuple(sorted(block, key=P.index)))
        covered |= block
    enumeration = tuple(x for block in blocks for x in block)
    shadows = {}
    for i, c in enumerate(enumeration):
        prefix = enumeration[:i]
        shadows[c] = (shadow(P, prefix, c, "upper"),
                      shadow(P, prefix, c, "lower"))
    return OrderFromWitnessResult(enumeration, tuple(blocks), shadows)


# ---------------------------------------------------------------------------
# Locally finite set maps
# ---------------------------------------------------------------------------

def locally_finite_closure(P: FinitePoset, C: Mapping[ElementId, Iterable],
                           X: Iterable[ElementId]) -> frozenset:
    """⋃_{x∈X} C^ω(x): close X under the set map C (x itself included)."""
    for x in C:
        P.index(x)
    seen = set()
    frontier = [x for x in X]
    for x in frontier:
        P.index(x)
    while frontier:
        x = frontier.pop()
        if x in seen:
            continue
        seen.add(x)
        for y in C.get(x, ()):
            if y not in seen:
                frontier.append(y)
    return frozenset(seen)


# ---------------------------------------------------------------------------
# Strong amalgams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrongAmalgamSpec:
    carrier: FinitePoset
    index: FinitePoset
    family: Mapping[ElementId, frozenset]  # index element -> subset of carrier

    def __post_init__(self):
        for p in self.index.elements:
            if p not in self.family:
                raise InputError(f"family not total on index: missing {p!r}")
        for p, block in self.family.items():
            self.index.index(p)
            for x in block:
                if x not in self.carrier:
                    raise InputError(
                        f"family member {x!r} of block {p!r} not in carrier")


@dataclass(frozen=True)
class AmalgamViolation:
    clause: str        # "union" | "shadowing" | "interpolation"
    data: tuple


def check_strong_amalgam(spec: StrongAmalgamSpec) -> Optional[AmalgamViolation]:
    """None if spec is a strong amalgam, else the first failing clause.

    Checks, in order: (1) the family covers the carrier; (2) for p <= q in
    the index, every x in M_q has genuine minimal shadows on M_p (on a
    finite carrier this is automatic; it is still verified against the
    defining equalities A ∩ ↓x = A ∩ ↓U and dually); (3) the interpolation
    property: x in M_p, y in M_q, x <= y imply x <= z <= y for some z in a
    block M_r with r <= p, q.
    """
    M, P, fam = spec.carrier, spec.index, spec.family
    union = set().union(*fam.values()) if fam else set()
    missing = [x for x in M.elements if x not in union]
    if missing:
        return AmalgamViolation("union", (missing[0],))
    for p in P.elements:
        for q in P.elements:
            if not P.leq(p, q):
                continue
            A = fam[p]
            for x in sorted(fam[q], key=M.index):
                U = shadow(M, A, x, "upper")
                V = shadow(M, A, x, "lower")
                up_x = {a for a in A if M.leq(x, a)}
                if {a for a in A if any(M.leq(u, a) for u in U)} != up_x:
                    return AmalgamViolation("shadowing", (p, q, x, "upper"))
                dn_x = {a for a in A if M.leq(a, x)}
                if {a for a in A if any(M.leq(a, v) for v in V)} != dn_x:
                    return AmalgamViolation("shadowing", (p, q, x, "lower"))
    downs = {p: [r for r in P.elements if P.leq(r, p)] for p in P.elements}
    for p in P.elements:
        for q in P.elements:
            rs = [r for r in downs[p] if P.leq(r, q)]
            for x in sorted(fam[p], key=M.index):
                for y in sorted(fam[q], key=M.index):
                    if not M.leq(x, y):
                        continue
                    if not any(M.leq(x, z) and M.leq(z, y)
                               for r in rs for z in fam[r]):
                        return AmalgamViolation("interpolation", (p, q, x, y))
    return None


def witness_from_amalgam(spec: StrongAmalgamSpec,
                         per_block: Mapping[ElementId, SeparabilityWitness],
                         nu: Mapping[ElementId, ElementId]) -> SeparabilityWitness:
    """Assemble a witness for the whole carrier from per-block witnesses.

    For each carrier element x, with p ranging over index elements below
    nu(x) and U_{x,p} / V_{x,p} the minimal upper / lower shadows of x on
    the block M_p:

        A(x) = ⋃ { A_p(u) : p <= nu(x), u ∈ U_{x,p} }
        B(x) = ⋃ { B_p(v) : p <= nu(x), v ∈ V_{x,p} }
    """
    v = check_strong_amalgam(spec)
    if v is not None:
        raise InputError(f"not a strong amalgam: {v.clause} at {v.data!r}")
    M, P, fam = spec.carrier, spec.index, spec.family
    for p in P.elements:
        if p not in per_block:
            raise InputError(f"missing block witness for {p!r}")
        bv = check_separability_witness(M.restrict(fam[p]), per_block[p])
        if bv is not None:
            raise InputError(
                f"invalid block witness at {p!r}: {bv.kind} {bv.data!r}")
    for x in M.elements:
        if x not in nu:
            raise InputError(f"nu not total: missing {x!r}")
        if nu[x] not in fam or x not in fam[nu[x]]:
            raise InputError(f"inconsistent nu: {x!r} not in block {nu[x]!r}")
    A: dict = {}
    B: dict = {}
    for x in M.elements:
        ps = [p for p in P.elements if P.leq(p, nu[x])]
        ax: set = set()
        bx: set = set()
        for p in ps:
            for u in shadow(M, fam[p], x, "upper"):
                ax |= per_block[p].A[u]
            for w in shadow(M, fam[p], x, "lower"):
                bx |= per_block[p].B[w]
        A[x] = frozenset(ax)
        B[x] = frozenset(bx)
    return SeparabilityWitness(A, B)


# ---------------------------------------------------------------------------
# Witness transformers
# ---------------------------------------------------------------------------

def witness_transform(kind: str, *args):
    """Closure properties of separability witnesses.

    Returns a ``(poset, witness)`` pair for the transformed poset.

    kinds:
      * ``dual``:            args = (P, W); swaps A and B on the dual poset.
      * ``product``:         args = (P1, W1, P2, W2); elements are pairs and
                             the maps are coordinatewise cartesian products.
      * ``add_top``:         args = (P, W, top_id); A(x) gains the new top.
      * ``add_bottom``:      args = (P, W, bottom_id); B(x) gains the bottom.
      * ``convex_restrict``: args = (P, W, subset); intersects both maps with
                             an order-convex subset.
    """
    if kind == "dual":
        P, W = args
        return P.dual(), SeparabilityWitness(dict(W.B), dict(W.A))
    if kind == "product":
        P1, W1, P2, W2 = args
        Q = P1.product(P2)
        A = {(x, y): frozenset((a, b) for a in W1.A[x] for b in W2.A[y])
             for x in P1.elements for y in P2.elements}
        B = {(x, y): frozenset((a, b) for a in W1.B[x] for b in W2.B[y])
             for x in P1.elements for y in P2.elements}
        return Q, SeparabilityWitness(A, B)
    if kind == "add_top":
        P, W, top = args
        Q = P.with_top(top)
        A = {x: W.A[x] | {top} for x in P.elements}
        A[top] = frozenset([top])
        B = {x: W.B[x] for x in P.elements}
        B[top] = frozenset([top])
        return Q, SeparabilityWitness(A, B)
    if kind == "add_bottom":
        P, W, bottom = args
        Q = P.with_bottom(bottom)
        A = {x: W.A[x] for x in P.elements}
        A[bottom] = frozenset([bottom])
        B = {x: W.B[x] | {bottom} for x in P.elements}
        B[bottom] = frozenset([bottom])
        return Q, SeparabilityWitness(A, B)
    if kind == "convex_restrict":
        P, W, subset = args
        sub = frozenset(subset)
        if not P.is_order_convex(sub):
            raise InputError("subset is not order-convex")
        Q = P.restrict(sub)
        A = {x: W.A[x] & sub for x in Q.elements}
        B = {x: W.B[x] & sub for x in Q.elements}
        return Q, SeparabilityWitness(A, B)
    raise InputError(f"unknown transform kind: {kind!r}")
