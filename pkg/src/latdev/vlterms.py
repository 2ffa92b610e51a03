"""Vector-lattice terms over finitely many generators and their
principal-ideal calculus.

Terms are ASTs over generators ``g0 .. g{n-1}``, the unit constant
``one``, rational scaling, sums, joins and meets; ``t^+`` abbreviates
``t ∨ 0`` and ``|t|`` abbreviates ``t ∨ (-t)``.  A term denotes a
piecewise-linear function on ℚⁿ (``one`` denotes the constant 1), and

* ``linearize`` computes a covering piecewise form (cells split on the
  sign of differences, closed side on the kept branch),
* ``cozero_set`` / ``zero_set`` are the semilinear sets where the term
  is nonzero / zero,
* ``ideal_leq`` decides the principal-ideal order: <g> <= <h> iff the
  zero set of h is contained in the zero set of g — optionally relative
  to a region, in which case only zeros inside the region count.

The region of interest is ``omega_region(n)``: points u with
0 <= u_i <= 1 for all i and u_j <= 2*u_k whenever 0 < j < k.

The deviation at ideal level sends (<g>, <h>) to <(g-h)^+>; it is Cevian
(``check_cevian_triple``), and ``pseudocomplement_probe`` /
``noiso_probe`` exercise the two complementation phenomena that drive
the non-monotonicity construction at finite dimension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import InputError, ResourceLimitError
from .semilinear import (Cell, Constraint, GE, GT, EQ, LinearForm,
                         SemilinearSet, intersect, is_empty, is_empty_set,
                         set_witness)

UNIT_KEY = "one"   # sigma key for the unit when substitution may move it

DEFAULT_PIECE_CEILING = 10_000


# ---------------------------------------------------------------------------
# Term AST
# ---------------------------------------------------------------------------

class VLTerm:
    """Base class; subclasses are frozen dataclasses."""
    __slots__ = ()

    def __add__(self, other: "VLTerm") -> "VLTerm":
        return Add(self, other)

    def __sub__(self, other: "VLTerm") -> "VLTerm":
        return Add(self, Scale(Fraction(-1), other))

    def __neg__(self) -> "VLTerm":
        return Scale(Fraction(-1), self)

    def __rmul__(self, q) -> "VLTerm":
        return Scale(Fraction(q), self)

    def __or__(self, other: "VLTerm") -> "VLTerm":
        return Join(self, other)

    def __and__(self, other: "VLTerm") -> "VLTerm":
        return Meet(self, other)

    def pos(self) -> "VLTerm":
        return Join(self, zero())

    def __abs__(self) -> "VLTerm":
        return Join(self, Scale(Fraction(-1), self))


@dataclass(frozen=True)
class Gen(VLTerm):
    index: int

    def __str__(self):
        return f"g{self.index}"


@dataclass(frozen=True)
class One(VLTerm):
    def __str__(self):
        return "one"


@dataclass(frozen=True)
class Scale(VLTerm):
    coeff: Fraction
    arg: VLTerm

    def __str__(self):
        return f"{self.coeff}*({self.arg})"


@dataclass(frozen=True)
class Add(VLTerm):
    left: VLTerm
    right: VLTerm

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Join(VLTerm):
    left: VLTerm
    right: VLTerm

    def __str__(self):
        return f"({self.left} \\/ {self.right})"


@dataclass(frozen=True)
class Meet(VLTerm):
    left: VLTerm
    right: VLTerm

    def __str__(self):
        return f"({self.left} /\\ {self.right})"


def gen(i: int) -> Gen:
    if i < 0:
        raise InputError("generator index must be non-negative")
    return Gen(i)


def one() -> One:
    return One()


def zero() -> VLTerm:
    return Scale(Fraction(0), One())


def const(q) -> VLTerm:
    return Scale(Fraction(q), One())


def max_generator(t: VLTerm) -> int:
    """Largest generator index used, or -1 if none."""
    if isinstance(t, Gen):
        return t.index
    if isinstance(t, One):
        return -1
    if isinstance(t, Scale):
        return max_generator(t.arg)
    return max(max_generator(t.left), max_generator(t.right))


def evaluate(t: VLTerm, point: Sequence) -> Fraction:
    """Value of the term at a rational point; joins are maxima, meets
    are minima, the unit evaluates to 1."""
    pt = tuple(Fraction(p) for p in point)
    if max_generator(t) >= len(pt):
        raise InputError("point dimension too small for the term")

    def ev(s: VLTerm) -> Fraction:
        if isinstance(s, Gen):
            return pt[s.index]
        if isinstance(s, One):
            return Fraction(1)
        if isinstance(s, Scale):
            return s.coeff * ev(s.arg)
        if isinstance(s, Add):
            return ev(s.left) + ev(s.right)
        if isinstance(s, Join):
            return max(ev(s.left), ev(s.right))
        if isinstance(s, Meet):
            return min(ev(s.left), ev(s.right))
        raise InputError(f"not a term: {s!r}")

    return ev(t)


# ---------------------------------------------------------------------------
# Piecewise-linear normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiecewiseForm:
    """Covering pieces (cell, form): on each cell the term equals the
    affine form.  Cells are pairwise disjoint and their union is ℚⁿ."""
    dimension: int
    pieces: Tuple[Tuple[Cell, LinearForm], ...]


def linearize(t: VLTerm, n: int,
              ceiling: Optional[int] = None) -> PiecewiseForm:
    """Case-split a term into a covering piecewise form.

    Joins and meets split on the sign of the difference of the two
    branch forms; the kept branch of a join takes the closed side
    (difference >= 0), the other the open side.
    """
    limit = DEFAULT_PIECE_CEILING if ceiling is None else ceiling
    return PiecewiseForm(n, _linearize_cached(t, n, limit))


@lru_cache(maxsize=4096)
def _linearize_cached(t: VLTerm, n: int, limit: int) -> tuple:
    if max_generator(t) >= n:
        raise InputError("term uses a generator outside the declared dimension")
    memo: Dict[VLTerm, tuple] = {}

    def guard(pieces):
        if len(pieces) > limit:
            raise ResourceLimitError(
                f"piece count {len(pieces)} exceeds ceiling {limit}")
        return pieces

    def go(s: VLTerm) -> tuple:
        if s in memo:
            return memo[s]
        if isinstance(s, Gen):
            coeffs = [Fraction(0)] * n
            coeffs[s.index] = Fraction(1)
            out = ((Cell(()), LinearForm(tuple(coeffs))),)
        elif isinstance(s, One):
            out = ((Cell(()), LinearForm(tuple([Fraction(0)] * n),
                                         Fraction(1))),)
        elif isinstance(s, Scale):
            out = tuple((c, f.scale(s.coeff)) for c, f in go(s.arg))
        elif isinstance(s, Add):
            acc = []
            for c1, f1 in go(s.left):
                for c2, f2 in go(s.right):
                    cell = Cell.of(c1.atoms + c2.atoms)
                    if not is_empty(cell):
                        acc.append((cell, f1 + f2))
            out = tuple(guard(acc))
        elif isinstance(s, (Join, Meet)):
            keep_left_closed = isinstance(s, Join)
            acc = []
            for c1, f1 in go(s.left):
                for c2, f2 in go(s.right):
                    base = c1.atoms + c2.atoms
                    diff = f1 - f2
                    # join keeps the larger branch, meet the smaller
                    first = Cell.of(base + (Constraint(
                        diff if keep_left_closed else -diff, GE),))
                    second = Cell.of(base + (Constraint(
                        -diff if keep_left_closed else diff, GT),))
                    if not is_empty(first):
                        acc.append((first, f1))
                    if not is_empty(second):
                        acc.append((second, f2))
            out = tuple(guard(acc))
        else:
            raise InputError(f"not a term: {s!r}")
        memo[s] = out
        return out

    return go(t)


def cozero_set(t: VLTerm, n: int,
               ceiling: Optional[int] = None) -> SemilinearSet:
    """Points where the term is nonzero."""
    pw = linearize(t, n, ceiling)
    cells = []
    for cell, f in pw.pieces:
        for signed in (f, -f):
            c = Cell.of(cell.atoms + (Constraint(signed, GT),))
            if not is_empty(c) and c not in cells:
                cells.append(c)
    return SemilinearSet(n, tuple(cells))


def zero_set(t: VLTerm, n: int,
             ceiling: Optional[int] = None) -> SemilinearSet:
    """Points where the term vanishes: the complement of the cozero set,
    assembled directly from the (disjoint, covering) pieces."""
    pw = linearize(t, n, ceiling)
    cells = []
    for cell, f in pw.pieces:
        if f.is_constant():
            c = cell if f.const == 0 else None
        else:
            c = Cell.of(cell.atoms + (Constraint(f, EQ),))
        if c is not None and not is_empty(c) and c not in cells:
            cells.append(c)
    return SemilinearSet(n, tuple(cells))


# ---------------------------------------------------------------------------
# The bounded region and partial-point completion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OmegaRegion:
    """The region 0 <= u_i <= 1 (all i), u_j <= 2*u_k for 0 < j < k."""
    n: int
    set: SemilinearSet

    def contains(self, point) -> bool:
        return self.set.contains(point)


def omega_region(n: int) -> OmegaRegion:
    if n < 1:
        raise InputError("region dimension must be >= 1")
    atoms = []
    for i in range(n):
        atoms.append(Constraint(_unit(n, i, 1), GE))                  # u_i >= 0
        atoms.append(Constraint(_unit(n, i, -1, const=1), GE))        # u_i <= 1
    for j in range(1, n):
        for k in range(j + 1, n):
            f = [Fraction(0)] * n
            f[j], f[k] = Fraction(-1), Fraction(2)
            atoms.append(Constraint(LinearForm(tuple(f)), GE))        # u_j <= 2 u_k
    return OmegaRegion(n, SemilinearSet(n, (Cell.of(atoms),)))


def _unit(n, i, coeff, const=0) -> LinearForm:
    coeffs = [Fraction(0)] * n
    coeffs[i] = Fraction(coeff)
    return LinearForm(tuple(coeffs), Fraction(const))


def omega_extend(u: Mapping[int, Fraction], n: int) -> tuple:
    """Complete a partial point on an index set M to a full point of the
    region: each missing coordinate copies the value at the next index
    of M above it, falling back to 1 when none exists."""
    M = sorted(u)
    vals = {i: Fraction(u[i]) for i in M}
    for i in M:
        if not 0 <= i < n:
            raise InputError(f"index {i} outside dimension {n}")
        if not 0 <= vals[i] <= 1:
            raise InputError(f"coordinate u_{i}={vals[i]} outside [0, 1]")
    for j in M:
        for k in M:
            if 0 < j < k and vals[j] > 2 * vals[k]:
                raise InputError(
                    f"partial point violates u_{j} <= 2*u_{k}")
    out = []
    for xi in range(n):
        above = [i for i in M if i >= xi]
        out.append(vals[min(above)] if above else Fraction(1))
    point = tuple(out)
    assert omega_region(n).contains(point)
    return point


# ---------------------------------------------------------------------------
# Principal-ideal calculus
# ---------------------------------------------------------------------------

def ideal_leq(g: VLTerm, h: VLTerm, n: int,
              region: Optional[OmegaRegion] = None,
              ceiling: Optional[int] = None) -> tuple:
    """Decide <g> <= <h| in the principal-ideal order.

    Absolute mode: true iff zero(h) ⊆ zero(g).  Relative mode: true iff
    zero(h) ∩ region ⊆ zero(g).  On false, returns a verified witness z
    with h(z) = 0 and g(z) != 0 (and z in the region)."""
    if region is not None and region.n != n:
        raise InputError("region dimension mismatch")
    bad = intersect(zero_set(h, n, ceiling), cozero_set(g, n, ceiling),
                    ceiling)
    if region is not None:
        bad = intersect(bad, region.set, ceiling)
    w = set_witness(bad)
    if w is None:
        return (True, None)
    assert evaluate(h, w) == 0 and evaluate(g, w) != 0
    assert region is None or region.contains(w)
    return (False, w)


@dataclass(frozen=True)
class PrincipalIdeal:
    """The ideal generated by a term, stored via its absolute value,
    optionally relative to a region.  Comparison is zero-set containment
    (`ideal_leq`); equality is mutual comparison, no canonical
    representative is computed."""
    representative: VLTerm
    n: int
    region: Optional["OmegaRegion"] = None

    @classmethod
    def of(cls, t: VLTerm, n: int,
           region: Optional["OmegaRegion"] = None) -> "PrincipalIdeal":
        return cls(abs(t), n, region)

    def _lift(self, t: VLTerm) -> "PrincipalIdeal":
        return PrincipalIdeal(abs(t), self.n, self.region)

    def leq(self, other: "PrincipalIdeal") -> tuple:
        return ideal_leq(self.representative, other.representative,
                         self.n, self.region)

    def same(self, other: "PrincipalIdeal") -> bool:
        return self.leq(other)[0] and other.leq(self)[0]

    def join(self, other: "PrincipalIdeal") -> "PrincipalIdeal":
        return self._lift(ideal_join(self.representative,
                                     other.representative))

    def meet(self, other: "PrincipalIdeal") -> "PrincipalIdeal":
        return self._lift(ideal_meet(self.representative,
                                     other.representative))

    def dev(self, other: "PrincipalIdeal") -> "PrincipalIdeal":
        return self._lift(cevian_dev(self.representative,
                                     other.representative))


def multiplier_cross_check(g: VLTerm, h: VLTerm, points: Iterable,
                           m_max: int = 64) -> Optional[int]:
    """Falsification-only sanity check of the ideal order against the
    bounded-multiplier characterization: the least m <= m_max with
    |g|(z) <= m * |h|(z) at every sampled point, or None.  A false
    `ideal_leq` verdict makes every multiplier fail at its witness; a
    true verdict does not guarantee a bounded m, so absence of one is
    never evidence by itself."""
    ga, ha = abs(g), abs(h)
    vals = [(evaluate(ga, p), evaluate(ha, p)) for p in points]
    for m in range(1, m_max + 1):
        if all(gv <= m * hv for gv, hv in vals):
            return m
    return None


def ideal_join(g: VLTerm, h: VLTerm) -> VLTerm:
    """Representative of <g> ∨ <h>: |g| ∨ |h| (cozero = union)."""
    return Join(abs(g), abs(h))


def ideal_meet(g: VLTerm, h: VLTerm) -> VLTerm:
    """Representative of <g> ∧ <h>: |g| ∧ |h| (cozero = intersection)."""
    return Meet(abs(g), abs(h))


def cevian_dev(g: VLTerm, h: VLTerm) -> VLTerm:
    """Representative of the ideal-level deviation: (g - h)^+."""
    return (g - h).pos()


def ideal_meet_is_zero(g: VLTerm, h: VLTerm, n: int,
                       region: Optional[OmegaRegion] = None,
                       ceiling: Optional[int] = None) -> bool:
    """Whether <|g|> ∧ <|h|> is the zero ideal (no common cozero point,
    within the region when given)."""
    common = intersect(cozero_set(abs(g), n, ceiling),
                       cozero_set(abs(h), n, ceiling), ceiling)
    if region is not None:
        common = intersect(common, region.set, ceiling)
    return is_empty_set(common)


def check_cevian_triple(g: VLTerm, h: VLTerm, k: VLTerm, n: int,
                        region: Optional[OmegaRegion] = None,
                        ceiling: Optional[int] = None) -> bool:
    """Whether <(g-k)^+> <= <(g-h)^+> ∨ <(h-k)^+>; true for all terms."""
    lhs = cevian_dev(g, k)
    rhs = ideal_join(cevian_dev(g, h), cevian_dev(h, k))
    return ideal_leq(lhs, rhs, n, region, ceiling)[0]


def substitute(t: VLTerm, sigma: Mapping, unit_fixed: bool = True) -> VLTerm:
    """Homomorphic substitution of generators.

    ``sigma`` maps generator indices to terms and must cover every
    generator appearing in ``t``.  With ``unit_fixed`` the unit maps to
    itself; otherwise ``sigma`` may carry an image for it under the key
    ``UNIT_KEY``."""
    def go(s: VLTerm) -> VLTerm:
        if isinstance(s, Gen):
            if s.index not in sigma:
                raise InputError(f"sigma missing generator {s.index}")
            return sigma[s.index]
        if isinstance(s, One):
            if unit_fixed or UNIT_KEY not in sigma:
                return s
            return sigma[UNIT_KEY]
        if isinstance(s, Scale):
            return Scale(s.coeff, go(s.arg))
        if isinstance(s, Add):
            return Add(go(s.left), go(s.right))
        if isinstance(s, Join):
            return Join(go(s.left), go(s.right))
        if isinstance(s, Meet):
            return Meet(go(s.left), go(s.right))
        raise InputError(f"not a term: {s!r}")

    return go(t)


# ---------------------------------------------------------------------------
# Probes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ImplicationRecord:
    """One direction of the pseudocomplement probe: if the meet with
    `split` is zero then the probe lies below `other`.  ``holds`` is None
    when the hypothesis fails (non-binding)."""
    binding: bool
    holds: Optional[bool]
    witness: Optional[tuple]


@dataclass(frozen=True)
class ProbeEntry:
    term: VLTerm
    lower_implication: ImplicationRecord   # meet with (g0 - c*ga)^+ zero
    upper_implication: ImplicationRecord   # meet with (c*ga - g0)^+ zero

    @property
    def is_counterexample(self) -> bool:
        return any(r.binding and r.holds is False
                   for r in (self.lower_implication, self.upper_implication))


@dataclass(frozen=True)
class PscomProbeReport:
    n: int
    alpha: int
    c: Fraction
    entries: tuple

    @property
    def counterexamples(self) -> tuple:
        return tuple(e for e in self.entries if e.is_counterexample)


def pseudocomplement_probe(n: int, alpha: int, c,
                           probes: Iterable[VLTerm],
                           ceiling: Optional[int] = None) -> PscomProbeReport:
    """Probe whether <(g0 - c*g_alpha)^+> and <(c*g_alpha - g0)^+> behave
    as pseudocomplements of each other relative to the bounded region:
    for each probe t, a zero meet with one side must force <|t|> below
    the other side.  Counterexamples are reported, never suppressed."""
    if not 1 <= alpha < n:
        raise InputError("alpha must satisfy 1 <= alpha < n")
    c = Fraction(c)
    if c <= 0:
        raise InputError("c must be positive")
    region = omega_region(n)
    down = cevian_dev(Gen(0), Scale(c, Gen(alpha)))   # (g0 - c*ga)^+
    up = cevian_dev(Scale(c, Gen(alpha)), Gen(0))     # (c*ga - g0)^+
    entries = []
    for t in probes:
        tt = abs(t)
        recs = []
        for split, other in ((down, up), (up, down)):
            binding = ideal_meet_is_zero(tt, split, n, region, ceiling)
            if binding:
                ok, w = ideal_leq(tt, other, n, region, ceiling)
                recs.append(ImplicationRecord(True, ok, w))
            else:
                recs.append(ImplicationRecord(False, None, None))
        entries.append(ProbeEntry(t, recs[0], recs[1]))
    return PscomProbeReport(n, alpha, c, tuple(entries))


@dataclass(frozen=True)
class LadderCheck:
    lhs: VLTerm
    rhs: VLTerm
    inclusion_false: bool        # decision-procedure verdict
    witness: Optional[tuple]     # decision-procedure witness
    anchor_point: tuple          # hand-picked witness from the parameters
    anchor_valid: bool           # anchor re-evaluates correctly


@dataclass(frozen=True)
class NoisoProbeReport:
    k: int
    m: int
    n_coeff: int
    primary: LadderCheck
    dual: LadderCheck

    @property
    def reproduced(self) -> bool:
        return all(chk.inclusion_false and chk.anchor_valid
                   for chk in (self.primary, self.dual))


def _ladder(lhs: VLTerm, rhs: VLTerm, anchor: tuple,
            region: OmegaRegion, ceiling) -> LadderCheck:
    ok, w = ideal_leq(lhs, rhs, 2, region, ceiling)
    anchor_valid = (region.contains(anchor)
                    and evaluate(rhs, anchor) == 0
                    and evaluate(lhs, anchor) != 0)
    return LadderCheck(lhs, rhs, not ok, w, anchor, anchor_valid)


def noiso_probe(k: int, m: int, n_coeff: int,
                ceiling: Optional[int] = None) -> NoisoProbeReport:
    """Two-variable instance of the inclusion failures that block
    one-sided monotone deviations on the bounded region.

    Requires 2^(k-1) > m * n_coeff.  Primary ladder: the inclusion
    <(2^(k-1)*g0 - m*g1)^+> <= <(n_coeff*g0 - g1)^+> must be FALSE, with
    anchor point (1/n_coeff, 1).  Dual ladder:
    <(g1 - m*g0)^+> <= <(n_coeff*g1 - 2^(k-1)*g0)^+> must be FALSE, with
    anchor point (2^(1-k), 1/n_coeff).
    """
    if k < 1 or m < 1 or n_coeff < 1:
        raise InputError("k, m, n_coeff must be positive integers")
    if 2 ** (k - 1) <= m * n_coeff:
        raise InputError("parameters must satisfy 2^(k-1) > m * n_coeff")
    region = omega_region(2)
    big = 2 ** (k - 1)
    primary = _ladder(
        (Fraction(big) * Gen(0) - Fraction(m) * Gen(1)).pos(),
        (Fraction(n_coeff) * Gen(0) - Gen(1)).pos(),
        (Fraction(1, n_coeff), Fraction(1)),
        region, ceiling)
    dual = _ladder(
        (Gen(1) - Fraction(m) * Gen(0)).pos(),
        (Fraction(n_coeff) * Gen(1) - Fraction(big) * Gen(0)).pos(),
        (Fraction(1, big), Fraction(1, n_coeff)),
        region, ceiling)
    return NoisoProbeReport(k, m, n_coeff, primary, dual)


# ---------------------------------------------------------------------------
# Random terms (seed-pinned corpora for probes and batch checks)
# ---------------------------------------------------------------------------

def random_term(rng: random.Random, n: int, depth: int) -> VLTerm:
    """A random term of the given maximal operator depth (leaf-biased)."""
    if depth <= 0:
        r = rng.random()
        if r < 0.7:
            return Gen(rng.randrange(n))
        if r < 0.9:
            return One()
        return const(Fraction(rng.randint(-2, 2)))
    op = rng.choice(["add", "join", "meet", "scale", "pos", "leaf", "leaf"])
    if op == "leaf":
        return random_term(rng, n, 0)
    if op == "scale":
        q = Fraction(rng.choice([-2, -1, 1, 2, 3]),
                     rng.choice([1, 1, 2]))
        return Scale(q, random_term(rng, n, depth - 1))
    if op == "pos":
        return random_term(rng, n, depth - 1).pos()
    a = random_term(rng, n, depth - 1)
    b = random_term(rng, n, depth - 1)
    return Add(a, b) if op == "add" else Join(a, b) if op == "join" \
        else Meet(a, b)


# ---------------------------------------------------------------------------
# Term grammar
# ---------------------------------------------------------------------------

def _tokenize(text: str) -> list:
    import re
    tok = re.compile(r"""\s*(?:
        (?P<gen>g\d+) | (?P<one>one) | (?P<num>\d+(?:/\d+)?)
      | (?P<join>\\/) | (?P<meet>/\\) | (?P<pos>\^\+)
      | (?P<op>[-+*|()])
    )""", re.VERBOSE)
    out = []
    pos = 0
    while pos < len(text):
        m = tok.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise InputError(f"cannot tokenize term at: {text[pos:]!r}")
            break
        out.append(m)
        pos = m.end()
    return out


def parse_term(text: str) -> VLTerm:
    """Parse the textual grammar: atoms g0.., one; operators +, -,
    rational scaling p/q*, \\/ (join), /\\ (meet), postfix ^+, and |...|
    for absolute value.  Example: ``(g0 - 2*g1)^+ \\/ one``."""
    toks = _tokenize(text)
    pos = 0

    def peek(kind=None):
        if pos >= len(toks):
            return None
        m = toks[pos]
        for k in ("gen", "one", "num", "join", "meet", "pos"):
            if m.group(k):
                return (k, m.group(k))
        return ("op", m.group("op"))

    def take(expected=None):
        nonlocal pos
        t = peek()
        if t is None:
            raise InputError("unexpected end of term")
        if expected is not None and t != expected and t[0] != expected:
            raise InputError(f"expected {expected!r}, got {t!r}")
        pos += 1
        return t

    def parse_join():
        t = parse_meet()
        while peek() == ("join", "\\/"):
            take()
            t = Join(t, parse_meet())
        return t

    def parse_meet():
        t = parse_sum()
        while peek() == ("meet", "/\\"):
            take()
            t = Meet(t, parse_sum())
        return t

    def parse_sum():
        t = parse_unary()
        while peek() in (("op", "+"), ("op", "-")):
            k = take()
            u = parse_unary()
            t = Add(t, u) if k == ("op", "+") else Add(t, Scale(Fraction(-1), u))
        return t

    def parse_unary():
        if peek() == ("op", "-"):
            take()
            return Scale(Fraction(-1), parse_unary())
        t = peek()
        if t is not None and t[0] == "num":
            take()
            q = Fraction(t[1])
            if peek() == ("op", "*"):
                take()
                return Scale(q, parse_unary())
            return const(q)
        return parse_postfix()

    def parse_postfix():
        t = parse_primary()
        while peek() == ("pos", "^+"):
            take()
            t = t.pos()
        return t

    def parse_primary():
        t = peek()
        if t is None:
            raise InputError("unexpected end of term")
        if t[0] == "gen":
            take()
            return Gen(int(t[1][1:]))
        if t[0] == "one":
            take()
            return One()
        if t == ("op", "("):
            take()
            inner = parse_join()
            take(("op", ")"))
            return inner
        if t == ("op", "|"):
            take()
            inner = parse_join()
            take(("op", "|"))
            return abs(inner)
        raise InputError(f"unexpected token {t!r}")

    term = parse_join()
    if pos != len(toks):
        raise InputError(f"trailing input after term: {toks[pos].group()!r}")
    return term
