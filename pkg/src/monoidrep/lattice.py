"""Finite lattices carrying a group action, and the inverse monoid they span.

A monoid element is a pair written g_a (group element g, lattice element a),
with g reduced to the least representative of its coset modulo the pointwise
stabilizer of the down-set of a.  Products follow g_a h_b = (gh) at
(h^{-1}.a) meet b.

Lattice elements are plain tuples: subsets are sorted point tuples,
partitions are tuples of sorted blocks, ordered partitions keep their block
order, and () is the adjoined minimum of the ordered-partition lattice.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .elements import (
    FiniteMonoid,
    PartialBijection,
    Permutation,
    symmetric_group,
)

LATTICE_KINDS = ("subsets", "set_partitions", "ordered_partitions_zero")

DESK_DEGREE_CAP = 6


class LatticeError(ValueError):
    """A lattice axiom failed during construction (or n is out of range)."""


class FiniteLattice:
    """Elements in canonical order with order relation and meet/join tables.

    Meets and joins are recovered from the order by down-set/up-set bitmask
    intersection and validated exhaustively: meet(a, b) is accepted only if
    its down-set is exactly down(a) & down(b), which is the greatest-lower-
    bound property; dually for joins.
    """

    def __init__(self, elements, leq: np.ndarray):
        self.elements = tuple(elements)
        self.kind = None  # set by make_lattice for the built-ins
        n = len(self.elements)
        self.leq = np.asarray(leq, dtype=bool)
        if self.leq.shape != (n, n):
            raise LatticeError("order relation has wrong shape")
        self._index = {e: k for k, e in enumerate(self.elements)}
        if not all(self.leq[i, i] for i in range(n)):
            raise LatticeError("order not reflexive")
        if ((self.leq & self.leq.T) & ~np.eye(n, dtype=bool)).any():
            raise LatticeError("order not antisymmetric")
        reach = self.leq.copy()
        for k in range(n):
            reach |= np.outer(reach[:, k], reach[k, :])
        if not np.array_equal(reach, self.leq):
            raise LatticeError("order not transitive")

        down = [int.from_bytes(np.packbits(self.leq[:, a]).tobytes(), "big") for a in range(n)]
        up = [int.from_bytes(np.packbits(self.leq[a, :]).tobytes(), "big") for a in range(n)]
        # a down-set determines its element, so glb(a, b) exists iff
        # down(a) & down(b) is itself some element's down-set
        down_of = {m: c for c, m in enumerate(down)}
        up_of = {m: c for c, m in enumerate(up)}
        self.meet = np.empty((n, n), dtype=np.int32)
        self.join = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            for b in range(n):
                self.meet[a, b] = self._bound(down_of, down[a] & down[b], a, b, "meet")
                self.join[a, b] = self._bound(up_of, up[a] & up[b], a, b, "join")
        bottoms = [a for a in range(n) if self.leq[a].all()]
        tops = [a for a in range(n) if self.leq[:, a].all()]
        if len(bottoms) != 1 or len(tops) != 1:
            raise LatticeError("lattice must have a unique top and bottom")
        self.bottom = bottoms[0]
        self.top = tops[0]

    def _bound(self, mask_of, want, a, b, kind):
        hit = mask_of.get(want)
        if hit is None:
            raise LatticeError(
                f"no unique {kind} for elements {self.elements[a]!r} and {self.elements[b]!r}"
            )
        return hit

    def index(self, element) -> int:
        return self._index[element]

    def down_set(self, a: int) -> tuple:
        return tuple(np.nonzero(self.leq[:, a])[0].tolist())

    def __len__(self):
        return len(self.elements)


class GroupAction:
    """A permutation group acting on a lattice by poset automorphisms."""

    def __init__(self, group: FiniteMonoid, lattice: FiniteLattice, table: np.ndarray):
        self.group = group
        self.lattice = lattice
        self.table = np.asarray(table, dtype=np.int32)
        ng, nl = len(group), len(lattice)
        if self.table.shape != (ng, nl):
            raise LatticeError("action table has wrong shape")
        idx = np.arange(nl, dtype=np.int32)
        if not np.array_equal(self.table[group.identity_index], idx):
            raise LatticeError("identity does not act trivially")
        for g in range(ng):
            for h in range(ng):
                if not np.array_equal(self.table[group.mul(g, h)], self.table[g][self.table[h]]):
                    raise LatticeError("action is not a homomorphism")
        leq = lattice.leq
        for g in range(ng):
            perm = self.table[g]
            if not np.array_equal(leq[np.ix_(perm, perm)], leq):
                raise LatticeError("some group element is not a poset automorphism")

    def act(self, g: int, a: int) -> int:
        return int(self.table[g, a])

    def orbits(self) -> tuple:
        seen = set()
        out = []
        for a in range(len(self.lattice)):
            if a in seen:
                continue
            orbit = sorted(set(int(x) for x in self.table[:, a]))
            seen.update(orbit)
            out.append(tuple(orbit))
        return tuple(out)


@dataclass(frozen=True)
class StabilizerPair:
    """Full and pointwise stabilizers of a lattice element, as index tuples."""

    full: tuple
    pointwise: tuple


def stabilizers(action: GroupAction, a: int) -> StabilizerPair:
    group, lat = action.group, action.lattice
    full = tuple(g for g in range(len(group)) if action.table[g, a] == a)
    below = lat.down_set(a)
    pointwise = tuple(
        g for g in full if all(action.table[g, c] == c for c in below)
    )
    inv = _inverses(group)
    pw = set(pointwise)
    for g in full:
        for k in pointwise:
            if group.mul(group.mul(g, k), inv[g]) not in pw:
                raise RuntimeError("pointwise stabilizer is not normal in the full one")
    return StabilizerPair(full, pointwise)


def _inverses(group: FiniteMonoid):
    e = group.identity_index
    inv = {}
    for g in range(len(group)):
        for h in range(len(group)):
            if group.mul(g, h) == e and group.mul(h, g) == e:
                inv[g] = h
                break
        else:
            raise ValueError("not a group")
    return inv


# -- built-in lattices -------------------------------------------------------

def make_lattice(kind: str, n: int):
    """One of the built-in lattices with its symmetric-group action."""
    if n < 1 or n > DESK_DEGREE_CAP:
        raise LatticeError(f"degree must be in 1..{DESK_DEGREE_CAP}")
    if kind == "subsets":
        elements = sorted(
            itertools.chain.from_iterable(
                itertools.combinations(range(1, n + 1), m) for m in range(n + 1)
            )
        )
        nl = len(elements)
        leq = np.zeros((nl, nl), dtype=bool)
        for i, a in enumerate(elements):
            sa = set(a)
            for j, b in enumerate(elements):
                leq[i, j] = sa <= set(b)
        lat = FiniteLattice(elements, leq)
        # subsets get their meets and joins from intersection and union
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                if lat.elements[lat.meet[i, j]] != tuple(sorted(set(a) & set(b))):
                    raise LatticeError("meet disagrees with intersection")
                if lat.elements[lat.join[i, j]] != tuple(sorted(set(a) | set(b))):
                    raise LatticeError("join disagrees with union")

        def image(g: Permutation, a):
            return tuple(sorted(g.apply(x) for x in a))

    elif kind == "set_partitions":
        elements = sorted(_set_partitions(n))
        nl = len(elements)
        leq = np.zeros((nl, nl), dtype=bool)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                leq[i, j] = _refines(a, b)
        lat = FiniteLattice(elements, leq)

        def image(g: Permutation, a):
            return tuple(sorted(tuple(sorted(g.apply(x) for x in block)) for block in a))

    elif kind == "ordered_partitions_zero":
        elements = [()] + sorted(_ordered_partitions(n))
        nl = len(elements)
        leq = np.zeros((nl, nl), dtype=bool)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                leq[i, j] = _ordered_leq(a, b)
        lat = FiniteLattice(elements, leq)

        def image(g: Permutation, a):
            return tuple(tuple(sorted(g.apply(x) for x in block)) for block in a)

    else:
        raise LatticeError(f"unknown lattice kind {kind!r}; expected one of {LATTICE_KINDS}")

    lat.kind = kind
    group = symmetric_group(n)
    table = np.empty((len(group), len(lat)), dtype=np.int32)
    for gi, g in enumerate(group.elements):
        for ai, a in enumerate(lat.elements):
            table[gi, ai] = lat.index(image(g, a))
    return lat, GroupAction(group, lat, table)


def _set_partitions(n):
    if n == 1:
        return [((1,),)]
    out = []
    for smaller in _set_partitions(n - 1):
        for k in range(len(smaller)):
            blocks = [list(b) for b in smaller]
            blocks[k].append(n)
            out.append(tuple(sorted(tuple(sorted(b)) for b in blocks)))
        out.append(tuple(sorted(smaller + ((n,),))))
    return out


def _ordered_partitions(n):
    points = tuple(range(1, n + 1))

    def rec(remaining):
        if not remaining:
            yield ()
            return
        rest = list(remaining)
        for m in range(1, len(rest) + 1):
            for block in itertools.combinations(rest, m):
                left = tuple(x for x in rest if x not in block)
                for tail in rec(left):
                    yield (block,) + tail

    return list(rec(points))


def _refines(a, b):
    return all(any(set(block) <= set(big) for big in b) for block in a)


def _ordered_leq(a, b):
    """Both bullets of the ordered-partition order; () is the minimum."""
    if a == ():
        return True
    if b == ():
        return False
    homes = []
    for block in a:
        target = [j for j, big in enumerate(b) if set(block) <= set(big)]
        if not target:
            return False
        homes.append(target[0])
    return all(homes[i] <= homes[i + 1] for i in range(len(homes) - 1))


# -- the inverse monoid of pairs g_a ----------------------------------------

def sgl_context(action: "GroupAction") -> "SGLContext":
    """The shared pair-arithmetic context of an action (elements from
    different contexts never compare equal, so one action gets one context)."""
    cached = getattr(action, "_sgl_context", None)
    if cached is None:
        cached = SGLContext(action)
        action._sgl_context = cached
    return cached


class SGLContext:
    """Precomputed data for pair arithmetic over one (group, lattice, action)."""

    def __init__(self, action: GroupAction):
        self.action = action
        self.group = action.group
        self.lattice = action.lattice
        ng, nl = len(self.group), len(self.lattice)
        self.ginv = np.array(
            [_inverses(self.group)[g] for g in range(ng)], dtype=np.int32
        )
        self.pointwise = []
        for a in range(nl):
            below = self.lattice.down_set(a)
            self.pointwise.append(
                tuple(
                    g for g in range(ng)
                    if all(action.table[g, c] == c for c in below)
                )
            )
        # rep_table[a, g] = least member of the coset g * pointwise(a)
        self.rep_table = np.empty((nl, ng), dtype=np.int32)
        for a in range(nl):
            ks = self.pointwise[a]
            for g in range(ng):
                self.rep_table[a, g] = min(self.group.mul(g, k) for k in ks)

    def canonical(self, g: int, a: int) -> "SGLElement":
        return SGLElement(self, int(self.rep_table[a, g]), a)

    def idempotent(self, a: int) -> "SGLElement":
        return self.canonical(self.group.identity_index, a)

    def all_elements(self):
        out = []
        for a in range(len(self.lattice)):
            for r in sorted(set(int(x) for x in self.rep_table[a])):
                out.append(SGLElement(self, r, a))
        return out


class SGLElement:
    """A canonical pair g_a; g is stored as a group index."""

    __slots__ = ("context", "g", "a")

    def __init__(self, context: SGLContext, g: int, a: int):
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "g", int(g))
        object.__setattr__(self, "a", int(a))

    def __setattr__(self, name, value):
        raise AttributeError("SGLElement is immutable")

    def __mul__(self, other: "SGLElement") -> "SGLElement":
        ctx = self.context
        if ctx is not other.context:
            raise ValueError("elements from different contexts")
        c = int(ctx.lattice.meet[ctx.action.table[ctx.ginv[other.g], self.a], other.a])
        return ctx.canonical(ctx.group.mul(self.g, other.g), c)

    def inverse(self) -> "SGLElement":
        """The semigroup inverse (g^-1) at g.a."""
        ctx = self.context
        return ctx.canonical(int(ctx.ginv[self.g]), self.act_on_a())

    def act_on_a(self) -> int:
        return int(self.context.action.table[self.g, self.a])

    def is_idempotent(self) -> bool:
        return (self * self) == self

    def identity_element(self) -> "SGLElement":
        ctx = self.context
        return ctx.canonical(ctx.group.identity_index, ctx.lattice.top)

    def group_element(self) -> Permutation:
        return self.context.group.elements[self.g]

    def lattice_element(self):
        return self.context.lattice.elements[self.a]

    def key(self):
        return (self.a, self.context.group.elements[self.g].images)

    def __eq__(self, other):
        return (
            isinstance(other, SGLElement)
            and self.context is other.context
            and self.g == other.g
            and self.a == other.a
        )

    def __hash__(self):
        return hash((SGLElement, self.g, self.a))

    def __repr__(self):
        return f"SGL(g={self.context.group.elements[self.g]}, a={self.lattice_element()})"


def sgl_canonical(context: SGLContext, g: Permutation, a: int) -> SGLElement:
    return context.canonical(context.group.index(g), a)


def sgl_monoid(action: GroupAction):
    """The full pair monoid as a FiniteMonoid, with a vectorized table."""
    ctx = sgl_context(action)
    elements = sorted(ctx.all_elements(), key=lambda e: e.key())
    n = len(elements)
    nl, ng = len(ctx.lattice), len(ctx.group)
    eidx = np.full((nl, ng), -1, dtype=np.int32)
    for k, e in enumerate(elements):
        eidx[e.a, e.g] = k
    garr = np.array([e.g for e in elements], dtype=np.int32)
    aarr = np.array([e.a for e in elements], dtype=np.int32)
    act = ctx.action.table
    meet = ctx.lattice.meet
    gtab = ctx.group.table
    table = np.empty((n, n), dtype=np.int32)
    hinv = ctx.ginv[garr]
    for i in range(n):
        c = meet[act[hinv, aarr[i]], aarr]
        r = ctx.rep_table[c, gtab[garr[i], garr]]
        table[i] = eidx[c, r]
    identity = int(eidx[ctx.lattice.top, ctx.group.identity_index])
    monoid = FiniteMonoid(elements, table, identity, None)
    monoid.generator_indices = tuple(
        sorted(monoid.index(g) for g in _sgl_generators(ctx))
    )
    return monoid, ctx


def _sgl_generators(ctx: SGLContext):
    """Units' generators plus one idempotent per lattice element."""
    gens = []
    for g in ctx.group.generating_set():
        gens.append(ctx.canonical(g, ctx.lattice.top))
    for a in range(len(ctx.lattice)):
        gens.append(ctx.idempotent(a))
    return gens


@dataclass(frozen=True)
class SGLOrderReport:
    formula_total: int
    enumerated_total: int
    breakdown: tuple  # (lattice element, coset count) per element

    @property
    def agree(self) -> bool:
        return self.formula_total == self.enumerated_total


def sgl_order(action: GroupAction) -> SGLOrderReport:
    """Order both by the stabilizer-index formula and by product closure.

    The enumeration side closes the units' generators together with the
    idempotents under products, then checks the closure reproduces exactly
    the canonical pair set; the formula side never feeds into it.
    """
    ctx = sgl_context(action)
    ng = len(ctx.group)
    breakdown = tuple(
        (ctx.lattice.elements[a], ng // len(ctx.pointwise[a]))
        for a in range(len(ctx.lattice))
    )
    formula = sum(c for _, c in breakdown)

    gens = _sgl_generators(ctx)
    seen = {ctx.idempotent(ctx.lattice.top)}
    seen.update(gens)
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                p = x * g
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    if seen != set(ctx.all_elements()):
        raise RuntimeError("closure disagrees with the canonical pair enumeration")
    if formula != len(seen):
        raise RuntimeError(
            f"order formula {formula} disagrees with enumeration {len(seen)}"
        )
    return SGLOrderReport(formula, len(seen), breakdown)


def maximal_subgroup_at(action: GroupAction, a: int) -> FiniteMonoid:
    """The group of pairs g_a with g.a = a, one element per coset."""
    ctx = sgl_context(action)
    stab = stabilizers(action, a)
    members = sorted(
        {ctx.canonical(g, a) for g in stab.full}, key=lambda e: e.key()
    )
    return FiniteMonoid.from_elements(
        members, identity=ctx.idempotent(a), multiply=lambda x, y: x * y
    )


def subsets_to_partial_bijection(element: SGLElement) -> PartialBijection:
    """The restriction map g_a -> g|_a realizing the subsets monoid inside I_n."""
    g = element.group_element()
    a = element.lattice_element()
    return PartialBijection(g.n, sorted((x, g.apply(x)) for x in a))


@dataclass(frozen=True)
class PartitionLatticeReport:
    """Definitional order of the partition-lattice monoid vs the Young-index sum.

    The two agree for n <= 3 and diverge at n = 4; `matches_young_formula`
    records which case holds, computed rather than assumed.
    """

    n: int
    definitional_order: int
    young_formula_value: int

    @property
    def matches_young_formula(self) -> bool:
        return self.definitional_order == self.young_formula_value

    def flag_lines(self):
        lines = [
            f"definitional order: {self.definitional_order}",
            f"young index formula: {self.young_formula_value}",
        ]
        if not self.matches_young_formula:
            lines.append(
                "FLAG: definitional order differs from the Young-subgroup index sum"
            )
        return lines


def partition_lattice_report(n: int) -> PartitionLatticeReport:
    lat, action = make_lattice("set_partitions", n)
    report = sgl_order(action)
    young = 0
    for blocks in lat.elements:
        sizes = sorted((len(b) for b in blocks), reverse=True)
        young += math.factorial(n) // math.prod(math.factorial(s) for s in sizes)
    return PartitionLatticeReport(n, report.formula_total, young)
