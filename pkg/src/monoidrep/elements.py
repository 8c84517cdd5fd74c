"""Elements of the three running monoids and a generic closure engine.

Points are 1-based: a degree-n object acts on [n] = {1, ..., n}.
Composition is right-to-left everywhere: (s * t)(x) = s(t(x)), i.e. t acts
first.  All element types are immutable values.
"""

from __future__ import annotations

import itertools
import re

import numpy as np

DEFAULT_CLOSURE_CAP = 100_000

# associativity is checked on all triples up to this size, sampled above it
FULL_ASSOC_CHECK_LIMIT = 200


class DegreeMismatchError(ValueError):
    """Raised when composing elements of different degrees."""


class ClosureCapError(RuntimeError):
    """Raised when a closure run exceeds its element cap."""


class ElementParseError(ValueError):
    """Raised on malformed element text."""


class PartialBijection:
    """A partial bijection of [n]: a bijection X -> Y with X, Y subsets of [n].

    Stored as a sorted tuple of (point, image) pairs.  The empty domain gives
    the zero map, a valid element at every degree.
    """

    __slots__ = ("n", "pairs")

    def __init__(self, n: int, pairs):
        pairs = tuple((int(d), int(i)) for d, i in pairs)
        if n < 1:
            raise ValueError("degree must be >= 1")
        dom = tuple(d for d, _ in pairs)
        img = tuple(i for _, i in pairs)
        if any(not 1 <= p <= n for p in dom + img):
            raise ValueError(f"point out of range 1..{n}: {pairs}")
        if any(dom[k] >= dom[k + 1] for k in range(len(dom) - 1)):
            raise ValueError("domain points must be strictly increasing")
        if len(set(img)) != len(img):
            raise ValueError("image points must be distinct")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "pairs", pairs)

    def __setattr__(self, name, value):
        raise AttributeError("PartialBijection is immutable")

    @classmethod
    def identity(cls, n: int) -> "PartialBijection":
        return cls(n, [(x, x) for x in range(1, n + 1)])

    @classmethod
    def zero(cls, n: int) -> "PartialBijection":
        return cls(n, [])

    @classmethod
    def partial_identity(cls, n: int, points) -> "PartialBijection":
        return cls(n, [(x, x) for x in sorted(points)])

    @property
    def domain(self) -> tuple:
        return tuple(d for d, _ in self.pairs)

    @property
    def image(self) -> tuple:
        return tuple(i for _, i in self.pairs)

    @property
    def rank(self) -> int:
        return len(self.pairs)

    def apply(self, x: int):
        for d, i in self.pairs:
            if d == x:
                return i
        return None

    def __mul__(self, other: "PartialBijection") -> "PartialBijection":
        if not isinstance(other, PartialBijection):
            return NotImplemented
        if self.n != other.n:
            raise DegreeMismatchError(f"degrees differ: {self.n} != {other.n}")
        lookup = dict(self.pairs)
        new = [(d, lookup[i]) for d, i in other.pairs if i in lookup]
        return PartialBijection(self.n, new)

    def inverse(self) -> "PartialBijection":
        """The semigroup inverse s*: dom s* = im s, with s s* s = s."""
        return PartialBijection(self.n, sorted((i, d) for d, i in self.pairs))

    def is_idempotent(self) -> bool:
        return all(d == i for d, i in self.pairs)

    def identity_element(self) -> "PartialBijection":
        return PartialBijection.identity(self.n)

    def key(self):
        return (self.domain, self.image)

    def __eq__(self, other):
        return (
            isinstance(other, PartialBijection)
            and self.n == other.n
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return hash((PartialBijection, self.n, self.pairs))

    def __repr__(self):
        return f"PartialBijection({self.n}, {list(self.pairs)})"

    def __str__(self):
        return cycle_link_format(self)


class Transformation:
    """A full map [n] -> [n], stored as the image tuple (images[i-1] = s(i))."""

    __slots__ = ("n", "images")

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        n = len(images)
        if n < 1:
            raise ValueError("degree must be >= 1")
        if any(not 1 <= x <= n for x in images):
            raise ValueError(f"image out of range 1..{n}: {images}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Transformation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Transformation":
        return cls(range(1, n + 1))

    def apply(self, x: int) -> int:
        return self.images[x - 1]

    @property
    def rank(self) -> int:
        return len(set(self.images))

    def image_set(self) -> tuple:
        return tuple(sorted(set(self.images)))

    def kernel(self) -> tuple:
        """The fibers of the map, as a sorted tuple of sorted tuples."""
        fibers = {}
        for x in range(1, self.n + 1):
            fibers.setdefault(self.images[x - 1], []).append(x)
        return tuple(sorted(tuple(f) for f in fibers.values()))

    def __mul__(self, other: "Transformation") -> "Transformation":
        if not isinstance(other, Transformation):
            return NotImplemented
        if self.n != other.n:
            raise DegreeMismatchError(f"degrees differ: {self.n} != {other.n}")
        cls = Permutation if isinstance(self, Permutation) and isinstance(other, Permutation) else Transformation
        return cls(self.images[y - 1] for y in other.images)

    def is_idempotent(self) -> bool:
        return all(self.images[y - 1] == y for y in self.images)

    def identity_element(self) -> "Transformation":
        return type(self).identity(self.n)

    def key(self):
        return self.images

    def __eq__(self, other):
        return isinstance(other, Transformation) and self.images == other.images

    def __hash__(self):
        return hash((Transformation, self.images))

    def __repr__(self):
        return f"{type(self).__name__}({list(self.images)})"

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.images) + "]"


class Permutation(Transformation):
    """A Transformation whose images are a bijection of [n]."""

    __slots__ = ()

    def __init__(self, images):
        super().__init__(images)
        if len(set(self.images)) != self.n:
            raise ValueError(f"not a bijection: {self.images}")

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(inv)

    def sign(self) -> int:
        """Parity by inversion count."""
        inv = sum(
            1
            for a, b in itertools.combinations(self.images, 2)
            if a > b
        )
        return -1 if inv % 2 else 1

    @classmethod
    def from_cycle(cls, n: int, cycle) -> "Permutation":
        images = list(range(1, n + 1))
        cycle = list(cycle)
        for k, x in enumerate(cycle):
            images[x - 1] = cycle[(k + 1) % len(cycle)]
        return cls(images)

    def to_partial_bijection(self) -> PartialBijection:
        return PartialBijection(self.n, [(x, self.images[x - 1]) for x in range(1, self.n + 1)])


def canonical_key(x):
    """Sort key giving the canonical element order used for monoid tables."""
    if hasattr(x, "key"):
        return x.key()
    if isinstance(x, tuple):
        return tuple(canonical_key(c) for c in x)
    raise TypeError(f"no canonical order for {type(x).__name__}")


class FiniteMonoid:
    """An enumerated finite monoid with a dense, index-valued Cayley table.

    Elements are stored in canonical order; table[i, j] is the index of
    elements[i] * elements[j].
    """

    def __init__(self, elements, table, identity_index: int, generator_indices=None, *, validate=True):
        self.elements = tuple(elements)
        self.table = np.asarray(table, dtype=np.int32)
        self.identity_index = int(identity_index)
        self.generator_indices = tuple(generator_indices) if generator_indices is not None else None
        self._index = {e: k for k, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate elements")
        if validate:
            self._validate()

    def _validate(self):
        n = len(self.elements)
        if self.table.shape != (n, n):
            raise ValueError("table shape mismatch")
        if n and (self.table.min() < 0 or self.table.max() >= n):
            raise ValueError("table not closed")
        e = self.identity_index
        idx = np.arange(n, dtype=np.int32)
        if not (np.array_equal(self.table[e], idx) and np.array_equal(self.table[:, e], idx)):
            raise ValueError("identity laws fail")
        t = self.table
        if n <= FULL_ASSOC_CHECK_LIMIT:
            if not np.array_equal(t[t, :], t[:, t]):
                raise ValueError("associativity fails")
        else:
            rng = np.random.default_rng(0)
            i, j, k = rng.integers(0, n, size=(3, 20_000))
            if not np.array_equal(t[t[i, j], k], t[i, t[j, k]]):
                raise ValueError("associativity fails on sampled triples")

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def index(self, element) -> int:
        return self._index[element]

    def idempotent_indices(self) -> tuple:
        return tuple(i for i in range(len(self)) if self.table[i, i] == i)

    def is_group(self) -> bool:
        e = self.identity_index
        n = len(self)
        return all(
            any(self.table[s, t] == e and self.table[t, s] == e for t in range(n))
            for s in range(n)
        )

    def generating_set(self) -> tuple:
        """Generator indices; computed greedily if none were recorded."""
        if self.generator_indices is not None:
            return self.generator_indices
        gens = []
        reached = self._generated_by(gens)
        n = len(self)
        while len(reached) < n:
            new = min(i for i in range(n) if i not in reached)
            gens.append(new)
            reached = self._generated_by(gens)
        self.generator_indices = tuple(gens)
        return self.generator_indices

    def _generated_by(self, gens):
        reached = {self.identity_index}
        frontier = [self.identity_index]
        while frontier:
            nxt = []
            for i in frontier:
                for g in gens:
                    p = int(self.table[i, g])
                    if p not in reached:
                        reached.add(p)
                        nxt.append(p)
            frontier = nxt
        return reached

    @classmethod
    def from_elements(cls, elements, multiply=None, identity=None, generators=None) -> "FiniteMonoid":
        """Build a monoid from an explicit closed element set."""
        if multiply is None:
            multiply = lambda a, b: a * b
        if identity is None:
            identity = elements[0].identity_element()
        ordered = sorted(set(elements) | {identity}, key=canonical_key)
        index = {e: k for k, e in enumerate(ordered)}
        n = len(ordered)
        table = np.empty((n, n), dtype=np.int32)
        for i, a in enumerate(ordered):
            row = table[i]
            for j, b in enumerate(ordered):
                try:
                    row[j] = index[multiply(a, b)]
                except KeyError:
                    raise ValueError("element set is not multiplicatively closed") from None
        gen_idx = None
        if generators is not None:
            gen_idx = tuple(index[g] for g in generators)
        return cls(ordered, table, index[identity], gen_idx)


def closure(generators, multiply=None, identity=None, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteMonoid:
    """Breadth-first product closure of a generator list.

    The result is deterministic: elements are re-sorted into canonical order
    before the dense table is built, so two runs on the same generators give
    identical monoids.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    if multiply is None:
        multiply = lambda a, b: a * b
    if identity is None:
        identity = generators[0].identity_element()
    seen = {identity}
    frontier = [identity]
    for g in generators:
        if g not in seen:
            seen.add(g)
            frontier.append(g)
    while frontier:
        nxt = []
        for a in frontier:
            for g in generators:
                p = multiply(a, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
                    if len(seen) > cap:
                        raise ClosureCapError(f"closure exceeded cap of {cap} elements")
        frontier = nxt
    return FiniteMonoid.from_elements(sorted(seen, key=canonical_key), multiply, identity, generators)


def product_monoid(*factors: FiniteMonoid) -> FiniteMonoid:
    """Direct product; elements are tuples, one coordinate per factor."""
    if not factors:
        raise ValueError("need at least one factor")
    elements = [tuple(t) for t in itertools.product(*(m.elements for m in factors))]
    sizes = [len(m) for m in factors]
    strides = []
    acc = 1
    for s in reversed(sizes):
        strides.append(acc)
        acc *= s
    strides.reverse()

    table = np.zeros((acc, acc), dtype=np.int64)
    for m, stride in zip(factors, strides):
        t = m.table.astype(np.int64) * stride
        n = len(m)
        reps_in = acc // (n * stride)
        # index pattern: coordinate k of flat index i is (i // stride) % n
        block = np.kron(
            np.kron(np.ones((reps_in, reps_in), dtype=np.int64), t),
            np.ones((stride, stride), dtype=np.int64),
        )
        table += block
    identity = sum(m.identity_index * s for m, s in zip(factors, strides))
    gens = None
    if all(m.generator_indices is not None for m in factors):
        gens = []
        for k, m in enumerate(factors):
            for g in m.generator_indices:
                coords = [f.identity_index for f in factors]
                coords[k] = g
                gens.append(sum(c * s for c, s in zip(coords, strides)))
    return FiniteMonoid(elements, table.astype(np.int32), identity, gens)


# -- enumerations of the running examples ----------------------------------

def all_partial_bijections(n: int):
    out = []
    points = range(1, n + 1)
    for m in range(n + 1):
        for dom in itertools.combinations(points, m):
            for img in itertools.permutations(points, m):
                out.append(PartialBijection(n, zip(dom, img)))
    return sorted(out, key=canonical_key)


def all_transformations(n: int):
    return sorted(
        (Transformation(images) for images in itertools.product(range(1, n + 1), repeat=n)),
        key=canonical_key,
    )


def all_permutations(n: int):
    return sorted(
        (Permutation(images) for images in itertools.permutations(range(1, n + 1))),
        key=canonical_key,
    )


def symmetric_inverse_monoid(n: int) -> FiniteMonoid:
    """I_n, fully enumerated, with a standard small generating set recorded."""
    m = FiniteMonoid.from_elements(all_partial_bijections(n))
    gens = {PartialBijection.partial_identity(n, range(1, n))}
    if n >= 2:
        gens.add(Permutation.from_cycle(n, (1, 2)).to_partial_bijection())
        gens.add(Permutation.from_cycle(n, range(1, n + 1)).to_partial_bijection())
    m.generator_indices = tuple(sorted(m.index(g) for g in gens))
    return m


def full_transformation_monoid(n: int) -> FiniteMonoid:
    """T_n, fully enumerated."""
    m = FiniteMonoid.from_elements(all_transformations(n))
    gens = set()
    if n >= 2:
        gens.add(Permutation.from_cycle(n, (1, 2)))
        gens.add(Permutation.from_cycle(n, range(1, n + 1)))
        gens.add(Transformation([1, 1] + list(range(3, n + 1))))
    else:
        gens.add(Transformation.identity(1))
    m.generator_indices = tuple(sorted(m.index(Transformation(g.images)) for g in gens))
    return m


def symmetric_group(n: int) -> FiniteMonoid:
    """S_n as a FiniteMonoid of Permutations."""
    m = FiniteMonoid.from_elements(all_permutations(n))
    gens = {Permutation.identity(n)} if n < 2 else {
        Permutation.from_cycle(n, (1, 2)),
        Permutation.from_cycle(n, range(1, n + 1)),
    }
    m.generator_indices = tuple(sorted(m.index(g) for g in gens))
    return m


# -- cycle-link text form for partial bijections ----------------------------

_TOKEN_RE = re.compile(r"\(([^()\[\]]*)\)|\[([^()\[\]]*)\]")


def cycle_link_format(s: PartialBijection) -> str:
    """Canonical juxtaposition of disjoint cycles "(...)" and links "[...]".

    Cycles are rotated to start at their least point; blocks are emitted
    cycles first, then links, each group sorted by least point.  The zero
    map formats as "0".  Points in neither the domain nor the image are
    omitted (the degree is carried separately).
    """
    if not s.pairs:
        return "0"
    succ = dict(s.pairs)
    dom = set(s.domain)
    img = set(s.image)
    cycles, links = [], []
    used = set()
    for start in sorted(dom - img):  # link heads
        chain = [start]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        used.update(chain)
        links.append(chain)
    for x in sorted(dom - used):  # what remains decomposes into cycles
        if x in used:
            continue
        cyc = [x]
        while succ[cyc[-1]] != x:
            cyc.append(succ[cyc[-1]])
        used.update(cyc)
        least = cyc.index(min(cyc))
        cycles.append(cyc[least:] + cyc[:least])
    cycles.sort(key=min)
    links.sort(key=min)
    parts = ["(" + ",".join(map(str, c)) + ")" for c in cycles]
    parts += ["[" + ",".join(map(str, c)) + "]" for c in links]
    return "".join(parts)


def cycle_link_parse(text: str, n: int) -> PartialBijection:
    """Inverse of cycle_link_format at degree n."""
    text = text.strip()
    if text in ("", "0"):
        return PartialBijection.zero(n)
    pos = 0
    pairs = []
    seen_points = set()
    for match in _TOKEN_RE.finditer(text):
        if text[pos:match.start()].strip():
            raise ElementParseError(f"malformed bracket near {text[pos:match.start()]!r}")
        pos = match.end()
        cycle_body, link_body = match.group(1), match.group(2)
        body = cycle_body if cycle_body is not None else link_body
        try:
            points = [int(p) for p in body.split(",")] if body.strip() else []
        except ValueError:
            raise ElementParseError(f"malformed block {match.group(0)!r}") from None
        if any(not 1 <= p <= n for p in points):
            raise ElementParseError(f"point out of range 1..{n} in {match.group(0)!r}")
        for p in points:
            if p in seen_points:
                raise ElementParseError(f"repeated point {p}")
            seen_points.add(p)
        if cycle_body is not None:
            if not points:
                raise ElementParseError("empty cycle")
            for k, p in enumerate(points):
                pairs.append((p, points[(k + 1) % len(points)]))
        else:
            if len(points) < 2:
                raise ElementParseError("a link needs at least two points")
            for k in range(len(points) - 1):
                pairs.append((points[k], points[k + 1]))
    if pos != len(text) and text[pos:].strip():
        raise ElementParseError(f"malformed bracket near {text[pos:]!r}")
    if not pairs:
        raise ElementParseError("no blocks found")
    return PartialBijection(n, sorted(pairs))
