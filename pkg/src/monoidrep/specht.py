"""Integer partitions, Young tableaux/tabloids, and Specht representations.

Labels are arbitrary distinct integers, not just 1..n, so the same machinery
serves both the plain symmetric-group case and relabelled copies living on
blocks.  The group acting on a label set is realized as the symmetric group
on positions of the sorted labels.

A Specht representation is built exactly as the span of all polytabloids
(the full, dependent family); the standard-tableaux count enters only as an
independent dimension check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .elements import FiniteMonoid, Permutation, symmetric_group
from .linrep import (
    Matrix,
    ONE,
    Representation,
    Subspace,
    ZERO,
    outer_tensor,
)


def partitions(n: int) -> tuple:
    """All partitions of n as weakly decreasing tuples, in decreasing lex order."""
    if n < 0:
        raise ValueError("n must be >= 0")

    def rec(total, maxpart):
        if total == 0:
            yield ()
            return
        for first in range(min(total, maxpart), 0, -1):
            for rest in rec(total - first, first):
                yield (first,) + rest

    return tuple(rec(n, n))


def p_count(n: int) -> int:
    """Number of partitions of n, cross-checked against the generating function."""
    count = len(partitions(n))
    # coefficient of x^n in prod_{k>=1} 1/(1-x^k), truncated at degree n
    series = [1] + [0] * n
    for k in range(1, n + 1):
        for d in range(k, n + 1):
            series[d] += series[d - k]
    if series[n] != count:
        raise RuntimeError(f"partition count {count} disagrees with generating function {series[n]}")
    return count


def compositions(n: int) -> tuple:
    """All compositions of n (ordered tuples of positive parts)."""
    out = []
    for cuts in itertools.product((0, 1), repeat=n - 1):
        parts = []
        run = 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return tuple(sorted(out))


def standard_tableaux_count(shape) -> int:
    """Direct enumeration of standard fillings (no hook-length formula)."""
    shape = tuple(shape)
    rows = len(shape)

    def rec(filled):
        if sum(filled) == sum(shape):
            return 1
        total = 0
        for r in range(rows):
            if filled[r] < shape[r] and (r == 0 or filled[r - 1] > filled[r]):
                total += rec(filled[:r] + (filled[r] + 1,) + filled[r + 1:])
        return total

    return rec((0,) * rows)


def _check_shape(shape, labels):
    shape = tuple(int(x) for x in shape)
    labels = tuple(sorted(int(x) for x in labels))
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)) or any(p < 1 for p in shape):
        raise ValueError(f"not a partition shape: {shape}")
    if sum(shape) != len(labels) or len(set(labels)) != len(labels):
        raise ValueError("label set must match the shape size, without repeats")
    return shape, labels


def tabloids(shape, labels) -> tuple:
    """All tabloids of the given shape, each a tuple of sorted row tuples,
    listed in lexicographic order."""
    shape, labels = _check_shape(shape, labels)

    def rec(remaining, parts):
        if not parts:
            yield ()
            return
        first = parts[0]
        for row in itertools.combinations(remaining, first):
            rest = tuple(x for x in remaining if x not in row)
            for tail in rec(rest, parts[1:]):
                yield (row,) + tail

    return tuple(sorted(rec(labels, shape)))


def tableaux(shape, labels) -> tuple:
    """All row-wise fillings (tuples of row tuples, order inside rows kept)."""
    shape, labels = _check_shape(shape, labels)
    out = []
    for perm in itertools.permutations(labels):
        rows = []
        pos = 0
        for part in shape:
            rows.append(tuple(perm[pos:pos + part]))
            pos += part
        out.append(tuple(rows))
    return tuple(out)


def tabloid_of(tableau) -> tuple:
    return tuple(tuple(sorted(row)) for row in tableau)


def column_group(tableau) -> tuple:
    """The column-preserving permutations as (sign, {label: label}) pairs."""
    cols = []
    ncols = len(tableau[0]) if tableau else 0
    for c in range(ncols):
        col = tuple(row[c] for row in tableau if len(row) > c)
        cols.append(col)
    out = []
    per_col = []
    for col in cols:
        perms = []
        for images in itertools.permutations(range(len(col))):
            sign = 1
            for i in range(len(images)):
                for j in range(i + 1, len(images)):
                    if images[i] > images[j]:
                        sign = -sign
            perms.append((sign, {col[i]: col[images[i]] for i in range(len(col))}))
        per_col.append(perms)
    for combo in itertools.product(*per_col):
        sign = 1
        mapping = {}
        for s, m in combo:
            sign *= s
            mapping.update(m)
        out.append((sign, mapping))
    return tuple(out)


def polytabloid(tableau, tabloid_index) -> tuple:
    """The signed column-group sum of {T}, as a vector over the tabloid basis."""
    vec = [ZERO] * len(tabloid_index)
    for sign, mapping in column_group(tableau):
        moved = tabloid_of(tuple(tuple(mapping.get(x, x) for x in row) for row in tableau))
        vec[tabloid_index[moved]] += sign
    return tuple(vec)


def _label_action(perm: Permutation, labels):
    """The permutation transported from positions 1..m to the sorted labels."""
    return {labels[i]: labels[perm.apply(i + 1) - 1] for i in range(len(labels))}


def tabloid_module(shape, labels, group: FiniteMonoid = None) -> Representation:
    """Permutation representation on the tabloid basis."""
    shape, labels = _check_shape(shape, labels)
    if group is None:
        group = symmetric_group(len(labels))
    basis = tabloids(shape, labels)
    index = {t: k for k, t in enumerate(basis)}
    mats = []
    for g in group.elements:
        mapping = _label_action(g, labels)
        rows = [[ZERO] * len(basis) for _ in basis]
        for k, t in enumerate(basis):
            moved = tabloid_of(tuple(tuple(mapping[x] for x in row) for row in t))
            rows[index[moved]][k] = ONE
        mats.append(Matrix(rows))
    return Representation(group, mats)


@dataclass(frozen=True)
class SpechtData:
    shape: tuple
    labels: tuple
    tabloids: tuple
    polytabloid_vectors: tuple  # one per tableau, over the tabloid basis
    subspace: Subspace  # echelon basis inside the tabloid module
    rep: Representation  # the action in echelon coordinates


def specht_rep(shape, labels=None, group: FiniteMonoid = None) -> SpechtData:
    """The Specht representation: the span of all polytabloids of the shape.

    The dimension is checked against a direct standard-tableaux enumeration.
    Results are cached per (shape, labels); the data is immutable.
    """
    shape = tuple(shape)
    if labels is None:
        labels = tuple(range(1, sum(shape) + 1))
    shape, labels = _check_shape(shape, labels)
    cache_key = (shape, labels) if group is None else None
    if cache_key in _SPECHT_CACHE:
        return _SPECHT_CACHE[cache_key]
    if group is None:
        group = symmetric_group(len(labels))
    basis = tabloids(shape, labels)
    index = {t: k for k, t in enumerate(basis)}
    vectors = tuple(polytabloid(t, index) for t in tableaux(shape, labels))
    sub = Subspace.from_vectors(len(basis), vectors)
    expected = standard_tableaux_count(shape)
    if sub.dim != expected:
        raise RuntimeError(
            f"polytabloid span has dimension {sub.dim}, but {expected} standard tableaux"
        )
    mats = []
    for g in group.elements:
        mapping = _label_action(g, labels)
        cols = []
        for b in sub.basis:
            image = [ZERO] * len(basis)
            for k, t in enumerate(basis):
                if b[k] == 0:
                    continue
                moved = tabloid_of(tuple(tuple(mapping[x] for x in row) for row in t))
                image[index[moved]] += b[k]
            cols.append(sub.coords(image))
        mats.append(Matrix(list(zip(*cols))))
    rep = Representation(group, mats)
    data = SpechtData(shape, labels, basis, vectors, sub, rep)
    if cache_key is not None:
        _SPECHT_CACHE[cache_key] = data
    return data


_SPECHT_CACHE = {}


def young_tensor(shapes, blocks):
    """Outer tensor of Specht factors, one per (shape, label block).

    Returns (Representation over the product of the block symmetric groups,
    list of per-block SpechtData).
    """
    shapes = [tuple(s) for s in shapes]
    blocks = [tuple(sorted(b)) for b in blocks]
    if len(shapes) != len(blocks):
        raise ValueError("one shape per block required")
    flat = [x for b in blocks for x in b]
    if len(set(flat)) != len(flat):
        raise ValueError("blocks must be disjoint")
    for s, b in zip(shapes, blocks):
        if sum(s) != len(b):
            raise ValueError(f"shape {s} does not fit block {b}")
    datas = [specht_rep(s, b) for s, b in zip(shapes, blocks)]
    if len(datas) == 1:
        return datas[0].rep, datas
    return outer_tensor(*(d.rep for d in datas)), datas
