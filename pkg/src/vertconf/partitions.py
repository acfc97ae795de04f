"""Combinatorial core: cluster shapes, the index table, ray partitions.

A *ray partition* of a shape ``k = (k_1, ..., k_r)`` splits the table of
indices ``(i, j)`` (``1 <= j <= k_i``) into totally ordered blocks, labelled
by increasing minima, where each block's order starts at its minimum.  All
values here are immutable and every operation is a pure function.

Canonical text form of a ray partition: blocks separated by ``|``, indices
written ``i.j``, e.g. ``1.1 2.1 | 1.2``.
"""
from __future__ import annotations

import enum
import functools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    IndexOutOfShape,
    NotAPartition,
    R1Violation,
    R2Violation,
    TotalMismatch,
    VertconfError,
)
from .unionfind import UnionFind


class TableIndex(NamedTuple):
    """An entry ``(i, j)`` of the table; tuple order is the lexicographic order."""

    cluster: int
    position: int

    def __str__(self):
        return f"{self.cluster}.{self.position}"


@dataclass(frozen=True)
class ClusterShape:
    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(k) for k in self.sizes)
        if any(k < 1 for k in sizes):
            raise VertconfError(f"cluster sizes must be positive, got {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def parse(cls, text: str) -> "ClusterShape":
        """Parse ``"2,2,2"``; an empty string gives the empty shape."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(tok) for tok in text.split(",")))
        except ValueError:
            raise VertconfError(f"cannot parse shape {text!r}") from None

    @property
    def r(self) -> int:
        return len(self.sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def multiplicity(self, k: int) -> int:
        """Number of clusters of size ``k``."""
        return self.sizes.count(k)

    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.sizes).items()))

    def indices(self) -> list[TableIndex]:
        """The table in increasing lexicographic order."""
        return [
            TableIndex(i, j)
            for i, k in enumerate(self.sizes, start=1)
            for j in range(1, k + 1)
        ]

    def __contains__(self, index) -> bool:
        i, j = index
        return 1 <= i <= self.r and 1 <= j <= self.sizes[i - 1]

    def __str__(self):
        return ",".join(map(str, self.sizes))


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def compare_weights(a, b) -> Ordering:
    """Compare two weight vectors lexicographically after zero-padding.

    Both vectors must have the same total.
    """
    a = tuple(a.entries if isinstance(a, WeightVector) else a)
    b = tuple(b.entries if isinstance(b, WeightVector) else b)
    total = sum(a)
    if total != sum(b):
        raise TotalMismatch(f"weights {a} and {b} have different totals")
    pa = a + (0,) * (total - len(a))
    pb = b + (0,) * (total - len(b))
    if pa < pb:
        return Ordering.LESS
    if pa > pb:
        return Ordering.GREATER
    return Ordering.EQUAL


@functools.total_ordering
@dataclass(frozen=True)
class WeightVector:
    """Block sizes of a ray partition; ordered by :func:`compare_weights`."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        if any(x < 1 for x in entries):
            raise VertconfError(f"weight entries must be positive, got {entries}")
        object.__setattr__(self, "entries", entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    def __lt__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return compare_weights(self, other) is Ordering.LESS

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class ComponentLabel:
    """A tuple of permutations, one per cluster, in one-line notation.

    ``permutations[i - 1]`` lists the positions ``j`` of cluster ``i`` from
    the lowest point upward.  Only meaningful for ``q = 1``.
    """

    permutations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in s) for s in self.permutations)
        for s in perms:
            if sorted(s) != list(range(1, len(s) + 1)):
                raise VertconfError(f"{s} is not a permutation of 1..{len(s)}")
        object.__setattr__(self, "permutations", perms)

    @classmethod
    def identity(cls, shape: ClusterShape) -> "ComponentLabel":
        return cls(tuple(tuple(range(1, k + 1)) for k in shape.sizes))

    @classmethod
    def parse(cls, text: str, shape: ClusterShape) -> "ComponentLabel":
        """Parse ``id`` or ``"2,1;1,2;1"`` (clusters separated by ``;``)."""
        text = text.strip()
        if text == "id":
            return cls.identity(shape)
        try:
            perms = tuple(
                tuple(int(x) for x in part.split(",")) for part in text.split(";")
            )
        except ValueError:
            raise VertconfError(f"cannot parse component {text!r}") from None
        label = cls(perms)
        if label.sizes != shape.sizes:
            raise VertconfError(f"component {text!r} does not fit shape {shape}")
        return label

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.permutations)

    def is_identity(self) -> bool:
        return all(s == tuple(range(1, len(s) + 1)) for s in self.permutations)

    def rank(self) -> int:
        """Mixed-radix Lehmer rank; cluster 1 is the most significant digit."""
        code = 0
        for s in self.permutations:
            code = code * math.factorial(len(s)) + permutation_rank(s)
        return code

    @classmethod
    def from_rank(cls, shape: ClusterShape, code: int) -> "ComponentLabel":
        perms = []
        for k in reversed(shape.sizes):
            code, digit = divmod(code, math.factorial(k))
            perms.append(permutation_unrank(k, digit))
        return cls(tuple(reversed(perms)))

    def __str__(self):
        return ";".join(",".join(map(str, s)) for s in self.permutations)


def permutation_rank(perm: Sequence[int]) -> int:
    """Lexicographic rank of a permutation of ``1..n`` (identity has rank 0)."""
    n = len(perm)
    rank = 0
    for a in range(n):
        smaller = sum(1 for b in range(a + 1, n) if perm[b] < perm[a])
        rank += smaller * math.factorial(n - 1 - a)
    return rank


def permutation_unrank(n: int, rank: int) -> tuple[int, ...]:
    pool = list(range(1, n + 1))
    out = []
    for a in range(n):
        f = math.factorial(n - 1 - a)
        d, rank = divmod(rank, f)
        out.append(pool.pop(d))
    return tuple(out)


@dataclass(frozen=True)
class RayPartition:
    """Ordered blocks of table indices; each block is listed in its ray order.

    Construct through :func:`validate_ray_partition` unless the blocks are
    known to satisfy the axioms.
    """

    shape: ClusterShape
    blocks: tuple[tuple[TableIndex, ...], ...]

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def weight(self) -> WeightVector:
        return WeightVector(tuple(len(b) for b in self.blocks))

    def stacked_order(self) -> list[TableIndex]:
        """Last block first, each block in its own order."""
        return [x for block in reversed(self.blocks) for x in block]

    def sigma(self) -> ComponentLabel:
        seqs = [[] for _ in self.shape.sizes]
        for i, j in self.stacked_order():
            seqs[i - 1].append(j)
        return ComponentLabel(tuple(tuple(s) for s in seqs))

    def agility(self) -> int:
        uf = UnionFind(len(self.blocks))
        first_block = {}
        for b, block in enumerate(self.blocks):
            for i, _ in block:
                if i in first_block:
                    uf.union(first_block[i], b)
                else:
                    first_block[i] = b
        return uf.count

    def __str__(self):
        return " | ".join(" ".join(map(str, block)) for block in self.blocks)

    @classmethod
    def parse(cls, text: str, shape: ClusterShape) -> "RayPartition":
        return validate_ray_partition(shape, parse_blocks(text))


def parse_blocks(text: str) -> list[list[tuple[int, int]]]:
    """Read the canonical text form into raw block data (no validation)."""
    blocks = []
    for chunk in text.split("|"):
        block = []
        for tok in chunk.split():
            i, _, j = tok.partition(".")
            try:
                block.append((int(i), int(j)))
            except ValueError:
                raise VertconfError(f"bad table index {tok!r}") from None
        blocks.append(block)
    return blocks


def validate_ray_partition(shape: ClusterShape, blocks: Iterable) -> RayPartition:
    """Check raw block data against the ray-partition axioms.

    Raises :class:`IndexOutOfShape`, :class:`NotAPartition`,
    :class:`R2Violation` or :class:`R1Violation` naming the offending block.
    """
    normalized = []
    for b, block in enumerate(blocks, start=1):
        seq = []
        for entry in block:
            try:
                i, j = entry
                index = TableIndex(int(i), int(j))
            except (TypeError, ValueError):
                raise NotAPartition(f"block {b}: malformed index {entry!r}") from None
            if index not in shape:
                raise IndexOutOfShape(f"block {b}: index {index} not in shape {shape}")
            seq.append(index)
        if not seq:
            raise NotAPartition(f"block {b} is empty")
        normalized.append(tuple(seq))

    seen = Counter(x for block in normalized for x in block)
    dupes = sorted(x for x, c in seen.items() if c > 1)
    if dupes:
        raise NotAPartition(f"index {dupes[0]} appears more than once")
    missing = [x for x in shape.indices() if x not in seen]
    if missing:
        raise NotAPartition(f"index {missing[0]} is missing")

    for b, block in enumerate(normalized, start=1):
        if block[0] != min(block):
            raise R2Violation(
                f"block {b}: first element {block[0]} is not its minimum {min(block)}"
            )
    for b in range(1, len(normalized)):
        lo, hi = normalized[b - 1][0], normalized[b][0]
        if not lo < hi:
            raise R1Violation(
                f"block minima not increasing: min(Q{b})={lo} >= min(Q{b + 1})={hi}"
            )
    return RayPartition(shape, tuple(normalized))


def degree(shape: ClusterShape, length: int, agility: int, p: int, q: int) -> int:
    """Cohomological degree of the generator attached to a ray partition."""
    return p * (shape.r - agility) + (q - 1) * (shape.total - length)


@dataclass(frozen=True)
class RayPartitionStats:
    length: int
    agility: int
    weight: WeightVector
    sigma: ComponentLabel
    degree: int
    stratum_dim: int


def ray_partition_stats(Q: RayPartition, p: int, q: int) -> RayPartitionStats:
    if p < 0 or q < 1:
        raise VertconfError(f"need p >= 0 and q >= 1, got p={p}, q={q}")
    length = Q.length
    agility = Q.agility()
    return RayPartitionStats(
        length=length,
        agility=agility,
        weight=Q.weight,
        sigma=Q.sigma(),
        degree=degree(Q.shape, length, agility, p, q),
        stratum_dim=Q.shape.total + p * agility + (q - 1) * length,
    )


@dataclass(frozen=True)
class SpaceProfile:
    shape: ClusterShape
    p: int
    q: int
    dimension: int
    unordered_orientable: bool
    ordered_components: int
    unordered_components: int


def space_profile(shape: ClusterShape, p: int, q: int) -> SpaceProfile:
    """Dimension, orientability of the unordered space, and component counts.

    The ordered space is always orientable.
    """
    if p < 0 or q < 1:
        raise VertconfError(f"need p >= 0 and q >= 1, got p={p}, q={q}")
    mult = shape.multiplicities()
    swap_points = q >= 3 and q % 2 == 1 and any(k >= 2 for k in shape.sizes)
    swap_clusters = p + q >= 2 and any(
        (p + q * k) % 2 == 1 and m >= 2 for k, m in mult.items()
    )

    if q >= 2:
        ordered = 1
    elif p >= 1:
        ordered = math.prod(math.factorial(k) for k in shape.sizes)
    else:
        ordered = math.factorial(shape.total)

    if (p, q) != (0, 1):
        unordered = 1
    else:
        stabilizer = math.prod(
            math.factorial(k) ** m * math.factorial(m) for k, m in mult.items()
        )
        unordered = math.factorial(shape.total) // stabilizer

    return SpaceProfile(
        shape=shape,
        p=p,
        q=q,
        dimension=p * shape.r + q * shape.total,
        unordered_orientable=not (swap_points or swap_clusters),
        ordered_components=ordered,
        unordered_components=unordered,
    )
