"""Streaming enumeration of ray partitions and the Betti tables built from them.

Counting never materializes partitions: the kernel walks all ``|k|!`` ray
partitions and keeps a histogram keyed by degree.  Work is sharded by the
placement choices of the first ``ceil(|k|/2)`` table entries, and partial
histograms are merged by addition, so the result does not depend on the
number of workers.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from . import kernel
from .errors import ComponentMeaningless, SizeGuard, VertconfError
from .partitions import (
    ClusterShape,
    ComponentLabel,
    RayPartition,
)

DEFAULT_MAX_TOTAL = 12


def check_guard(shape: ClusterShape, max_total: int | None = DEFAULT_MAX_TOTAL):
    if max_total is not None and shape.total > max_total:
        raise SizeGuard(
            f"|k| = {shape.total} exceeds the enumeration guard {max_total} "
            f"({math.factorial(shape.total)} ray partitions); raise --max-total to run"
        )


def enumerate_ray_partitions(shape: ClusterShape) -> Iterator[RayPartition]:
    """Yield every ray partition of ``shape`` once, in a fixed order.

    Entries are inserted in increasing table order; each either opens a new
    block at the end or goes directly after an already placed entry.
    """
    index = shape.indices()
    for blocks in kernel.iter_block_lists(shape.sizes):
        yield RayPartition(
            shape, tuple(tuple(index[x] for x in block) for block in blocks)
        )


@dataclass(frozen=True)
class PoincarePolynomial:
    """Integer polynomial in a formal variable ``t``, stored sparsely."""

    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(e): int(c) for e, c in self.coefficients.items() if c}
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))

    @classmethod
    def one(cls):
        return cls({0: 1})

    def __mul__(self, other):
        out = Counter()
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                out[e1 + e2] += c1 * c2
        return PoincarePolynomial(dict(out))

    def __eq__(self, other):
        if not isinstance(other, PoincarePolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(tuple(self.coefficients.items()))

    def __call__(self, t):
        return sum(c * t**e for e, c in self.coefficients.items())

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for e, c in self.coefficients.items():
            if e == 0:
                terms.append(str(c))
            else:
                power = "t" if e == 1 else f"t^{e}"
                terms.append(power if c == 1 else f"{c}{power}")
        return " + ".join(terms)


@dataclass(frozen=True)
class BettiTable:
    """Ranks of the cohomology of an ordered vertical configuration space.

    ``component`` is set only for ``q = 1`` tables restricted to one path
    component.
    """

    shape: ClusterShape
    p: int
    q: int
    ranks: dict
    component: ComponentLabel | None = None

    def __post_init__(self):
        ranks = {int(d): int(c) for d, c in self.ranks.items() if c}
        object.__setattr__(self, "ranks", dict(sorted(ranks.items())))

    @property
    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def poincare(self) -> PoincarePolynomial:
        return PoincarePolynomial(self.ranks)

    def to_csv(self) -> str:
        lines = ["degree,rank"]
        lines += [f"{d},{c}" for d, c in self.ranks.items()]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "shape": list(self.shape.sizes),
            "p": self.p,
            "q": self.q,
            "component": None if self.component is None else str(self.component),
            "ranks": {str(d): c for d, c in self.ranks.items()},
        }


def shard_prefixes(n: int) -> list[tuple[int, ...]]:
    """Choice prefixes for the first ``ceil(n/2)`` entries, in lexicographic order."""
    depth = (n + 1) // 2
    return list(itertools.product(*(range(m + 1) for m in range(depth))))


def _run_shards(args):
    sizes, p, q, mode, target, prefixes = args
    total = Counter()
    for prefix in prefixes:
        total.update(kernel.histogram(sizes, p, q, mode, target, prefix))
    return dict(total)


def _histogram(shape, p, q, mode, target=0, jobs=1):
    if jobs <= 1:
        return kernel.histogram(shape.sizes, p, q, mode, target)
    prefixes = shard_prefixes(shape.total)
    chunks = [prefixes[i::jobs] for i in range(jobs)]
    tasks = [(shape.sizes, p, q, mode, target, c) for c in chunks if c]
    merged = Counter()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_run_shards, tasks):
            merged.update(part)
    return dict(merged)


def _check_pq(p, q):
    if p < 0 or q < 1:
        raise VertconfError(f"need p >= 0 and q >= 1, got p={p}, q={q}")


def betti_table(
    shape: ClusterShape,
    p: int,
    q: int,
    component: ComponentLabel | None = None,
    *,
    jobs: int = 1,
    max_total: int | None = DEFAULT_MAX_TOTAL,
) -> BettiTable:
    """Histogram of generator degrees over all ray partitions of ``shape``.

    With ``component`` (``q = 1`` only) just the ray partitions whose stacked
    order yields that label are counted; otherwise all components together.
    """
    _check_pq(p, q)
    if component is not None:
        if q != 1:
            raise ComponentMeaningless(f"q = {q}: the space is connected")
        if component.sizes != shape.sizes:
            raise VertconfError(f"component {component} does not fit shape {shape}")
    check_guard(shape, max_total)
    if component is None:
        ranks = _histogram(shape, p, q, kernel.AGGREGATE, jobs=jobs)
    else:
        ranks = _histogram(shape, p, q, kernel.FILTERED, component.rank(), jobs=jobs)
    return BettiTable(shape, p, q, ranks, component)


def component_tables(
    shape: ClusterShape,
    p: int,
    *,
    jobs: int = 1,
    max_total: int | None = DEFAULT_MAX_TOTAL,
) -> dict[ComponentLabel, BettiTable]:
    """Per-component tables for ``q = 1``, filtering on each partition's label."""
    _check_pq(p, 1)
    check_guard(shape, max_total)
    cells = _histogram(shape, p, 1, kernel.BY_COMPONENT, jobs=jobs)
    grouped = {}
    for (code, deg), count in cells.items():
        grouped.setdefault(code, {})[deg] = count
    ncomp = math.prod(math.factorial(k) for k in shape.sizes)
    out = {}
    for code in range(ncomp):
        label = ComponentLabel.from_rank(shape, code)
        out[label] = BettiTable(shape, p, 1, grouped.get(code, {}), label)
    return out


def component_table_by_symmetry(
    shape: ClusterShape,
    p: int,
    *,
    jobs: int = 1,
    max_total: int | None = DEFAULT_MAX_TOTAL,
) -> BettiTable:
    """Fast path: divide the aggregate ``q = 1`` table by the component count.

    Assumes all components have equal tables; :func:`component_tables`
    checks that assumption directly.
    """
    agg = betti_table(shape, p, 1, jobs=jobs, max_total=max_total)
    ncomp = math.prod(math.factorial(k) for k in shape.sizes)
    ranks = {}
    for d, c in agg.ranks.items():
        if c % ncomp:
            raise VertconfError(f"rank {c} in degree {d} not divisible by {ncomp}")
        ranks[d] = c // ncomp
    return BettiTable(shape, p, 1, ranks, ComponentLabel.identity(shape))


def arnold_reference_polynomial(n: int, q: int) -> PoincarePolynomial:
    """``prod_{i=1}^{n-1} (1 + i t^(q-1))``: ordered configurations of n points in R^q."""
    if n < 1 or q < 2:
        raise VertconfError(f"need n >= 1 and q >= 2, got n={n}, q={q}")
    poly = PoincarePolynomial.one()
    for i in range(1, n):
        poly = poly * PoincarePolynomial({0: 1, q - 1: i})
    return poly


def closed_form_r3(k: int, p: int) -> BettiTable:
    """Identity-component table of three clusters of size ``k`` with ``q = 1``."""
    if k < 1 or p < 1:
        raise VertconfError(f"need k >= 1 and p >= 1, got k={k}, p={p}")
    c2 = math.comb(2 * k, k)
    c3 = math.comb(3 * k, k)
    shape = ClusterShape((k, k, k))
    ranks = {0: 1, p: 3 * (c2 - 1), 2 * p: c3 * c2 - 3 * c2 + 2}
    return BettiTable(shape, p, 1, ranks, ComponentLabel.identity(shape))


@dataclass(frozen=True)
class ScanRow:
    k: int
    lhs: int
    rhs: int
    holds: bool
    lhs_ratio: float
    rhs_ratio: float


@dataclass(frozen=True)
class ScanReport:
    rows: tuple[ScanRow, ...]
    first_failure: int | None

    def to_csv(self) -> str:
        lines = ["k,lhs,rhs,holds,lhs_ratio,rhs_ratio"]
        for row in self.rows:
            lines.append(
                f"{row.k},{row.lhs},{row.rhs},{str(row.holds).lower()},"
                f"{row.lhs_ratio:.12f},{row.rhs_ratio:.12f}"
            )
        return "\n".join(lines) + "\n"


def _ratio(num: int, den: float) -> float:
    return float(Fraction(num) / Fraction(den))


def conjecture_scan(k_max: int) -> ScanReport:
    """Compare the degree-2p rank with the square of the degree-p rank.

    ``lhs`` is the top rank of the three-cluster identity component and ``rhs``
    bounds what cup products of degree-p classes could span.  The ratio
    columns divide each side by its leading asymptotic term.
    """
    if k_max < 1:
        raise VertconfError(f"k_max must be positive, got {k_max}")
    rows = []
    first = None
    for k in range(1, k_max + 1):
        c2 = math.comb(2 * k, k)
        c3 = math.comb(3 * k, k)
        lhs = c3 * c2 - 3 * c2 + 2
        rhs = (3 * (c2 - 1)) ** 2
        holds = lhs <= rhs
        if not holds and first is None:
            first = k
        lhs_ratio = _ratio(lhs, math.sqrt(3) / (2 * math.pi * k)) / 27**k
        rhs_ratio = _ratio(rhs * k, 9 / math.pi) / 16**k
        rows.append(ScanRow(k, lhs, rhs, holds, lhs_ratio, rhs_ratio))
    return ScanReport(tuple(rows), first)


def count_ray_partitions(shape: ClusterShape) -> int:
    """Count by walking the stream; equals ``|k|!``."""
    return sum(1 for _ in enumerate_ray_partitions(shape))


__all__ = [
    "BettiTable",
    "PoincarePolynomial",
    "ScanReport",
    "ScanRow",
    "arnold_reference_polynomial",
    "betti_table",
    "closed_form_r3",
    "component_table_by_symmetry",
    "component_tables",
    "conjecture_scan",
    "count_ray_partitions",
    "enumerate_ray_partitions",
    "shard_prefixes",
]
