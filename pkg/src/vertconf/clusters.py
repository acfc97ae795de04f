"""Irreducible cluster partitions, standard groups and the insertion map.

Fix a cluster size ``k``.  An irreducible partition of weight ``w`` splits
``{1, ..., w*k}`` into ``w`` blocks of size ``k`` such that no proper prefix
``{1, ..., i*k}`` is a union of blocks.  Each one describes a standard group
of ``w`` entangled clusters stacked on a common vertical line; the insertion
map places scaled copies of these groups around the points of a labelled
configuration.  Everything assumes ``q = 1``.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CollisionError,
    DimensionMismatch,
    DiscViolation,
    ReduciblePartitionError,
    SizeGuard,
    SupportMismatch,
    VertconfError,
    WrongParameterCount,
)
from .geometry import RationalPoint, VerticalConfiguration, validate_configuration

DEFAULT_MAX_WK = 14


@dataclass(frozen=True, order=True)
class IrreduciblePartition:
    """Blocks are stored sorted internally and ordered by their minima."""

    k: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(int(h) for h in b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        k, w = self.k, len(blocks)
        if k < 1 or w < 1:
            raise VertconfError(f"need k >= 1 and at least one block, got k={k}")
        if any(len(b) != k for b in blocks):
            raise VertconfError(f"every block must have size {k}: {self}")
        if sorted(h for b in blocks for h in b) != list(range(1, w * k + 1)):
            raise VertconfError(f"blocks do not partition 1..{w * k}: {self}")
        cut = _prefix_cut(blocks, k)
        if cut is not None:
            raise ReduciblePartitionError(
                f"{self} is reducible: {{1..{cut * k}}} is a union of blocks"
            )

    @property
    def weight(self) -> int:
        return len(self.blocks)

    @property
    def w(self) -> int:
        return len(self.blocks)

    def __str__(self):
        sep = "" if self.weight * self.k < 10 else ","
        return "|".join(sep.join(map(str, b)) for b in self.blocks)


def _prefix_cut(blocks, k):
    """Smallest ``i < w`` such that the first ``i`` blocks fill ``{1..i*k}``."""
    top = 0
    for i, b in enumerate(blocks[:-1], start=1):
        top = max(top, b[-1])
        if top == i * k:
            return i
    return None


def e0(k: int) -> IrreduciblePartition:
    """The unique weight-one partition."""
    return IrreduciblePartition(k, (tuple(range(1, k + 1)),))


def _check_wk(k, w, max_wk):
    if max_wk is not None and w * k > max_wk:
        raise SizeGuard(f"w*k = {w * k} exceeds the guard {max_wk}; raise --max-wk to run")


def all_block_partitions(k: int, w: int):
    """Every partition of ``{1..w*k}`` into ``w`` blocks of size ``k``, canonically ordered."""

    def rec(remaining):
        if not remaining:
            yield ()
            return
        first, rest = remaining[0], remaining[1:]
        for others in itertools.combinations(rest, k - 1):
            block = (first,) + others
            left = tuple(x for x in rest if x not in others)
            for tail in rec(left):
                yield (block,) + tail

    yield from rec(tuple(range(1, w * k + 1)))


def enumerate_irreducible(
    k: int, w: int, *, max_wk: int | None = DEFAULT_MAX_WK
) -> list[IrreduciblePartition]:
    if k < 1 or w < 1:
        raise VertconfError(f"need k >= 1 and w >= 1, got k={k}, w={w}")
    _check_wk(k, w, max_wk)
    out = [
        IrreduciblePartition(k, blocks)
        for blocks in all_block_partitions(k, w)
        if _prefix_cut(blocks, k) is None
    ]
    out.sort()
    return out


def count_irreducible(k: int, w: int, *, max_wk: int | None = DEFAULT_MAX_WK) -> int:
    return len(enumerate_irreducible(k, w, max_wk=max_wk))


def parse_partition(text: str, k: int) -> IrreduciblePartition:
    """Read ``"13|24"`` (digits) or ``"1,3|2,4"``."""
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        items = chunk.split(",") if "," in chunk else list(chunk)
        try:
            blocks.append(tuple(int(x) for x in items))
        except ValueError:
            raise VertconfError(f"cannot parse partition {text!r}") from None
    return IrreduciblePartition(k, tuple(blocks))


def _disc_point(xi, p, where):
    v = tuple(RationalPoint(xi))
    if len(v) != p:
        raise DimensionMismatch(f"{where}: disc parameter has {len(v)} coordinates, expected {p}")
    if sum(c * c for c in v) > 1:
        raise DiscViolation(f"{where}: {v} lies outside the unit disc")
    return v


def _standard_clusters(e, xi, p):
    w, k = e.weight, e.k
    if len(xi) != w - 1:
        raise WrongParameterCount(f"partition {e} takes {w - 1} disc parameters, got {len(xi)}")
    centres = [(Fraction(0),) * p] + [
        _disc_point(v, p, f"parameter {b}") for b, v in enumerate(xi, start=2)
    ]
    step = Fraction(2, k * w + 1)
    return [
        (centres[b], [-1 + step * h for h in block])
        for b, block in enumerate(e.blocks)
    ]


def standard_group(e: IrreduciblePartition, xi=(), p: int = 1) -> VerticalConfiguration:
    """Standard group in ``R^(p+1)``: block ``b`` sits at disc position ``xi_b``.

    ``xi`` holds the positions of blocks ``2..w``; block 1 (the lowest) sits at
    the centre.  Heights divide ``[-1, 1]`` into ``k*w + 1`` equal steps.
    """
    clusters = [
        [c + (t,) for t in ts] for c, ts in _standard_clusters(e, tuple(xi), p)
    ]
    return validate_configuration(p, 1, clusters)


@dataclass(frozen=True)
class LabeledPoint:
    y: RationalPoint
    e: IrreduciblePartition
    xi: tuple[tuple[Fraction, ...], ...] = ()


@dataclass(frozen=True)
class LabeledConfiguration:
    p: int
    k: int
    points: tuple[LabeledPoint, ...]

    @property
    def degree(self) -> tuple[int, int]:
        return self.distribution().degree

    def distribution(self) -> "Distribution":
        return Distribution.from_partitions(pt.e for pt in self.points)

    def all_xi_zero(self) -> bool:
        return all(c == 0 for pt in self.points for v in pt.xi for c in v)


def labeled_configuration(p: int, k: int, points) -> LabeledConfiguration:
    """Validate ``(y, e, xi)`` triples into a labelled configuration."""
    if p < 0 or k < 1:
        raise VertconfError(f"need p >= 0 and k >= 1, got p={p}, k={k}")
    built = []
    seen = set()
    for n, (y, e, xi) in enumerate(points, start=1):
        y = RationalPoint(y)
        if len(y) != p + 1:
            raise DimensionMismatch(f"point {n}: {len(y)} coordinates, expected {p + 1}")
        if y in seen:
            raise CollisionError(f"point {n} repeats {y!r}")
        seen.add(y)
        if not isinstance(e, IrreduciblePartition):
            e = IrreduciblePartition(k, tuple(e))
        if e.k != k:
            raise VertconfError(f"point {n}: partition has cluster size {e.k}, expected {k}")
        xi = tuple(xi)
        if len(xi) != e.weight - 1:
            raise WrongParameterCount(
                f"point {n}: partition {e} takes {e.weight - 1} disc parameters, got {len(xi)}"
            )
        xi = tuple(_disc_point(v, p, f"point {n}") for v in xi)
        built.append(LabeledPoint(y, e, xi))
    return LabeledConfiguration(p, k, tuple(built))


def load_labeled(source) -> LabeledConfiguration:
    """Read the JSON labelled-configuration format; partitions must be irreducible."""
    if isinstance(source, dict):
        doc = source
    elif hasattr(source, "read"):
        doc = json.load(source)
    else:
        with open(source) as fh:
            doc = json.load(fh)
    try:
        p, k = int(doc["p"]), int(doc["k"])
        raw = [(pt["y"], pt["partition"], pt.get("xi", [])) for pt in doc["points"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise VertconfError(f"malformed labelled configuration: {exc}") from None
    return labeled_configuration(p, k, raw)


def labeled_to_dict(theta: LabeledConfiguration) -> dict:
    from .geometry import format_coordinate

    return {
        "p": theta.p,
        "k": theta.k,
        "points": [
            {
                "y": [format_coordinate(c) for c in pt.y],
                "partition": [list(b) for b in pt.e.blocks],
                "xi": [[format_coordinate(c) for c in v] for v in pt.xi],
            }
            for pt in theta.points
        ],
    }


def _sqrt_lower(x: Fraction) -> Fraction:
    """Exact square root when rational, else a rational lower bound within 2**-20."""
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    scale = 1 << 20
    return Fraction(math.isqrt(num * scale * scale // den), scale)


def product_distance(a, b) -> Fraction:
    """``max(|zeta - zeta'|, |t - t'|)`` with the Euclidean norm on ``zeta``.

    When the horizontal distance is irrational a rational lower bound is used.
    """
    sq = sum((x - y) ** 2 for x, y in zip(a[:-1], b[:-1]))
    return max(_sqrt_lower(Fraction(sq)), abs(a[-1] - b[-1]))


def insertion_radius(theta: LabeledConfiguration) -> Fraction:
    ys = [pt.y for pt in theta.points]
    if len(ys) <= 1:
        return Fraction(1)
    return min(product_distance(a, b) for a, b in itertools.combinations(ys, 2)) / 5


def insertion_map(theta: LabeledConfiguration) -> VerticalConfiguration:
    """Replace each labelled point by its standard group, scaled into a cylinder.

    Clusters are listed point by point, blocks in order within each point.
    """
    rho = insertion_radius(theta)
    clusters = []
    for pt in theta.points:
        y_zeta, y_t = pt.y[:-1], pt.y[-1]
        for centre, ts in _standard_clusters(pt.e, pt.xi, theta.p):
            zeta = tuple(a + rho * c for a, c in zip(y_zeta, centre))
            clusters.append([zeta + (y_t + rho * t,) for t in ts])
    return validate_configuration(theta.p, 1, clusters)


def stabilise_labeled(theta: LabeledConfiguration) -> LabeledConfiguration:
    """Add a point labelled by the weight-one partition on the far right."""
    dim = theta.p + 1
    xs = [pt.y[0] for pt in theta.points]
    x_new = (max(xs) if xs else Fraction(0)) + 2
    y = RationalPoint((x_new,) + (0,) * (dim - 1))
    return LabeledConfiguration(
        theta.p, theta.k, theta.points + (LabeledPoint(y, e0(theta.k), ()),)
    )


@dataclass(frozen=True)
class Distribution:
    """Finitely supported multiplicities on irreducible partitions."""

    support: tuple[tuple[IrreduciblePartition, int], ...]

    def __post_init__(self):
        merged = {}
        for e, m in self.support:
            if m < 0:
                raise VertconfError(f"negative multiplicity {m} for {e}")
            merged[e] = merged.get(e, 0) + m
        items = tuple(sorted(((e, m) for e, m in merged.items() if m), key=_dist_key))
        object.__setattr__(self, "support", items)

    @classmethod
    def from_partitions(cls, partitions):
        counts = {}
        for e in partitions:
            counts[e] = counts.get(e, 0) + 1
        return cls(tuple(counts.items()))

    def multiplicity(self, e) -> int:
        return dict(self.support).get(e, 0)

    @property
    def degree(self) -> tuple[int, int]:
        r = sum(m * e.weight for e, m in self.support)
        s = sum(m * (e.weight - 1) for e, m in self.support)
        return r, s

    def __add__(self, e: IrreduciblePartition) -> "Distribution":
        return Distribution(self.support + ((e, 1),))

    def sort_key(self):
        return tuple(_dist_key(item) for item in self.support)

    def __str__(self):
        if not self.support:
            return "0"
        return " + ".join(f"{m}*[{e}]" for e, m in self.support)


def _dist_key(item):
    e, m = item
    return (e.weight, e.blocks, m)


def enumerate_distributions(
    k: int, r: int, s: int, *, max_wk: int | None = DEFAULT_MAX_WK
) -> list[Distribution]:
    """All distributions of degree ``(r, s)`` for cluster size ``k``."""
    if not r >= s >= 0:
        raise VertconfError(f"need r >= s >= 0, got r={r}, s={s}")
    npoints = r - s
    by_weight = {}
    for w in range(2, s + 2):
        _check_wk(k, w, max_wk)
        by_weight[w] = enumerate_irreducible(k, w, max_wk=max_wk)
    base = e0(k)
    out = []

    def counts(w, s_left, room):
        """How many partitions of each weight ``>= w``: sum (w-1)*n_w = s_left."""
        if s_left == 0:
            yield {}
            return
        if w > s + 1:
            return
        for n in range(min(s_left // (w - 1), room), -1, -1):
            for rest in counts(w + 1, s_left - n * (w - 1), room - n):
                yield {w: n, **rest} if n else rest

    for plan in counts(2, s, npoints):
        used = sum(plan.values())
        pools = [itertools.combinations_with_replacement(by_weight[w], n) for w, n in plan.items()]
        for choice in itertools.product(*pools):
            support = [(e, 1) for group in choice for e in group]
            if npoints > used:
                support.append((base, npoints - used))
            out.append(Distribution(tuple(support)))
    out.sort(key=Distribution.sort_key)
    return out


def _sign(perm) -> int:
    inversions = sum(
        1 for a, b in itertools.combinations(range(len(perm)), 2) if perm[a] > perm[b]
    )
    return -1 if inversions % 2 else 1


def orientation_character(alpha: Distribution, p: int, sigma: dict) -> int:
    """``prod_e sign(sigma_e) ** (p * (w(e) - 1))`` over the support of ``alpha``."""
    support = dict(alpha.support)
    if set(sigma) != set(support):
        raise SupportMismatch("permutations must be given exactly for the support")
    result = 1
    for e, perm in sigma.items():
        perm = tuple(perm)
        if sorted(perm) != list(range(1, support[e] + 1)):
            raise SupportMismatch(f"{perm} is not a permutation of 1..{support[e]} for {e}")
        if _sign(perm) == -1 and (p * (e.weight - 1)) % 2:
            result = -result
    return result


def stability_range(r: int) -> int:
    """Largest degree in which adding a cluster to ``r`` clusters is an isomorphism."""
    if r < 0:
        raise VertconfError(f"r must be non-negative, got {r}")
    return r // 2
