"""Exact analysis of concrete vertical configurations.

Points live in ``R^(p+q)`` with exact rational coordinates.  A configuration
is a list of clusters; within a cluster all points share their first ``p``
coordinates.  Equality of projections is always exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral

from .errors import (
    CollisionError,
    DimensionMismatch,
    ShapeMismatch,
    UnsupportedQ,
    VertconfError,
    VerticalityViolation,
)
from .partitions import (
    ClusterShape,
    ComponentLabel,
    RayPartition,
    TableIndex,
    ray_partition_stats,
)
from .unionfind import UnionFind

CONNECTED = "connected"


def parse_coordinate(value) -> Fraction:
    """Read an integer, an ``"a/b"`` string or a finite decimal string exactly."""
    if type(value) is Fraction:
        return value
    if type(value) is int:
        return Fraction(value)
    if isinstance(value, bool):
        raise VertconfError(f"coordinate {value!r} is not a number")
    if isinstance(value, (Integral, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise VertconfError(f"cannot parse coordinate {value!r}") from None
    raise VertconfError(
        f"coordinate {value!r} is not exact; write it as an integer or a string"
    )


def format_coordinate(x: Fraction) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RationalPoint(tuple):
    """A point of ``R^(p+q)``; the last coordinate is the height ``t``."""

    def __new__(cls, coords=()):
        return super().__new__(cls, (parse_coordinate(c) for c in coords))

    def pr1(self, p: int) -> tuple:
        return tuple(self[:p])

    @property
    def zeta(self) -> tuple:
        return tuple(self[:-1])

    @property
    def t(self) -> Fraction:
        return self[-1]

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self) + ")"


@dataclass(frozen=True)
class VerticalConfiguration:
    """Clusters of points; construct through :func:`validate_configuration`."""

    p: int
    q: int
    clusters: tuple[tuple[RationalPoint, ...], ...]

    @property
    def shape(self) -> ClusterShape:
        return ClusterShape(tuple(len(c) for c in self.clusters))

    @property
    def r(self) -> int:
        return len(self.clusters)

    def point(self, index) -> RationalPoint:
        i, j = index
        return self.clusters[i - 1][j - 1]

    def items(self):
        """``(TableIndex, point)`` pairs in table order."""
        for i, cluster in enumerate(self.clusters, start=1):
            for j, z in enumerate(cluster, start=1):
                yield TableIndex(i, j), z

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "clusters": [
                {"points": [[format_coordinate(c) for c in z] for z in cluster]}
                for cluster in self.clusters
            ],
        }


def validate_configuration(p: int, q: int, clusters) -> VerticalConfiguration:
    """Build a configuration from raw point data, checking every condition."""
    if p < 0 or q < 1:
        raise VertconfError(f"need p >= 0 and q >= 1, got p={p}, q={q}")
    dim = p + q
    built = []
    for i, cluster in enumerate(clusters, start=1):
        if isinstance(cluster, dict):
            cluster = cluster.get("points", [])
        points = []
        for j, raw in enumerate(cluster, start=1):
            z = RationalPoint(raw)
            if len(z) != dim:
                raise DimensionMismatch(
                    f"cluster {i}, point {j}: {len(z)} coordinates, expected p+q = {dim}"
                )
            points.append(z)
        if not points:
            raise VertconfError(f"cluster {i} is empty")
        base = points[0]
        for j, z in enumerate(points[1:], start=2):
            for c in range(p):
                if z[c] != base[c]:
                    raise VerticalityViolation(
                        f"cluster {i}: point {j} has coordinate {c + 1} = {z[c]}, "
                        f"point 1 has {base[c]}"
                    )
        built.append(tuple(points))

    seen = {}
    for i, cluster in enumerate(built, start=1):
        for j, z in enumerate(cluster, start=1):
            # Fractions are normalized, so integer pairs are an exact key and hash fast
            key = tuple((c.numerator, c.denominator) for c in z)
            if key in seen:
                i0, j0 = seen[key]
                raise CollisionError(f"points {i0}.{j0} and {i}.{j} coincide at {z!r}")
            seen[key] = (i, j)
    return VerticalConfiguration(p, q, tuple(built))


def load_configuration(source) -> VerticalConfiguration:
    """Read the JSON configuration format from a path, file object or dict."""
    if isinstance(source, dict):
        doc = source
    elif hasattr(source, "read"):
        doc = json.load(source)
    else:
        with open(source) as fh:
            doc = json.load(fh)
    try:
        p, q, clusters = int(doc["p"]), int(doc["q"]), doc["clusters"]
    except (KeyError, TypeError, ValueError) as exc:
        raise VertconfError(f"malformed configuration document: {exc}") from None
    return validate_configuration(p, q, clusters)


@dataclass(frozen=True)
class WitnessResult:
    witnessed: bool
    block: int | None = None
    pair: tuple[TableIndex, TableIndex] | None = None
    axiom: str | None = None

    def __bool__(self):
        return self.witnessed


def _check_shape(Z: VerticalConfiguration, Q: RayPartition):
    if Z.shape != Q.shape:
        raise ShapeMismatch(f"configuration shape {Z.shape} != partition shape {Q.shape}")


def witnesses(Z: VerticalConfiguration, Q: RayPartition) -> WitnessResult:
    """Does ``Z`` realize ``Q``: each block on one vertical line, stacked in order?"""
    _check_shape(Z, Q)
    for b, block in enumerate(Q.blocks, start=1):
        for x, y in zip(block, block[1:]):
            zx, zy = Z.point(x), Z.point(y)
            if zx.zeta != zy.zeta:
                return WitnessResult(False, b, (x, y), "W1")
            if not zx.t < zy.t:
                return WitnessResult(False, b, (x, y), "W2")
    return WitnessResult(True)


def greedy_ray_partition(Z: VerticalConfiguration) -> RayPartition:
    """The witnessed ray partition of maximal weight.

    Repeatedly seed a block at the smallest unassigned index and collect every
    unassigned point on the upward ray from the seed.
    """
    unassigned = dict(Z.items())
    blocks = []
    while unassigned:
        seed = min(unassigned)
        z0 = unassigned[seed]
        ray = [
            (z.t, x)
            for x, z in unassigned.items()
            if z.zeta == z0.zeta and z.t >= z0.t
        ]
        ray.sort()
        block = tuple(x for _, x in ray)
        for x in block:
            del unassigned[x]
        blocks.append(block)
    return RayPartition(Z.shape, tuple(blocks))


def component_of(Z: VerticalConfiguration):
    """Path component label for ``q = 1``; :data:`CONNECTED` for ``q >= 2``.

    The label lists each cluster's point positions by increasing height.
    """
    if Z.q >= 2:
        return CONNECTED
    return ComponentLabel(
        tuple(
            tuple(j for _, j in sorted((z.t, j) for j, z in enumerate(c, start=1)))
            for c in Z.clusters
        )
    )


@dataclass(frozen=True)
class DexterityResult:
    classes: tuple[tuple[int, ...], ...]
    dexterity: int
    filtration_index: int


def dexterity(Z: VerticalConfiguration) -> DexterityResult:
    """Classes of clusters under "aligned and entangled", for ``q = 1``.

    Clusters of different sizes are allowed.
    """
    if Z.q != 1:
        raise UnsupportedQ(f"dexterity is defined for q = 1, got q = {Z.q}")
    r = Z.r
    spans = []
    for c in Z.clusters:
        ts = [z.t for z in c]
        spans.append((c[0].pr1(Z.p), min(ts), max(ts)))
    uf = UnionFind(r)
    for a in range(r):
        xa, lo_a, hi_a = spans[a]
        for b in range(a + 1, r):
            xb, lo_b, hi_b = spans[b]
            # closed intervals
            if xa == xb and lo_a <= hi_b and lo_b <= hi_a:
                uf.union(a, b)
    classes = tuple(tuple(i + 1 for i in g) for g in uf.groups())
    delta = len(classes)
    return DexterityResult(classes, delta, r - delta)


def stabilise_configuration(Z: VerticalConfiguration, k: int) -> VerticalConfiguration:
    """Append a cluster of size ``k`` to the right of everything else.

    It sits at first coordinate (current maximum + 2), other horizontal
    coordinates 0 and heights ``1..k``.
    """
    if k < 1:
        raise VertconfError(f"cluster size must be positive, got {k}")
    if Z.p == 0 and Z.q == 1:
        raise VertconfError("stabilisation needs a horizontal direction (p >= 1 or q >= 2)")
    dim = Z.p + Z.q
    xs = [z[0] for _, z in Z.items()]
    x_new = (max(xs) if xs else Fraction(0)) + 2
    new_cluster = tuple(
        RationalPoint((x_new,) + (0,) * (dim - 2) + (h,)) for h in range(1, k + 1)
    )
    return VerticalConfiguration(Z.p, Z.q, Z.clusters + (new_cluster,))


def analyze(Z: VerticalConfiguration) -> dict:
    """Summary used by the CLI: component, greedy partition, stats, dexterity."""
    Q = greedy_ray_partition(Z)
    stats = ray_partition_stats(Q, Z.p, Z.q)
    comp = component_of(Z)
    out = {
        "shape": list(Z.shape.sizes),
        "p": Z.p,
        "q": Z.q,
        "component": comp if comp == CONNECTED else str(comp),
        "ray_partition": str(Q),
        "weight": str(stats.weight),
        "length": stats.length,
        "agility": stats.agility,
        "degree": stats.degree,
        "stratum_dim": stats.stratum_dim,
    }
    if Z.q == 1:
        dex = dexterity(Z)
        out["dexterity"] = dex.dexterity
        out["filtration_index"] = dex.filtration_index
        out["dexterity_classes"] = [list(c) for c in dex.classes]
    return out
