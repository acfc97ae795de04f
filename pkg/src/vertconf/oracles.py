"""Brute-force verifiers for the algorithms in the other modules.

Each check recomputes its answer by exhaustive search and shares no
nontrivial helper with the code under test.  Failures come back as
:class:`OracleReport` objects carrying a concrete counterexample.
"""
from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .clusters import (
    DEFAULT_MAX_WK,
    IrreduciblePartition,
    all_block_partitions,
    enumerate_distributions,
    enumerate_irreducible,
    e0,
    insertion_map,
    labeled_configuration,
)
from .enumeration import (
    arnold_reference_polynomial,
    betti_table,
    closed_form_r3,
    component_tables,
    count_ray_partitions,
    enumerate_ray_partitions,
)
from .errors import ReduciblePartitionError, SizeGuard
from .geometry import (
    RationalPoint,
    VerticalConfiguration,
    component_of,
    dexterity,
    format_coordinate,
    greedy_ray_partition,
    validate_configuration,
    witnesses,
)
from .partitions import ClusterShape

BRUTE_FORCE_MAX_TOTAL = 7


@dataclass(frozen=True)
class OracleReport:
    name: str
    instance: str
    passed: bool
    counterexample: object = None
    seed: int | None = None

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError(f"failing report {self.name!r} needs a counterexample")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "instance": self.instance,
            "passed": self.passed,
            "counterexample": None if self.counterexample is None else str(self.counterexample),
            "seed": self.seed,
        }


def brute_force_witnessed(Z: VerticalConfiguration, *, max_total=BRUTE_FORCE_MAX_TOTAL):
    """Every ray partition of ``Z``'s shape that ``Z`` witnesses."""
    if max_total is not None and Z.shape.total > max_total:
        raise SizeGuard(f"|k| = {Z.shape.total} exceeds the brute-force bound {max_total}")
    return [Q for Q in enumerate_ray_partitions(Z.shape) if witnesses(Z, Q)]


def _greedy_failure(Z: VerticalConfiguration):
    """Return a description of what goes wrong for ``Z``, or None."""
    Q = greedy_ray_partition(Z)
    if not witnesses(Z, Q):
        return f"greedy partition {Q} is not witnessed"
    found = brute_force_witnessed(Z)
    if Q not in found:
        return f"greedy partition {Q} missing from the witnessed list"
    for other in found:
        if other != Q and not other.weight < Q.weight:
            return f"{other} has weight {other.weight} >= greedy weight {Q.weight}"
    if Z.q == 1 and Q.sigma() != component_of(Z):
        return f"sigma {Q.sigma()} != component {component_of(Z)}"
    return None


def describe(Z: VerticalConfiguration) -> str:
    return ";".join(
        " ".join("(" + ",".join(str(format_coordinate(c)) for c in z) + ")" for z in cluster)
        for cluster in Z.clusters
    )


def verify_maximality(Z: VerticalConfiguration, seed=None) -> OracleReport:
    failure = _greedy_failure(Z)
    return OracleReport(
        "maximality",
        describe(Z),
        failure is None,
        None if failure is None else f"{describe(Z)}: {failure}",
        seed,
    )


def random_configuration(rng: random.Random, *, max_total=6, p=None, q=None, den=3):
    """Small exact configuration with deliberately frequent alignments.

    Vertical lines come from a pool of a few values, so shared ``zeta``
    coordinates (and hence nontrivial witnessed rays) are common.
    """
    p = rng.randint(0, 2) if p is None else p
    q = rng.randint(1, 2) if q is None else q
    if p + q == 0:
        q = 1
    total = rng.randint(1, max_total)
    sizes = []
    while sum(sizes) < total:
        sizes.append(rng.randint(1, total - sum(sizes)))
    rng.shuffle(sizes)

    def coord():
        return Fraction(rng.randint(-2 * den, 2 * den), rng.randint(1, den))

    pool = [tuple(coord() for _ in range(p + q - 1)) for _ in range(rng.randint(1, 3))]
    clusters = []
    used = set()
    for k in sizes:
        x = rng.choice(pool)[:p] if rng.random() < 0.75 else tuple(coord() for _ in range(p))
        cluster = []
        while len(cluster) < k:
            if rng.random() < 0.75:
                rest = rng.choice(pool)[p:]
            else:
                rest = tuple(coord() for _ in range(q - 1))
            z = RationalPoint(x + rest + (coord(),))
            if z not in used:
                used.add(z)
                cluster.append(z)
        clusters.append(cluster)
    return validate_configuration(p, q, clusters)


def greedy_trials(count=500, seed=0, max_total=6):
    """Greedy partition vs brute force on ``count`` random configurations."""
    reports = []
    for n in range(count):
        s = seed + n
        Z = random_configuration(random.Random(s), max_total=max_total)
        reports.append(verify_maximality(Z, seed=s))
    return reports


def separation_bound(Z: VerticalConfiguration) -> Fraction:
    """Lower bound on the smallest gap between distinct projected values.

    Horizontal gaps use the largest coordinate difference, which never
    exceeds the Euclidean distance.
    """
    zetas = {z.zeta for _, z in Z.items()}
    ts = {z.t for _, z in Z.items()}
    gaps = [max(abs(a - b) for a, b in zip(u, v)) for u, v in itertools.combinations(zetas, 2)]
    gaps += [abs(a - b) for a, b in itertools.combinations(ts, 2)]
    return min(gaps) if gaps else Fraction(1)


def perturb(Z: VerticalConfiguration, rng: random.Random, bound: Fraction):
    """Move each point by less than ``bound / 2`` in Euclidean norm, keeping clusters vertical."""
    d = Z.p + Z.q
    limit = bound / (2 * d)  # per coordinate; d * limit <= bound/2 and sqrt(d) <= d
    steps = 1000

    def delta():
        return limit * Fraction(rng.randint(-(steps - 1), steps - 1), steps)

    clusters = []
    for cluster in Z.clusters:
        shift = tuple(delta() for _ in range(Z.p))
        clusters.append(
            [
                tuple(c + s for c, s in zip(z[: Z.p], shift))
                + tuple(c + delta() for c in z[Z.p :])
                for z in cluster
            ]
        )
    return validate_configuration(Z.p, Z.q, clusters)


def perturbation_trials(count=200, seed=10_000, max_total=6):
    reports = []
    for n in range(count):
        s = seed + n
        rng = random.Random(s)
        Z = random_configuration(rng, max_total=max_total)
        Zp = perturb(Z, rng, separation_bound(Z))
        w, wp = greedy_ray_partition(Z).weight, greedy_ray_partition(Zp).weight
        ok = not w < wp
        reports.append(
            OracleReport(
                "perturbation",
                describe(Z),
                ok,
                None if ok else f"{describe(Zp)}: weight {wp} > {w}",
                s,
            )
        )
    return reports


def overlap_graph_connected(blocks) -> bool:
    """Are the intervals ``[min S, max S]`` of the blocks connected under overlap?"""
    spans = sorted((min(b), max(b)) for b in blocks)
    reach = spans[0][1]
    for lo, hi in spans[1:]:
        if lo > reach:
            return False
        reach = max(reach, hi)
    return True


def _group_dexterity(blocks, k, p=1):
    # heights -1 + 2h/(kw+1) rescaled affinely to h; overlaps are unchanged
    base = (0,) * p
    clusters = [[base + (h,) for h in b] for b in blocks]
    return dexterity(validate_configuration(p, 1, clusters)).dexterity


def irreducibility_check(k: int, w: int) -> OracleReport:
    """Prefix test, overlap connectivity and one dexterity class must agree on every partition."""
    name = "irreducibility-equivalence"
    listed = set(e.blocks for e in enumerate_irreducible(k, w, max_wk=None))
    for blocks in all_block_partitions(k, w):
        try:
            IrreduciblePartition(k, blocks)
            accepted = True
        except ReduciblePartitionError:
            accepted = False
        views = (accepted, blocks in listed, overlap_graph_connected(blocks),
                 _group_dexterity(blocks, k) == 1)
        if len(set(views)) != 1:
            return OracleReport(name, f"k={k} w={w}", False, f"{blocks}: {views}")
    return OracleReport(name, f"k={k} w={w}", True)


def insertion_cases(max_points=3, max_wk=8, ks=(1, 2, 3, 4), ps=(1, 2)):
    """Labelled configurations with up to ``max_points`` points and ``w*k <= max_wk``.

    Single points range over the whole catalogue.  With more points the
    per-point bound shrinks by 2 for each extra point, which keeps the
    product small; the groups sit in disjoint cylinders, so each label is
    still exercised alone.  Points are stacked on one vertical line (the
    tightest product distance) or spread along the first axis.
    """
    for k in ks:
        for n in range(1, max_points + 1):
            bound = max_wk - 2 * (n - 1)
            catalog = [e for w in range(1, bound // k + 1)
                       for e in enumerate_irreducible(k, w, max_wk=None)]
            for labels in itertools.combinations_with_replacement(catalog, n):
                for p in ps:
                    for layout in ("stacked", "spread"):
                        if layout == "stacked":
                            ys = [(0,) * p + (3 * l,) for l in range(n)]
                        else:
                            ys = [(5 * l,) + (0,) * p for l in range(n)]
                        yield p, k, ys, labels


def insertion_law_check(max_points=3, max_wk=8) -> list[OracleReport]:
    """Zero parameters give dexterity exactly ``r - s``; one moved block gives more."""
    reports = []
    for p, k, ys, labels in insertion_cases(max_points, max_wk):
        zero = [[(0,) * p for _ in range(e.weight - 1)] for e in labels]
        variants = [(zero, True)]
        for l, e in enumerate(labels):
            for slot in range(e.weight - 1):
                xi = [list(v) for v in zero]
                xi[l][slot] = (Fraction(1, 2),) + (0,) * (p - 1)
                variants.append((xi, False))
        for xi, flat in variants:
            theta = labeled_configuration(p, k, list(zip(ys, labels, xi)))
            r, s = theta.degree
            delta = dexterity(insertion_map(theta)).dexterity
            ok = delta == r - s if flat else delta > r - s
            if not ok:
                desc = f"p={p} k={k} labels={[str(e) for e in labels]} xi={xi}"
                reports.append(OracleReport("insertion-law", desc, False,
                                            f"delta={delta}, r-s={r - s}"))
                return reports
    reports.append(OracleReport("insertion-law", f"w*k<={max_wk}, points<={max_points}", True))
    return reports


@dataclass(frozen=True)
class SuiteLimits:
    max_total: int = 6
    arnold_n: int = 6
    max_wk: int = 9
    max_k_irreducible: int = 3
    distributions_r: int = 5
    random_trials: int = 100
    seed: int = 0


def _shapes(total):
    """Compositions of ``total`` into positive parts."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _shapes(total - first):
            yield (first,) + rest


def _check_counts(lim):
    for n in range(lim.max_total + 1):
        for sizes in _shapes(n):
            shape = ClusterShape(sizes)
            got = count_ray_partitions(shape)
            if got != math.factorial(n):
                return [OracleReport("a-factorial-count", str(shape), False, f"{got} != {n}!")]
    return [OracleReport("a-factorial-count", f"|k|<={lim.max_total}", True)]


def _check_arnold(lim):
    out = []
    for q in (2, 3):
        for n in range(1, lim.arnold_n + 1):
            for sizes in sorted({(n,), (1,) * n, (n - n // 2, n // 2) if n > 1 else (1,)}):
                shape = ClusterShape(sizes)
                got = betti_table(shape, 0, q).poincare()
                want = arnold_reference_polynomial(n, q)
                if got != want:
                    out.append(OracleReport("b-arnold", f"{shape} q={q}", False, f"{got} != {want}"))
    return out or [OracleReport("b-arnold", f"n<={lim.arnold_n}, q in (2,3)", True)]


def _check_symmetry(lim):
    out = []
    for sizes in ((2, 2), (2, 1), (3, 3), (2, 2, 2)):
        shape = ClusterShape(sizes)
        if shape.total > max(lim.max_total, 6):
            continue
        tables = component_tables(shape, 1)
        first = next(iter(tables.values()))
        agg = betti_table(shape, 1, 1)
        mult = len(tables)
        bad = [str(c) for c, t in tables.items() if t.ranks != first.ranks]
        scaled = {d: c * mult for d, c in first.ranks.items()}
        if bad or scaled != agg.ranks:
            out.append(OracleReport("c-component-symmetry", str(shape), False,
                                    f"differing components {bad}; aggregate {agg.ranks}"))
    return out or [OracleReport("c-component-symmetry", "(2,2) (2,1) (3,3) (2,2,2)", True)]


def _check_irreducible(lim):
    out = []
    for k in range(1, lim.max_k_irreducible + 1):
        for w in range(1, lim.max_wk // k + 1):
            rep = irreducibility_check(k, w)
            if not rep.passed:
                out.append(rep)
    return out or [OracleReport("d-irreducibility", f"k<={lim.max_k_irreducible}, wk<={lim.max_wk}", True)]


def _check_closed_form(lim):
    out = []
    for k in (1, 2):
        for p in (1, 2):
            want = closed_form_r3(k, p)
            got = betti_table(ClusterShape((k, k, k)), p, 1, want.component)
            if got.ranks != want.ranks:
                out.append(OracleReport("e-closed-form", f"k={k} p={p}", False,
                                        f"{got.ranks} != {want.ranks}"))
    return out or [OracleReport("e-closed-form", "k in (1,2), p in (1,2)", True)]


def _check_degree_bound(lim):
    out = []
    for k in (1, 2, 3):
        for r in range(lim.distributions_r):
            for s in range(r + 2):
                try:
                    dists = enumerate_distributions(k, r + 1, s, max_wk=lim.max_wk)
                except SizeGuard:
                    continue
                for a in dists:
                    if a.multiplicity(e0(k)):
                        continue
                    for p in (1, 2, 3):
                        if 2 * p * s < r + 1:
                            out.append(OracleReport("f-degree-bound", f"k={k} p={p}", False, str(a)))
    return out or [OracleReport("f-degree-bound", f"r<{lim.distributions_r}", True)]


def _check_random(lim):
    reports = greedy_trials(lim.random_trials, lim.seed)
    bad = [r for r in reports if not r.passed]
    return bad or [OracleReport("g-greedy-maximality", f"{len(reports)} random", True, seed=lim.seed)]


_SUITE = (
    _check_counts,
    _check_arnold,
    _check_symmetry,
    _check_irreducible,
    _check_closed_form,
    _check_degree_bound,
    _check_random,
)


def _run_item(args):
    fn, lim = args
    return fn(lim)


def consistency_suite(limits: SuiteLimits | None = None, *, jobs: int = 1) -> list[OracleReport]:
    """Run every check and return the reports sorted by name."""
    lim = limits or SuiteLimits()
    if lim.max_wk > DEFAULT_MAX_WK or lim.max_total > BRUTE_FORCE_MAX_TOTAL:
        raise SizeGuard("suite limits exceed the configured guards")
    tasks = [(fn, lim) for fn in _SUITE]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_item, tasks))
    else:
        results = [_run_item(t) for t in tasks]
    reports = [r for batch in results for r in batch]
    return sorted(reports, key=lambda r: (r.name, r.instance))
