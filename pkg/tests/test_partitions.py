import itertools

import pytest
from hypothesis import given, strategies as st

from vertconf.errors import (
    IndexOutOfShape,
    NotAPartition,
    R1Violation,
    R2Violation,
    TotalMismatch,
    VertconfError,
)
from vertconf.partitions import (
    ClusterShape,
    ComponentLabel,
    Ordering,
    RayPartition,
    TableIndex,
    WeightVector,
    compare_weights,
    permutation_rank,
    permutation_unrank,
    ray_partition_stats,
    space_profile,
    validate_ray_partition,
)
from vertconf.enumeration import enumerate_ray_partitions


def test_shape_basics():
    s = ClusterShape.parse("3,4,2,2")
    assert s.r == 4 and s.total == 11
    assert s.multiplicity(2) == 2
    assert sum(k * m for k, m in s.multiplicities().items()) == s.total
    assert ClusterShape.parse("") == ClusterShape(())
    assert str(s) == "3,4,2,2"
    with pytest.raises(VertconfError):
        ClusterShape((2, 0))
    with pytest.raises(VertconfError):
        ClusterShape.parse("a,1")


def test_table_order():
    s = ClusterShape((2, 1))
    assert s.indices() == [TableIndex(1, 1), TableIndex(1, 2), TableIndex(2, 1)]
    assert TableIndex(1, 2) < TableIndex(2, 1)
    assert (2, 2) not in s and (2, 1) in s


def test_validate_examples():
    s = ClusterShape((2, 1))
    Q = validate_ray_partition(s, [[(1, 1), (2, 1)], [(1, 2)]])
    assert str(Q) == "1.1 2.1 | 1.2"
    with pytest.raises(R2Violation):
        validate_ray_partition(ClusterShape((2,)), [[(1, 2), (1, 1)]])
    with pytest.raises(R1Violation):
        validate_ray_partition(ClusterShape((2,)), [[(1, 2)], [(1, 1)]])
    with pytest.raises(IndexOutOfShape):
        validate_ray_partition(s, [[(1, 1), (3, 1)], [(1, 2)]])
    with pytest.raises(NotAPartition):
        validate_ray_partition(s, [[(1, 1)], [(1, 2)]])
    with pytest.raises(NotAPartition):
        validate_ray_partition(s, [[(1, 1), (1, 1)], [(1, 2), (2, 1)]])
    with pytest.raises(NotAPartition):
        validate_ray_partition(s, [[(1, 1), (1, 2), (2, 1)], []])


def test_parse_round_trip():
    s = ClusterShape((2, 2))
    for Q in enumerate_ray_partitions(s):
        assert RayPartition.parse(str(Q), s) == Q


def test_stats_examples():
    s = ClusterShape((2, 1))
    Q = RayPartition.parse("1.1 2.1 | 1.2", s)
    st_ = ray_partition_stats(Q, 1, 2)
    assert (st_.length, st_.agility, st_.degree, st_.stratum_dim) == (2, 1, 2, 6)
    assert st_.weight == WeightVector((2, 1))
    one = ClusterShape((2,))
    Q = RayPartition.parse("1.1 1.2", one)
    assert ray_partition_stats(Q, 3, 1).sigma.is_identity()
    Q = RayPartition.parse("1.1 | 1.2", one)
    st_ = ray_partition_stats(Q, 3, 1)
    assert st_.sigma == ComponentLabel(((2, 1),))
    assert st_.agility == 1 and st_.degree == 0


@pytest.mark.parametrize("sizes", [(1,), (2, 1), (2, 2), (1, 1, 2), (3, 1)])
@pytest.mark.parametrize("p,q", [(0, 1), (1, 1), (2, 1), (1, 2), (0, 3), (2, 3)])
def test_complementary_dimension(sizes, p, q):
    shape = ClusterShape(sizes)
    for Q in enumerate_ray_partitions(shape):
        s = ray_partition_stats(Q, p, q)
        assert s.degree + s.stratum_dim == p * shape.r + q * shape.total
        assert 1 <= s.agility <= min(s.length, shape.r)
        if q == 1 and p:
            assert s.degree % p == 0
        if s.agility == shape.r:
            assert all(len({i for i, _ in b}) == 1 for b in Q.blocks)


def test_compare_weights_examples():
    assert compare_weights((3,), (2, 1)) is Ordering.GREATER
    assert compare_weights((1, 2), (1, 1, 1)) is Ordering.GREATER
    assert compare_weights((2, 1), (2, 1)) is Ordering.EQUAL
    with pytest.raises(TotalMismatch):
        compare_weights((2,), (1,))


def compositions(n):
    """Strategy for tuples of positive integers summing to ``n``."""
    cuts = st.sets(st.integers(1, n - 1), max_size=n - 1) if n > 1 else st.just(set())
    return cuts.map(lambda c: tuple(b - a for a, b in zip([0, *sorted(c)], [*sorted(c), n])))


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(*(compositions(n),) * 3)))
def test_compare_weights_total_order(vs):
    a, b, c = (WeightVector(v) for v in vs)
    assert compare_weights(a, b) == -compare_weights(b, a)
    if a <= b and b <= c:
        assert a <= c
    assert sum(x for x in (a < b, a == b, a > b)) == 1


def test_space_profile_examples():
    prof = space_profile(ClusterShape((3, 4, 2, 2)), 1, 1)
    assert prof.dimension == 15 and not prof.unordered_orientable
    assert space_profile(ClusterShape((2, 1)), 1, 1).ordered_components == 2
    assert space_profile(ClusterShape((2, 1)), 0, 1).unordered_components == 3
    assert space_profile(ClusterShape((2, 1)), 0, 1).ordered_components == 6
    assert space_profile(ClusterShape((2, 1)), 1, 2).ordered_components == 1
    # two points in R^3 swap to an orientation reversal; in R^2 they do not
    assert space_profile(ClusterShape((1, 1)), 1, 2).unordered_orientable is False
    assert space_profile(ClusterShape((1, 1)), 0, 2).unordered_orientable is True


@pytest.mark.parametrize("n", range(0, 6))
def test_permutation_rank_bijective(n):
    perms = list(itertools.permutations(range(1, n + 1)))
    assert [permutation_rank(p) for p in perms] == list(range(len(perms)))
    assert [permutation_unrank(n, r) for r in range(len(perms))] == perms


def test_component_label_parse_and_rank():
    shape = ClusterShape((2, 3))
    lab = ComponentLabel.parse("2,1;3,1,2", shape)
    assert str(lab) == "2,1;3,1,2"
    assert ComponentLabel.from_rank(shape, lab.rank()) == lab
    assert ComponentLabel.parse("id", shape).rank() == 0
    with pytest.raises(VertconfError):
        ComponentLabel.parse("1,1;1,2,3", shape)
    with pytest.raises(VertconfError):
        ComponentLabel.parse("1,2", shape)
