import itertools
from fractions import Fraction

import pytest

from vertconf.clusters import (
    Distribution,
    IrreduciblePartition,
    count_irreducible,
    e0,
    enumerate_distributions,
    enumerate_irreducible,
    insertion_map,
    insertion_radius,
    labeled_configuration,
    labeled_to_dict,
    load_labeled,
    orientation_character,
    parse_partition,
    product_distance,
    stabilise_labeled,
    stability_range,
    standard_group,
)
from vertconf.errors import (
    CollisionError,
    DimensionMismatch,
    DiscViolation,
    ReduciblePartitionError,
    SizeGuard,
    SupportMismatch,
    VertconfError,
    WrongParameterCount,
)
from vertconf.geometry import RationalPoint, dexterity

E13 = IrreduciblePartition(2, ((1, 3), (2, 4)))
E14 = IrreduciblePartition(2, ((1, 4), (2, 3)))


def test_irreducible_examples():
    assert [str(e) for e in enumerate_irreducible(1, 1)] == ["1"]
    assert all(count_irreducible(1, w) == 0 for w in range(2, 8))
    assert enumerate_irreducible(2, 2) == [E13, E14]
    assert [str(e) for e in enumerate_irreducible(2, 2)] == ["13|24", "14|23"]
    with pytest.raises(ReduciblePartitionError):
        IrreduciblePartition(2, ((1, 2), (3, 4)))
    with pytest.raises(SizeGuard):
        enumerate_irreducible(3, 5)


def test_irreducible_counts_k2():
    # indecomposable perfect matchings
    assert [count_irreducible(2, w) for w in range(1, 6)] == [1, 2, 10, 74, 706]


def test_partition_canonical_form():
    e = IrreduciblePartition(2, ((4, 2), (3, 1)))
    assert e == E13 and e.blocks == ((1, 3), (2, 4))
    assert parse_partition("13|24", 2) == E13
    assert parse_partition("1,3|2,4", 2) == E13
    with pytest.raises(VertconfError):
        IrreduciblePartition(2, ((1, 3), (2,)))
    with pytest.raises(VertconfError):
        IrreduciblePartition(2, ((1, 3), (2, 5)))
    with pytest.raises(VertconfError):
        parse_partition("1a|23", 2)


def test_standard_groups():
    Z = standard_group(e0(2), (), 1)
    assert Z.clusters == (((0, Fraction(-1, 3)), (0, Fraction(1, 3))),)
    Z = standard_group(E13, [(0,)], 1)
    assert [[z.t for z in c] for c in Z.clusters] == [
        [Fraction(-3, 5), Fraction(1, 5)],
        [Fraction(-1, 5), Fraction(3, 5)],
    ]
    assert dexterity(Z).dexterity == 1
    Z = standard_group(E13, [("1/2",)], 1)
    assert Z.clusters[1][0][0] == Fraction(1, 2) and dexterity(Z).dexterity == 2
    with pytest.raises(WrongParameterCount):
        standard_group(E13, [], 1)
    with pytest.raises(DiscViolation):
        standard_group(E13, [(1, 1)], 2)
    with pytest.raises(DimensionMismatch):
        standard_group(E13, [(0, 0)], 1)
    standard_group(E13, [(1, 0)], 2)  # boundary of the closed disc


def test_insertion_examples():
    th = labeled_configuration(1, 2, [((0, 0), e0(2), [])])
    assert insertion_radius(th) == 1
    assert insertion_map(th).clusters == (((0, Fraction(-1, 3)), (0, Fraction(1, 3))),)
    th = labeled_configuration(1, 2, [((0, 0), e0(2), []), ((10, 0), e0(2), [])])
    assert insertion_radius(th) == 2
    Z = insertion_map(th)
    assert [[tuple(z) for z in c] for c in Z.clusters] == [
        [(0, Fraction(-2, 3)), (0, Fraction(2, 3))],
        [(10, Fraction(-2, 3)), (10, Fraction(2, 3))],
    ]
    assert dexterity(Z).dexterity == 2
    th = labeled_configuration(1, 2, [((0, 0), E13, [(0,)])])
    assert th.degree == (2, 1)
    assert dexterity(insertion_map(th)).dexterity == 1


def test_product_distance():
    a, b = RationalPoint((0, 0, 0)), RationalPoint((3, 4, 1))
    assert product_distance(a, b) == 5
    c = RationalPoint((1, 1, 0))
    d = product_distance(a, c)
    assert d * d <= 2 < (d + Fraction(1, 2**19)) ** 2
    assert product_distance(a, RationalPoint((0, 0, 7))) == 7


def test_labeled_validation(tmp_path):
    with pytest.raises(CollisionError):
        labeled_configuration(1, 2, [((0, 0), e0(2), []), ((0, 0), e0(2), [])])
    with pytest.raises(WrongParameterCount):
        labeled_configuration(1, 2, [((0, 0), E13, [])])
    with pytest.raises(DiscViolation):
        labeled_configuration(1, 2, [((0, 0), E13, [(2,)])])
    with pytest.raises(DimensionMismatch):
        labeled_configuration(1, 2, [((0,), e0(2), [])])
    with pytest.raises(VertconfError):
        labeled_configuration(1, 3, [((0, 0), E13, [(0,)])])
    doc = {"p": 1, "k": 2, "points": [{"y": [0, 0], "partition": [[1, 3], [2, 4]], "xi": [["1/2"]]}]}
    th = load_labeled(doc)
    assert th.points[0].e == E13 and th.points[0].xi == ((Fraction(1, 2),),)
    assert load_labeled(labeled_to_dict(th)) == th
    doc["points"][0]["partition"] = [[1, 2], [3, 4]]
    with pytest.raises(ReduciblePartitionError):
        load_labeled(doc)


def test_stabilise_labeled():
    th = labeled_configuration(1, 2, [((0, 0), E13, [(0,)])])
    st = stabilise_labeled(th)
    assert st.points[-1].y == (2, 0) and st.points[-1].e == e0(2)
    r, s = th.degree
    assert st.degree == (r + 1, s)
    assert stabilise_labeled(labeled_configuration(2, 1, [])).points[0].y == (2, 0, 0)


def test_distributions_examples():
    assert [str(a) for a in enumerate_distributions(3, 2, 0)] == ["2*[123]"]
    assert len(enumerate_distributions(2, 2, 1)) == 2
    got = enumerate_distributions(2, 3, 1)
    assert [a.support for a in got] == [((e0(2), 1), (E13, 1)), ((e0(2), 1), (E14, 1))]
    assert enumerate_distributions(2, 0, 0) == [Distribution(())]
    assert enumerate_distributions(2, 2, 2) == []
    with pytest.raises(VertconfError):
        enumerate_distributions(2, 1, 2)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("r,s", [(3, 1), (4, 2), (5, 2), (4, 3), (6, 3)])
def test_distribution_degrees(k, r, s):
    dists = enumerate_distributions(k, r, s)
    assert all(a.degree == (r, s) for a in dists)
    assert len(set(dists)) == len(dists)
    assert dists == sorted(dists, key=Distribution.sort_key)
    for a in dists:
        b = a + e0(k)
        assert b.degree == (r + 1, s)


def test_distribution_counts_by_hand():
    # (4,2) with k=2: two weight-2 partitions (3 multisets) or one weight-3 one plus e0 (10)
    assert len(enumerate_distributions(2, 4, 2)) == 3 + 10


def test_orientation_character():
    a = Distribution(((E13, 2), (e0(2), 1)))
    ident = {E13: (1, 2), e0(2): (1,)}
    assert orientation_character(a, 1, ident) == 1
    swap = {E13: (2, 1), e0(2): (1,)}
    assert orientation_character(a, 1, swap) == -1
    assert orientation_character(a, 2, swap) == 1
    with pytest.raises(SupportMismatch):
        orientation_character(a, 1, {E13: (2, 1)})
    with pytest.raises(SupportMismatch):
        orientation_character(a, 1, {E13: (1, 1), e0(2): (1,)})
    b = Distribution(((e0(2), 3),))
    for perm in itertools.permutations((1, 2, 3)):
        assert orientation_character(b, 1, {e0(2): perm}) == 1


def test_stability_range():
    assert stability_range(7) == 3
    assert stability_range(0) == 0
    assert all(stability_range(2 * m) == m for m in range(10))
    with pytest.raises(VertconfError):
        stability_range(-1)
