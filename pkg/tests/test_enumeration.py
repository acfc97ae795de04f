import math

import pytest

from vertconf.enumeration import (
    PoincarePolynomial,
    arnold_reference_polynomial,
    betti_table,
    closed_form_r3,
    component_table_by_symmetry,
    component_tables,
    conjecture_scan,
    count_ray_partitions,
    enumerate_ray_partitions,
    shard_prefixes,
)
from vertconf.errors import ComponentMeaningless, SizeGuard, VertconfError
from vertconf.partitions import ClusterShape, ComponentLabel


def S(*k):
    return ClusterShape(k)


def test_small_streams():
    assert [str(Q) for Q in enumerate_ray_partitions(S(1))] == ["1.1"]
    assert sorted(str(Q) for Q in enumerate_ray_partitions(S(1, 1))) == ["1.1 2.1", "1.1 | 2.1"]
    assert count_ray_partitions(S(2, 1)) == 6
    assert count_ray_partitions(S()) == 1


def test_stream_is_deterministic():
    a = [str(Q) for Q in enumerate_ray_partitions(S(2, 2))]
    b = [str(Q) for Q in enumerate_ray_partitions(S(2, 2))]
    assert a == b and len(set(a)) == 24


@pytest.mark.parametrize("p,q", [(0, 2), (1, 1), (2, 2), (3, 4)])
def test_two_points(p, q):
    assert betti_table(S(1, 1), p, q).ranks == ({0: 1, p + q - 1: 1} if p + q > 1 else {0: 2})


def test_examples():
    ident = ComponentLabel.identity(S(2, 2, 2))
    assert betti_table(S(2, 2, 2), 1, 1, ident).ranks == {0: 1, 1: 15, 2: 74}
    assert betti_table(S(1, 1, 1), 0, 3).ranks == {0: 1, 2: 3, 4: 2}
    with pytest.raises(ComponentMeaningless):
        betti_table(S(2, 2), 1, 2, ComponentLabel.identity(S(2, 2)))
    with pytest.raises(VertconfError):
        betti_table(S(2, 2), 1, 1, ComponentLabel.identity(S(2, 1)))


def test_guard():
    with pytest.raises(SizeGuard):
        betti_table(S(7, 6), 1, 1)
    with pytest.raises(SizeGuard):
        betti_table(S(3, 3), 1, 1, max_total=5)


def test_arnold_polynomials():
    assert arnold_reference_polynomial(1, 2) == PoincarePolynomial.one()
    assert str(arnold_reference_polynomial(3, 2)) == "1 + 3t + 2t^2"
    assert str(arnold_reference_polynomial(4, 3)) == "1 + 6t^2 + 11t^4 + 6t^6"
    assert arnold_reference_polynomial(5, 2)(1) == math.factorial(5)


@pytest.mark.parametrize("sizes", [(3,), (1, 1, 1, 1), (2, 3), (1, 2, 1, 1)])
@pytest.mark.parametrize("q", [2, 3])
def test_arnold_oracle(sizes, q):
    shape = ClusterShape(sizes)
    assert betti_table(shape, 0, q).poincare() == arnold_reference_polynomial(shape.total, q)


@pytest.mark.parametrize("k,p", [(1, 1), (2, 1), (1, 2), (2, 3)])
def test_closed_form(k, p):
    want = closed_form_r3(k, p)
    got = betti_table(S(k, k, k), p, 1, ComponentLabel.identity(S(k, k, k)))
    assert got.ranks == want.ranks


def test_closed_form_values():
    assert closed_form_r3(1, 1).ranks == {0: 1, 1: 3, 2: 2}
    assert closed_form_r3(2, 3).ranks == {0: 1, 3: 15, 6: 74}


@pytest.mark.parametrize("sizes", [(2, 2), (2, 1), (3, 2), (2, 1, 2)])
def test_component_symmetry(sizes):
    shape = ClusterShape(sizes)
    tables = component_tables(shape, 2)
    assert len(tables) == math.prod(math.factorial(k) for k in sizes)
    first = next(iter(tables.values()))
    assert all(t.ranks == first.ranks for t in tables.values())
    assert component_table_by_symmetry(shape, 2).ranks == first.ranks
    for label, table in tables.items():
        assert betti_table(shape, 2, 1, label).ranks == table.ranks


def test_q1_support_multiple_of_p():
    for d in betti_table(S(2, 3), 3, 1).ranks:
        assert d % 3 == 0


def test_total_rank_is_factorial():
    t = betti_table(S(2, 2, 1), 1, 2)
    assert t.total_rank == math.factorial(5)


def test_csv_format():
    t = betti_table(S(1, 1), 2, 2)
    assert t.to_csv() == "degree,rank\n0,1\n3,1\n"


def test_jobs_do_not_change_result():
    assert betti_table(S(3, 3), 1, 1, jobs=3).ranks == betti_table(S(3, 3), 1, 1).ranks
    assert betti_table(S(3, 3), 1, 1, jobs=3).ranks == {0: 36, 1: 684}


def test_shard_prefixes():
    assert shard_prefixes(4) == [(0, 0), (0, 1)]
    assert len(shard_prefixes(5)) == math.factorial(3)


def test_conjecture_scan():
    rep = conjecture_scan(20)
    rows = {r.k: r for r in rep.rows}
    assert (rows[1].lhs, rows[1].rhs, rows[1].holds) == (2, 9, True)
    assert (rows[4].lhs, rows[4].rhs, rows[4].holds) == (34442, 42849, True)
    assert (rows[5].lhs, rows[5].rhs, rows[5].holds) == (756002, 567009, False)
    assert rep.first_failure == 5
    assert all(r.holds for r in rep.rows[:4])
    for col in ("lhs_ratio", "rhs_ratio"):
        vals = [getattr(r, col) for r in rep.rows]
        assert vals == sorted(vals) and abs(vals[-1] - 1) < 0.02
    assert conjecture_scan(3).first_failure is None
    with pytest.raises(VertconfError):
        conjecture_scan(0)
