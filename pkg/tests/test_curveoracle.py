import random

import pytest

from sidonlab.curveoracle import (
    CurveParams,
    QuadricParams,
    curve_point_count,
    dyadic_box_coverage,
    enumerate_quadric,
    hasse_gap,
    hasse_slack,
    repeated_coordinate_count,
    special_rep4_count,
    torus_points,
    triple_rep_count,
    triple_rep_table,
)
from sidonlab.numbertheory import NotGenerator, NotPrime, RangeError, is_prime, primitive_root


def test_curve_point_count_example():
    assert curve_point_count(CurveParams(7, 0, 1)) == 6


def test_curve_params_validation():
    with pytest.raises(NotPrime):
        CurveParams(8, 0, 1)
    with pytest.raises(RangeError):
        CurveParams(7, 0, 0)
    with pytest.raises(RangeError):
        CurveParams(7, 7, 1)


def test_triple_rep_count_example():
    # logs {0,2,4} for g=3 mod 7: powers {1,2,4} sum to 0 mod 7.
    assert triple_rep_count(7, 3, 0, 0) == 6
    assert repeated_coordinate_count(7, 3, 0, 0) == 0


def test_triple_rep_requires_generator():
    with pytest.raises(NotGenerator):
        triple_rep_count(7, 2, 0, 0)  # 2^3 = 1 mod 7


def test_identity_small_sweep():
    # The count of ordered log-triples equals the V != 0 point count of the
    # curve with lam = g^a, for every target. Full sweep at p = 11, 13.
    for p in (5, 7, 11, 13):
        g = primitive_root(p)
        table = triple_rep_table(p, g)
        for a in range(p - 1):
            lam = pow(g, a, p)
            for b in range(p):
                curve = curve_point_count(CurveParams(p, b, lam))
                assert table.get((a, b), 0) == curve, (p, a, b)


def test_pairwise_table_is_total_minus_repeated():
    p, g = 11, primitive_root(11)
    full = triple_rep_table(p, g)
    pairwise = triple_rep_table(p, g, distinct="pairwise")
    for a in range(p - 1):
        for b in range(p):
            rep = repeated_coordinate_count(p, g, a, b)
            assert rep <= 9
            assert pairwise.get((a, b), 0) == full.get((a, b), 0) - rep


def test_special_rep4_bounded_small():
    for p in (5, 7):
        g = primitive_root(p)
        for a in range(p - 1):
            for b in range(p):
                assert special_rep4_count(p, g, a, b) <= 6


def test_hasse_gap_example_and_slack():
    assert hasse_gap(CurveParams(7, 0, 1)) == -1
    assert hasse_slack(7) == 10
    assert hasse_slack(100) == 24
    rng = random.Random(99)
    primes = [p for p in range(101, 200) if is_prime(p)]
    for _ in range(10):
        p = rng.choice(primes)
        b = rng.randrange(p)
        lam = rng.randrange(1, p)
        assert abs(hasse_gap(CurveParams(p, b, lam))) <= hasse_slack(p)


def test_enumerate_quadric_example():
    sols = enumerate_quadric(QuadricParams(7, 0, 1))
    assert (0, 2) in sols and (0, 5) in sols
    assert all(((x1 * x1 + x2 * x2 + (x1 + x2) ** 2) % 7 == 1) for x1, x2 in sols)
    # swap symmetry
    assert set(sols) == {(b, a) for a, b in sols}


def test_quadric_swap_symmetry_random():
    rng = random.Random(3)
    for _ in range(10):
        p = rng.choice([7, 13, 19, 31])
        q = QuadricParams(p, rng.randrange(p), rng.randrange(p))
        pts = set(enumerate_quadric(q))
        assert pts == {(b, a) for a, b in pts}


def test_reducible_case_splits_into_lines():
    # 6 r2 = 2 r1^2 mod p with p = 1 mod 3: writing c = r1/3 (the center),
    # the quadric becomes (x1-c)^2 + (x1-c)(x2-c) + (x2-c)^2 = 0, the union
    # of the lines x1 - c = w (x2 - c) for the two roots of w^2 + w + 1 = 0.
    p = 13
    w = next(z for z in range(2, p) if (z * z + z + 1) % p == 0)
    w2 = w * w % p
    inv3 = pow(3, -1, p)
    for r1 in range(p):
        r2 = (2 * r1 * r1) % p * pow(6, -1, p) % p
        q = QuadricParams(p, r1, r2)
        assert q.degenerate_rhs and q.splits_into_lines
        sols = enumerate_quadric(q)
        assert sols.reducible
        c = r1 * inv3 % p
        lines = set()
        for x2 in range(p):
            lines.add(((c + w * (x2 - c)) % p, x2))
            lines.add(((c + w2 * (x2 - c)) % p, x2))
        assert set(sols) == lines, r1


def test_irreducible_flag():
    q = QuadricParams(7, 0, 1)
    assert not q.splits_into_lines  # 6*1 - 0 = 6 != 0 mod 7
    assert not enumerate_quadric(q).reducible


def test_torus_points_example():
    cloud = torus_points(QuadricParams(7, 0, 1))
    mapped = {tuple(pt) for pt in cloud.points}
    from fractions import Fraction

    assert (Fraction(0), Fraction(2, 7), Fraction(0), Fraction(4, 7)) in mapped
    for pt in cloud.points:
        for c in pt:
            assert 0 <= c < 1


def test_torus_csv_format():
    cloud = torus_points(QuadricParams(7, 0, 1))
    text = cloud.to_csv()
    lines = text.strip().splitlines()
    assert lines[0].startswith("# {")
    assert lines[1].split(",")[0] == "x1_num"
    assert len(lines) == 2 + len(cloud.points)
    row = lines[2].split(",")
    assert len(row) == 8 and all(cell.lstrip("-").isdigit() for cell in row)


def test_dyadic_box_coverage_empty_cloud():
    from sidonlab.curveoracle import TorusCloud

    empty = TorusCloud(params=QuadricParams(7, 0, 1), points=())
    assert dyadic_box_coverage(empty, 1) == (16, 16)
    assert dyadic_box_coverage(empty, 0) == (1, 1)


def test_dyadic_box_coverage_counts():
    cloud = torus_points(QuadricParams(7, 0, 1))
    assert cloud.points
    e0, t0 = dyadic_box_coverage(cloud, 0)
    assert (e0, t0) == (0, 1)
    e1, t1 = dyadic_box_coverage(cloud, 1)
    assert t1 == 16 and 0 <= e1 < 16
    e2, t2 = dyadic_box_coverage(cloud, 2)
    assert t2 == 256
    # occupied boxes can only split as k grows
    assert (t1 - e1) <= (t2 - e2) <= 4 * 4 * (t1 - e1)
