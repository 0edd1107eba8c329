import random
from fractions import Fraction
from math import gcd

import pytest

from helpers import naive_orbit
from xpq import (
    IdentityElement,
    NotCoprime,
    OutOfRange,
    QmodZ,
    SolenoidPoint,
    SystemParams,
    beta_apply,
    enumerate_minimal_sets,
    fixed_points,
    is_invariant_set,
    lift_sequence,
    multiplicative_order,
    orbit_of,
    stabilizer_lattice,
)


class TestSystemParams:
    def test_validation(self):
        with pytest.raises(OutOfRange):
            SystemParams(1, 3)
        with pytest.raises(OutOfRange):
            SystemParams(2, 0)

    def test_independence_detection(self):
        assert SystemParams(2, 3).mult_indep is True
        assert SystemParams(4, 8).mult_indep is False
        assert SystemParams(12, 18).mult_indep is True
        with pytest.raises(ValueError):
            SystemParams(4, 8, mult_indep=True)
        # an explicit correct flag is accepted
        assert SystemParams(2, 3, mult_indep=True).mult_indep is True

    def test_require_coprime(self):
        params = SystemParams(2, 3)
        params.require_coprime(5)
        with pytest.raises(NotCoprime):
            params.require_coprime(4)
        with pytest.raises(NotCoprime):
            params.require_coprime(0)  # gcd(0, pq) = pq


class TestAction:
    def test_worked(self):
        params = SystemParams(2, 3)
        x = SolenoidPoint.of(1, 5)
        assert beta_apply(params, (1, 0), x).coord == QmodZ(3, 5)
        assert beta_apply(params, (0, 1), x).coord == QmodZ(2, 5)
        assert beta_apply(params, (1, 1), x).coord == QmodZ(1, 5)  # 6 = 1 mod 5

    def test_action_law(self):
        params = SystemParams(2, 3)
        rng = random.Random(2)
        for _ in range(200):
            r = rng.choice([d for d in range(1, 60) if gcd(d, 6) == 1])
            x = SolenoidPoint.of(rng.randrange(r), r)
            m1, n1, m2, n2 = (rng.randint(-4, 4) for _ in range(4))
            one_step = beta_apply(params, (m1 + m2, n1 + n2), x)
            two_step = beta_apply(params, (m1, n1), beta_apply(params, (m2, n2), x))
            assert one_step == two_step

    def test_inverse(self):
        params = SystemParams(2, 3)
        x = SolenoidPoint.of(3, 7)
        y = beta_apply(params, (2, -1), x)
        assert beta_apply(params, (-2, 1), y) == x

    def test_rejects_bad_denominator(self):
        with pytest.raises(NotCoprime):
            beta_apply(SystemParams(2, 3), (1, 0), SolenoidPoint.of(1, 6))


class TestStabilizer:
    def test_worked_examples(self):
        params = SystemParams(2, 3)
        lat5 = stabilizer_lattice(params, 5)
        assert lat5.basis == ((1, 1), (0, 4)) and lat5.index == 4
        lat7 = stabilizer_lattice(params, 7)
        assert lat7.basis == ((1, 4), (0, 6)) and lat7.index == 6
        lat1 = stabilizer_lattice(params, 1)
        assert lat1.basis == ((1, 0), (0, 1)) and lat1.index == 1

    def test_membership_matches_congruence(self):
        params = SystemParams(2, 3)
        for r in (5, 7, 11, 25, 49, 55):
            lat = stabilizer_lattice(params, r)
            for m in range(-8, 9):
                for n in range(-8, 9):
                    in_lat = lat.contains(m, n)
                    cong = (pow(2, m, r) * pow(3, n, r)) % r == 1
                    assert in_lat == cong, (r, m, n)

    def test_hnf_shape_and_index(self):
        for p, q in ((2, 3), (3, 5), (2, 5)):
            params = SystemParams(p, q)
            for r in range(1, 200):
                if gcd(r, p * q) != 1:
                    continue
                lat = stabilizer_lattice(params, r)
                (a, b), (z, c) = lat.basis
                assert z == 0 and a > 0 and c > 0 and 0 <= b < c
                assert lat.index == a * c
                if r > 1:
                    assert pow(p, a, r) * pow(q, b, r) % r == 1
                    assert pow(q, c, r) == 1 % r
                    assert c == multiplicative_order(q, r)
                # index is the size of the subgroup generated by p and q
                assert lat.index == len(naive_orbit(p, q, r, 1))

    def test_coords(self):
        params = SystemParams(2, 3)
        lat = stabilizer_lattice(params, 5)
        assert lat.coords(1, 1) == (1, 0)
        assert lat.coords(0, 4) == (0, 1)
        assert lat.coords(2, 2) == (2, 0)
        assert lat.coords(1, 0) is None
        c1, c2 = lat.coords(3, -5)  # (3,-5): 2^3 3^-5 = 8/243 = 8*2 = 16 = 1 mod 5
        assert c1 * lat.basis[0][0] + c2 * lat.basis[1][0] == 3
        assert c1 * lat.basis[0][1] + c2 * lat.basis[1][1] == -5

    def test_not_coprime(self):
        with pytest.raises(NotCoprime):
            stabilizer_lattice(SystemParams(2, 3), 9)


class TestOrbits:
    def test_matches_naive(self):
        for p, q in ((2, 3), (3, 5)):
            params = SystemParams(p, q)
            for r in range(1, 120):
                if gcd(r, p * q) != 1:
                    continue
                orbit = orbit_of(params, SolenoidPoint.of(1, r))
                assert orbit.denominator == r
                assert set(orbit.numerators()) == naive_orbit(p, q, r, 1)
                assert orbit.size == orbit.stabilizer.index

    def test_points_sorted_and_base_point_free(self):
        params = SystemParams(2, 3)
        orbit = orbit_of(params, SolenoidPoint.of(1, 7))
        nums = orbit.numerators()
        assert list(nums) == sorted(nums)
        for a in nums:
            assert orbit_of(params, SolenoidPoint.of(a, 7)) == orbit

    def test_non_unit_numerator(self):
        # 5/25 is not in lowest terms; the orbit lives at denominator 5
        params = SystemParams(2, 3)
        orbit = orbit_of(params, SolenoidPoint.of(5, 25))
        assert orbit.denominator == 5

    def test_enumerate(self):
        params = SystemParams(2, 3)
        orbits = enumerate_minimal_sets(params, 7)
        assert [o.denominator for o in orbits] == [1, 5, 7]
        assert [o.size for o in orbits] == [1, 4, 6]

    def test_enumerate_partitions_units(self):
        for p, q in ((2, 3), (2, 5)):
            params = SystemParams(p, q)
            orbits = enumerate_minimal_sets(params, 40)
            by_r: dict[int, list] = {}
            for o in orbits:
                by_r.setdefault(o.denominator, []).append(o)
            for r in range(1, 41):
                if gcd(r, p * q) != 1:
                    continue
                units = {a for a in range(r) if gcd(a, r) == 1} if r > 1 else {0}
                seen: set[int] = set()
                for o in by_r[r]:
                    nums = set(o.numerators())
                    assert not (nums & seen)  # orbits are disjoint
                    seen |= nums
                assert seen == units

    def test_enumerate_threads_deterministic(self):
        params = SystemParams(3, 5)
        assert enumerate_minimal_sets(params, 50) == enumerate_minimal_sets(
            params, 50, threads=4
        )

    def test_minimality(self):
        # from any point, the two maps reach the whole orbit
        params = SystemParams(2, 3)
        for orbit in enumerate_minimal_sets(params, 25):
            r = orbit.denominator
            for a in orbit.numerators():
                assert naive_orbit(2, 3, r, a) == set(orbit.numerators())

    def test_is_invariant_set(self):
        params = SystemParams(2, 3)
        orbit = orbit_of(params, SolenoidPoint.of(1, 7))
        pts = [SolenoidPoint.of(a, 7) for a in orbit.numerators()]
        assert is_invariant_set(params, pts)
        assert not is_invariant_set(params, pts[:3])
        assert is_invariant_set(params, [])


class TestFixedPoints:
    def test_worked(self):
        params = SystemParams(2, 3)
        fp = fixed_points(params, (1, 1))
        assert fp.count == 5
        assert [pt.coord for pt in fp.sample] == [
            QmodZ(0, 1),
            QmodZ(1, 5),
            QmodZ(2, 5),
            QmodZ(3, 5),
            QmodZ(4, 5),
        ]
        assert fixed_points(params, (2, 1)).count == 11
        assert fixed_points(params, (2, 0)).count == 1
        assert fixed_points(params, (-1, -1)).count == 5

    def test_sample_is_fixed(self):
        params = SystemParams(2, 3)
        for mn in ((1, 1), (2, 1), (1, 2), (-1, 2), (3, -1)):
            fp = fixed_points(params, mn)
            for pt in fp.sample:
                assert beta_apply(params, mn, pt) == pt

    def test_count_vs_brute_force(self):
        # on the sector with denominator d the pair (m, n) acts as the unit
        # p^-m q^-n mod d, so a/d is fixed iff d divides U*a, where U is the
        # numerator of p^m q^n - 1 (the denominator is a unit mod d)
        params = SystemParams(2, 3)
        for m in range(-3, 4):
            for n in range(-3, 4):
                if (m, n) == (0, 0):
                    continue
                t = fixed_points(params, (m, n)).count
                u = (Fraction(2) ** m * Fraction(3) ** n - 1).numerator
                brute = 0
                for d in range(1, 251):
                    if gcd(d, 6) != 1:
                        continue
                    brute += sum(
                        1 for a in range(d) if gcd(a, d) == 1 and u * a % d == 0
                    )
                assert t <= 250  # the brute-force window sees every divisor
                assert t == brute, (m, n)

    def test_bounded_sample(self):
        params = SystemParams(2, 3)
        fp = fixed_points(params, (1, 1), max_denominator=1)
        assert fp.count == 5
        assert [pt.coord for pt in fp.sample] == [QmodZ(0, 1)]

    def test_identity_rejected(self):
        with pytest.raises(IdentityElement):
            fixed_points(SystemParams(2, 3), (0, 0))
        # dependent parameters can make a nonzero pair act trivially
        with pytest.raises(IdentityElement):
            fixed_points(SystemParams(4, 8), (3, -2))


class TestLift:
    def test_shift_relation(self):
        params = SystemParams(2, 3)
        seq = lift_sequence(params, SolenoidPoint.of(3, 7), 6)
        assert len(seq) == 7
        assert seq[0] == SolenoidPoint.of(3, 7)
        for i in range(6):
            assert seq[i + 1].coord.mul_int(6) == seq[i].coord
            assert beta_apply(params, (1, 1), seq[i]) == seq[i + 1]

    def test_depth_zero(self):
        params = SystemParams(2, 3)
        x = SolenoidPoint.of(2, 5)
        assert lift_sequence(params, x, 0) == (x,)
        with pytest.raises(OutOfRange):
            lift_sequence(params, x, -1)

    def test_rejects_bad_denominator(self):
        with pytest.raises(NotCoprime):
            lift_sequence(SystemParams(2, 3), SolenoidPoint.of(1, 4), 3)
