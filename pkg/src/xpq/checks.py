"""Self-contained property suites behind the `check` CLI command.

Each suite re-verifies a slice of the library against brute force or
against algebraic laws, using only the standard library, a seeded RNG,
and configurable bounds.  They are smoke tests for an installed copy,
not a replacement for the test suite; every suite is deterministic for
a fixed seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .dynamics import (
    SolenoidPoint,
    SystemParams,
    beta_apply,
    enumerate_minimal_sets,
    fixed_points,
    is_invariant_set,
    lift_sequence,
)
from .exact import (
    Cyclotomic,
    PqRational,
    QmodZ,
    multiplicative_order,
    root_of_unity,
)
from .groupalg import GroupAlgebraElement, GroupElement, group_inv, group_mul, icc_witness
from .ktheory import k_theory_of_group, mult_map_ker_coker, smith_normal_form
from .primspace import (
    ALL,
    ESCAPING,
    INFINITY,
    ConstantOrbitTail,
    OrbitCharPoint,
    SequenceDesc,
    closed_intersection,
    closed_union,
    closure,
    limit_set,
    specializes,
)
from .traces import (
    CanonicalTrace,
    Character,
    FiniteOrbitTrace,
    OrbitMeasureTrace,
    check_pq_invariance,
    moments,
    nonfaithful_witness,
    trace_eval,
)

_TOL = 1e-9


@dataclass
class CheckResult:
    suite: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, label: str):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 20:
                self.failures.append(label)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _random_qmodz(rng: random.Random) -> QmodZ:
    den = rng.randint(1, 60)
    return QmodZ(rng.randint(-60, 60), den)


def _random_group_element(rng: random.Random, params: SystemParams) -> GroupElement:
    x = PqRational.from_fraction(
        Fraction(rng.randint(-20, 20), params.p ** rng.randint(0, 2) * params.q ** rng.randint(0, 2)),
        params.p,
        params.q,
    )
    return GroupElement(x, rng.randint(-3, 3), rng.randint(-3, 3))


def _random_algebra_element(rng: random.Random, params: SystemParams) -> GroupAlgebraElement:
    terms = [
        (_random_group_element(rng, params), Fraction(rng.randint(-4, 4), rng.randint(1, 4)))
        for _ in range(rng.randint(1, 3))
    ]
    return GroupAlgebraElement.from_terms(params, terms)


def _coprime_denominators(params: SystemParams, bound: int):
    return [r for r in range(1, bound + 1) if gcd(r, params.pq) == 1]


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _check_exact(params: SystemParams, rng: random.Random, bound: int, trials: int) -> CheckResult:
    res = CheckResult("exact")
    for _ in range(trials):
        x, y, z = (_random_qmodz(rng) for _ in range(3))
        res.record((x + y) + z == x + (y + z), f"assoc {x} {y} {z}")
        res.record(x + (-x) == QmodZ(0, 1), f"inverse {x}")
        res.record(x + y == y + x, f"comm {x} {y}")
    for _ in range(trials):
        f = Fraction(rng.randint(-50, 50), params.p ** rng.randint(0, 3) * params.q ** rng.randint(0, 3))
        back = PqRational.from_fraction(f, params.p, params.q).to_fraction(params.p, params.q)
        res.record(back == f, f"round-trip {f}")
    for r in _coprime_denominators(params, min(bound, 40)):
        if r == 1:
            continue
        for base in (params.p, params.q):
            d = multiplicative_order(base, r)
            naive, acc = 1, base % r
            while acc != 1:
                acc = acc * base % r
                naive += 1
            res.record(d == naive, f"order({base}, {r})")
    for _ in range(trials):
        t = _random_qmodz(rng)
        res.record(root_of_unity(t) ** t.den == Cyclotomic.one(), f"zeta^den {t}")
    return res


def _check_dynamics(params: SystemParams, rng: random.Random, bound: int, trials: int) -> CheckResult:
    res = CheckResult("dynamics")
    orbits = enumerate_minimal_sets(params, bound)
    covered: dict[int, set[int]] = {}
    for orbit in orbits:
        res.record(orbit.size == orbit.stabilizer.index, f"size mod {orbit.denominator}")
        res.record(
            is_invariant_set(params, [pt.coord for pt in orbit.points]),
            f"invariance mod {orbit.denominator}",
        )
        seen = covered.setdefault(orbit.denominator, set())
        res.record(not (seen & set(orbit.numerators())), f"disjoint mod {orbit.denominator}")
        seen |= set(orbit.numerators())
    for r, seen in covered.items():
        want = {a for a in range(r) if gcd(a, r) == 1} if r > 1 else {0}
        res.record(seen == want, f"cover mod {r}")
    for _ in range(trials):
        r = rng.choice(_coprime_denominators(params, bound))
        x = SolenoidPoint(QmodZ(rng.randrange(r), r))
        g1 = (rng.randint(-4, 4), rng.randint(-4, 4))
        g2 = (rng.randint(-4, 4), rng.randint(-4, 4))
        lhs = beta_apply(params, (g1[0] + g2[0], g1[1] + g2[1]), x)
        rhs = beta_apply(params, g1, beta_apply(params, g2, x))
        res.record(lhs == rhs, f"action law {g1} {g2} {x}")
        lifted = lift_sequence(params, x, 3)
        res.record(
            all(b.coord.mul_int(params.pq) == a.coord for a, b in zip(lifted, lifted[1:])),
            f"lift {x}",
        )
    for mn in ((1, 1), (2, 1), (1, 2)):
        fix = fixed_points(params, mn, max_denominator=bound)
        res.record(
            all(beta_apply(params, mn, pt) == pt for pt in fix.sample),
            f"fixed points {mn}",
        )
    return res


def _check_groupalg(params: SystemParams, rng: random.Random, bound: int, trials: int) -> CheckResult:
    res = CheckResult("groupalg")
    for _ in range(trials):
        g, h, k = (_random_group_element(rng, params) for _ in range(3))
        res.record(
            group_mul(params, group_mul(params, g, h), k)
            == group_mul(params, g, group_mul(params, h, k)),
            "assoc",
        )
        res.record(group_mul(params, g, group_inv(params, g)).is_identity(), "inverse")
    if params.mult_indep:
        for _ in range(trials):
            g = _random_group_element(rng, params)
            if g.is_identity():
                continue
            found = icc_witness(params, g, 6)
            res.record(len(set(found)) == 6, f"icc {g}")
    for _ in range(trials):
        a = _random_algebra_element(rng, params)
        b = _random_algebra_element(rng, params)
        c = _random_algebra_element(rng, params)
        res.record(a * (b + c) == a * b + a * c, "distributive")
        res.record((a * b).star() == b.star() * a.star(), "star anti-multiplicative")
    return res


def _check_traces(params: SystemParams, rng: random.Random, bound: int, trials: int) -> CheckResult:
    res = CheckResult("traces")
    orbits = enumerate_minimal_sets(params, min(bound, 15))
    unit = GroupAlgebraElement.unit(params, GroupElement.identity())
    specs = [CanonicalTrace(params)]
    for orbit in orbits:
        specs.append(OrbitMeasureTrace(orbit))
        lat = orbit.stabilizer
        specs.append(FiniteOrbitTrace(orbit, Character(lat, QmodZ(1, 4), QmodZ(0, 1))))
    for spec in specs:
        res.record(trace_eval(spec, unit) == Cyclotomic.one(), "normalization")
        for _ in range(max(1, trials // 4)):
            a = _random_algebra_element(rng, params)
            v = trace_eval(spec, a.star() * a).approx()
            res.record(v.real >= -_TOL and abs(v.imag) <= _TOL, "positivity")
            res.record(trace_eval(spec, a.star()) == trace_eval(spec, a).conj(), "hermitian")
        seq = moments(spec, max(params.p, params.q) + 2)
        res.record(check_pq_invariance(seq, params), "moment invariance")
    for orbit in orbits:
        if orbit.denominator == 1:
            continue
        w = nonfaithful_witness(orbit)
        spec = OrbitMeasureTrace(orbit)
        res.record(trace_eval(spec, w.star() * w).is_zero(), f"witness mod {orbit.denominator}")
        canon = trace_eval(CanonicalTrace(params), w.star() * w)
        res.record(canon == Cyclotomic.from_fraction(2), "witness canonical")
    return res


def _int_det(matrix) -> int:
    # Bareiss: fraction-free Gaussian elimination
    A = [list(row) for row in matrix]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[-1][-1]


def _check_ktheory(params: SystemParams, rng: random.Random, bound: int, trials: int) -> CheckResult:
    res = CheckResult("ktheory")
    for _ in range(trials):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        snf = smith_normal_form(M)
        prod = [
            [
                sum(snf.U[i][a] * M[a][b] * snf.V[b][j] for a in range(m) for b in range(n))
                for j in range(n)
            ]
            for i in range(m)
        ]
        res.record(prod == [list(row) for row in snf.D], "U A V = D")
        res.record(abs(_int_det(snf.U)) == 1 and abs(_int_det(snf.V)) == 1, "unimodular")
        diag = snf.diagonal()
        chain = all(
            diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1) if diag[i]
        ) and all(d >= 0 for d in diag)
        res.record(chain, "divisibility chain")
    for _ in range(trials):
        mm = rng.randint(1, 40)
        nn = rng.randint(1, 40)
        ker, cok = mult_map_ker_coker(mm, nn)
        g = gcd(mm, nn)
        want = (0, ()) if g == 1 or nn == 1 else (0, (g,))
        res.record((ker.rank, ker.torsion) == want, f"kernel x{mm} on Z/{nn}")
        res.record((cok.rank, cok.torsion) == want, f"cokernel x{mm} on Z/{nn}")
    for p in range(2, 8):
        for q in range(2, 8):
            r = k_theory_of_group(p, q)
            res.record(r.matches and r.K0 == r.K1, f"K-theory ({p}, {q})")
    return res


def _check_primspace(params: SystemParams, rng: random.Random, bound: int, trials: int) -> CheckResult:
    res = CheckResult("primspace")
    orbits = enumerate_minimal_sets(params, min(bound, 25))
    points = [INFINITY]
    for orbit in orbits:
        (a, _), (_, c) = orbit.stabilizer.basis
        res.record(a > 0 and c > 0, f"rank-2 stabilizer mod {orbit.denominator}")
        points.append(OrbitCharPoint(orbit, (QmodZ(0, 1), QmodZ(0, 1))))
        points.append(OrbitCharPoint(orbit, (QmodZ(1, 2), QmodZ(1, 3))))
    for pt in points:
        res.record(specializes(INFINITY, pt), "infinity is dense")
        if not isinstance(pt, OrbitCharPoint):
            continue
        res.record(not specializes(pt, INFINITY), "closed points stay closed")
        single = closure([pt])
        res.record(single == limit_set(SequenceDesc(ConstantOrbitTail(pt.orbit, pt.chi))), "limit matches closure")
    res.record(limit_set(SequenceDesc(ESCAPING)) == ALL, "escaping limit")
    res.record(closure([INFINITY]) == ALL, "dense point closure")
    finite_pts = [pt for pt in points if isinstance(pt, OrbitCharPoint)]
    for _ in range(trials):
        xs = rng.sample(finite_pts, min(3, len(finite_pts)))
        ys = rng.sample(finite_pts, min(2, len(finite_pts)))
        a, b = closure(xs), closure(ys)
        res.record(closed_union(a, a) == a, "union idempotent")
        res.record(closed_intersection(a, closed_union(a, b)) == a, "absorption")
        res.record(closed_union(a, b) == closed_union(b, a), "union commutes")
        res.record(closed_intersection(ALL, a) == a, "top element")
        res.record(closure(xs + ys) == closed_union(a, b), "closure additive")
    return res


_SUITES = {
    "exact": _check_exact,
    "dynamics": _check_dynamics,
    "groupalg": _check_groupalg,
    "traces": _check_traces,
    "ktheory": _check_ktheory,
    "primspace": _check_primspace,
}


def run_checks(
    suite: str,
    params: SystemParams,
    seed: int = 0,
    max_denominator: int = 30,
    trials: int = 25,
) -> list[CheckResult]:
    """Run one named suite, or all of them; deterministic for a fixed seed."""
    names = list(_SUITES) if suite == "all" else [suite]
    out = []
    for name in names:
        rng = random.Random(f"{seed}:{name}")
        out.append(_SUITES[name](params, rng, max_denominator, trials))
    return out
