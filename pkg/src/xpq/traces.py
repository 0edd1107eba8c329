"""Extreme tracial states of the group algebra, evaluated exactly.

Three families are representable:

* ``FiniteOrbitTrace(orbit, chi)``: supported on a finite orbit B with
  stabilizer lattice L and a character chi of L.  On a unitary
  u_(y, m, n) the value is 0 unless (m, n) lies in L, and otherwise

      chi(m, n) * (1/|B|) * sum over z in B of e^(2 pi i <z, y>),

  where <a/r, y> pairs a solenoid point with a ring element through the
  inverse of p^alpha q^beta mod r.  Values live in Q(zeta_lcm(r, k)) for
  chi of level k, so everything stays exact.

* ``CanonicalTrace(params)``: u_e -> 1 and u_g -> 0 for g != e; this is
  the trace of the left regular representation.

* ``OrbitMeasureTrace(orbit)``: integration against the uniform measure
  on a finite orbit; kills every unitary with (m, n) != (0, 0).

Characters here carry rational coordinates (t1, t2) in the Hermite basis
of the lattice; irrational characters exist mathematically but are not
representable in exact arithmetic, which is why "all representable
specs" below always means rational character data.

The finite-orbit and orbit-measure traces are never faithful: the
witness u_(r,0,0) - u_e is nonzero yet tau(a* a) = 0 for every character
chi.  Whether the canonical trace is the unique faithful extreme trace
overall is equivalent to the times-p, times-q measure rigidity
conjecture of Furstenberg; among the traces representable here it is
the only faithful one, and the acceptance suite checks exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .dynamics import OrbitData, SolenoidPoint, StabilizerLattice, SystemParams
from .errors import OutOfRange, ParamsMismatch, RangeTooSmall
from .exact import Cyclotomic, PqRational, QmodZ, root_of_unity
from .groupalg import GroupAlgebraElement, GroupElement


@dataclass(frozen=True, slots=True)
class Character:
    """A character of a stabilizer lattice with rational coordinates.

    (t1, t2) are the values (as elements of Q/Z, i.e. exponents) on the
    two Hermite basis vectors of the lattice.
    """

    lattice: StabilizerLattice
    t1: QmodZ
    t2: QmodZ

    @classmethod
    def trivial(cls, lattice: StabilizerLattice) -> Character:
        return cls(lattice, QmodZ(0, 1), QmodZ(0, 1))

    def is_trivial(self) -> bool:
        return self.t1.is_zero() and self.t2.is_zero()

    def exponent(self, m: int, n: int) -> QmodZ:
        """chi(m, n) as an exponent in Q/Z; (m, n) must lie in the lattice."""
        coords = self.lattice.coords(m, n)
        if coords is None:
            raise OutOfRange(f"({m}, {n}) is not in the lattice {self.lattice.basis}")
        c1, c2 = coords
        return self.t1.mul_int(c1) + self.t2.mul_int(c2)

    def value(self, m: int, n: int) -> Cyclotomic:
        return root_of_unity(self.exponent(m, n))


class TraceSpec:
    """Marker base class for the representable trace specifications."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class FiniteOrbitTrace(TraceSpec):
    orbit: OrbitData
    chi: Character

    def __post_init__(self):
        if self.chi.lattice != self.orbit.stabilizer:
            raise ParamsMismatch("character lattice differs from the orbit stabilizer")

    @property
    def params(self) -> SystemParams:
        return self.orbit.params


@dataclass(frozen=True, slots=True)
class CanonicalTrace(TraceSpec):
    params: SystemParams


@dataclass(frozen=True, slots=True)
class OrbitMeasureTrace(TraceSpec):
    orbit: OrbitData

    @property
    def params(self) -> SystemParams:
        return self.orbit.params


def pairing(params: SystemParams, z: SolenoidPoint, y: PqRational) -> QmodZ:
    """The duality pairing <z, y> in Q/Z between a solenoid point with
    denominator r coprime to pq and an element of Z[1/pq].

    For z = a/r and y = num/(p^alpha q^beta) this is
    a * num * (p^alpha q^beta)^(-1) mod r, over r.

    >>> pairing(SystemParams(2, 3), SolenoidPoint.of(1, 5), PqRational(1, 1, 1))
    QmodZ(num=1, den=5)
    """
    r = z.coord.den
    params.require_coprime(r)
    return QmodZ(z.coord.num * _pair_mult(params, r, y), r)


def _pair_mult(params: SystemParams, r: int, y: PqRational) -> int:
    # the factor w with <a/r, y> = a*w/r; r is coprime to pq by contract
    base = pow(params.p, y.a, r) * pow(params.q, y.b, r) % r
    return y.num * pow(base, -1, r) % r


@lru_cache(maxsize=None)
def _orbit_mean(orbit: OrbitData, w: int):
    # (1/|B|) sum over numerators a of zeta_r^(w a), exact at level r
    r = orbit.denominator
    counts = [0] * r
    for a in orbit.numerators():
        counts[w * a % r] += 1
    return Cyclotomic(r, counts, orbit.size)


@lru_cache(maxsize=None)
def _twisted_mean(orbit: OrbitData, texp: QmodZ, w: int):
    mean = _orbit_mean(orbit, w)
    if texp.is_zero():
        return mean
    return root_of_unity(texp) * mean


def _term_value(spec: TraceSpec, g: GroupElement):
    # value of the trace on the single unitary u_g, or None meaning zero
    if isinstance(spec, CanonicalTrace):
        return Cyclotomic.one() if g.is_identity() else None
    if isinstance(spec, OrbitMeasureTrace):
        if (g.m, g.n) != (0, 0):
            return None
        orbit = spec.orbit
        return _orbit_mean(orbit, _pair_mult(orbit.params, orbit.denominator, g.x))
    if isinstance(spec, FiniteOrbitTrace):
        orbit = spec.orbit
        coords = orbit.stabilizer.coords(g.m, g.n)
        if coords is None:
            return None
        c1, c2 = coords
        texp = spec.chi.t1.mul_int(c1) + spec.chi.t2.mul_int(c2)
        return _twisted_mean(orbit, texp, _pair_mult(orbit.params, orbit.denominator, g.x))
    raise TypeError(f"unknown trace spec {spec!r}")


def trace_eval(spec: TraceSpec, a: GroupAlgebraElement) -> Cyclotomic:
    """Evaluate the trace on an algebra element, exactly.

    The result is a cyclotomic number; its level divides
    lcm(orbit denominator, character level).
    """
    params = getattr(spec, "params")
    if params != a.params:
        raise ParamsMismatch(
            f"trace over ({params.p}, {params.q}) applied to an element over "
            f"({a.params.p}, {a.params.q})"
        )
    total = Cyclotomic.zero()
    for g, c in a.terms:
        v = _term_value(spec, g)
        if v is not None:
            total = total + v.scaled(c)
    return total


@dataclass(frozen=True, slots=True)
class MomentSequence:
    """Exact moment data value(n) = tau(u_(n,0,0)) for |n| <= n_max.

    For an orbit trace these are the moments of the invariant measure
    behind it: value(n) = integral of z^n.  Always value(0) = 1 and
    value(-n) = conj(value(n)).
    """

    spec: TraceSpec
    n_max: int
    values: tuple

    def value(self, n: int) -> Cyclotomic:
        if abs(n) > self.n_max:
            raise OutOfRange(f"moment index {n} outside range +-{self.n_max}")
        return self.values[n + self.n_max]

    def items(self):
        return ((i - self.n_max, v) for i, v in enumerate(self.values))


def moments(spec: TraceSpec, n_max: int) -> MomentSequence:
    if n_max < 0:
        raise OutOfRange(f"moment range {n_max} out of range; expected >= 0")
    params = getattr(spec, "params")
    vals = []
    for n in range(-n_max, n_max + 1):
        g = GroupElement(PqRational.from_int(n), 0, 0)
        vals.append(trace_eval(spec, GroupAlgebraElement.unit(params, g)))
    return MomentSequence(spec, n_max, tuple(vals))


def check_pq_invariance(seq: MomentSequence, params: SystemParams) -> bool:
    """Whether the moment data is invariant under both multiplication maps:
    value(p n) = value(n) = value(q n) whenever both indices are in range.

    Raises RangeTooSmall when the range cannot exercise a single nonzero
    index, which would make the check vacuous.
    """
    if seq.n_max < max(params.p, params.q):
        raise RangeTooSmall(
            f"range {seq.n_max} cannot test invariance for p = {params.p}, q = {params.q}"
        )
    for n in range(-seq.n_max, seq.n_max + 1):
        for k in (params.p, params.q):
            if abs(k * n) <= seq.n_max and seq.value(k * n) != seq.value(n):
                return False
    return True


def average_over_character_level(orbit: OrbitData, k: int, a: GroupAlgebraElement) -> Cyclotomic:
    """Average the finite-orbit traces over the full level-k character grid:
    (1/k^2) * sum of trace values over (t1, t2) in {0, 1/k, ..., (k-1)/k}^2.

    The grid sums collapse character values to divisibility indicators,
    so the average equals the trace that keeps exactly the unitaries
    whose (m, n) lies in k * L and agrees there with the trivial-character
    trace.  The function computes the average honestly; the collapse is a
    theorem the tests verify.
    """
    if k < 1:
        raise OutOfRange(f"character level {k} out of range; expected >= 1")
    total = Cyclotomic.zero()
    for i in range(k):
        for j in range(k):
            chi = Character(orbit.stabilizer, QmodZ(i, k), QmodZ(j, k))
            total = total + trace_eval(FiniteOrbitTrace(orbit, chi), a)
    return total.scaled(Fraction(1, k * k))


def nonfaithful_witness(orbit: OrbitData) -> GroupAlgebraElement:
    """A nonzero element a with tau(a* a) = 0 for every trace carried by
    the orbit: a = u_(r, 0, 0) - u_e, r the orbit denominator.

    The pairing <z, r> vanishes for every z in the orbit, so u_(r,0,0)
    evaluates like u_e under the orbit's traces; the canonical trace
    gives tau(a* a) = 2 on the same element.
    """
    params = orbit.params
    u_r = GroupAlgebraElement.unit(
        params, GroupElement(PqRational.from_int(orbit.denominator), 0, 0)
    )
    u_e = GroupAlgebraElement.unit(params, GroupElement.identity())
    return u_r - u_e
