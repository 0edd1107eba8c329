"""Brute-force oracles and random-data builders shared by the tests.

Everything here is deliberately independent of the library internals:
plain integer arithmetic, dictionary BFS, and order counting, so a bug
in the package cannot hide in its own oracle.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm, prod

from xpq import GroupAlgebraElement, GroupElement, PqRational, SystemParams


def naive_order(base: int, r: int) -> int:
    acc = base % r
    k = 1
    while acc != 1:
        acc = acc * base % r
        k += 1
    return k


def naive_orbit(p: int, q: int, r: int, start: int) -> frozenset[int]:
    """BFS closure of start under multiplication by p and q mod r."""
    seen = {start % r}
    queue = [start % r]
    while queue:
        a = queue.pop()
        for nxt in (a * p % r, a * q % r):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def int_det(matrix) -> int:
    """Bareiss fraction-free determinant."""
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


def mat_mul(A, B):
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


# ---------------------------------------------------------------------------
# finite abelian groups by order statistics
# ---------------------------------------------------------------------------


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _chain_from_counts(n: int, count_killed) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group of order n, where
    count_killed(k) = #{h : k*h = 0}.  Kill counts per prime determine
    the partition of exponents, and the chain merges the primes."""
    per_prime: dict[int, list[int]] = {}
    for p in _prime_factors(n):
        counts = [1]
        while True:
            c = count_killed(p ** len(counts))
            if c == counts[-1]:
                break
            counts.append(c)
        heights = []
        for j in range(1, len(counts)):
            ratio = counts[j] // counts[j - 1]
            m = 0
            while p**m < ratio:
                m += 1
            heights.append(m)  # number of parts of size >= j
        sizes = []
        for j, h in enumerate(heights):
            nxt = heights[j + 1] if j + 1 < len(heights) else 0
            sizes.extend([j + 1] * (h - nxt))
        per_prime[p] = sorted(sizes, reverse=True)
    if not per_prime:
        return ()
    depth = max(len(v) for v in per_prime.values())
    chain = []
    for j in range(depth):
        d = 1
        for p, sizes in per_prime.items():
            if j < len(sizes):
                d *= p ** sizes[j]
        chain.append(d)
    chain.reverse()
    return tuple(d for d in chain if d > 1)


def product_group(orders) -> list[tuple[int, ...]]:
    """All elements of Z/d1 x ... x Z/dk."""
    elems = [()]
    for d in orders:
        elems = [e + (a,) for e in elems for a in range(d)]
    return elems


def element_order(vec, orders) -> int:
    return lcm(*(d // gcd(a, d) for a, d in zip(vec, orders))) if vec else 1


def subgroup_type(elements, orders) -> tuple[int, ...]:
    """Invariant factors of a subgroup of prod Z/orders given by its
    explicit element tuples."""
    elems = list(elements)

    def killed(k: int) -> int:
        return sum(1 for h in elems if k % element_order(h, orders) == 0)

    return _chain_from_counts(len(elems), killed)


def quotient_type(orders, image: set) -> tuple[int, ...]:
    """Invariant factors of (prod Z/orders) / image, counting kill rates
    through the quotient map: k kills a coset iff k*h lands in image."""
    total = prod(orders) if orders else 1
    n = total // len(image)

    def killed(k: int) -> int:
        hits = 0
        for h in product_group(orders):
            scaled = tuple(k * a % d for a, d in zip(h, orders))
            if scaled in image:
                hits += 1
        return hits // len(image)

    return _chain_from_counts(n, killed)


def subgroup_generated(vectors, orders) -> set:
    """All elements of the subgroup of prod Z/orders generated by vectors."""
    zero = tuple(0 for _ in orders)
    seen = {zero}
    queue = [zero]
    vecs = [tuple(a % d for a, d in zip(v, orders)) for v in vectors]
    while queue:
        u = queue.pop()
        for v in vecs:
            w = tuple((a + b) % d for a, b, d in zip(u, v, orders))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


# ---------------------------------------------------------------------------
# random builders
# ---------------------------------------------------------------------------


def random_group_element(rng: random.Random, params: SystemParams, span: int = 3) -> GroupElement:
    den = params.p ** rng.randint(0, 2) * params.q ** rng.randint(0, 2)
    x = PqRational.from_fraction(Fraction(rng.randint(-12, 12), den), params.p, params.q)
    return GroupElement(x, rng.randint(-span, span), rng.randint(-span, span))


def random_algebra_element(
    rng: random.Random, params: SystemParams, support: int = 2
) -> GroupAlgebraElement:
    terms = []
    for _ in range(rng.randint(1, support)):
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        terms.append((random_group_element(rng, params), c))
    return GroupAlgebraElement.from_terms(params, terms)
