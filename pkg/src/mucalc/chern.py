"""Tangent Chern characteristic numbers of cobordism classes in the CP basis.

A monomial CP_{n_1}*...*CP_{n_k} stands for a product of complex projective
spaces.  Its tangent Chern numbers are computed by a product formula: for a
single CP_m the number c_w[CP_m] is prod_t binom(m+1, w_t) (read off the
total Chern class (1+x)^(m+1) with x^(m+1) = 0), and a product of factors
is folded in with the coproduct of elementary symmetric functions -- each
part of the partition splits between the two sides of the product, ordered
splits enumerated with weight pruning.  Everything is an exact integer;
general classes extend by linearity over Q.

The power-sum number s_n (the main characteristic number detecting
polynomial generators) has a closed form in this basis: it vanishes on any
monomial with two or more factors and equals (n+1) on CP_n, so
s_n(X) = (n+1) * [coefficient of CP_n in X].  Newton's identities give the
independent cross-check path through the full Chern vector.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .poly import GradedPoly, Monomial, NonHomogeneousError, cp_monomial, monomials_of_dim

Partition = tuple[int, ...]


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """Partitions of n as weakly decreasing tuples, lex-descending:
    (n), (n-1,1), ..., (1,...,1)."""
    if n < 0:
        raise ValueError("negative weight")
    if n == 0:
        return ((),)
    out: list[Partition] = []

    def rec(rem: int, maxpart: int, cur: tuple[int, ...]):
        if rem == 0:
            out.append(cur)
            return
        for first in range(min(rem, maxpart), 0, -1):
            rec(rem - first, first, cur + (first,))

    rec(n, n, ())
    return tuple(out)


def partition_count(n: int) -> int:
    return len(partitions_of(n))


def partition_str(w: Partition) -> str:
    return ",".join(str(p) for p in w) if w else "()"


@lru_cache(maxsize=None)
def _cp_chern(m: int) -> dict:
    """Chern numbers of CP_m: partition w of m -> prod binom(m+1, w_t)."""
    out = {}
    for w in partitions_of(m):
        val = 1
        for part in w:
            val *= comb(m + 1, part)
        out[w] = val
    return out


def _splits(lam: Partition, m: int):
    """Ordered splits of lam into (kept, removed) with removed weight m.

    Yields (mu, nu): mu = partition of |lam| - m kept on the old side,
    nu = partition of m moved to the new factor.  Each ordered assignment
    of a split amount to each part is one term (that multiplicity is the
    coproduct structure constant).
    """
    n = len(lam)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + lam[i]
    results: list[tuple[Partition, Partition]] = []
    kept: list[int] = []
    removed: list[int] = []

    def rec(i: int, rem: int):
        if rem == 0:
            mu = tuple(sorted(kept + list(lam[i:]), reverse=True))
            nu = tuple(sorted(removed, reverse=True))
            results.append((mu, nu))
            return
        if i == n or rem > suffix[i]:
            return
        top = min(lam[i], rem)
        for d in range(0, top + 1):
            if d:
                removed.append(d)
            if lam[i] - d:
                kept.append(lam[i] - d)
            rec(i + 1, rem - d)
            if d:
                removed.pop()
            if lam[i] - d:
                kept.pop()

    rec(0, m)
    return results


@lru_cache(maxsize=None)
def _monomial_chern(factors: tuple[int, ...]) -> dict:
    """All tangent Chern numbers of prod_j CP_{factors[j]}, as ints."""
    if not factors:
        return {(): 1}
    head, m = factors[:-1], factors[-1]
    prev = _monomial_chern(head)
    w_new = sum(factors)
    cp = _cp_chern(m)
    out = {}
    for lam in partitions_of(w_new):
        total = 0
        for mu, nu in _splits(lam, m):
            p = prev.get(mu)
            if p:
                total += p * cp[nu]
        out[lam] = total
    return out


class ChernVector:
    """The complete family of tangent Chern numbers of a dimension-2n class.

    values covers every partition of n (zeros included), so the SU test
    cannot silently miss a functional.
    """

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: dict):
        self.n = n
        complete = {}
        for w in partitions_of(n):
            complete[w] = Fraction(values.get(w, 0))
        extra = set(values) - set(complete)
        if extra:
            raise ValueError(f"values for non-partitions: {sorted(extra)}")
        self.values = complete

    def __getitem__(self, w: Partition) -> Fraction:
        return self.values[tuple(w)]

    def items(self):
        for w in partitions_of(self.n):
            yield w, self.values[w]

    def __eq__(self, other):
        return (
            isinstance(other, ChernVector)
            and self.n == other.n
            and self.values == other.values
        )

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values.values())

    def c1_numbers_vanish(self) -> bool:
        return all(v == 0 for w, v in self.values.items() if 1 in w)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "values": {partition_str(w): str(v) for w, v in self.items()},
        }


def chern_numbers(X: GradedPoly) -> ChernVector:
    """All tangent Chern numbers of a homogeneous class, extended linearly
    over the monomial values."""
    if X.dim is None:
        raise NonHomogeneousError("Chern numbers need a homogeneous class")
    if X.dim % 2:
        raise ValueError("odd dimension")
    n = X.dim // 2
    acc: dict[Partition, Fraction] = {}
    for mono, coeff in X.terms():
        vec = _monomial_chern(mono.factors())
        for w, v in vec.items():
            if v:
                acc[w] = acc.get(w, Fraction(0)) + coeff * v
    return ChernVector(n, acc)


def s_number(X: GradedPoly) -> Fraction:
    """The power-sum characteristic number s_n of a dimension-2n class.

    s_n kills every product of positive-dimensional classes, and
    s_n(CP_n) = n + 1, so only the CP_n coordinate survives.
    """
    if X.dim is None:
        raise NonHomogeneousError("s-number needs a homogeneous class")
    if X.dim == 0 or X.dim % 2:
        raise ValueError(f"need positive even dimension, got {X.dim}")
    n = X.dim // 2
    return (n + 1) * X.coefficient(cp_monomial(n))


@lru_cache(maxsize=None)
def power_sum_functional(n: int) -> dict:
    """Coefficients of the power sum p_n in the elementary basis, by
    Newton's identities: p_n = sum_i (-1)^(i-1) e_i p_(n-i) + (-1)^(n-1) n e_n.

    Returns dict partition-of-n -> int; pairing against a ChernVector gives
    the s-number through a code path independent of s_number().
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return {(1,): 1}
    out: dict[Partition, int] = {}
    for i in range(1, n):
        sign = 1 if i % 2 == 1 else -1
        for w, c in power_sum_functional(n - i).items():
            key = tuple(sorted(w + (i,), reverse=True))
            val = out.get(key, 0) + sign * c
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    sign = 1 if n % 2 == 1 else -1
    key = (n,)
    val = out.get(key, 0) + sign * n
    if val:
        out[key] = val
    else:
        out.pop(key, None)
    return out


def s_number_via_chern(vec: ChernVector) -> Fraction:
    """Pair the Newton power-sum functional with a full Chern vector."""
    total = Fraction(0)
    for w, c in power_sum_functional(vec.n).items():
        total += c * vec[w]
    return total


def is_su(X: GradedPoly) -> bool:
    """True iff every Chern number with a c_1 factor vanishes."""
    if X.dim is None:
        raise NonHomogeneousError("SU test needs a homogeneous class")
    if X.dim == 0:
        return True
    return chern_numbers(X).c1_numbers_vanish()


# ---- Novikov divisibility criterion ----------------------------------------

def odd_part(q: Fraction | int) -> Fraction:
    """|q| with all factors of 2 removed from numerator and denominator."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("odd part of zero is undefined")
    num, den = abs(q.numerator), q.denominator
    while num % 2 == 0:
        num //= 2
    while den % 2 == 0:
        den //= 2
    return Fraction(num, den)


def odd_prime_power_base(m: int):
    """p if m = p^l for an odd prime p and l >= 1, else None."""
    if m < 3 or m % 2 == 0:
        return None
    p = 3
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            return p if m == 1 else None
        p += 2
    return m  # m itself is an odd prime


def novikov_required_odd_part(n: int) -> int:
    """Required odd part of s_n(x_n) for a polynomial generator of the
    special unitary cobordism ring away from 2: p when n or n+1 is a power
    of an odd prime p, and 1 otherwise.  n and n+1 cannot both be odd
    prime powers (consecutive integers differ in parity)."""
    if n < 2:
        raise ValueError("criterion applies for n >= 2")
    p = odd_prime_power_base(n)
    if p is not None:
        return p
    p = odd_prime_power_base(n + 1)
    if p is not None:
        return p
    return 1


def novikov_check(n: int, s: Fraction | int) -> bool:
    """Does the s-number s qualify a dimension-2n SU class as a polynomial
    generator?  Powers of 2 in s are immaterial; only the odd part counts."""
    s = Fraction(s)
    if s == 0:
        raise ValueError("zero s-number (decomposable class)")
    return odd_part(s) == Fraction(novikov_required_odd_part(n))


# ---- cached functional matrices for linear algebra over degrees ------------

@lru_cache(maxsize=None)
def chern_matrix(n: int) -> tuple:
    """(partitions, monomials, rows): rows[i][j] = c_{partitions[i]} of
    monomials[j], exact integers, both axes in canonical order."""
    parts = partitions_of(n)
    monos = tuple(monomials_of_dim(n))
    cols = [_monomial_chern(m.factors()) for m in monos]
    rows = tuple(
        tuple(col.get(w, 0) for col in cols) for w in parts
    )
    return parts, monos, rows
