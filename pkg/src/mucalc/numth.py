"""Binomial gcd machinery behind the generator families.

d(m) is the gcd of the interior of the (m+1)-st Pascal row; d2(m) is the
gcd of the row with both "slope" entries also removed.  These gcds are the
attainable s-numbers of the e_m and y_k families, and they satisfy the
product identity d2(m) = d(m) d(m-1).  Everything is exact big-integer
arithmetic; binomials come from a cached Pascal recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def pascal_row(n: int) -> tuple[int, ...]:
    """Row n of Pascal's triangle: (binom(n,0), ..., binom(n,n))."""
    if n < 0:
        raise ValueError("negative row")
    if n == 0:
        return (1,)
    prev = pascal_row(n - 1)
    return tuple(
        (prev[k - 1] if k else 0) + (prev[k] if k < n else 0) for k in range(n + 1)
    )


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return pascal_row(n)[k]


def extended_euclid(values: list[int]) -> tuple[list[int], int]:
    """Bezout vector for a list of positive integers: returns (lam, g) with
    sum(lam[i] * values[i]) = g = gcd(values).

    Deterministic left fold of the two-term extended Euclid, so the lambda
    vector is reproducible.
    """
    if not values:
        raise ValueError("empty list")
    for v in values:
        if v <= 0:
            raise ValueError(f"entries must be positive, got {v}")
    lam = [1]
    g = values[0]
    for v in values[1:]:
        old_r, r = g, v
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        lam = [x * old_s for x in lam]
        lam.append(old_t)
        g = old_r
    assert sum(l * v for l, v in zip(lam, values)) == g
    return lam, g


@dataclass(frozen=True)
class GcdCertificate:
    """A Bezout certificate: sum lam[i] * binom(m+1, indices[i]) = value."""

    m: int
    family: str  # "full" (i = 1..m-1) or "inner" (i = 2..m-2)
    indices: tuple[int, ...]
    lam: tuple[int, ...]
    value: int

    def binomials(self) -> tuple[int, ...]:
        return tuple(binomial(self.m + 1, i) for i in self.indices)

    def verify(self) -> bool:
        vals = self.binomials()
        total = sum(l * v for l, v in zip(self.lam, vals))
        g = 0
        for v in vals:
            g = gcd(g, v)
        return total == self.value == g

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "family": self.family,
            "indices": list(self.indices),
            "lambda": list(self.lam),
            "value": self.value,
        }


def d_of(m: int) -> int:
    """gcd of binom(m+1, i) for i = 1..m-1.

    The family is empty at m = 1; d(1) := 2 (the single slope entry
    binom(2,1)) keeps the product identity d2(3) = d(3) d(2) = 6 well
    posed.  d(2) = 3 from the singleton {binom(3,1)}.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return 2
    g = 0
    row = pascal_row(m + 1)
    for i in range(1, m):
        g = gcd(g, row[i])
    return g


def d_case_formula(m: int) -> int:
    """p if m+1 is a prime power p^s, else 1."""
    n = m + 1
    for p in _prime_factors(n):
        q = n
        while q % p == 0:
            q //= p
        return p if q == 1 else 1
    return 1


def _prime_factors(n: int):
    d = 2
    while d * d <= n:
        if n % d == 0:
            yield d
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        yield n


def d_formula_check(M: int) -> bool:
    """Exhaustively compare d(m) with the prime-power case formula for
    3 <= m <= M."""
    if M < 3:
        raise ValueError("M must be >= 3")
    return all(d_of(m) == d_case_formula(m) for m in range(3, M + 1))


def d2_of(m: int) -> GcdCertificate:
    """Certificate for d2(m) = gcd of binom(m+1, i), i = 2..m-2.

    For m = 3 the inner family degenerates to the single middle binomial
    binom(4, 2) = 6; that reading makes the product identity hold at m = 3
    and is flagged in the certificate family tag.
    """
    if m < 3:
        raise ValueError("m must be >= 3")
    hi = max(2, m - 2)
    indices = tuple(range(2, hi + 1))
    vals = [binomial(m + 1, i) for i in indices]
    lam, g = extended_euclid(vals)
    return GcdCertificate(
        m=m,
        family="inner" if m >= 4 else "inner-degenerate",
        indices=indices,
        lam=tuple(lam),
        value=g,
    )


def verify_d2_identity(M: int) -> bool:
    """d2(m) = d(m) d(m-1) for all 3 <= m <= M, exactly."""
    if M < 3:
        raise ValueError("M must be >= 3")
    return all(d2_of(m).value == d_of(m) * d_of(m - 1) for m in range(3, M + 1))


def d_table(M: int) -> list[dict]:
    """Rows (m, d, d2, d*d_prev, ok) for the CLI table."""
    out = []
    for m in range(3, M + 1):
        d2 = d2_of(m).value
        prod = d_of(m) * d_of(m - 1)
        out.append(
            {
                "m": m,
                "d": d_of(m),
                "d2": d2,
                "d_times_d_prev": prod,
                "ok": d2 == prod,
            }
        )
    return out
