"""The universal formal group law of complex cobordism, truncated by dimension.

The logarithm has coefficients CP_i/(i+1); its compositional inverse is the
exponential, and F(x, y) = exp(log x + log y).  Reading off the coefficient
of x^i y^j gives the classes alpha_ij of dimension 2(i+j-1).  These alphas
are the raw material for every generator family built downstream.

Multivariate truncated series appear here as "tables": dicts mapping an
exponent tuple (one slot per curve variable) to a GradedPoly, with entries
beyond the total-degree truncation never stored.  Curve variables have
cohomological degree 2, so the coefficient of a total degree-k key in a
degree-2 series is homogeneous of dimension 2(k-1); the GradedPoly
dimension checks enforce this silently during arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import GradedPoly, TruncSeries
from . import chern

Key = tuple[int, ...]
Table = dict[Key, GradedPoly]


class FGLConsistencyError(RuntimeError):
    """Internal identity of the formal group law failed to hold."""


# ---- multivariate table helpers ---------------------------------------------

def tab_mul(a: Table, b: Table, order: int) -> Table:
    out: Table = {}
    for e1, p1 in a.items():
        d1 = sum(e1)
        for e2, p2 in b.items():
            if d1 + sum(e2) > order:
                continue
            key = tuple(u + v for u, v in zip(e1, e2))
            prod = p1 * p2
            if not prod:
                continue
            cur = out.get(key)
            out[key] = prod if cur is None else cur + prod
    return {k: v for k, v in out.items() if v}


def tab_add(a: Table, b: Table) -> Table:
    out = dict(a)
    for k, p in b.items():
        cur = out.get(k)
        s = p if cur is None else cur + p
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def tab_scale(a: Table, p: GradedPoly) -> Table:
    out: Table = {}
    for k, q in a.items():
        prod = q * p
        if prod:
            out[k] = prod
    return out


def tab_powers(a: Table, top: int, order: int, nvars: int) -> list[Table]:
    """[a^0, a^1, ..., a^top] truncated at total degree <= order."""
    unit_key = (0,) * nvars
    powers: list[Table] = [{unit_key: GradedPoly.one()}]
    for _ in range(top):
        powers.append(tab_mul(powers[-1], a, order))
    return powers


def tab_apply_series(f: TruncSeries, arg: Table, order: int, nvars: int) -> Table:
    """f(arg) for a table argument with zero constant term."""
    unit_key = (0,) * nvars
    if unit_key in arg:
        raise ValueError("table substitution needs zero constant term")
    top = min(f.order, order)
    powers = tab_powers(arg, top, order, nvars)
    out: Table = {}
    for k in range(top + 1):
        c = f.coefficient(k)
        if c:
            out = tab_add(out, tab_scale(powers[k], c))
    return out


# ---- the law ----------------------------------------------------------------

def mishchenko_log(N: int) -> TruncSeries:
    """The logarithm sum_{i>=0} CP_i x^(i+1)/(i+1) (CP_0 = 1), truncated so
    that the top coefficient has dimension N."""
    if N < 2 or N % 2:
        raise ValueError("truncation dimension must be even and >= 2")
    order = N // 2 + 1
    coeffs = [GradedPoly.zero(), GradedPoly.one()]
    for i in range(1, order):
        coeffs.append(GradedPoly.cp(i) * Fraction(1, i + 1))
    return TruncSeries(coeffs)


class FGLTable:
    """Coefficients alpha_ij of F(x,y) = x + y + sum alpha_ij x^i y^j for
    2(i+j-1) <= max_dim, stored once per unordered pair.

    s_sign is the global sign in s_{i+j-1}(alpha_ij) = s_sign*binom(i+j, i),
    read off alpha_11 at construction.
    """

    def __init__(self, max_dim: int, alpha: dict, s_sign: int):
        self.max_dim = max_dim
        self._alpha = alpha
        self.s_sign = s_sign

    @property
    def max_degree(self) -> int:
        """Largest i+j covered: 2(i+j-1) <= max_dim."""
        return self.max_dim // 2 + 1

    def covers(self, i: int, j: int) -> bool:
        return i >= 1 and j >= 1 and 2 * (i + j - 1) <= self.max_dim

    def alpha(self, i: int, j: int) -> GradedPoly:
        if not self.covers(i, j):
            raise KeyError(f"alpha({i},{j}) beyond truncation dimension {self.max_dim}")
        return self._alpha[(min(i, j), max(i, j))]

    def pairs(self):
        """(i, j, alpha_ij) with i <= j, in graded order."""
        for (i, j) in sorted(self._alpha, key=lambda t: (t[0] + t[1], t)):
            yield i, j, self._alpha[(i, j)]

    def as_table(self) -> Table:
        """F as an arity-2 table, linear terms included."""
        out: Table = {(1, 0): GradedPoly.one(), (0, 1): GradedPoly.one()}
        for (i, j), p in self._alpha.items():
            if p:
                out[(i, j)] = p
                if i != j:
                    out[(j, i)] = p
        return out


def fgl_coefficients(N: int) -> FGLTable:
    """Compute the universal formal group law table through dimension N."""
    if N < 2 or N % 2:
        raise ValueError("truncation dimension must be even and >= 2")
    order = N // 2 + 1
    log = mishchenko_log(N)
    exp = log.revert()

    two: Table = {}
    for k in range(1, order + 1):
        c = log.coefficient(k)
        if c:
            two[(k, 0)] = c
            two[(0, k)] = c
    F = tab_apply_series(exp, two, order, 2)

    alpha: dict[tuple[int, int], GradedPoly] = {}
    for (i, j), p in F.items():
        if i == 0 or j == 0:
            if (i, j) not in ((1, 0), (0, 1)) or p != GradedPoly.one():
                raise FGLConsistencyError(f"unitality broken at x^{i} y^{j}: {p}")
            continue
        if p.dim is not None and p.dim != 2 * (i + j - 1):
            raise FGLConsistencyError(f"alpha({i},{j}) has dimension {p.dim}")
        if i <= j:
            alpha[(i, j)] = p
        elif F.get((j, i)) != p:
            raise FGLConsistencyError(f"alpha({i},{j}) != alpha({j},{i})")
    for i in range(1, order):
        for j in range(i, order + 1 - i):
            alpha.setdefault((i, j), GradedPoly.zero(2 * (i + j - 1)))

    s1 = chern.s_number(alpha[(1, 1)])
    if abs(s1) != 2:
        raise FGLConsistencyError(f"s_1(alpha_11) = {s1}, expected +-2")
    s_sign = 1 if s1 > 0 else -1
    return FGLTable(N, alpha, s_sign)


def check_axioms(table: FGLTable) -> dict:
    """Exact coefficientwise verification of the group-law axioms at the
    table's truncation: F(x,0) = x, F(x,y) = F(y,x), and associativity.

    Associativity compares F(F(x,y),z) against its cyclic variable
    relabeling, which equals F(x,F(y,z)) once commutativity holds; if
    commutativity fails the slow direct comparison runs instead.
    """
    order = table.max_degree
    F2 = table.as_table()

    unital = all(
        key in ((1, 0), (0, 1)) and p == GradedPoly.one()
        for key, p in F2.items()
        if key[0] == 0 or key[1] == 0
    )
    commutative = all(
        F2.get((j, i)) == p for (i, j), p in F2.items()
    )

    def apply_f(A: Table, B: Table, nvars: int) -> Table:
        apow = tab_powers(A, order - 1, order - 1, nvars)
        bpow = tab_powers(B, order - 1, order - 1, nvars)
        out = tab_add(A, B)
        for (i, j), p in F2.items():
            if i >= 1 and j >= 1:
                prod = tab_mul(apow[i], bpow[j], order)
                out = tab_add(out, tab_scale(prod, p))
        return out

    x3: Table = {(1, 0, 0): GradedPoly.one()}
    y3: Table = {(0, 1, 0): GradedPoly.one()}
    z3: Table = {(0, 0, 1): GradedPoly.one()}
    Fxy = apply_f(x3, y3, 3)
    lhs = apply_f(Fxy, z3, 3)
    if commutative:
        rhs = {(c, a, b): p for (a, b, c), p in lhs.items()}
    else:
        Fyz = apply_f(y3, z3, 3)
        rhs = apply_f(x3, Fyz, 3)
    associative = lhs == rhs

    return {
        "unitality": unital,
        "commutativity": commutative,
        "associativity": associative,
    }


def log_linearizes(table: FGLTable, N: int | None = None) -> bool:
    """Exact check that log(F(x,y)) = log(x) + log(y) to truncation."""
    if N is None:
        N = table.max_dim
    order = N // 2 + 1
    log = mishchenko_log(N)
    F2 = {k: v for k, v in table.as_table().items() if sum(k) <= order}
    lhs = tab_apply_series(log, F2, order, 2)
    rhs: Table = {}
    for k in range(1, order + 1):
        c = log.coefficient(k)
        if c:
            rhs[(k, 0)] = c
            rhs[(0, k)] = c
    return lhs == rhs


def inverse_series(table: FGLTable) -> TruncSeries:
    """The inverse series ibar with F(x, ibar(x)) = 0 mod truncation,
    solved degree by degree from the table."""
    order = table.max_degree

    def f_of_x_g(g: TruncSeries, upto: int) -> TruncSeries:
        # F(x, g(x)) truncated at upto; g has zero constant term
        x = TruncSeries.identity(upto)
        out = x + g.truncate(upto)
        gpow = {1: g.truncate(upto)}
        for j in range(2, upto):
            gpow[j] = gpow[j - 1] * gpow[1]
        for i in range(1, upto):
            for j in range(1, upto + 1 - i):
                if not table.covers(i, j):
                    continue
                a = table.alpha(i, j)
                if not a:
                    continue
                # alpha_ij * x^i * g^j: g^j shifted up by i slots
                shifted = [GradedPoly.zero()] * i + [
                    c * a for c in gpow[j].coefficients()
                ]
                out = out + TruncSeries(shifted[: upto + 1], order=upto)
        return out

    ibar = TruncSeries.zero(order)
    ibar._coeffs[1] = -GradedPoly.one()
    for k in range(2, order + 1):
        resid = f_of_x_g(ibar, k)
        ibar._coeffs[k] = -resid.coefficient(k)
    final = f_of_x_g(ibar, order)
    if any(final.coefficient(k) for k in range(order + 1)):
        raise FGLConsistencyError("F(x, inverse(x)) != 0 at truncation")
    return ibar


class GSeries:
    """Coefficients a_i with c_1(xi + conj xi) = sum a_i c_2^i(xi + conj xi).

    a_i is homogeneous of dimension 4i - 2 (it multiplies the i-th power of
    a dimension-4 class inside a dimension-2 expansion).
    """

    def __init__(self, max_dim: int, a: dict):
        self.max_dim = max_dim
        self.a = a

    def items(self):
        for i in sorted(self.a):
            yield i, self.a[i]

    def all_odd_denominators(self) -> bool:
        return all(p.odd_denominators() for p in self.a.values())


def g_series(table: FGLTable) -> GSeries:
    """Expand u = x + ibar(x) in powers of v = x*ibar(x) by degreewise
    elimination.  v^i has unit leading coefficient (-1)^i at x^(2i), so
    each division is exact; any residual left at the truncation is an
    internal inconsistency and raises."""
    order = table.max_degree
    ibar = inverse_series(table)
    x = TruncSeries.identity(order)
    u = x + ibar
    v = x * ibar

    a: dict[int, GradedPoly] = {}
    r = u
    vpow = v
    i = 1
    while 2 * i <= order:
        lead = vpow.coefficient(2 * i)
        expected = GradedPoly.scalar(Fraction((-1) ** i))
        if lead != expected:
            raise FGLConsistencyError(
                f"v^{i} leading coefficient {lead}, expected {expected}"
            )
        ai = r.coefficient(2 * i) * Fraction((-1) ** i)
        if ai:
            if ai.dim != 4 * i - 2:
                raise FGLConsistencyError(f"a_{i} has dimension {ai.dim}")
            a[i] = ai
            r = r - vpow.scale(ai)
        if 2 * (i + 1) <= order:
            vpow = vpow * v
        i += 1
    if any(r.coefficient(k) for k in range(order + 1)):
        bad = [k for k in range(order + 1) if r.coefficient(k)]
        raise FGLConsistencyError(f"residual of the c_2 expansion at x^{bad}")
    return GSeries(table.max_dim, a)
