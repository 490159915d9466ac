"""Exact sparse arithmetic in the rational cobordism ring Q[CP_1, CP_2, ...].

The coefficient ring of complex cobordism is, rationally, a polynomial ring
on the classes of complex projective spaces, with |CP_i| = 2i.  A monomial
is a sparse exponent map {i: e_i}; its dimension is 2 * sum(i * e_i).  A
GradedPoly maps monomials to exact rationals and carries the (even)
dimension when it is homogeneous.  TruncSeries is a univariate power series
with GradedPoly coefficients, truncated at a fixed order; it supports the
composition and reversion needed to pass between the logarithm and the
formal group law.

No floating point is used anywhere: coefficients are fractions.Fraction,
so equality tests are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping


class DimensionMismatchError(ValueError):
    """Raised when an operation mixes classes of different dimensions."""


class NonHomogeneousError(ValueError):
    """Raised when an operation requires a homogeneous class."""


def odd_denominator(q: Fraction) -> bool:
    """True if q lies in Z[1/2]-complement sense: denominator is odd.

    This is the membership predicate for the subring localized away
    from 2: a rational with odd denominator times a power of 2 is a
    2-local integer.
    """
    return q.denominator % 2 == 1


class Monomial:
    """A monomial CP_1^e1 * CP_2^e2 * ... with sparse positive exponents.

    Immutable and hashable.  The canonical total order is graded (by
    dimension) then lexicographic on the dense exponent vector
    (e_1, e_2, ...); this order fixes serialization and linear-algebra
    column order throughout the package.
    """

    __slots__ = ("_exps", "_dim", "_hash")

    def __init__(self, exps: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = dict(exps)
        for i, e in items.items():
            if i < 1 or e < 0:
                raise ValueError(f"bad exponent CP{i}^{e}")
        self._exps: tuple[tuple[int, int], ...] = tuple(
            sorted((i, e) for i, e in items.items() if e > 0)
        )
        self._dim = 2 * sum(i * e for i, e in self._exps)
        self._hash = hash(self._exps)

    @property
    def exps(self) -> tuple[tuple[int, int], ...]:
        return self._exps

    @property
    def dimension(self) -> int:
        return self._dim

    def is_unit(self) -> bool:
        return not self._exps

    def factors(self) -> tuple[int, ...]:
        """Indices with multiplicity, e.g. CP_2^2*CP_5 -> (2, 2, 5)."""
        out: list[int] = []
        for i, e in self._exps:
            out.extend([i] * e)
        return tuple(out)

    def exponent(self, i: int) -> int:
        for j, e in self._exps:
            if j == i:
                return e
        return 0

    def dense(self) -> tuple[int, ...]:
        """Dense exponent vector (e_1, ..., e_maxindex)."""
        if not self._exps:
            return ()
        top = self._exps[-1][0]
        out = [0] * top
        for i, e in self._exps:
            out[i - 1] = e
        return tuple(out)

    def sort_key(self) -> tuple:
        return (self._dim, self.dense())

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        out = dict(self._exps)
        for i, e in other._exps:
            out[i] = out.get(i, 0) + e
        m = Monomial.__new__(Monomial)
        m._exps = tuple(sorted(out.items()))
        m._dim = self._dim + other._dim
        m._hash = hash(m._exps)
        return m

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "Monomial") -> bool:
        return self.sort_key() <= other.sort_key()

    def __str__(self) -> str:
        if not self._exps:
            return "1"
        return "*".join(
            f"CP{i}^{e}" if e > 1 else f"CP{i}" for i, e in self._exps
        )

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"

    @staticmethod
    def parse(text: str) -> "Monomial":
        """Inverse of str(): 'CP1^2*CP3' -> monomial; '1' -> unit."""
        text = text.strip()
        if text == "1":
            return MONOMIAL_ONE
        exps: dict[int, int] = {}
        for piece in text.split("*"):
            piece = piece.strip()
            if not piece.startswith("CP"):
                raise ValueError(f"bad monomial factor {piece!r}")
            body = piece[2:]
            if "^" in body:
                idx, _, pw = body.partition("^")
                i, e = int(idx), int(pw)
            else:
                i, e = int(body), 1
            if i < 1 or e < 1:
                raise ValueError(f"bad monomial factor {piece!r}")
            exps[i] = exps.get(i, 0) + e
        return Monomial(exps)


MONOMIAL_ONE = Monomial()


def cp_monomial(i: int) -> Monomial:
    return Monomial({i: 1})


class GradedPoly:
    """Sparse polynomial over Q in the CP classes, with graded dimension.

    terms: dict Monomial -> Fraction with no zero coefficients.  The
    dimension is inferred: if every stored monomial has one dimension the
    polynomial is homogeneous of that dimension, and additions of
    incompatible dimensions raise DimensionMismatchError.  The zero
    polynomial may carry an explicit dimension (the zero of a graded piece)
    or none.
    """

    __slots__ = ("_terms", "_dim")

    def __init__(self, terms: Mapping[Monomial, Fraction | int] = (), dim: int | None = None):
        clean: dict[Monomial, Fraction] = {}
        for m, c in dict(terms).items():
            c = Fraction(c)
            if c:
                clean[m] = c
        dims = {m.dimension for m in clean}
        if len(dims) == 1:
            found = dims.pop()
            if dim is not None and dim != found:
                raise DimensionMismatchError(
                    f"terms have dimension {found}, asserted {dim}"
                )
            dim = found
        elif len(dims) > 1:
            if dim is not None:
                raise DimensionMismatchError(
                    f"terms span dimensions {sorted(dims)}, asserted {dim}"
                )
            dim = None
        if dim is not None and (dim < 0 or dim % 2):
            raise ValueError(f"dimension must be even and nonnegative, got {dim}")
        self._terms = clean
        self._dim = dim

    @classmethod
    def _make(cls, terms: dict[Monomial, Fraction], dim: int | None) -> "GradedPoly":
        """Trusted constructor: terms already clean, dim already correct."""
        p = cls.__new__(cls)
        p._terms = terms
        p._dim = dim
        return p

    # ---- constructors ----
    @classmethod
    def zero(cls, dim: int | None = None) -> "GradedPoly":
        return cls((), dim=dim)

    @classmethod
    def one(cls) -> "GradedPoly":
        return cls({MONOMIAL_ONE: Fraction(1)})

    @classmethod
    def cp(cls, i: int) -> "GradedPoly":
        return cls({cp_monomial(i): Fraction(1)})

    @classmethod
    def scalar(cls, c: Fraction | int) -> "GradedPoly":
        return cls({MONOMIAL_ONE: Fraction(c)})

    # ---- inspection ----
    @property
    def dim(self) -> int | None:
        return self._dim

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return self._dim is not None or not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in the canonical monomial order."""
        for m in sorted(self._terms):
            yield m, self._terms[m]

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms)

    def odd_denominators(self) -> bool:
        """True if every coefficient has odd denominator (a Z[1/2] class
        in the CP-monomial coordinates up to powers of 2)."""
        return all(odd_denominator(c) for c in self._terms.values())

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    # ---- arithmetic ----
    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            return NotImplemented
        # the zero polynomial is the zero of every graded piece
        if not self._terms:
            dim = other._dim if other._terms else (
                self._dim if self._dim == other._dim else None
            )
            return GradedPoly._make(dict(other._terms), dim)
        if not other._terms:
            return self
        if self._dim is None or other._dim is None:
            dim = None
        elif self._dim != other._dim:
            raise DimensionMismatchError(
                f"cannot add dimension {self._dim} to dimension {other._dim}"
            )
        else:
            dim = self._dim
        out = dict(self._terms)
        for m, c in other._terms.items():
            w = out.get(m)
            if w is None:
                out[m] = c
            else:
                w = w + c
                if w:
                    out[m] = w
                else:
                    del out[m]
        return GradedPoly._make(out, dim)

    def __neg__(self) -> "GradedPoly":
        return GradedPoly._make({m: -c for m, c in self._terms.items()}, self._dim)

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self.__add__(-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return GradedPoly._make({}, self._dim)
            return GradedPoly._make({m: v * c for m, v in self._terms.items()}, self._dim)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        dim = None
        if self._dim is not None and other._dim is not None:
            dim = self._dim + other._dim
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                w = out.get(m)
                if w is None:
                    out[m] = c1 * c2
                else:
                    w = w + c1 * c2
                    if w:
                        out[m] = w
                    else:
                        del out[m]
        return GradedPoly._make(out, dim)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GradedPoly":
        if k < 0:
            raise ValueError("negative power")
        out = GradedPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # ---- serialization ----
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for m, c in self.terms():
            mono = str(m)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"GradedPoly({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"monomial": str(m), "coeff": str(c)} for m, c in self.terms()
            ],
            "dim": self._dim,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "GradedPoly":
        terms: dict[Monomial, Fraction] = {}
        for t in obj["terms"]:
            m = Monomial.parse(t["monomial"])
            c = Fraction(t["coeff"])
            if m in terms:
                raise ValueError(f"duplicate monomial {t['monomial']}")
            terms[m] = c
        return cls(terms, dim=obj.get("dim"))


def monomials_of_dim(d: int) -> list[Monomial]:
    """All monomials of dimension 2d, in the canonical order.

    The count is the number of partitions of d.
    """
    out: list[Monomial] = []

    def rec(i: int, rem: int, cur: list[tuple[int, int]]):
        if rem == 0:
            out.append(Monomial(dict(cur)))
            return
        if i > rem:
            return
        rec(i + 1, rem, cur)
        e = 1
        while i * e <= rem:
            rec(i + 1, rem - i * e, cur + [(i, e)])
            e += 1

    rec(1, d, [])
    return sorted(out)


class TruncSeries:
    """Power series sum_k c_k x^k with GradedPoly coefficients, c_k only
    stored for k <= order.  Operations never look past the truncation
    order, so results are exact modulo x^(order+1).
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[GradedPoly], order: int | None = None):
        cc = list(coeffs)
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            while len(cc) < order + 1:
                cc.append(GradedPoly.zero())
            cc = cc[: order + 1]
        if not cc:
            raise ValueError("series needs at least the constant coefficient")
        self._coeffs = cc

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls([], order=order)

    @classmethod
    def identity(cls, order: int) -> "TruncSeries":
        """The series x."""
        s = cls([], order=order)
        if order >= 1:
            s._coeffs[1] = GradedPoly.one()
        return s

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, k: int) -> GradedPoly:
        if k < 0:
            raise IndexError(k)
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation {self.order}")
        return self._coeffs[k]

    def __getitem__(self, k: int) -> GradedPoly:
        return self.coefficient(k)

    def coefficients(self) -> list[GradedPoly]:
        return list(self._coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self._coeffs[: order + 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self._coeffs == other._coeffs

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries(
            [self._coeffs[k] + other._coeffs[k] for k in range(n + 1)]
        )

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries(
            [self._coeffs[k] - other._coeffs[k] for k in range(n + 1)]
        )

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self._coeffs])

    def scale(self, p: GradedPoly | Fraction | int) -> "TruncSeries":
        return TruncSeries([c * p for c in self._coeffs])

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        out = [GradedPoly.zero() for _ in range(n + 1)]
        for i, ci in enumerate(self._coeffs):
            if ci.is_zero() or i > n:
                continue
            for j, cj in enumerate(other._coeffs):
                if i + j > n:
                    break
                if cj.is_zero():
                    continue
                out[i + j] = out[i + j] + ci * cj
        return TruncSeries(out)

    def compose(self, g: "TruncSeries") -> "TruncSeries":
        """self(g(x)); g must have zero constant term."""
        if not g._coeffs[0].is_zero():
            raise ValueError("composition needs a series with zero constant term")
        n = min(self.order, g.order)
        # Horner from the top coefficient down
        out = TruncSeries([self._coeffs[n]], order=n)
        for k in range(n - 1, -1, -1):
            out = out * g
            out._coeffs[0] = out._coeffs[0] + self._coeffs[k]
        return out

    def revert(self) -> "TruncSeries":
        """Compositional inverse of a series x + c2 x^2 + ...

        Solved degree by degree: if g agrees with the inverse through
        x^(k-1), the x^k coefficient of self(g) is g_k plus known terms,
        so g_k is forced.  The defining identity self(revert()) = x is
        checked by the caller's tests, not assumed.
        """
        if not self._coeffs[0].is_zero():
            raise ValueError("reversion needs zero constant term")
        if self.order < 1 or self._coeffs[1] != GradedPoly.one():
            raise ValueError("reversion needs leading coefficient x")
        n = self.order
        g = TruncSeries.identity(n)
        for k in range(2, n + 1):
            resid = self.truncate(k).compose(g.truncate(k))
            g._coeffs[k] = -resid.coefficient(k)
        return g

    def __str__(self) -> str:
        pieces = []
        for k, c in enumerate(self._coeffs):
            if not c.is_zero():
                pieces.append(f"({c})*x^{k}")
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self) -> str:
        return f"TruncSeries({str(self)}, order={self.order})"


# Functional aliases matching the operation names of the public contract.
def poly_add(p: GradedPoly, q: GradedPoly) -> GradedPoly:
    return p + q


def poly_mul(p: GradedPoly, q: GradedPoly) -> GradedPoly:
    return p * q


def series_compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    return f.compose(g)


def series_revert(f: TruncSeries) -> TruncSeries:
    return f.revert()
