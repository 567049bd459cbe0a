"""Exact integer polynomials and powered comparisons.

Activities are ``fractions.Fraction`` values; nothing here touches floats.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def to_rational(x) -> Fraction:
    """Parse ``x`` (int, Fraction, or text like ``"3/4"``) into a Fraction."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction or 'p/q' text")
    return Fraction(x)


class IntPolynomial:
    """Univariate polynomial with arbitrary-precision integer coefficients.

    ``coeffs[k]`` is the coefficient of ``x**k``; the zero polynomial has
    no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim(int(c) for c in coeffs)

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = IntPolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x: Number) -> Fraction:
        return eval_rational(self, x)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "IntPolynomial":
        return cls(int(c) for c in data)

    def pretty(self, var: str = "λ") -> str:
        """Ascending-degree rendering, e.g. ``1 + 6λ + 6λ² + 2λ³``."""
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                body = f"{mag}{var}{_superscript(k) if k > 1 else ''}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _superscript(k: int) -> str:
    return str(k).translate(_SUP)


def poly_add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p + q


def poly_mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p * q


def poly_pow(p: IntPolynomial, e: int) -> IntPolynomial:
    return p ** e


def binomial_power(m: int) -> IntPolynomial:
    """``(1 + x)**m``."""
    row = [1]
    for _ in range(m):
        row = [a + b for a, b in zip(row + [0], [0] + row)]
    return IntPolynomial(row)


def eval_rational(p: IntPolynomial, x: Number) -> Fraction:
    x = to_rational(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


class BivariatePolynomial:
    """Sparse polynomial in ``(mu, lam)``: ``coeffs[(j, k)]`` multiplies ``mu**j lam**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        self.coeffs = {jk: int(c) for jk, c in (coeffs or {}).items() if c}

    @classmethod
    def constant(cls, c: int) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    def coeff(self, j: int, k: int) -> int:
        return self.coeffs.get((j, k), 0)

    def __eq__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"BivariatePolynomial({dict(sorted(self.coeffs.items()))})"

    def __add__(self, other):
        out = dict(self.coeffs)
        for jk, c in other.coeffs.items():
            out[jk] = out.get(jk, 0) + c
        return BivariatePolynomial(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return BivariatePolynomial({jk: c * other for jk, c in self.coeffs.items()})
        out: dict[tuple[int, int], int] = {}
        for (j1, k1), c1 in self.coeffs.items():
            for (j2, k2), c2 in other.coeffs.items():
                key = (j1 + j2, k1 + k2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = BivariatePolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, dj: int, dk: int) -> "BivariatePolynomial":
        return BivariatePolynomial({(j + dj, k + dk): c for (j, k), c in self.coeffs.items()})

    def swap(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(k, j): c for (j, k), c in self.coeffs.items()})

    def diagonal(self) -> IntPolynomial:
        """Set ``mu = lam`` and return the univariate result."""
        top = max((j + k for j, k in self.coeffs), default=-1)
        out = [0] * (top + 1)
        for (j, k), c in self.coeffs.items():
            out[j + k] += c
        return IntPolynomial(out)

    def evaluate(self, mu: Number, lam: Number) -> Fraction:
        mu, lam = to_rational(mu), to_rational(lam)
        return sum((c * mu ** j * lam ** k for (j, k), c in self.coeffs.items()), Fraction(0))

    def to_json(self) -> list[list]:
        return [[j, k, str(c)] for (j, k), c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, data) -> "BivariatePolynomial":
        return cls({(int(j), int(k)): int(c) for j, k, c in data})


class Order(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def _sign(a: Fraction, b: Fraction) -> Order:
    if a < b:
        return Order.LESS
    if a > b:
        return Order.GREATER
    return Order.EQUAL


def powered_sides(lhs: Number, lhs_exp: int, rhs: Number, rhs_exp: int) -> tuple[int, int]:
    """Integers ``X, Y`` with ``X <=> Y`` iff ``lhs**(1/lhs_exp) <=> rhs**(1/rhs_exp)``.

    ``X = num(lhs)**rhs_exp * den(rhs)**lhs_exp`` and symmetrically for ``Y``.
    """
    lhs, rhs = to_rational(lhs), to_rational(rhs)
    if lhs < 0 or rhs < 0:
        raise ValueError("powered comparison needs nonnegative operands")
    if lhs_exp < 1 or rhs_exp < 1:
        raise ValueError("exponents must be positive integers")
    x = lhs.numerator ** rhs_exp * rhs.denominator ** lhs_exp
    y = rhs.numerator ** lhs_exp * lhs.denominator ** rhs_exp
    return x, y


def compare_powered(lhs: Number, lhs_exp: int, rhs: Number, rhs_exp: int) -> Order:
    """Order of ``lhs**(1/lhs_exp)`` against ``rhs**(1/rhs_exp)``, decided exactly
    by comparing ``lhs**rhs_exp`` with ``rhs**lhs_exp``."""
    x, y = powered_sides(lhs, lhs_exp, rhs, rhs_exp)
    return _sign(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class CoeffComparison:
    holds: bool
    slack: tuple[int, ...]
    witness: int | None = None
    lhs_coeff: int | None = None
    rhs_coeff: int | None = None


def coeffwise_leq(p: IntPolynomial, q: IntPolynomial) -> CoeffComparison:
    """Check ``coeff_k(p) <= coeff_k(q)`` for all ``k``.

    ``slack[k] = coeff_k(q) - coeff_k(p)``; on failure ``witness`` is the
    least violating index.
    """
    top = max(len(p.coeffs), len(q.coeffs))
    slack = tuple(q.coeff(k) - p.coeff(k) for k in range(top))
    for k, s in enumerate(slack):
        if s < 0:
            return CoeffComparison(False, slack, k, p.coeff(k), q.coeff(k))
    return CoeffComparison(True, slack)
