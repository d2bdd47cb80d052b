"""Laurent polynomials in L, formal cover classes, factored series in T,
and cyclotomic-product zeta functions."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import MissingCoverClass, ParseError


class LaurentL:
    """Integer Laurent polynomial in L, stored as {exponent: coefficient}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if isinstance(coeffs, int):
            coeffs = {0: coeffs}
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def L(cls, power=1):
        return cls({power: 1})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentL(other)
        if isinstance(other, LaurentL):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentL(other)
        if not isinstance(other, LaurentL):
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentL(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentL({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = LaurentL(other)
        if not isinstance(other, LaurentL):
            return NotImplemented
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentL(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.coeffs) != 1 or abs(next(iter(self.coeffs.values()))) != 1:
                raise ValueError("only signed monomials are invertible")
            (e, c), = self.coeffs.items()
            return LaurentL({e * k: c ** k})
        out = LaurentL(1)
        for _ in range(k):
            out = out * self
        return out

    def degree(self):
        return max(self.coeffs, default=None)

    def __str__(self):
        return render_laurent(self)

    def __repr__(self):
        return f"LaurentL({render_laurent(self)!r})"


def render_laurent(c, symbol="L"):
    if not c.coeffs:
        return "0"
    out = ""
    for i, e in enumerate(sorted(c.coeffs, reverse=True)):
        k = c.coeffs[e]
        mag = abs(k)
        if e == 0:
            body = str(mag)
        else:
            mono = symbol if e == 1 else f"{symbol}^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if i == 0:
            out = ("-" if k < 0 else "") + body
        else:
            out += (" - " if k < 0 else " + ") + body
    return out


_LTERM = re.compile(r"([+-]?)\s*(\d+)?\s*\*?\s*(L(?:\^(-?\d+))?)?")


def parse_laurent(text):
    """Inverse of `render_laurent` (accepts the canonical form)."""
    s = text.replace(" ", "")
    if s == "0":
        return LaurentL()
    out = {}
    pos = 0
    while pos < len(s):
        m = _LTERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ParseError(f"bad Laurent polynomial {text!r}", pos)
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            e = int(m.group(4)) if m.group(4) else 1
        else:
            e = 0
        out[e] = out.get(e, 0) + sign * coeff
        pos = m.end()
    return LaurentL(out)


def euler_specialize(c):
    """Value at L = 1."""
    if isinstance(c, ClassExpr):
        return c.euler()
    return sum(c.coeffs.values())


def eval_at_q(c, q):
    q = Fraction(q)
    if q == 0 and any(e < 0 for e in c.coeffs):
        raise ZeroDivisionError("negative powers of L at q = 0")
    return sum((Fraction(k) * q ** e for e, k in c.coeffs.items()), Fraction(0))


@dataclass(frozen=True, order=True)
class CoverSymbol:
    """Formal class [cover] whose value is not an L-polynomial.

    `chi` is its Euler characteristic, used by `euler_specialize`.
    """

    name: str
    chi: int

    def __str__(self):
        return f"[{self.name}]"


class ClassExpr:
    """Element of the free LaurentL-module on 1 and formal cover symbols.

    Classes of contact loci are linear in the cover classes, so this is
    enough to carry non-polynomial covers through every formula.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=None):
        if isinstance(parts, (int, LaurentL)):
            parts = {None: LaurentL(parts) if isinstance(parts, int) else parts}
        self.parts = {k: v for k, v in (parts or {}).items() if v}

    @classmethod
    def symbol(cls, sym):
        return cls({sym: LaurentL(1)})

    def __eq__(self, other):
        if isinstance(other, (int, LaurentL)):
            other = ClassExpr(other)
        if isinstance(other, ClassExpr):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.parts.items()))

    def __add__(self, other):
        if isinstance(other, (int, LaurentL)):
            other = ClassExpr(other)
        out = dict(self.parts)
        for k, v in other.parts.items():
            out[k] = out.get(k, LaurentL()) + v
        return ClassExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return ClassExpr({k: -v for k, v in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = LaurentL(other)
        if not isinstance(other, LaurentL):
            if isinstance(other, ClassExpr) and set(other.parts) <= {None}:
                other = other.parts.get(None, LaurentL())
            elif isinstance(other, ClassExpr) and set(self.parts) <= {None}:
                return other * self.parts.get(None, LaurentL())
            else:
                return NotImplemented
        return ClassExpr({k: v * other for k, v in self.parts.items()})

    __rmul__ = __mul__

    def symbols(self):
        return sorted(k for k in self.parts if k is not None)

    def is_laurent(self):
        return not self.symbols()

    def as_laurent(self):
        if not self.is_laurent():
            names = ", ".join(str(s) for s in self.symbols())
            raise MissingCoverClass(f"class involves non-polynomial covers {names}")
        return self.parts.get(None, LaurentL())

    def euler(self):
        total = 0
        for k, v in self.parts.items():
            total += euler_specialize(v) * (1 if k is None else k.chi)
        return total

    def evaluate(self, q, symbol_values):
        total = Fraction(0)
        for k, v in self.parts.items():
            total += eval_at_q(v, q) * (1 if k is None else symbol_values[k])
        return total

    def __str__(self):
        if not self.parts:
            return "0"
        chunks = []
        for k in sorted(self.parts, key=lambda s: (s is not None, s)):
            v = self.parts[k]
            if k is None:
                chunks.append(render_laurent(v))
            elif v == LaurentL(1):
                chunks.append(str(k))
            else:
                chunks.append(f"({render_laurent(v)})*{k}")
        return " + ".join(chunks)

    def __repr__(self):
        return f"ClassExpr({self})"


def as_class(c):
    return c if isinstance(c, ClassExpr) else ClassExpr(c)


@dataclass(frozen=True)
class RationalT:
    """Sum of terms coeff * prod_j L^-a_j T^b_j / (1 - L^-a_j T^b_j).

    Denominators are kept factored; `terms` holds (coeff, ((a, b), ...)).
    """

    terms: tuple

    def __post_init__(self):
        for _, factors in self.terms:
            for a, b in factors:
                if a < 1 or b < 1:
                    raise ValueError(f"factor exponents must be >= 1, got {(a, b)}")

    def coefficient(self, n):
        """Coefficient of T^n of the expansion (geometric series products)."""
        total = ClassExpr()
        for coeff, factors in self.terms:
            # series of prod_j sum_{k>=1} L^{-a k} T^{b k}, truncated at T^n
            series = {0: LaurentL(1)}
            for a, b in factors:
                nxt = {}
                for deg, c in series.items():
                    k = 1
                    while deg + k * b <= n:
                        key = deg + k * b
                        nxt[key] = nxt.get(key, LaurentL()) + c * LaurentL.L(-a * k)
                        k += 1
                series = nxt
            if n in series:
                total = total + as_class(coeff) * series[n]
        return total

    def __str__(self):
        chunks = []
        for coeff, factors in self.terms:
            fac = "*".join(f"(L^-{a}T^{b}/(1-L^-{a}T^{b}))" for a, b in factors)
            chunks.append(f"({coeff})*{fac}")
        return " + ".join(chunks) if chunks else "0"


def limit_T_to_infinity(r):
    """Replace every factor L^-a T^b / (1 - L^-a T^b) by -1."""
    if not isinstance(r, RationalT):
        raise TypeError("expected a RationalT in factored form")
    total = ClassExpr()
    for coeff, factors in r.terms:
        if not factors:
            raise ValueError("term without T-factor is not in the admissible form")
        total = total + as_class(coeff) * ((-1) ** len(factors))
    return total


class ZetaFactorization:
    """prod_i (1 - t^i)^e_i stored as {i: e_i}, zero exponents dropped."""

    __slots__ = ("exponents",)

    def __init__(self, exponents=None):
        for i in exponents or {}:
            if i < 1:
                raise ValueError("factor degrees must be positive")
        self.exponents = {int(i): int(e) for i, e in (exponents or {}).items() if e}

    def __mul__(self, other):
        out = dict(self.exponents)
        for i, e in other.exponents.items():
            out[i] = out.get(i, 0) + e
        return ZetaFactorization(out)

    def __eq__(self, other):
        return isinstance(other, ZetaFactorization) and self.exponents == other.exponents

    def __hash__(self):
        return hash(frozenset(self.exponents.items()))

    def items(self):
        return sorted(self.exponents.items())

    def __str__(self):
        if not self.exponents:
            return "1"
        out = ""
        for i, e in self.items():
            base = "(1-t)" if i == 1 else f"(1-t^{i})"
            out += base if e == 1 else f"{base}^{e}"
        return out

    def __repr__(self):
        return f"ZetaFactorization({self})"


def zeta_multiply(a, b):
    return a * b


def zeta_exponents(z):
    return z.items()
