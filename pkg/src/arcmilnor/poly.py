"""Exact multivariate polynomials over Q, jets, and truncated composition."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import ParseError

DEFAULT_NAMES = ("x", "y", "z", "w")


def default_names(nvars):
    if nvars <= len(DEFAULT_NAMES):
        return list(DEFAULT_NAMES[:nvars])
    return [f"x{i + 1}" for i in range(nvars)]


class MultiPoly:
    """Polynomial in `nvars` variables with Fraction coefficients.

    Terms are stored as ``{exponent tuple: Fraction}`` with no zero
    coefficients, so two equal polynomials always have equal term dicts.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def from_univariate(cls, coeffs, nvars=1, index=0):
        """Embed ``sum coeffs[k] * v**k`` with v the variable at `index`."""
        terms = {}
        for k, c in enumerate(coeffs):
            exps = [0] * nvars
            exps[index] = k
            terms[tuple(exps)] = c
        return cls(nvars, terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable-count mismatch")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def order(self):
        """Lowest total degree of a term; None for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=None)

    def order_in(self, i):
        return min((e[i] for e in self.terms), default=None)

    def homogeneous_part(self, d):
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term *= Fraction(v) ** k
            total += term
        return total

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def compose(self, images):
        """Substitute polynomial `images[i]` for variable i."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars
        powers = [{} for _ in images]
        result = MultiPoly(target)
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    if k not in powers[i]:
                        powers[i][k] = images[i] ** k
                    term = term * powers[i][k]
            result = result + term
        return result

    def translate(self, point):
        """Return g with g(v) = f(v + point)."""
        images = [MultiPoly.var(self.nvars, i) + Fraction(p) for i, p in enumerate(point)]
        return self.compose(images)

    def divide_by_var_power(self, i, k):
        """Exact division by v_i**k; raises if some term has lower v_i-degree."""
        terms = {}
        for e, c in self.terms.items():
            if e[i] < k:
                raise ValueError(f"not divisible by variable {i} to power {k}")
            e = list(e)
            e[i] -= k
            terms[tuple(e)] = c
        return MultiPoly(self.nvars, terms)

    def derivative(self, i):
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                terms[tuple(e2)] = c * e[i]
        return MultiPoly(self.nvars, terms)

    def restrict(self, i, value):
        """Set variable i to a constant, keeping the variable count."""
        terms = {}
        value = Fraction(value)
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            e2 = tuple(e2)
            terms[e2] = terms.get(e2, 0) + c * value ** k
        return MultiPoly(self.nvars, terms)

    def univariate(self, i):
        """Coefficient list (low to high) when only variable i occurs."""
        coeffs = [Fraction(0)] * (self.degree_in(i) + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            coeffs[e[i]] += c
        return coeffs

    def to_string(self, names=None):
        names = names or default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_string()!r})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        elif m.group(3):
            if m.group(3) not in "+-*^/()":
                raise ParseError(f"unexpected character {m.group(3)!r}", start)
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, var_names):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = {name: k for k, name in enumerate(var_names)}
        self.nvars = len(var_names)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}", pos)

    def parse(self):
        result = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("unexpected trailing input", pos)
        return result

    def expr(self):
        result = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1:]
            rhs = self.unary()
            if op == "*":
                result = result * rhs
            else:
                if rhs.degree() > 0 or rhs.is_zero():
                    raise ParseError("division only by a nonzero constant", pos)
                result = result * MultiPoly.constant(self.nvars, 1 / rhs.constant_term())
        return result

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            inner = self.unary()
            return -inner if op == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                neg_pos = self.take()[2]
                neg = True
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer literal", pos)
            if neg:
                raise ParseError("negative exponent", neg_pos)
            return base ** val
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return MultiPoly.constant(self.nvars, val)
        if kind == "name":
            if val not in self.names:
                raise ParseError(f"unknown variable {val!r}", pos)
            return MultiPoly.var(self.nvars, self.names[val])
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("unexpected token" if kind != "end" else "unexpected end of input", pos)


def parse_poly(text, var_names):
    """Parse ``text`` (integers, variables, + - * / ^, parentheses)."""
    var_names = list(var_names)
    if not var_names or len(set(var_names)) != len(var_names):
        raise ParseError("variable names must be distinct and nonempty")
    return _Parser(text, var_names).parse()


def mult_at_point(f, point=None):
    """Multiplicity of f at `point` (default origin); math.inf for f = 0."""
    if f.is_zero():
        return math.inf
    g = f if point is None or not any(point) else f.translate(point)
    return g.order()


class RationalField:
    """Q with Fraction elements."""

    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, c):
        return Fraction(c)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_p with integer representatives in [0, p)."""

    zero = 0
    one = 1

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def convert(self, c):
        c = Fraction(c)
        if c.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator of {c} vanishes mod {self.p}")
        return c.numerator * pow(c.denominator, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@dataclass(frozen=True)
class TruncSeries:
    ring: object
    coeffs: tuple

    @property
    def order(self):
        return len(self.coeffs) - 1

    def valuation(self):
        """Index of the first nonzero coefficient, None if all vanish."""
        for j, c in enumerate(self.coeffs):
            if c != self.ring.zero:
                return j
        return None


@dataclass(frozen=True)
class Jet:
    """A point of L_n(A^m): one length-(n+1) coefficient vector per variable."""

    ring: object
    order: int
    coeffs: tuple

    def __post_init__(self):
        if any(len(c) != self.order + 1 for c in self.coeffs):
            raise ValueError("coefficient vectors must have length order+1")

    @classmethod
    def from_lists(cls, ring, lists):
        lists = [tuple(ring.convert(c) for c in row) for row in lists]
        return cls(ring, len(lists[0]) - 1, tuple(lists))

    @property
    def nvars(self):
        return len(self.coeffs)

    def is_based(self):
        return all(c[0] == self.ring.zero for c in self.coeffs)


def _series_mul(ring, a, b, n):
    out = [ring.zero] * (n + 1)
    for i, ai in enumerate(a):
        if ai == ring.zero:
            continue
        for j in range(n + 1 - i):
            if b[j] != ring.zero:
                out[i + j] = ring.add(out[i + j], ring.mul(ai, b[j]))
    return out


def _series_add(ring, a, b):
    return [ring.add(x, y) for x, y in zip(a, b)]


def _horner(ring, terms, phi, var, n):
    # terms: {exponent tail: coefficient} for variables var.. m-1
    if var == len(phi):
        c = terms.get((), ring.zero) if terms else ring.zero
        out = [ring.zero] * (n + 1)
        out[0] = c
        return out
    by_power = {}
    for e, c in terms.items():
        by_power.setdefault(e[0], {})[e[1:]] = c
    top = max(by_power, default=0)
    acc = [ring.zero] * (n + 1)
    for k in range(top, -1, -1):
        acc = _series_mul(ring, acc, phi[var], n)
        if k in by_power:
            acc = _series_add(ring, acc, _horner(ring, by_power[k], phi, var + 1, n))
    return acc


def jet_compose(f, phi):
    """Coefficients of f(phi(t)) modulo t^(order+1), by Horner evaluation.

    Coefficient j only reads phi-coefficients of index <= j.
    """
    if f.nvars != phi.nvars:
        raise ValueError("variable-count mismatch")
    ring = phi.ring
    terms = {e: ring.convert(c) for e, c in f.terms.items()}
    coeffs = _horner(ring, terms, [list(c) for c in phi.coeffs], 0, phi.order)
    return TruncSeries(ring, tuple(coeffs))


def all_jets(ring, nvars, order, based=True):
    """Every jet over a finite prime field (brute-force oracle support)."""
    elems = list(ring.elements())
    free = order if based else order + 1
    for flat in product(elems, repeat=nvars * free):
        rows = []
        for v in range(nvars):
            chunk = flat[v * free:(v + 1) * free]
            rows.append(((0,) if based else ()) + tuple(chunk))
        yield Jet(ring, order, tuple(rows))
