"""Dense univariate polynomials over Q (coefficient lists, low degree first)."""

from __future__ import annotations

import math
from fractions import Fraction


def trim(a):
    a = [Fraction(c) for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(trim(a)) - 1


def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def scale(a, c):
    return trim([x * c for x in a])


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def divmod_(a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] -= c * y
        r = trim(r)
    return trim(q), r


def monic(a):
    a = trim(a)
    return [c / a[-1] for c in a] if a else []


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def evaluate(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def squarefree_decomposition(a):
    """Yun's algorithm: list of (factor, multiplicity), factors monic squarefree."""
    a = monic(a)
    if deg(a) < 1:
        return []
    out = []
    b = gcd(a, derivative(a))
    c = divmod_(a, b)[0]
    d = add(divmod_(derivative(a), b)[0], scale(derivative(c), -1))
    k = 1
    while deg(c) > 0:
        g = gcd(c, d)
        if deg(g) > 0:
            out.append((g, k))
        c = divmod_(c, g)[0]
        d = add(divmod_(d, g)[0], scale(derivative(c), -1))
        k += 1
    return out


def radical(a):
    a = trim(a)
    if deg(a) < 1:
        return [Fraction(1)]
    return monic(divmod_(a, gcd(a, derivative(a)))[0])


def _divisors(n):
    n = abs(n)
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def primitive_integer(a):
    """Scale to coprime integer coefficients."""
    a = trim(a)
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g else ints


def rational_roots(a):
    """Distinct rational roots with multiplicities, as {root: multiplicity}."""
    a = trim(a)
    roots = {}
    if deg(a) < 1:
        return roots
    k = 0
    while a and a[0] == 0:
        a = a[1:]
        k += 1
    if k:
        roots[Fraction(0)] = k
    for factor, mult in squarefree_decomposition(a):
        ints = primitive_integer(factor)
        if len(ints) < 2:
            continue
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if cand not in roots and evaluate(factor, cand) == 0:
                        roots[cand] = mult
    return roots


def remove_linear_factors(a, roots):
    """Divide out (t - r)^k for every (r, k) in `roots`."""
    for r, k in roots.items():
        for _ in range(k):
            a, rem = divmod_(a, [-r, Fraction(1)])
            if rem:
                raise ValueError("not a root")
    return a


def resultant(a, b):
    """Resultant over Q via the Euclidean algorithm."""
    a, b = trim(a), trim(b)
    if not a or not b:
        return Fraction(0)
    res = Fraction(1)
    while deg(b) > 0:
        da, db = deg(a), deg(b)
        r = divmod_(a, b)[1]
        if not r:
            return Fraction(0)
        dr = deg(r)
        if (da * db) % 2:
            res = -res
        res *= b[-1] ** (da - dr)
        a, b = b, r
    return res * b[-1] ** deg(a) if b else Fraction(0)


def discriminant(a):
    a = trim(a)
    n = deg(a)
    if n < 1:
        return Fraction(1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(a, derivative(a)) / a[-1]


def reduce_mod(a, p):
    out = []
    for c in trim(a):
        if c.denominator % p == 0:
            raise ZeroDivisionError(f"coefficient {c} not p-integral at {p}")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    while out and out[-1] == 0:
        out.pop()
    return out


def eval_mod(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def count_roots_mod(a, p):
    """Number of distinct roots in F_p."""
    red = reduce_mod(a, p)
    if not red:
        return p
    return sum(1 for x in range(p) if eval_mod(red, x, p) == 0)


def to_string(a, var="t"):
    from .poly import MultiPoly

    return MultiPoly.from_univariate(trim(a) or [0]).to_string([var])


def from_string(text, var="t"):
    from .poly import parse_poly

    return trim(parse_poly(text, [var]).univariate(0))
