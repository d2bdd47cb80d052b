"""Point counts of contact loci over F_q by pruned depth-first search, and
exact recovery of Euler characteristics by interpolation in q.

The compiled kernel is used when it was built; set ARCMILNOR_PURE=1 to force
the pure-Python one.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import _kernel_py
from .errors import BadPrime, InterpolationError, NotVanishingAtOrigin, WorkBoundExceeded
from .formulas import degree_bound, is_prime
from .poly import PrimeField, all_jets, jet_compose

if os.environ.get("ARCMILNOR_PURE"):
    _kernel = _kernel_py
    BACKEND = "python"
else:
    try:
        from . import _kernel
        BACKEND = "compiled"
    except ImportError:
        _kernel = _kernel_py
        BACKEND = "python"

DEFAULT_WORK_BOUND = 200_000_000

__all__ = [
    "BACKEND",
    "CountTable",
    "brute_force_count",
    "count_fixed_locus",
    "count_points_Xn1",
    "degree_bound",
    "enumerate_count",
    "fixed_support",
    "interpolate_euler",
]


def _kernel_args(f, q):
    if not is_prime(q):
        raise BadPrime(f"{q} is not prime")
    if f.degree() < 1 or f.constant_term() != 0:
        raise NotVanishingAtOrigin("f must vanish at the origin")
    exps, coeffs = [], []
    for e, c in sorted(f.terms.items()):
        c = Fraction(c)
        if c.denominator % q == 0:
            raise BadPrime(f"coefficient {c} is not defined mod {q}")
        v = c.numerator * pow(c.denominator, -1, q) % q
        if v:
            exps.append(e)
            coeffs.append(v)
    return exps, coeffs


def _run_chunk(args):
    return _kernel.count_jets(*args)


def enumerate_count(f, n, q, allowed=None, target=1, work_bound=DEFAULT_WORK_BOUND, threads=1):
    """(count, nodes visited) for jets of order n with f(phi) = target*t^n + O(t^{n+1}).

    ``allowed[l]`` restricts which coefficient levels may be nonzero.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    exps, coeffs = _kernel_args(f, q)
    m = f.nvars
    allowed = [True] * (n + 1) if allowed is None else list(allowed)
    if not exps:  # f vanishes identically mod q
        return 0, 0
    r = min(sum(e) for e in exps)
    size = q ** m
    threads = max(1, int(threads or 1))
    if threads == 1 or r > n or not any(allowed[1:n - r + 2]):
        return _kernel.count_jets(exps, coeffs, m, n, q, allowed, r, work_bound, 0, -1, target % q)
    step = -(-size // threads)
    jobs = [
        (exps, coeffs, m, n, q, allowed, r, work_bound, lo, min(lo + step, size), target % q)
        for lo in range(0, size, step)
    ]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_run_chunk, jobs))
    nodes = sum(p[1] for p in parts)
    if work_bound and nodes > work_bound:
        raise WorkBoundExceeded(f"work bound {work_bound} exceeded", nodes)
    return sum(p[0] for p in parts), nodes


def count_points_Xn1(f, n, q, work_bound=DEFAULT_WORK_BOUND, threads=1):
    """#X_{n,1}(F_q): based jets with f(phi) = t^n mod t^{n+1}."""
    return enumerate_count(f, n, q, work_bound=work_bound, threads=threads)[0]


def fixed_support(n, d):
    """Levels allowed for jets fixed by the d-th power of t -> zeta_n t."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    e = n // math.gcd(n, d)
    return [l % e == 0 for l in range(n + 1)]


def count_fixed_locus(f, n, d, q, work_bound=DEFAULT_WORK_BOUND, threads=1):
    """Points of X_{n,1}(F_q) fixed by T_n^d (needs q = 1 mod n)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if (q - 1) % n:
        raise BadPrime(f"q = {q} is not 1 mod n = {n}; no primitive n-th root of unity")
    return enumerate_count(f, n, q, fixed_support(n, d), work_bound=work_bound, threads=threads)[0]


def brute_force_count(f, n, q, allowed=None, target=1):
    """Unpruned enumeration of all based jets (oracle for tiny cases)."""
    ring = PrimeField(q)
    target = ring.convert(target)
    total = 0
    for phi in all_jets(ring, f.nvars, n):
        if allowed is not None and any(
            row[l] for row in phi.coeffs for l in range(1, n + 1) if not allowed[l]
        ):
            continue
        s = jet_compose(f, phi).coeffs
        if all(c == 0 for c in s[:n]) and s[n] == target:
            total += 1
    return total


@dataclass
class CountTable:
    problem: dict
    samples: list = field(default_factory=list)
    degree_bound: int = 0

    def __post_init__(self):
        qs = [q for q, _ in self.samples]
        if len(set(qs)) != len(qs):
            raise ValueError("sample primes must be distinct")
        if any(c < 0 for _, c in self.samples):
            raise ValueError("counts are nonnegative")


def _newton_to_monomial(xs, coeffs):
    poly = [Fraction(0)]
    for k in range(len(coeffs) - 1, -1, -1):
        # poly = poly * (x - xs[k]) + coeffs[k]
        out = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            out[i + 1] += c
            out[i] -= c * xs[k]
        out[0] += coeffs[k]
        poly = out
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def interpolate_euler(table):
    """(integer coefficients of count(q), low degree first; value at q = 1)."""
    need = table.degree_bound + 1
    if len(table.samples) < need:
        raise InterpolationError(f"{len(table.samples)} samples given, degree bound {table.degree_bound} needs {need}")
    pts = sorted(table.samples)
    xs = [Fraction(q) for q, _ in pts[:need]]
    dd = [Fraction(c) for _, c in pts[:need]]
    newton = [dd[0]]
    for j in range(1, need):
        dd = [(dd[i + 1] - dd[i]) / (xs[i + j] - xs[i]) for i in range(len(dd) - 1)]
        newton.append(dd[0])
    poly = _newton_to_monomial(xs, newton)
    if any(c.denominator != 1 for c in poly):
        raise InterpolationError("interpolating polynomial has non-integral coefficients")
    poly = [int(c) for c in poly]
    for q, c in pts[need:]:
        value = sum(a * q ** i for i, a in enumerate(poly))
        if value != c:
            raise InterpolationError(f"sample at q = {q} is {c}, fit predicts {value}")
    return poly, sum(poly)


def qpoly_to_string(coeffs):
    from .poly import MultiPoly

    return MultiPoly.from_univariate(coeffs or [0]).to_string(["q"])
