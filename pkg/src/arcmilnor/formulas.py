"""Monodromy invariants and contact-locus classes computed from resolution data.

Two evaluation modes are used for anything depending on the cyclic covers
of the strata:

* ``chi``: only Euler characteristics, using chi(cover) = m_I * chi(E_I°);
* ``split``: the class in the Grothendieck ring, as a `ClassExpr`.  Genus-0
  covers of curve strata are computed by Riemann-Hurwitz; covers of positive
  genus stay formal `CoverSymbol`s.

`count_Xn1_formula` evaluates the same sum at L = q by counting cover points
over F_q from the resolution charts.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import upoly
from .errors import BadPrime, MissingCharts, MissingCoverClass
from .gring import ClassExpr, CoverSymbol, LaurentL, RationalT, ZetaFactorization, as_class, eval_at_q
from .resolve import CurveChart, PointChart

MODES = ("chi", "split")


# ------------------------------------------------------------ Lefschetz data

def lefschetz_acampo(res, n):
    """Lefschetz number of the n-th power of the monodromy."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(d.N * d.chi_open for d in res.divisors if n % d.N == 0)


def lefschetz_table(res, n_max):
    return {n: lefschetz_acampo(res, n) for n in range(1, n_max + 1)}


def zeta_monodromy(res):
    exps = {}
    for d in res.divisors:
        exps[d.N] = exps.get(d.N, 0) + d.chi_open
    return ZetaFactorization(exps)


def zeta_fibration(res, n):
    """Zeta function of the monodromy of the fibration given by the t^n-coefficient."""
    if n < 1:
        raise ValueError("n must be >= 1")
    exps = {}
    for d in res.divisors:
        if n % d.N == 0:
            exps[d.N] = exps.get(d.N, 0) + d.chi_open
    return ZetaFactorization(exps)


def mobius(n):
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def _divisors_of(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def s_invariants(table):
    """Möbius inversion of {n: Lambda(M^n)}; returns {i: s_i} with s_i != 0."""
    if not table:
        return {}
    top = max(table)
    missing = [d for d in _divisors_of(top) if d not in table]
    if missing:
        raise ValueError(f"table lacks Lambda(M^d) for d = {missing}")
    out = {}
    for n in sorted(table):
        if any(d not in table for d in _divisors_of(n)):
            continue
        s = sum(mobius(n // d) * table[d] for d in _divisors_of(n))
        if s % n:
            raise ValueError(f"s_{n} = {s} is not divisible by {n}: inconsistent table")
        if s:
            out[n] = s
    return out


def lefschetz_Tn(res, n, d):
    """Lambda(T_n^d), via T_n^d having the same Lambda as T_n^gcd(d, n)."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return lefschetz_acampo(res, math.gcd(d, n))


def equivariant_chi_Xn1(res, n, d):
    """chi of the isotypic part of X_{n,1} for a character of order d."""
    if d < 1 or n % d:
        raise ValueError(f"character order {d} must divide n = {n}")
    return sum(e.chi_open for e in res.divisors if e.N % d == 0 and n % e.N == 0)


def s_alpha_chi(res, d):
    if d < 1:
        raise ValueError("d must be >= 1")
    return sum(e.chi_open for e in res.divisors if e.N % d == 0)


# --------------------------------------------------------------- cover classes

def _punctures(res, divisor_id):
    """Local monodromies (as exponents of u) at the special points of E_i."""
    d = res.divisor(divisor_id)
    out = [res.divisor(j).N for j in d.adjacent]
    for s in res.strata:
        if s.branch and s.ids == (divisor_id,):
            out.extend([s.branch] * s.chi_open)
    return out


def cover_class(res, stratum):
    """[Ẽ_I°] as a ClassExpr (override, Riemann-Hurwitz, or formal symbol)."""
    if stratum.cover_class is not None:
        return as_class(stratum.cover_class)
    dim = res.stratum_dim(stratum)
    m = stratum.m
    if dim == 0:
        return ClassExpr(m * stratum.chi_open)
    name = "cover(" + ",".join(f"E{i}" for i in stratum.ids) + ")"
    if dim == 1 and res.ambient_dim == 2 and len(stratum.ids) == 1 and not stratum.branch:
        punct = _punctures(res, stratum.ids[0])
        if 2 - len(punct) != stratum.chi_open:
            raise MissingCoverClass(f"special points of E{stratum.ids[0]} do not match chi_open")
        comps = math.gcd(m, *punct) if punct else m
        mm = m // comps
        ram = sum(mm - math.gcd(mm, e // comps) for e in punct)
        euler_compact = 2 * mm - ram
        if euler_compact == 2:
            return ClassExpr(comps * (LaurentL.L() + 1 - sum(math.gcd(mm, e // comps) for e in punct)))
    return ClassExpr.symbol(CoverSymbol(name, m * stratum.chi_open))


# ------------------------------------------------------- contact-locus classes

def k_vectors(Ns, n):
    """All (k_i >= 1) with sum k_i N_i = n."""
    if not Ns:
        if n == 0:
            yield ()
        return
    head, rest = Ns[0], Ns[1:]
    k = 1
    while k * head + sum(rest) <= n:
        for tail in k_vectors(rest, n - k * head):
            yield (k,) + tail
        k += 1


def contributing_terms(res, n):
    """(stratum, k, L-exponent n*m - sum k_i nu_i) for every nonzero term at level n."""
    out = []
    for s in res.strata:
        members = res.members(s)
        Ns = [N for N, _ in members]
        for k in k_vectors(Ns, n):
            out.append((s, k, n * res.ambient_dim - sum(ki * nu for ki, (_, nu) in zip(k, members))))
    return out


def class_Xn1(res, n, mode="chi"):
    """Class of X_{n,1}: an int (chi mode) or a ClassExpr (split mode)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if mode == "chi":
        return sum(s.m * s.chi_open for s, _, _ in contributing_terms(res, n) if s.size == 1)
    if mode != "split":
        raise ValueError(f"unknown mode {mode!r}")
    total = ClassExpr()
    for s, _, e in contributing_terms(res, n):
        total = total + cover_class(res, s) * (LaurentL.L(e) * (LaurentL.L() - 1) ** (s.size - 1))
    return total


def motivic_series_P(res, mode="chi"):
    """P(T) = sum_n [X_{n,1}] L^{-nm} T^n in factored form."""
    terms = []
    for s in res.strata:
        if mode == "chi":
            if s.size != 1:
                continue
            coeff = s.m * s.chi_open
        elif mode == "split":
            coeff = cover_class(res, s) * (LaurentL.L() - 1) ** (s.size - 1)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        terms.append((coeff, tuple((nu, N) for N, nu in res.members(s))))
    return RationalT(tuple(terms))


def series_coefficient(res, n, mode="chi"):
    """Coefficient of T^n of P(T), times L^{nm}; comparable with class_Xn1."""
    c = motivic_series_P(res, mode).coefficient(n) * LaurentL.L(n * res.ambient_dim)
    return c.euler() if mode == "chi" else c


def motivic_volume_S(res, mode="chi"):
    """(class of S or None in chi mode, chi(S))."""
    chi = sum(s.m * s.chi_open for s in res.strata if s.size == 1)
    if mode == "chi":
        return None, chi
    total = ClassExpr()
    for s in res.strata:
        total = total + cover_class(res, s) * (1 - LaurentL.L()) ** (s.size - 1)
    return total, chi


# -------------------------------------------------------------- point counts

def rootcount(m, c, q):
    """#{z in F_q : z^m = c} for c != 0 mod q."""
    g = math.gcd(m, q - 1)
    return g if pow(c, (q - 1) // g, q) == 1 else 0


def _mod(c, q, what):
    c = Fraction(c)
    if c.denominator % q == 0:
        raise BadPrime(f"{what} has a denominator divisible by {q}")
    return c.numerator * pow(c.denominator, -1, q) % q


def _check_points_poly(a, q, what):
    rad = upoly.primitive_integer(upoly.radical(a))
    if len(rad) < 2:
        return
    if rad[-1] % q == 0:
        raise BadPrime(f"leading coefficient of {what} vanishes mod {q}")
    disc = upoly.discriminant([Fraction(c) for c in rad])
    if disc.numerator % q == 0:
        raise BadPrime(f"special points of {what} collide mod {q}")


def check_prime(res, q, n=None):
    """Raise BadPrime unless q is tame and good for the charts of res.

    With `n`, tameness is only required for the strata contributing at level n.
    """
    if not is_prime(q):
        raise BadPrime(f"{q} is not prime")
    if n is None:
        tame = [(f"N_{d.id}", d.N) for d in res.divisors]
    else:
        tame = [(f"N of stratum {s.ids}", N) for s, _, _ in contributing_terms(res, n) for N, _ in res.members(s)]
    for label, N in tame:
        if N % q == 0:
            raise BadPrime(f"{q} divides {label} = {N}")
    for s in res.strata:
        ch = s.chart
        label = "E_{" + ",".join(map(str, s.ids)) + "}"
        if isinstance(ch, CurveChart):
            for c in ch.u:
                _mod(c, q, f"u on {label}")
            _check_points_poly(list(ch.u), q, f"u on {label}")
            if ch.u_inf is not None and _mod(ch.u_inf, q, f"u at oo on {label}") == 0:
                raise BadPrime(f"unit at oo on {label} vanishes mod {q}")
            for p in ch.map or ():
                for c in p.terms.values():
                    _mod(c, q, f"chart map of {label}")
        elif isinstance(ch, PointChart):
            if ch.factor is not None:
                for c in ch.factor:
                    _mod(c, q, f"points of {label}")
                _check_points_poly(list(ch.factor), q, f"points of {label}")
                if upoly.count_roots_mod(list(ch.factor), q) != upoly.deg(list(ch.factor)):
                    raise BadPrime(f"points of {label} are not all rational mod {q}")
            if ch.u is not None and _mod(ch.u, q, f"unit at {label}") == 0:
                raise BadPrime(f"unit at {label} vanishes mod {q}")


def cover_points(res, stratum, q):
    """#Ẽ_I°(F_q) from the chart of the stratum."""
    m, ch = stratum.m, stratum.chart
    if isinstance(ch, CurveChart):
        u = [_mod(c, q, "u") for c in ch.u]
        total = 0
        for t in range(q):
            v = upoly.eval_mod(u, t, q)
            if v:
                total += rootcount(m, v, q)
        if ch.u_inf is not None:
            total += rootcount(m, _mod(ch.u_inf, q, "u_inf"), q)
        return total
    if isinstance(ch, PointChart):
        pts = 1 if ch.factor is None else upoly.count_roots_mod(list(ch.factor), q)
        if m == 1:
            return pts
        if ch.u is None:
            raise MissingCharts(f"no unit recorded for the points of stratum {stratum.ids}")
        return pts * rootcount(m, _mod(ch.u, q, "u"), q)
    if stratum.cover_class is not None:
        val = eval_at_q(stratum.cover_class, q)
        if val.denominator != 1:
            raise BadPrime(f"cover class of {stratum.ids} is not integral at {q}")
        return int(val)
    raise MissingCharts(f"stratum {stratum.ids} has neither a chart nor a cover class")


def count_Xn1_formula(res, n, q):
    """#X_{n,1}(F_q) predicted by the resolution, covers counted from charts."""
    if not res.has_charts and any(s.chart is None and s.cover_class is None for s in res.strata):
        raise MissingCharts("resolution data carries no charts")
    check_prime(res, q, n)
    total = Fraction(0)
    for s, _, e in contributing_terms(res, n):
        total += Fraction(q) ** e * (q - 1) ** (s.size - 1) * cover_points(res, s, q)
    if total.denominator != 1:
        raise AssertionError(f"non-integral predicted count {total}")
    return int(total)


def degree_bound(res, n):
    """Upper bound for the q-degree of #X_{n,1}(F_q); 0 when the locus is empty."""
    terms = contributing_terms(res, n)
    if not terms:
        return 0
    return max(e + res.ambient_dim - 1 for _, _, e in terms)


def required_modulus(res, n):
    """lcm of m_I over contributing strata: admissible q are 1 mod this."""
    out = 1
    for s, _, _ in contributing_terms(res, n):
        out = out * s.m // math.gcd(out, s.m)
    return out


def is_prime(p):
    return p >= 2 and all(p % k for k in range(2, math.isqrt(p) + 1))


def admissible_primes(res, n, limit=31, modulus=1, count=None):
    """Primes q <= limit at which #X_{n,1}(F_q) follows the split class.

    Requires tameness of the contributing strata, good chart reduction, q = 1 mod lcm(m_I, modulus),
    and, when the split class is a polynomial in L, agreement of the chart
    count with it.
    """
    mod = required_modulus(res, n)
    mod = mod * modulus // math.gcd(mod, modulus)
    try:
        split = class_Xn1(res, n, "split")
        poly = split.as_laurent() if split.is_laurent() else None
    except MissingCoverClass:
        poly = None
    out = []
    for q in range(2, limit + 1):
        if not is_prime(q) or (q - 1) % mod:
            continue
        try:
            check_prime(res, q, n)
            if poly is not None and res.has_charts and count_Xn1_formula(res, n, q) != eval_at_q(poly, q):
                continue
        except (BadPrime, MissingCharts):
            continue
        out.append(q)
        if count is not None and len(out) == count:
            break
    return out
