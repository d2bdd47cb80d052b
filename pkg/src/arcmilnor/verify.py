"""Cross-checks between the resolution pipeline and the jet-counting pipeline.

Each report compares a value computed from resolution data (formulas) with
one computed by enumerating jets over finite fields (jets); the two sides
share no code beyond polynomial parsing.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from collections import Counter
from itertools import product

from . import formulas, jets
from .errors import ArcMilnorError, InterpolationError
from .poly import MultiPoly, PrimeField, Jet, jet_compose
from .resolve import resolve


@dataclass
class VerificationReport:
    theorem: str
    germ: str
    params: dict
    lhs: list
    rhs: list
    verdict: str
    ms: int = 0
    diagnostics: list = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_dict(self):
        doc = {
            "theorem": self.theorem,
            "germ": self.germ,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict,
            "ms": self.ms,
        }
        if self.diagnostics:
            doc["diagnostics"] = self.diagnostics
        return doc

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self):
        line = f"{self.theorem} {self.germ} {self.params}: lhs={self.lhs} rhs={self.rhs} -> {self.verdict}"
        return line + "".join(f"\n  note: {d}" for d in self.diagnostics)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int((time.perf_counter() - self.t0) * 1000)


def _germ(f, names=None):
    return f.to_string(names)


def _interpolated_chi(samples, bound, diagnostics):
    table = jets.CountTable({}, samples, bound)
    try:
        poly, chi = jets.interpolate_euler(table)
    except InterpolationError as exc:
        diagnostics.append(f"interpolation failed: {exc}")
        return None, None
    diagnostics.append("count(q) = " + jets.qpoly_to_string(poly))
    return poly, chi


def _check_primes(primes, admissible, bound, diagnostics):
    ok = True
    bad = [q for q in primes if q not in admissible]
    if bad:
        diagnostics.append(f"inadmissible primes {bad}")
        ok = False
    if len(primes) < bound + 1:
        diagnostics.append(f"degree bound {bound} needs {bound + 1} primes, got {len(primes)}")
        ok = False
    return ok


def verify_MT(f, n, primes=None, res=None, names=None, prime_limit=31,
              work_bound=jets.DEFAULT_WORK_BOUND, threads=1):
    """chi(X_{n,1}) by interpolated point counts against Lambda(M^n)."""
    with _Timer() as clock:
        res = res or resolve(f)
        bound = jets.degree_bound(res, n)
        admissible = formulas.admissible_primes(res, n, limit=max([prime_limit, *(primes or [])]))
        if primes is None:
            primes = admissible[: bound + 1]
        primes = sorted(primes)
        diagnostics = [f"degree bound {bound}", f"primes {primes}"]
        rhs = formulas.lefschetz_acampo(res, n)
        ok = _check_primes(primes, admissible, bound, diagnostics)
        chi = None
        if ok:
            samples = [(q, jets.count_points_Xn1(f, n, q, work_bound, threads)) for q in primes]
            _, chi = _interpolated_chi(samples, bound, diagnostics)
    verdict = "pass" if chi is not None and chi == rhs else "fail"
    return VerificationReport("MT", _germ(f, names), {"n": n, "primes": primes}, [chi], [rhs],
                              verdict, clock.ms, diagnostics)


def verify_PT_counts(f, n, q_list, res=None, names=None,
                     work_bound=jets.DEFAULT_WORK_BOUND, threads=1):
    """Per-prime equality of jet counts with the resolution formula at L = q."""
    with _Timer() as clock:
        res = res or resolve(f)
        lhs, rhs, diagnostics = [], [], []
        for q in q_list:
            try:
                predicted = formulas.count_Xn1_formula(res, n, q)
            except ArcMilnorError as exc:
                diagnostics.append(f"q = {q}: {exc}")
                predicted = None
            lhs.append(jets.count_points_Xn1(f, n, q, work_bound, threads))
            rhs.append(predicted)
    verdict = "pass" if lhs and all(a == b for a, b in zip(lhs, rhs)) else "fail"
    return VerificationReport("PT", _germ(f, names), {"n": n, "q": list(q_list)}, lhs, rhs,
                              verdict, clock.ms, diagnostics)


def verify_sec(f, n, d, primes=None, res=None, names=None, prime_limit=61,
               work_bound=jets.DEFAULT_WORK_BOUND, threads=1):
    """chi of the fixed locus of T_n^d against Lambda(M^gcd(n, d)).

    The fixed locus is isomorphic to X_{g,1} with g = gcd(n, d), so its
    degree bound is that of level g.
    """
    with _Timer() as clock:
        res = res or resolve(f)
        g = math.gcd(n, d)
        bound = jets.degree_bound(res, g)
        admissible = formulas.admissible_primes(res, g, limit=max([prime_limit, *(primes or [])]), modulus=n)
        if primes is None:
            primes = admissible[: bound + 1]
        primes = sorted(primes)
        diagnostics = [f"degree bound {bound}", f"primes {primes}"]
        rhs = formulas.lefschetz_Tn(res, n, d)
        ok = _check_primes(primes, admissible, bound, diagnostics)
        chi = None
        if ok:
            samples = [(q, jets.count_fixed_locus(f, n, d, q, work_bound, threads)) for q in primes]
            _, chi = _interpolated_chi(samples, bound, diagnostics)
    verdict = "pass" if chi is not None and chi == rhs else "fail"
    return VerificationReport("SEC", _germ(f, names), {"n": n, "d": d, "primes": primes}, [chi], [rhs],
                              verdict, clock.ms, diagnostics)


def mt_from_pt(pt_report, res, n):
    """Interpolate the jet counts of a PT report; if the report passed on at
    least degree_bound + 1 admissible primes, chi must equal Lambda(M^n)."""
    bound = jets.degree_bound(res, n)
    qs = pt_report.params["q"]
    admissible = set(formulas.admissible_primes(res, n, limit=max(qs)))
    samples = [(q, c) for q, c in zip(qs, pt_report.lhs) if q in admissible]
    if not pt_report.passed or len(samples) < bound + 1:
        return None
    _, chi = jets.interpolate_euler(jets.CountTable({}, samples, bound))
    if chi != formulas.lefschetz_acampo(res, n):
        raise AssertionError("PT passed on enough primes but MT fails")
    return chi


# ------------------------------------------------------ normal crossings

def _check_nc(N_list, k_list, m, n):
    if len(N_list) != len(k_list) or not N_list or len(N_list) > m:
        raise ValueError("need 1 <= len(N) = len(k) <= m")
    if any(k < 1 for k in k_list) or any(N < 1 for N in N_list):
        raise ValueError("N_i and k_i must be >= 1")
    if sum(k * N for k, N in zip(k_list, N_list)) != n:
        raise ValueError("sum k_i N_i must equal n")


def oracle_normal_crossings(N_list, k_list, m, n, q):
    """Closed-form count of jets on A^m with ord y_i = k_i and the t^n-coefficient
    of prod y_i^N_i equal to 1 (jets based anywhere on the stratum)."""
    _check_nc(N_list, k_list, m, n)
    s = len(N_list)
    torus = (q - 1) ** (s - 1) * math.gcd(*N_list, q - 1)
    return torus * q ** (m * n - sum(k_list)) * q ** (m - s)


def enumerate_normal_crossings(N_list, k_list, m, n, q):
    """Direct enumeration of the locus counted by `oracle_normal_crossings`.

    Every coefficient vector of every variable is visited; vectors are
    tallied by their truncated power y_i^N_i before the product is formed.
    """
    _check_nc(N_list, k_list, m, n)
    s = len(N_list)
    ring = PrimeField(q)
    tallies = []
    for N, k in zip(N_list, k_list):
        power = MultiPoly(1, {(N,): 1})
        tally = Counter()
        # coefficient vectors of order exactly k: c_0..c_{k-1} = 0, c_k != 0
        for lead in range(1, q):
            for rest in product(range(q), repeat=n - k):
                row = (0,) * k + (lead,) + rest
                tally[jet_compose(power, Jet(ring, n, (row,))).coeffs] += 1
        tallies.append(list(tally.items()))
    hits = 0
    for combo in product(*tallies):
        val = [1] + [0] * n
        weight = 1
        for series, count in combo:
            val = [sum(val[i] * series[j - i] for i in range(j + 1)) % q for j in range(n + 1)]
            weight *= count
        if all(c == 0 for c in val[:n]) and val[n] == 1:
            hits += weight
    return hits * q ** ((n + 1) * (m - s))


def verify_triv(N_list, k_list, m, n, q):
    with _Timer() as clock:
        lhs = enumerate_normal_crossings(N_list, k_list, m, n, q)
        rhs = oracle_normal_crossings(N_list, k_list, m, n, q)
    germ = "*".join(f"y{i + 1}^{N}" for i, N in enumerate(N_list))
    return VerificationReport("TRIV", germ, {"N": list(N_list), "k": list(k_list), "m": m, "n": n, "q": q},
                              [lhs], [rhs], "pass" if lhs == rhs else "fail", clock.ms)


# ---------------------------------------------------------------- batches

_RUNNERS = {"MT": verify_MT, "PT": verify_PT_counts, "SEC": verify_sec, "TRIV": verify_triv}


def run_batch(jobs):
    """Run (theorem, kwargs) jobs; exceptions become failing reports."""
    reports = []
    for theorem, kwargs in jobs:
        try:
            reports.append(_RUNNERS[theorem](**kwargs))
        except ArcMilnorError as exc:
            f = kwargs.get("f")
            germ = _germ(f) if isinstance(f, MultiPoly) else str(f)
            params = {k: v for k, v in kwargs.items() if k not in ("f", "res")}
            reports.append(VerificationReport(theorem, germ, params, [], [], "fail", 0,
                                              [f"{type(exc).__name__}: {exc}"]))
    return reports
