from __future__ import annotations

import json
import math

import pytest

from arcmilnor import resolve
from arcmilnor.verify import (
    enumerate_normal_crossings,
    mt_from_pt,
    oracle_normal_crossings,
    run_batch,
    verify_MT,
    verify_PT_counts,
    verify_sec,
    verify_triv,
)
from conftest import CORPUS, P


def test_mt_examples(cusp):
    r = verify_MT(cusp, 2, [3, 5, 7, 11])
    assert r.passed and r.lhs == [2] and r.rhs == [2]
    assert verify_MT(P("x", "x"), 5, [3]).passed
    r = verify_MT(P("x*y"), 3, [3, 5, 7, 11, 13])
    assert r.passed and r.lhs == [0]
    assert "count(q) = 2*q^4 - 2*q^3" in r.diagnostics


def test_mt_too_few_primes_is_reported(cusp):
    r = verify_MT(P("x*y"), 3, [3, 5])
    assert not r.passed and any("needs 5 primes" in d for d in r.diagnostics)
    r = verify_MT(cusp, 3, [5, 7, 11, 13, 17])
    assert not r.passed and any("inadmissible" in d for d in r.diagnostics)


def test_pt_examples(cusp):
    r = verify_PT_counts(P("x*y"), 2, [5])
    assert r.passed and r.lhs == r.rhs == [100]
    r = verify_PT_counts(P("x^3", "x"), 3, [7])
    assert r.passed and r.lhs == [147]
    assert verify_PT_counts(cusp, 6, [7]).passed


def test_pt_bad_prime_fails(cusp):
    r = verify_PT_counts(cusp, 3, [3])
    assert not r.passed and r.rhs == [None]


def test_sec_examples(cusp):
    r = verify_sec(cusp, 6, 2, [7, 13, 19, 31])
    assert r.passed and r.lhs == [2]
    assert verify_sec(cusp, 2, 1, [3, 5]).passed


def test_report_json(cusp):
    doc = json.loads(verify_MT(cusp, 2).to_json())
    assert set(doc) >= {"theorem", "germ", "params", "lhs", "rhs", "verdict", "ms"}
    assert doc["theorem"] == "MT" and doc["verdict"] == "pass"


def test_nc_examples():
    assert oracle_normal_crossings([1, 1], [1, 1], 2, 2, 5) == 100
    assert oracle_normal_crossings([2], [1], 1, 2, 7) == 14
    assert oracle_normal_crossings([2], [2], 1, 4, 7) == 2 * 7 ** 2
    with pytest.raises(ValueError):
        oracle_normal_crossings([2], [1], 1, 3, 7)


def _nc_cases():
    for m in (1, 2):
        for s in range(1, m + 1):
            for n in range(1, 5):
                for Ns in _tuples(s, n):
                    for ks in _tuples(s, n):
                        if sum(k * N for k, N in zip(ks, Ns)) == n:
                            yield Ns, ks, m, n


def _tuples(s, top):
    if s == 0:
        yield ()
        return
    for a in range(1, top + 1):
        for rest in _tuples(s - 1, top):
            yield (a,) + rest


@pytest.mark.parametrize("q", [3, 5])
def test_nc_oracle_matches_enumeration(q):
    for Ns, ks, m, n in _nc_cases():
        assert enumerate_normal_crossings(Ns, ks, m, n, q) == oracle_normal_crossings(Ns, ks, m, n, q)


def test_triv_report():
    assert verify_triv([1, 1], [1, 1], 2, 2, 5).passed


def test_batch_never_aborts(cusp):
    reports = run_batch([
        ("MT", {"f": cusp, "n": 2}),
        ("MT", {"f": P("x+1"), "n": 2}),
        ("TRIV", {"N_list": [2], "k_list": [1], "m": 1, "n": 2, "q": 7}),
    ])
    assert [r.verdict for r in reports] == ["pass", "fail", "pass"]
    assert "NotVanishingAtOrigin" in reports[1].diagnostics[0]


@pytest.mark.parametrize("text,names", [("x^2+y^3", "xy"), ("x*y", "xy"), ("x^2", "x")])
def test_pt_on_enough_primes_implies_mt(text, names):
    f = P(text, names)
    res = resolve(f)
    for n in (2, 4):
        qs = [q for q in (3, 5, 7, 11, 13, 17, 19) if math.gcd(q, 6) == 1 or q == 3 and names == "x"]
        pt = verify_PT_counts(f, n, qs[:6], res=res)
        assert pt.passed
        assert mt_from_pt(pt, res, n) in (None, verify_MT(f, n, res=res).lhs[0])


@pytest.mark.parametrize("text,names", CORPUS, ids=[c[0] for c in CORPUS])
def test_pt_across_corpus(text, names):
    # Resolution formula at L = q against jet counts, at the smallest good primes.
    from arcmilnor.formulas import admissible_primes

    f = P(text, names)
    res = resolve(f)
    for n in (1, 2, 3):
        qs = [q for q in admissible_primes(res, n, limit=13) if q ** (len(names) * n) <= 2 * 10 ** 6][:2]
        if qs:
            assert verify_PT_counts(f, n, qs, res=res).passed
