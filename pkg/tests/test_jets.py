from __future__ import annotations

import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from arcmilnor import _kernel_py, jets
from arcmilnor.errors import BadPrime, InterpolationError, NotVanishingAtOrigin, WorkBoundExceeded
from arcmilnor.jets import CountTable, brute_force_count, count_fixed_locus, count_points_Xn1, enumerate_count
from arcmilnor.poly import MultiPoly
from conftest import CORPUS, P


def test_count_examples(cusp):
    assert {count_points_Xn1(P("x", "x"), n, q) for n in (1, 3, 5) for q in (2, 3, 7)} == {1}
    assert count_points_Xn1(cusp, 2, 7) == 686
    assert count_points_Xn1(P("x*y"), 1, 5) == 0


def test_fixed_locus_examples(cusp):
    assert count_fixed_locus(cusp, 2, 1, 7) == 0
    assert count_fixed_locus(cusp, 6, 2, 7) == 686
    assert count_fixed_locus(cusp, 6, 6, 7) == count_points_Xn1(cusp, 6, 7)
    with pytest.raises(BadPrime):
        count_fixed_locus(cusp, 6, 2, 11)


def test_preconditions(cusp):
    with pytest.raises(NotVanishingAtOrigin):
        count_points_Xn1(P("x+1"), 2, 5)
    with pytest.raises(BadPrime):
        count_points_Xn1(cusp, 2, 6)
    with pytest.raises(BadPrime):
        count_points_Xn1(P("x/5+y^2"), 2, 5)
    with pytest.raises(WorkBoundExceeded):
        count_points_Xn1(cusp, 6, 7, work_bound=100)


def test_threads_agree(cusp):
    assert enumerate_count(cusp, 5, 7, threads=3) == enumerate_count(cusp, 5, 7)
    allowed = jets.fixed_support(6, 3)
    assert enumerate_count(cusp, 6, 7, allowed, threads=2) == enumerate_count(cusp, 6, 7, allowed)


# --------------------------------------------------------- interpolation

def test_interpolate_examples():
    assert jets.interpolate_euler(CountTable({}, [(3, 54), (5, 250), (7, 686), (11, 2662)], 3)) == ([0, 0, 0, 2], 2)
    assert jets.interpolate_euler(CountTable({}, [(3, 1), (5, 1)], 0)) == ([1], 1)
    table = CountTable({}, [(3, 18), (5, 100), (7, 294), (11, 1210)], 3)
    assert jets.interpolate_euler(table) == ([0, 0, -1, 1], 0)


def test_interpolate_errors():
    with pytest.raises(InterpolationError, match="needs"):
        jets.interpolate_euler(CountTable({}, [(3, 1)], 2))
    with pytest.raises(InterpolationError, match="non-integral"):
        jets.interpolate_euler(CountTable({}, [(3, 0), (5, 1)], 1))
    with pytest.raises(InterpolationError, match="predicts"):
        jets.interpolate_euler(CountTable({}, [(3, 1), (5, 1), (7, 2)], 0))
    with pytest.raises(ValueError):
        CountTable({}, [(3, 1), (3, 1)], 0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=5))
def test_interpolation_recovers_integer_polynomials(coeffs):
    primes = [2, 3, 5, 7, 11, 13, 17]
    samples = [(q, sum(c * q ** i for i, c in enumerate(coeffs))) for q in primes[: len(coeffs) + 1]]
    samples = [(q, v) for q, v in samples]
    if any(v < 0 for _, v in samples):
        return
    poly, chi = jets.interpolate_euler(CountTable({}, samples, len(coeffs) - 1))
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    assert poly == coeffs and chi == sum(coeffs)


# ---------------------------------------------------------- invariants

@pytest.mark.parametrize("text,names", CORPUS, ids=[c[0] for c in CORPUS])
def test_pruned_equals_brute_force(text, names):
    f = P(text, names)
    for q in (2, 3):
        for n in (1, 2):
            assert count_points_Xn1(f, n, q) == brute_force_count(f, n, q), (q, n)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_fixed_pruned_equals_brute_force(d):
    f = P("x^2+y^3")
    allowed = jets.fixed_support(4, d)
    assert enumerate_count(f, 4, 3, allowed)[0] == brute_force_count(f, 4, 3, allowed)


@pytest.mark.parametrize("q,a", [(5, 2), (7, 3), (7, 2)])
def test_scaling_permutes_fibers(q, a):
    # phi(t) -> phi(a t) multiplies the t^n-coefficient by a^n.
    f = P("x^2+y^3")
    for n in (2, 3, 4):
        fiber_one = enumerate_count(f, n, q)[0]
        assert enumerate_count(f, n, q, target=pow(a, n, q))[0] == fiber_one


def _linear_change(f, mat):
    x, y = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    return f.compose([x * mat[0] + y * mat[1], x * mat[2] + y * mat[3]])


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["x^2+y^3", "x*y", "x^3+y^3", "y^2-x^4"]),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.sampled_from([5, 7]))
def test_linear_change_invariance(text, mat, q):
    if (mat[0] * mat[3] - mat[1] * mat[2]) % q == 0:
        return
    f = P(text)
    g = _linear_change(f, mat)
    for n in (2, 3):
        assert count_points_Xn1(g, n, q) == count_points_Xn1(f, n, q)


def test_full_support_when_e_is_one(cusp):
    for d in (6, 12):
        assert count_fixed_locus(cusp, 6, d, 7) == count_points_Xn1(cusp, 6, 7)


terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda e: sum(e) >= 1),
    st.integers(1, 6), min_size=1, max_size=3)


@pytest.mark.skipif(jets.BACKEND != "compiled", reason="compiled kernel not built")
@settings(max_examples=60, deadline=None)
@given(terms, st.sampled_from([2, 3, 5]), st.integers(1, 3), st.lists(st.booleans(), min_size=3, max_size=3))
def test_backends_agree(t, p, n, mask):
    from arcmilnor import _kernel

    exps, coeffs = list(t), list(t.values())
    allowed = [True] + mask[:n]
    r = min(sum(e) for e in exps)
    args = (exps, [c % p for c in coeffs], 2, n, p, allowed, r, 0, 0, -1, 1)
    if all(c % p == 0 for c in coeffs):
        return
    assert _kernel.count_jets(*args) == _kernel_py.count_jets(*args)


def test_pure_backend_switch():
    env = dict(os.environ, ARCMILNOR_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from arcmilnor import jets; print(jets.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
