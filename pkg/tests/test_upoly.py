from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from arcmilnor import upoly

F = Fraction


def test_rational_roots_and_multiplicities():
    # (t - 1)^2 (t + 1/2) t^3 (t^2 + 1)
    a = upoly.mul(upoly.mul([F(-1), F(1)], [F(-1), F(1)]), [F(1, 2), F(1)])
    a = upoly.mul(a, [F(0), F(0), F(0), F(1)])
    a = upoly.mul(a, [F(1), F(0), F(1)])
    assert upoly.rational_roots(a) == {F(0): 3, F(1): 2, F(-1, 2): 1}


def test_squarefree_decomposition():
    a = upoly.mul(upoly.mul([F(-1), F(1)], [F(-1), F(1)]), [F(2), F(1)])
    assert upoly.squarefree_decomposition(a) == [([F(2), F(1)], 1), ([F(-1), F(1)], 2)]
    assert upoly.radical(a) == upoly.monic(upoly.mul([F(-1), F(1)], [F(2), F(1)]))


def test_discriminant_and_roots_mod_p():
    t2p1 = [F(1), F(0), F(1)]
    assert upoly.discriminant(t2p1) == -4
    assert upoly.count_roots_mod(t2p1, 5) == 2
    assert upoly.count_roots_mod(t2p1, 7) == 0


def test_string_roundtrip():
    a = [F(1, 2), F(0), F(-3)]
    assert upoly.from_string(upoly.to_string(a)) == a


polys = st.lists(st.integers(-6, 6), min_size=1, max_size=5).map(lambda c: [F(x) for x in c])


@settings(max_examples=80, deadline=None)
@given(polys, polys.filter(lambda b: upoly.trim(b)))
def test_division_identity(a, b):
    q, r = upoly.divmod_(a, b)
    assert upoly.add(upoly.mul(q, b), r) == upoly.trim(a)
    assert upoly.deg(r) < upoly.deg(b)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = upoly.gcd(a, b)
    if g:
        assert not upoly.divmod_(a, g)[1] and not upoly.divmod_(b, g)[1]
