from __future__ import annotations

import json

import pytest

from arcmilnor import load_resolution, resolve
from arcmilnor.errors import MaxBlowupsExceeded, NonRationalCenter, NotVanishingAtOrigin, ResolutionSchemaError
from arcmilnor.resolve import CurveChart, blowup_free_point, check_chart_orders
from conftest import CORPUS, P


def table(res):
    return [(d.N, d.nu, d.chi_open) for d in res.divisors]


def test_cusp_resolution(cusp_res):
    assert table(cusp_res) == [(2, 2, 1), (3, 3, 1), (6, 5, -1)]
    assert cusp_res.edges() == [(1, 3), (2, 3)]
    assert [d.strict_contacts for d in cusp_res.divisors] == [0, 0, 1]
    pairs = {s.ids: s.m for s in cusp_res.strata if len(s.ids) == 2}
    assert pairs == {(1, 3): 2, (2, 3): 3}


def test_node_and_three_lines():
    res = resolve(P("x*y"))
    assert table(res) == [(2, 2, 0)] and res.divisors[0].strict_contacts == 2
    res = resolve(P("x^3+y^3"))
    assert table(res) == [(3, 2, -1)]
    contacts = [s for s in res.strata if s.branch]
    assert sorted(s.chi_open for s in contacts) == [1, 2]  # one rational point, one conjugate pair


def test_smooth_germs():
    res = resolve(P("x"))
    assert table(res) == [(1, 2, 1)]
    res = resolve(P("x", "x"))
    assert table(res) == [(1, 1, 1)] and res.ambient_dim == 1
    assert table(resolve(P("x^2+y^3+x"))) == [(1, 2, 1)]


def test_higher_cusp():
    res = resolve(P("x^5+y^7"))
    assert sorted(d.N for d in res.divisors) == [5, 7, 14, 20, 35]


@pytest.mark.parametrize("text,names", [c for c in CORPUS if c[1] == "xy"])
def test_chart_maps_reproduce_N_and_nu(text, names):
    f = P(text, names)
    assert check_chart_orders(resolve(f), f) == []


@pytest.mark.parametrize("text,names", [c for c in CORPUS if c[1] == "xy"])
def test_euler_count_of_blowups(text, names):
    # Each blowup adds one P^1; chi of the exceptional configuration is 1 + #blowups.
    res = resolve(P(text, names))
    contacts = sum(d.strict_contacts for d in res.divisors)
    assert sum(d.chi_open for d in res.divisors) + len(res.edges()) + contacts == 1 + len(res.divisors)


@pytest.mark.parametrize("text,names", CORPUS)
def test_json_roundtrip(text, names):
    res = resolve(P(text, names), germ=text)
    again = load_resolution(res.to_json())
    assert again == res
    assert load_resolution(again.to_json().encode()) == res


def test_errors():
    with pytest.raises(NotVanishingAtOrigin):
        resolve(P("x+1"))
    with pytest.raises(NonRationalCenter):
        resolve(P("(y^2-2*x^2)^2+x^5"))
    with pytest.raises(MaxBlowupsExceeded):
        resolve(P("x^5+y^7"), max_blowups=3)


def _cusp_doc(cusp_res):
    doc = cusp_res.to_dict()
    doc.pop("charts", None)
    return doc


def test_m_mismatch_rejected(cusp_res):
    doc = _cusp_doc(cusp_res)
    for s in doc["strata"]:
        if s["ids"] == [1, 3]:
            s["m"] = 4
    with pytest.raises(ResolutionSchemaError, match="m_I mismatch") as exc:
        load_resolution(json.dumps(doc))
    assert exc.value.path.startswith("$.strata[")


def test_schema_errors(cusp_res):
    doc = _cusp_doc(cusp_res)
    del doc["divisors"][0]["nu"]
    with pytest.raises(ResolutionSchemaError, match="nu"):
        load_resolution(doc)
    with pytest.raises(ResolutionSchemaError):
        load_resolution(b"{not json")
    doc = _cusp_doc(cusp_res)
    doc["divisors"][0]["adjacent"] = [2]
    with pytest.raises(ResolutionSchemaError):
        load_resolution(doc)


def test_minimal_documents():
    smooth = {"ambient_dim": 2, "divisors": [
        {"id": 1, "N": 1, "nu": 2, "chi_open": 1, "adjacent": [], "strict_contacts": 1}], "strata": []}
    res = load_resolution(json.dumps(smooth))
    assert table(res) == [(1, 2, 1)]
    assert {(s.ids, s.branch) for s in res.strata} == {((1,), 0), ((1,), 1)}


def test_blowup_free_point(cusp_res):
    big = blowup_free_point(cusp_res, 3)
    assert table(big) == [(2, 2, 1), (3, 3, 1), (6, 5, -2), (6, 6, 1)]
    assert (3, 4) in big.edges()
    assert not big.has_charts
    assert load_resolution(big.to_json()) == big


def test_charts_present(cusp_res):
    e3 = next(s for s in cusp_res.strata if s.ids == (3,) and not s.branch)
    assert isinstance(e3.chart, CurveChart)
