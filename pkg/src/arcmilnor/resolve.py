"""Embedded resolution of plane-curve germs by point blowups.

Every infinitely near point is handled in local coordinates (x, y) with the
point at the origin.  The total transform there is written

    f o h = x^a * y^b * g * w

where x = 0 / y = 0 are the exceptional divisors through the point (a, b
their multiplicities, 0 if absent), g is the strict transform and w is a
polynomial that does not vanish at the origin.  Blowing up uses the charts
(x, xy) and (xy, y); the new divisor is parametrised by t = y/x, with the
point t = oo at the origin of the second chart.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import upoly
from .errors import (
    MaxBlowupsExceeded,
    NonRationalCenter,
    NotVanishingAtOrigin,
    ResolutionSchemaError,
)
from .gring import parse_laurent, render_laurent
from .poly import MultiPoly, parse_poly


@dataclass(frozen=True)
class Divisor:
    id: int
    N: int
    nu: int
    chi_open: int
    adjacent: tuple = ()
    strict_contacts: int = 0


@dataclass(frozen=True)
class CurveChart:
    """Unit u restricted to E (affine coordinate t), and its value at t = oo.

    E°(F_q) is {t : u(t) != 0} plus oo when `u_inf` is not None.
    """

    u: tuple
    u_inf: Fraction | None
    map: tuple | None = None


@dataclass(frozen=True)
class PointChart:
    """Points of a zero-dimensional stratum.

    `factor` (a polynomial in the divisor coordinate t) has the points as
    its roots; None means a single rational point.  `u` is the unit at the
    point, needed only when m > 1.
    """

    factor: tuple | None = None
    u: Fraction | None = None


@dataclass(frozen=True)
class Stratum:
    """E_I° for I = `ids`, plus a strict-transform branch of multiplicity
    `branch` when nonzero (that branch has N = branch, nu = 1)."""

    ids: tuple
    chi_open: int
    m: int
    branch: int = 0
    cover_class: object = None
    chart: object = None

    @property
    def size(self):
        return len(self.ids) + (1 if self.branch else 0)


@dataclass(frozen=True)
class ResolutionData:
    ambient_dim: int
    divisors: tuple
    strata: tuple
    germ: str | None = None
    has_charts: bool = False
    _by_id: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {d.id: d for d in self.divisors})

    def divisor(self, i):
        return self._by_id[i]

    def members(self, stratum):
        """(N, nu) for every component of the stratum."""
        out = [(self.divisor(i).N, self.divisor(i).nu) for i in stratum.ids]
        if stratum.branch:
            out.append((stratum.branch, 1))
        return out

    def stratum_dim(self, stratum):
        return self.ambient_dim - stratum.size

    def lcm_N(self):
        out = 1
        for d in self.divisors:
            out = out * d.N // math.gcd(out, d.N)
        return out

    def edges(self):
        return sorted({tuple(sorted((d.id, j))) for d in self.divisors for j in d.adjacent})

    def to_dict(self):
        doc = {
            "ambient_dim": self.ambient_dim,
            "divisors": [
                {
                    "id": d.id,
                    "N": d.N,
                    "nu": d.nu,
                    "chi_open": d.chi_open,
                    "adjacent": list(d.adjacent),
                    "strict_contacts": d.strict_contacts,
                }
                for d in self.divisors
            ],
            "strata": [],
        }
        charts = []
        for k, s in enumerate(self.strata):
            rec = {"ids": list(s.ids), "chi_open": s.chi_open, "m": s.m}
            if s.branch:
                rec["branch"] = s.branch
            if s.cover_class is not None:
                rec["cover_class"] = render_laurent(s.cover_class)
            doc["strata"].append(rec)
            if isinstance(s.chart, CurveChart):
                c = {
                    "stratum": k,
                    "kind": "curve",
                    "u": upoly.to_string(s.chart.u),
                    "u_inf": None if s.chart.u_inf is None else str(s.chart.u_inf),
                }
                if s.chart.map is not None:
                    c["map"] = [p.to_string(["x", "y"]) for p in s.chart.map]
                charts.append(c)
            elif isinstance(s.chart, PointChart):
                charts.append(
                    {
                        "stratum": k,
                        "kind": "points",
                        "factor": None if s.chart.factor is None else upoly.to_string(s.chart.factor),
                        "u": None if s.chart.u is None else str(s.chart.u),
                    }
                )
        if self.has_charts:
            doc["charts"] = charts
        if self.germ is not None:
            doc["germ"] = self.germ
        return doc

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)


# ---------------------------------------------------------------- resolution

@dataclass
class _Point:
    g: MultiPoly
    gr: MultiPoly
    w: MultiPoly
    divs: list  # (divisor id, axis); axis 0 is {x = 0}, axis 1 is {y = 0}
    X: MultiPoly
    Y: MultiPoly


_X = MultiPoly.var(2, 0)
_Y = MultiPoly.var(2, 1)


def _multiplicity_in(factor, poly):
    k = 0
    while True:
        q, r = upoly.divmod_(poly, factor)
        if r:
            return k
        poly, k = q, k + 1


def squarefree_part(f):
    """Reduced equation of f = 0 (up to a constant)."""
    if f.nvars == 1:
        return MultiPoly.from_univariate(upoly.radical(f.univariate(0)))
    if f.nvars != 2:
        raise ValueError("squarefree_part supports one or two variables")
    d = f.degree()
    t = MultiPoly.var(1, 0)
    for a, b in ((2, 3), (5, -7), (-11, 13), (17, 19), (23, -29)):
        line = f.compose([t, t * a + b]).univariate(0)
        if upoly.deg(line) == d and upoly.deg(upoly.gcd(line, upoly.derivative(line))) == 0:
            return f
    import sympy

    x, y = sympy.symbols("x y")
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * x ** e[0] * y ** e[1] for e, c in f.terms.items()
    )
    red = sympy.Poly(expr, x, y, domain="QQ").sqf_part()
    return MultiPoly(2, {e: Fraction(int(c.p), int(c.q)) for e, c in red.terms()})


class _Resolver:
    def __init__(self, max_blowups):
        self.max_blowups = max_blowups
        self.N = {}
        self.nu = {}
        self.edges = set()
        self.curve_charts = {}
        self.pairs = []  # (ids, u)
        self.contacts = []  # (divisor id, branch, chi, factor, u)

    def blowup(self, P):
        if len(self.N) >= self.max_blowups:
            raise MaxBlowupsExceeded(f"more than {self.max_blowups} blowups needed")
        r, rr = P.g.order(), P.gr.order()
        e = len(self.N) + 1
        old = dict((axis, d) for d, axis in P.divs)
        self.N[e] = r + sum(self.N[d] for d, _ in P.divs)
        self.nu[e] = 2 + sum(self.nu[d] - 1 for d, _ in P.divs)
        ids = [d for d, _ in P.divs]
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                self.edges.discard(tuple(sorted((ids[i], ids[j]))))
        for d in ids:
            self.edges.add(tuple(sorted((e, d))))
        Nx = self.N[old[0]] if 0 in old else 0
        Ny = self.N[old[1]] if 1 in old else 0
        w0 = P.w.constant_term()

        sub1 = [_X, _X * _Y]
        g1 = P.g.compose(sub1).divide_by_var_power(0, r)
        gr1 = P.gr.compose(sub1).divide_by_var_power(0, rr)
        w1 = P.w.compose(sub1)
        map1 = (P.X.compose(sub1), P.Y.compose(sub1))
        sub2 = [_X * _Y, _Y]
        g2 = P.g.compose(sub2).divide_by_var_power(1, r)
        gr2 = P.gr.compose(sub2).divide_by_var_power(1, rr)
        w2 = P.w.compose(sub2)
        map2 = (P.X.compose(sub2), P.Y.compose(sub2))

        g1E = upoly.trim(g1.restrict(0, 0).univariate(1))
        u_aff = upoly.scale(upoly.mul([Fraction(0)] * Ny + [Fraction(1)], g1E), w0)
        inf_open = 0 not in old and g2.constant_term() != 0
        u_inf = g2.constant_term() * w0 if inf_open else None
        self.curve_charts[e] = CurveChart(tuple(u_aff), u_inf, map1)

        grE = upoly.trim(gr1.restrict(0, 0).univariate(1))
        roots = upoly.rational_roots(grE)
        rest = upoly.remove_linear_factors(grE, roots)
        if upoly.deg(rest) > 0:
            for factor, k in upoly.squarefree_decomposition(rest):
                if k > 1:
                    raise NonRationalCenter(
                        f"strict transform is singular or tangent at the non-rational points "
                        f"{upoly.to_string(factor)} = 0 of E{e}"
                    )
                branch = _multiplicity_in(factor, g1E)
                self.contacts.append((e, branch, upoly.deg(factor), tuple(factor), None))

        special = set(roots)
        if 1 in old:
            special.add(Fraction(0))
        for t0 in sorted(special):
            if t0 == 0:
                divs = [(e, 0)] + ([(old[1], 1)] if 1 in old else [])
                Q = _Point(g1, gr1, w1, divs, *map1)
            else:
                shift = [_X, _Y + t0]
                w = w1.compose(shift) * (_Y + t0) ** Ny
                Q = _Point(g1.compose(shift), gr1.compose(shift), w, [(e, 0)],
                           map1[0].compose(shift), map1[1].compose(shift))
            self.visit(Q, roots.get(t0, 0), t0)

        k_inf = _low_order(gr2.restrict(1, 0).univariate(0))
        if k_inf > 0 or 0 in old:
            divs = [(e, 1)] + ([(old[0], 0)] if 0 in old else [])
            self.visit(_Point(g2, gr2, w2, divs, *map2), k_inf, None)

    def visit(self, P, k, t0):
        if P.gr.constant_term() != 0:
            if len(P.divs) == 2:
                ids = tuple(sorted(d for d, _ in P.divs))
                self.pairs.append((ids, P.g.constant_term() * P.w.constant_term()))
            return
        if len(P.divs) >= 2 or k > 1:
            self.blowup(P)
            return
        (d, axis), = P.divs
        along = 1 - axis
        gE = upoly.trim(P.g.restrict(axis, 0).univariate(along))
        grE = upoly.trim(P.gr.restrict(axis, 0).univariate(along))
        branch = next(i for i, c in enumerate(gE) if c)
        u = P.w.constant_term() * gE[branch] / grE[1] ** branch
        factor = None if t0 is None else (-t0, Fraction(1))
        self.contacts.append((d, branch, 1, factor, u))


def _low_order(coeffs):
    for j, c in enumerate(coeffs):
        if c:
            return j
    return 0


def resolve_plane_curve(f, max_blowups=64, germ=None):
    """Embedded resolution of f(x, y) = 0 at the origin."""
    if f.nvars != 2:
        raise ValueError("resolve_plane_curve needs a polynomial in 2 variables")
    if f.degree() < 1:
        raise NotVanishingAtOrigin("f is constant")
    if f.constant_term() != 0:
        raise NotVanishingAtOrigin("f does not vanish at the origin")
    fr = squarefree_part(f)
    R = _Resolver(max_blowups)
    R.blowup(_Point(f, fr, MultiPoly.constant(2, 1), [], _X, _Y))

    contacts_of = {}
    for d, branch, chi, _, _ in R.contacts:
        contacts_of[d] = contacts_of.get(d, 0) + chi
    adj = {e: [] for e in R.N}
    for a, b in sorted(R.edges):
        adj[a].append(b)
        adj[b].append(a)
    divisors = tuple(
        Divisor(e, R.N[e], R.nu[e], 2 - len(adj[e]) - contacts_of.get(e, 0),
                tuple(sorted(adj[e])), contacts_of.get(e, 0))
        for e in sorted(R.N)
    )
    strata = [Stratum((d.id,), d.chi_open, d.N, chart=R.curve_charts[d.id]) for d in divisors]
    if sorted(ids for ids, _ in R.pairs) != sorted(R.edges):
        raise AssertionError("intersection points do not match the dual graph")
    for ids, u in sorted(R.pairs):
        m = math.gcd(R.N[ids[0]], R.N[ids[1]])
        strata.append(Stratum(ids, 1, m, chart=PointChart(None, u)))
    for d, branch, chi, factor, u in R.contacts:
        strata.append(
            Stratum((d,), chi, math.gcd(R.N[d], branch), branch=branch, chart=PointChart(factor, u))
        )
    return ResolutionData(2, divisors, tuple(strata), germ=germ, has_charts=True)


def resolve_point_germ(f, germ=None):
    """One-variable germ: the divisor is the origin itself."""
    if f.degree() < 1 or f.constant_term() != 0:
        raise NotVanishingAtOrigin("f does not vanish at the origin")
    N = f.order()
    u0 = f.terms[(N,)]
    div = Divisor(1, N, 1, 1, (), 0)
    stratum = Stratum((1,), 1, N, chart=PointChart(None, u0))
    return ResolutionData(1, (div,), (stratum,), germ=germ, has_charts=True)


def resolve(f, max_blowups=64, germ=None):
    if f.nvars == 1:
        return resolve_point_germ(f, germ=germ)
    if f.nvars == 2:
        return resolve_plane_curve(f, max_blowups=max_blowups, germ=germ)
    raise ValueError("resolutions are computed only for 1 or 2 variables; supply JSON otherwise")


def blowup_free_point(res, divisor_id):
    """Blow up a point of E_i° that lies on no other component.

    Purely combinatorial; the result carries no charts.
    """
    if res.ambient_dim != 2:
        raise ValueError("only for surfaces")
    old = res.divisor(divisor_id)
    new_id = max(d.id for d in res.divisors) + 1
    divisors = []
    for d in res.divisors:
        if d.id == divisor_id:
            d = replace(d, chi_open=d.chi_open - 1, adjacent=tuple(sorted(d.adjacent + (new_id,))))
        divisors.append(d)
    divisors.append(Divisor(new_id, old.N, old.nu + 1, 1, (divisor_id,), 0))
    strata = []
    for s in res.strata:
        s = replace(s, chart=None)
        if s.ids == (divisor_id,) and not s.branch:
            s = replace(s, chi_open=s.chi_open - 1, cover_class=None)
        strata.append(s)
    strata.append(Stratum((new_id,), 1, old.N))
    strata.append(Stratum(tuple(sorted((divisor_id, new_id))), 1, old.N))
    return ResolutionData(2, tuple(divisors), tuple(strata), germ=res.germ, has_charts=False)


def check_chart_orders(res, f):
    """Recompute N and nu from each divisor's chart map; return mismatches."""
    problems = []
    for s in res.strata:
        if not isinstance(s.chart, CurveChart) or s.chart.map is None or len(s.ids) != 1 or s.branch:
            continue
        X, Y = s.chart.map
        d = res.divisor(s.ids[0])
        N = f.compose([X, Y]).order_in(0)
        jac = X.derivative(0) * Y.derivative(1) - X.derivative(1) * Y.derivative(0)
        nu = jac.order_in(0) + 1
        if (N, nu) != (d.N, d.nu):
            problems.append((d.id, (N, nu), (d.N, d.nu)))
    return problems


# -------------------------------------------------------------------- JSON

def _req(obj, key, kind, path):
    if not isinstance(obj, dict) or key not in obj:
        raise ResolutionSchemaError(f"missing key {key!r}", path)
    val = obj[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise ResolutionSchemaError(f"{key!r} must be an integer", f"{path}.{key}")
    if kind is str and not isinstance(val, str):
        raise ResolutionSchemaError(f"{key!r} must be a string", f"{path}.{key}")
    if kind is list and not isinstance(val, list):
        raise ResolutionSchemaError(f"{key!r} must be a list", f"{path}.{key}")
    return val


def _frac_or_none(val, path):
    if val is None:
        return None
    try:
        return Fraction(str(val))
    except (ValueError, ZeroDivisionError):
        raise ResolutionSchemaError(f"bad rational {val!r}", path) from None


def load_resolution(data):
    """Parse and validate a resolution document (bytes, str or dict)."""
    if isinstance(data, (bytes, str)):
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ResolutionSchemaError(f"invalid JSON: {exc}") from None
    else:
        doc = data
    if not isinstance(doc, dict):
        raise ResolutionSchemaError("top level must be an object")
    dim = _req(doc, "ambient_dim", int, "$")
    if dim < 1:
        raise ResolutionSchemaError("must be >= 1", "$.ambient_dim")
    raw_divs = _req(doc, "divisors", list, "$")
    if not raw_divs:
        raise ResolutionSchemaError("at least one divisor required", "$.divisors")
    divisors = []
    for k, rd in enumerate(raw_divs):
        p = f"$.divisors[{k}]"
        adj = _req(rd, "adjacent", list, p)
        if not all(isinstance(a, int) for a in adj):
            raise ResolutionSchemaError("adjacency ids must be integers", f"{p}.adjacent")
        d = Divisor(
            _req(rd, "id", int, p),
            _req(rd, "N", int, p),
            _req(rd, "nu", int, p),
            _req(rd, "chi_open", int, p),
            tuple(sorted(adj)),
            rd.get("strict_contacts", 0),
        )
        if d.N < 1 or d.nu < 1:
            raise ResolutionSchemaError("N and nu must be positive", p)
        if not isinstance(d.strict_contacts, int) or d.strict_contacts < 0:
            raise ResolutionSchemaError("must be a nonnegative integer", f"{p}.strict_contacts")
        if dim == 2 and d.chi_open != 2 - len(d.adjacent) - d.strict_contacts:
            raise ResolutionSchemaError(
                "chi_open != 2 - #adjacent - strict_contacts for a rational curve", f"{p}.chi_open"
            )
        divisors.append(d)
    by_id = {d.id: d for d in divisors}
    if len(by_id) != len(divisors):
        raise ResolutionSchemaError("duplicate divisor ids", "$.divisors")
    for k, d in enumerate(divisors):
        for a in d.adjacent:
            if a not in by_id or d.id not in by_id[a].adjacent or a == d.id:
                raise ResolutionSchemaError(f"adjacency with {a} is not symmetric", f"$.divisors[{k}].adjacent")
    seen, stack = set(), [divisors[0].id]
    while stack:
        i = stack.pop()
        if i not in seen:
            seen.add(i)
            stack.extend(by_id[i].adjacent)
    if len(seen) != len(divisors):
        raise ResolutionSchemaError("dual graph is not connected", "$.divisors")

    strata = []
    for k, rs in enumerate(_req(doc, "strata", list, "$")):
        p = f"$.strata[{k}]"
        ids = _req(rs, "ids", list, p)
        if not ids or any(i not in by_id for i in ids) or len(set(ids)) != len(ids):
            raise ResolutionSchemaError("ids must be a nonempty set of divisor ids", f"{p}.ids")
        branch = rs.get("branch", 0)
        if not isinstance(branch, int) or branch < 0:
            raise ResolutionSchemaError("branch must be a nonnegative integer", f"{p}.branch")
        m = _req(rs, "m", int, p)
        expect = 0
        for i in ids:
            expect = math.gcd(expect, by_id[i].N)
        expect = math.gcd(expect, branch)
        if m != expect:
            raise ResolutionSchemaError(f"m_I mismatch: got {m}, gcd is {expect}", f"{p}.m")
        cover = rs.get("cover_class")
        if cover is not None:
            cover = parse_laurent(cover)
        strata.append(Stratum(tuple(sorted(ids)), _req(rs, "chi_open", int, p), m, branch, cover))

    have = {(s.ids, s.branch) for s in strata}
    for d in divisors:
        if ((d.id,), 0) not in have:
            strata.append(Stratum((d.id,), d.chi_open, d.N))
    if dim == 2:
        for a, b in sorted({tuple(sorted((d.id, j))) for d in divisors for j in d.adjacent}):
            if ((a, b), 0) not in have:
                strata.append(Stratum((a, b), 1, math.gcd(by_id[a].N, by_id[b].N)))
        for d in divisors:
            listed = sum(s.chi_open for s in strata if s.ids == (d.id,) and s.branch)
            if listed > d.strict_contacts:
                raise ResolutionSchemaError(f"branch strata of divisor {d.id} exceed strict_contacts", "$.strata")
            if listed < d.strict_contacts:
                strata.append(Stratum((d.id,), d.strict_contacts - listed, 1, branch=1))
    for s in strata:
        if s.ids == (s.ids[0],) and not s.branch and s.chi_open != by_id[s.ids[0]].chi_open:
            raise ResolutionSchemaError(f"chi_open of stratum {list(s.ids)} disagrees with its divisor", "$.strata")

    raw_charts = doc.get("charts")
    has_charts = raw_charts is not None
    if has_charts:
        if not isinstance(raw_charts, list):
            raise ResolutionSchemaError("must be a list", "$.charts")
        strata = list(strata)
        for k, rc in enumerate(raw_charts):
            p = f"$.charts[{k}]"
            idx = _req(rc, "stratum", int, p)
            if not 0 <= idx < len(strata):
                raise ResolutionSchemaError("stratum index out of range", f"{p}.stratum")
            kind = rc.get("kind")
            try:
                if kind == "curve":
                    mp = rc.get("map")
                    chart = CurveChart(
                        tuple(upoly.from_string(_req(rc, "u", str, p))),
                        _frac_or_none(rc.get("u_inf"), f"{p}.u_inf"),
                        None if mp is None else tuple(parse_poly(s, ["x", "y"]) for s in mp),
                    )
                elif kind == "points":
                    fac = rc.get("factor")
                    chart = PointChart(
                        None if fac is None else tuple(upoly.from_string(fac)),
                        _frac_or_none(rc.get("u"), f"{p}.u"),
                    )
                else:
                    raise ResolutionSchemaError("kind must be 'curve' or 'points'", f"{p}.kind")
            except ValueError as exc:
                if isinstance(exc, ResolutionSchemaError):
                    raise
                raise ResolutionSchemaError(str(exc), p) from None
            strata[idx] = replace(strata[idx], chart=chart)
    return ResolutionData(dim, tuple(divisors), tuple(strata), germ=doc.get("germ"), has_charts=has_charts)
