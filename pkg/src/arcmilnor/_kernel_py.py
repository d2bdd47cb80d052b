"""Pure-Python pruned DFS over jet coefficient levels.

Same algorithm as the compiled ``_kernel`` module; used when it is not built.

Inputs: ``exps`` lists the exponent tuples of f and ``coeffs`` their values
mod p. ``allowed[l]`` says whether level l may be nonzero. ``r`` is ord_0 f,
and the coefficient of t^j in f(phi) depends only on levels <= j - r + 1.
"""

from __future__ import annotations

from .errors import WorkBoundExceeded


def count_jets(exps, coeffs, m, n, p, allowed, r, work_bound=0, lo=0, hi=-1, target=1):
    """Count level assignments in (F_p^m)^{1..n} satisfying the contact conditions.

    Coefficients 0..n-1 of f(phi) must vanish and coefficient n must equal
    ``target``. Only the first enumerated level is restricted to tuple indices
    in [lo, hi). Returns (count, nodes); raises WorkBoundExceeded past ``work_bound`` nodes.
    """
    if r > n:
        return 0, 0
    target %= p
    last = n - r + 1
    maxdeg = [max(e[v] for e in exps) for v in range(m)]
    phi = [[0] * (n + 1) for _ in range(m)]
    pw = [[[0] * (n + 1) for _ in range(maxdeg[v] + 1)] for v in range(m)]
    for v in range(m):
        pw[v][0][0] = 1
    terms = list(zip(exps, coeffs))
    free = sum(1 for l in range(last + 1, n + 1) if allowed[l])
    mult = p ** (m * free)
    first = next((l for l in range(1, last + 1) if allowed[l]), 0)
    size = p ** m
    if hi < 0:
        hi = size
    nodes = 0

    def update(v, l):
        ph = phi[v]
        rows = pw[v]
        for e in range(1, maxdeg[v] + 1):
            prev, row = rows[e - 1], rows[e]
            for k in range(l, n + 1):
                s = 0
                for i in range(1, k - e + 2):
                    if ph[i]:
                        s += ph[i] * prev[k - i]
                row[k] = s % p

    def coeff_at(j):
        total = 0
        for e, c in terms:
            cur = pw[0][e[0]][: j + 1]
            for v in range(1, m):
                other = pw[v][e[v]]
                cur = [sum(cur[i] * other[k - i] for i in range(k + 1)) % p for k in range(j + 1)]
            total += c * cur[j]
        return total % p

    def ok(j):
        return coeff_at(j) == (target if j == n else 0)

    def dfs(l):
        nonlocal nodes
        if l > last:
            return mult
        if not allowed[l]:
            return dfs(l + 1) if ok(l + r - 1) else 0
        total = 0
        for idx in range(lo, hi) if l == first else range(size):
            nodes += 1
            if work_bound and nodes > work_bound:
                raise WorkBoundExceeded(f"work bound {work_bound} exceeded", nodes)
            for v in range(m):
                idx, digit = divmod(idx, p)
                if phi[v][l] != digit:
                    phi[v][l] = digit
                    update(v, l)
            if ok(l + r - 1):
                total += dfs(l + 1)
        for v in range(m):
            if phi[v][l]:
                phi[v][l] = 0
                update(v, l)
        return total

    return dfs(1), nodes
