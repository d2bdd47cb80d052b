# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pruned DFS over jet coefficient levels (see _kernel_py for the reference)."""

from libc.stdlib cimport calloc, free

from .errors import WorkBoundExceeded

ctypedef long long i64


cdef struct Ctx:
    int m
    int n
    int r
    int last
    int first
    i64 p
    i64 size
    i64 lo
    i64 hi
    i64 target
    i64 mult
    i64 nodes
    i64 work_bound
    int nterms
    int maxdeg_all
    int *maxdeg       # [m]
    int *exps         # [nterms * m]
    i64 *coeffs       # [nterms]
    char *allowed     # [n + 1]
    i64 *phi          # [m * (n + 1)]
    i64 *pw           # [m * (maxdeg_all + 1) * (n + 1)]
    i64 *buf          # [2 * (n + 1)]


cdef inline i64* _pw(Ctx *c, int v, int e):
    return c.pw + ((v * (c.maxdeg_all + 1) + e) * (c.n + 1))


cdef void _update(Ctx *c, int v, int l):
    cdef int e, k, i
    cdef i64 s
    cdef i64 *ph = c.phi + v * (c.n + 1)
    cdef i64 *prev
    cdef i64 *row
    for e in range(1, c.maxdeg[v] + 1):
        prev = _pw(c, v, e - 1)
        row = _pw(c, v, e)
        for k in range(l, c.n + 1):
            s = 0
            for i in range(1, k - e + 2):
                if ph[i]:
                    s = (s + ph[i] * prev[k - i]) % c.p
            row[k] = s


cdef i64 _coeff_at(Ctx *c, int j):
    cdef i64 total = 0
    cdef int t, v, k, i
    cdef i64 s
    cdef i64 *cur = c.buf
    cdef i64 *nxt = c.buf + (c.n + 1)
    cdef i64 *other
    cdef i64 *src
    cdef i64 *tmp
    for t in range(c.nterms):
        src = _pw(c, 0, c.exps[t * c.m])
        if c.m == 1:
            total = (total + c.coeffs[t] * src[j]) % c.p
            continue
        for k in range(j + 1):
            cur[k] = src[k]
        for v in range(1, c.m):
            other = _pw(c, v, c.exps[t * c.m + v])
            if v == c.m - 1:
                s = 0
                for i in range(j + 1):
                    s = (s + cur[i] * other[j - i]) % c.p
                cur[j] = s
            else:
                for k in range(j + 1):
                    s = 0
                    for i in range(k + 1):
                        s = (s + cur[i] * other[k - i]) % c.p
                    nxt[k] = s
                tmp = cur
                cur = nxt
                nxt = tmp
        total = (total + c.coeffs[t] * cur[j]) % c.p
    return total


cdef inline bint _ok(Ctx *c, int j):
    return _coeff_at(c, j) == (c.target if j == c.n else 0)


cdef object _dfs(Ctx *c, int l):
    # Returns a Python int; None signals the work bound was hit.
    cdef i64 idx, start, stop, rest, digit
    cdef int v
    cdef object big = 0
    cdef object sub
    if l > c.last:
        return c.mult
    if not c.allowed[l]:
        if _ok(c, l + c.r - 1):
            return _dfs(c, l + 1)
        return 0
    if l == c.first:
        start, stop = c.lo, c.hi
    else:
        start, stop = 0, c.size
    for idx in range(start, stop):
        c.nodes += 1
        if c.work_bound and c.nodes > c.work_bound:
            return None
        rest = idx
        for v in range(c.m):
            digit = rest % c.p
            rest = rest // c.p
            if c.phi[v * (c.n + 1) + l] != digit:
                c.phi[v * (c.n + 1) + l] = digit
                _update(c, v, l)
        if _ok(c, l + c.r - 1):
            sub = _dfs(c, l + 1)
            if sub is None:
                return None
            big += sub
    for v in range(c.m):
        if c.phi[v * (c.n + 1) + l]:
            c.phi[v * (c.n + 1) + l] = 0
            _update(c, v, l)
    return big


def count_jets(exps, coeffs, int m, int n, long long p, allowed, int r,
               long long work_bound=0, long long lo=0, long long hi=-1, long long target=1):
    """Same contract as ``_kernel_py.count_jets``."""
    cdef Ctx c
    cdef int t, v, l
    if r > n:
        return 0, 0
    c.m = m
    c.n = n
    c.r = r
    c.p = p
    c.last = n - r + 1
    c.size = p ** m
    c.lo = lo
    c.hi = c.size if hi < 0 else hi
    c.target = target % p
    c.nodes = 0
    c.work_bound = work_bound
    c.nterms = len(exps)
    free_levels = sum(1 for l in range(c.last + 1, n + 1) if allowed[l])
    mult = p ** (m * free_levels)
    if mult > 2 ** 62:
        raise OverflowError("free-level multiplier exceeds 64 bits")
    c.mult = mult
    c.first = next((l for l in range(1, c.last + 1) if allowed[l]), 0)
    c.maxdeg = <int *> calloc(m, sizeof(int))
    c.exps = <int *> calloc(c.nterms * m, sizeof(int))
    c.coeffs = <i64 *> calloc(c.nterms, sizeof(i64))
    c.allowed = <char *> calloc(n + 1, sizeof(char))
    c.phi = <i64 *> calloc(m * (n + 1), sizeof(i64))
    c.buf = <i64 *> calloc(2 * (n + 1), sizeof(i64))
    c.pw = NULL
    try:
        c.maxdeg_all = 0
        for t in range(c.nterms):
            c.coeffs[t] = coeffs[t] % p
            for v in range(m):
                c.exps[t * m + v] = exps[t][v]
                if exps[t][v] > c.maxdeg[v]:
                    c.maxdeg[v] = exps[t][v]
                if exps[t][v] > c.maxdeg_all:
                    c.maxdeg_all = exps[t][v]
        for l in range(n + 1):
            c.allowed[l] = 1 if allowed[l] else 0
        c.pw = <i64 *> calloc(m * (c.maxdeg_all + 1) * (n + 1), sizeof(i64))
        for v in range(m):
            _pw(&c, v, 0)[0] = 1
        result = _dfs(&c, 1)
        if result is None:
            raise WorkBoundExceeded(f"work bound {work_bound} exceeded", c.nodes)
        return result, c.nodes
    finally:
        free(c.maxdeg)
        free(c.exps)
        free(c.coeffs)
        free(c.allowed)
        free(c.phi)
        free(c.buf)
        free(c.pw)
