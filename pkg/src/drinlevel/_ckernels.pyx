# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same functions and semantics as ``_pykernels``.

Inputs and outputs stay Python tuples of L-reps so the two backends are
interchangeable.  Inside a call everything lives in flat C arrays: a twisted
polynomial of n coefficients over l[Y]/(Y^k) is n*k consecutive int64s.
"""

from libc.stdlib cimport malloc, free, calloc
from libc.string cimport memcpy, memset

ctypedef long long i64

BACKEND = "cython"


cdef class RingCtx:
    cdef public i64 p, q, Q, M, k, neg_shift
    cdef public object zero, one
    cdef i64* zech
    cdef i64* t1
    cdef i64* t2

    def __cinit__(self, p, q, Q, k, zech):
        self.p = p
        self.q = q
        self.Q = Q
        self.M = Q - 1
        self.k = k
        self.neg_shift = 0 if p == 2 else (Q - 1) // 2
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        n = len(zech)
        self.zech = <i64*> malloc(max(n, 1) * sizeof(i64))
        self.t1 = <i64*> malloc(k * sizeof(i64))
        self.t2 = <i64*> malloc(k * sizeof(i64))
        if self.zech == NULL or self.t1 == NULL or self.t2 == NULL:
            raise MemoryError()
        for i in range(n):
            self.zech[i] = zech[i]

    def __dealloc__(self):
        free(self.zech)
        free(self.t1)
        free(self.t2)

    def qpow(self, j):
        return pow(self.q, j, self.M) if self.M > 1 else 0


def make_ctx(p, q, Q, k, zech):
    return RingCtx(p, q, Q, k, zech)


# -- residue field ------------------------------------------------------------

cdef inline i64 fadd(RingCtx c, i64 a, i64 b) noexcept nogil:
    if a == 0:
        return b
    if b == 0:
        return a
    cdef i64 M = c.M
    cdef i64 d = (b - a) % M
    if d < 0:
        d += M
    cdef i64 z = c.zech[d]
    if z == 0:
        return 0
    return (a + z - 2) % M + 1


cdef inline i64 fmul(i64 M, i64 a, i64 b) noexcept nogil:
    if a == 0 or b == 0:
        return 0
    return (a + b - 2) % M + 1


cdef inline i64 fneg(RingCtx c, i64 a) noexcept nogil:
    if a == 0 or c.neg_shift == 0:
        return a
    return (a - 1 + c.neg_shift) % c.M + 1


cdef inline i64 finv(i64 M, i64 a) noexcept nogil:
    cdef i64 r = (1 - a) % M
    if r < 0:
        r += M
    return r + 1


cdef inline i64 fpowq(i64 M, i64 a, i64 qj) noexcept nogil:
    if a == 0:
        return 0
    return ((a - 1) * qj) % M + 1


cdef i64 qpow_c(RingCtx c, i64 j) noexcept nogil:
    if c.M <= 1:
        return 0
    cdef i64 r = 1 % c.M
    cdef i64 b = c.q % c.M
    while j > 0:
        if j & 1:
            r = (r * b) % c.M
        b = (b * b) % c.M
        j >>= 1
    return r


cdef i64 step_c(RingCtx c, i64 j) noexcept nogil:
    """q**j capped at k (only indices below k matter)."""
    cdef i64 s = 1
    for _ in range(j):
        s *= c.q
        if s >= c.k:
            return c.k
    return s


# -- l[Y]/(Y^k) on C arrays ---------------------------------------------------

cdef inline bint e_iszero(i64* x, i64 k) noexcept nogil:
    cdef i64 i
    for i in range(k):
        if x[i] != 0:
            return False
    return True


cdef inline bint e_eq(i64* x, i64* y, i64 k) noexcept nogil:
    cdef i64 i
    for i in range(k):
        if x[i] != y[i]:
            return False
    return True


cdef inline void e_add(RingCtx c, i64* x, i64* y, i64* out) noexcept nogil:
    cdef i64 i
    for i in range(c.k):
        out[i] = fadd(c, x[i], y[i])


cdef inline void e_neg(RingCtx c, i64* x, i64* out) noexcept nogil:
    cdef i64 i
    for i in range(c.k):
        out[i] = fneg(c, x[i])


cdef inline void e_mul(RingCtx c, i64* x, i64* y, i64* out) noexcept nogil:
    # out must not alias x or y
    cdef i64 k = c.k
    cdef i64 a, b, i, j
    for i in range(k):
        out[i] = 0
    for i in range(k):
        a = x[i]
        if a == 0:
            continue
        for j in range(k - i):
            b = y[j]
            if b:
                out[i + j] = fadd(c, out[i + j], fmul(c.M, a, b))


cdef inline void e_frob(RingCtx c, i64* x, i64 qj, i64 step, i64* out) noexcept nogil:
    # out must not alias x
    cdef i64 k = c.k
    cdef i64 i
    for i in range(k):
        out[i] = 0
    out[0] = fpowq(c.M, x[0], qj)
    i = 1
    while i * step < k:
        out[i * step] = fpowq(c.M, x[i], qj)
        i += 1


cdef void e_pow(RingCtx c, i64* x, i64 e, i64* out, i64* s1, i64* s2) noexcept:
    # out = x**e; s1, s2 scratch of size k
    cdef i64 k = c.k
    memset(out, 0, k * sizeof(i64))
    out[0] = 1
    memcpy(s1, x, k * sizeof(i64))
    while e:
        if e & 1:
            e_mul(c, out, s1, s2)
            memcpy(out, s2, k * sizeof(i64))
        e >>= 1
        if e:
            e_mul(c, s1, s1, s2)
            memcpy(s1, s2, k * sizeof(i64))


cdef void e_inv(RingCtx c, i64* x, i64* out, i64* s1, i64* s2, i64* s3) noexcept:
    cdef i64 k = c.k
    cdef i64 i
    memset(s1, 0, k * sizeof(i64))
    s1[0] = finv(c.M, x[0])          # inv0
    if k == 1:
        out[0] = s1[0]
        return
    e_mul(c, s1, x, s2)               # n = inv0 * x, then drop constant
    s2[0] = 0
    e_neg(c, s2, s2)                  # -n
    memset(out, 0, k * sizeof(i64))
    out[0] = 1                        # acc
    memset(s3, 0, k * sizeof(i64))
    s3[0] = 1                         # term
    cdef i64* tmp = <i64*> malloc(k * sizeof(i64))
    for i in range(1, k):
        e_mul(c, s3, s2, tmp)
        memcpy(s3, tmp, k * sizeof(i64))
        e_add(c, out, s3, out)
    e_mul(c, out, s1, tmp)
    memcpy(out, tmp, k * sizeof(i64))
    free(tmp)


# -- tuple <-> array ----------------------------------------------------------

cdef inline void load(tuple x, i64* out, i64 k):
    cdef i64 i
    for i in range(k):
        out[i] = x[i]


cdef inline tuple store(i64* x, i64 k):
    return tuple([x[i] for i in range(k)])


cdef i64* load_poly(RingCtx c, f, i64* n_out) except? NULL:
    cdef i64 n = len(f)
    cdef i64 k = c.k
    cdef i64 i
    cdef i64* buf = <i64*> calloc(max(n, 1) * k, sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        load(<tuple> f[i], buf + i * k, k)
    n_out[0] = n
    return buf


cdef tuple store_poly(RingCtx c, i64* buf, i64 n, bint trim):
    cdef i64 k = c.k
    cdef i64 i
    if trim:
        while n > 0 and e_iszero(buf + (n - 1) * k, k):
            n -= 1
    return tuple([store(buf + i * k, k) for i in range(n)])


# -- element API ----------------------------------------------------------------

def el_add(RingCtx ctx, tuple x, tuple y):
    cdef i64 k = ctx.k
    return tuple([fadd(ctx, x[i], y[i]) for i in range(k)])


def el_neg(RingCtx ctx, tuple x):
    cdef i64 k = ctx.k
    return tuple([fneg(ctx, x[i]) for i in range(k)])


def el_sub(RingCtx ctx, tuple x, tuple y):
    cdef i64 k = ctx.k
    return tuple([fadd(ctx, x[i], fneg(ctx, y[i])) for i in range(k)])


def el_mul(RingCtx ctx, tuple x, tuple y):
    cdef i64 k = ctx.k
    if k == 1:
        return (fmul(ctx.M, x[0], y[0]),)
    cdef i64* out = <i64*> malloc(k * sizeof(i64))
    load(x, ctx.t1, k)
    load(y, ctx.t2, k)
    e_mul(ctx, ctx.t1, ctx.t2, out)
    r = store(out, k)
    free(out)
    return r


def el_frob(RingCtx ctx, tuple x, j):
    cdef i64 k = ctx.k
    cdef i64 qj = qpow_c(ctx, j)
    if k == 1:
        return (fpowq(ctx.M, x[0], qj),)
    load(x, ctx.t1, k)
    e_frob(ctx, ctx.t1, qj, step_c(ctx, j), ctx.t2)
    return store(ctx.t2, k)


def el_is_unit(RingCtx ctx, tuple x):
    return x[0] != 0


def el_inv(RingCtx ctx, tuple x):
    if x[0] == 0:
        raise ZeroDivisionError("element is not a unit")
    cdef i64 k = ctx.k
    cdef i64* buf = <i64*> malloc(5 * k * sizeof(i64))
    load(x, buf, k)
    e_inv(ctx, buf, buf + k, buf + 2 * k, buf + 3 * k, buf + 4 * k)
    r = store(buf + k, k)
    free(buf)
    return r


def el_pow(RingCtx ctx, tuple x, e):
    cdef i64 k = ctx.k
    cdef i64* buf = <i64*> malloc(4 * k * sizeof(i64))
    load(x, buf, k)
    e_pow(ctx, buf, e, buf + k, buf + 2 * k, buf + 3 * k)
    r = store(buf + k, k)
    free(buf)
    return r


# -- twisted polynomials --------------------------------------------------------

def tw_trim(RingCtx ctx, f):
    zero = ctx.zero
    n = len(f)
    while n and f[n - 1] == zero:
        n -= 1
    return tuple(f[:n])


def tw_add(RingCtx ctx, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i in range(len(g)):
        out[i] = el_add(ctx, out[i], g[i])
    return tw_trim(ctx, out)


def tw_mul(RingCtx ctx, f, g):
    if not f or not g:
        return ()
    cdef i64 nf, ng, k = ctx.k
    cdef i64* F = load_poly(ctx, f, &nf)
    cdef i64* G = load_poly(ctx, g, &ng)
    cdef i64 no = nf + ng - 1
    cdef i64* out = <i64*> calloc(no * k, sizeof(i64))
    cdef i64* fr = <i64*> malloc(k * sizeof(i64))
    cdef i64* pr = <i64*> malloc(k * sizeof(i64))
    cdef i64 qj, st, i, j
    for i in range(nf):
        if e_iszero(F + i * k, k):
            continue
        qj = qpow_c(ctx, i)
        st = step_c(ctx, i)
        for j in range(ng):
            if e_iszero(G + j * k, k):
                continue
            e_frob(ctx, G + j * k, qj, st, fr)
            e_mul(ctx, F + i * k, fr, pr)
            e_add(ctx, out + (i + j) * k, pr, out + (i + j) * k)
    r = store_poly(ctx, out, no, True)
    free(F); free(G); free(out); free(fr); free(pr)
    return r


cdef void eval_c(RingCtx c, i64* F, i64 n, i64* x, i64* acc, i64* xp, i64* t, i64* pr) noexcept nogil:
    cdef i64 k = c.k
    cdef i64 qj = qpow_c(c, 1)
    cdef i64 st = step_c(c, 1)
    cdef i64 i
    for i in range(k):
        acc[i] = 0
        xp[i] = x[i]
    for i in range(n):
        if i:
            e_frob(c, xp, qj, st, t)
            memcpy(xp, t, k * sizeof(i64))
            if e_iszero(xp, k):
                break
        if not e_iszero(F + i * k, k):
            e_mul(c, F + i * k, xp, pr)
            e_add(c, acc, pr, acc)


def tw_eval(RingCtx ctx, f, tuple x):
    cdef i64 n, k = ctx.k
    cdef i64* F = load_poly(ctx, f, &n)
    cdef i64* buf = <i64*> malloc(5 * k * sizeof(i64))
    load(x, buf, k)
    eval_c(ctx, F, n, buf, buf + k, buf + 2 * k, buf + 3 * k, buf + 4 * k)
    r = store(buf + k, k)
    free(F); free(buf)
    return r


def subspace_poly(RingCtx ctx, images):
    """prod over v in span_Fq(images) of (X - v), as a twisted polynomial."""
    cdef i64 k = ctx.k
    cdef i64 m = len(images)
    cdef i64* P = <i64*> calloc((m + 1) * k, sizeof(i64))
    cdef i64* Q = <i64*> calloc((m + 1) * k, sizeof(i64))
    cdef i64* buf = <i64*> malloc(10 * k * sizeof(i64))
    cdef i64* w = buf
    cdef i64* beta = buf + k
    cdef i64* cc = buf + 2 * k
    cdef i64* s1 = buf + 3 * k
    cdef i64* s2 = buf + 4 * k
    cdef i64* fr = buf + 5 * k
    cdef i64* pr = buf + 6 * k
    cdef i64* t = buf + 7 * k
    cdef i64* xp = buf + 8 * k
    cdef i64 qj = qpow_c(ctx, 1)
    cdef i64 st = step_c(ctx, 1)
    cdef i64 n = 1, i, idx
    cdef i64* tmp
    P[0] = 1
    for idx in range(m):
        load(<tuple> images[idx], w, k)
        eval_c(ctx, P, n, w, beta, xp, t, pr)
        e_pow(ctx, beta, ctx.q - 1, s1, s2, t)
        e_neg(ctx, s1, cc)
        e_mul(ctx, cc, P, Q)
        for i in range(1, n):
            e_frob(ctx, P + (i - 1) * k, qj, st, fr)
            e_mul(ctx, cc, P + i * k, pr)
            e_add(ctx, fr, pr, Q + i * k)
        e_frob(ctx, P + (n - 1) * k, qj, st, Q + n * k)
        n += 1
        tmp = P; P = Q; Q = tmp
    r = store_poly(ctx, P, n, False)
    free(P); free(Q); free(buf)
    return r


def span_values(RingCtx ctx, images):
    """All F_q-combinations sum c_i images[i], with multiplicity (q**len values)."""
    cdef i64 k = ctx.k, q = ctx.q
    cdef i64 m = len(images)
    cdef i64 total = 1, n, i, c, t, idx
    for i in range(m):
        total *= q
    cdef i64 step = ctx.M // (q - 1)
    cdef i64* vals = <i64*> calloc(total * k, sizeof(i64))
    cdef i64* v = <i64*> malloc(3 * k * sizeof(i64))
    cdef i64* sc = v + k
    cdef i64* cv = v + 2 * k
    if vals == NULL or v == NULL:
        raise MemoryError()
    n = 1
    for idx in range(m):
        load(<tuple> images[idx], v, k)
        for c in range(1, q):
            memset(sc, 0, k * sizeof(i64))
            sc[0] = 1 + (c - 1) * step
            e_mul(ctx, sc, v, cv)
            for i in range(n):
                e_add(ctx, vals + i * k, cv, vals + (c * n + i) * k)
        n *= q
    r = [store(vals + i * k, k) for i in range(total)]
    free(vals); free(v)
    return r


def roots_product(RingCtx ctx, roots):
    """Plain polynomial prod (X - r), coefficients low to high."""
    cdef i64 k = ctx.k
    cdef i64 m = len(roots)
    cdef i64* P = <i64*> calloc((m + 1) * k, sizeof(i64))
    cdef i64* Q = <i64*> calloc((m + 1) * k, sizeof(i64))
    cdef i64* nr = <i64*> malloc(2 * k * sizeof(i64))
    cdef i64* pr = nr + k
    cdef i64 n = 1, i, idx
    cdef i64* tmp
    P[0] = 1
    for idx in range(m):
        load(<tuple> roots[idx], pr, k)
        e_neg(ctx, pr, nr)
        e_mul(ctx, nr, P, Q)
        for i in range(1, n):
            e_mul(ctx, nr, P + i * k, pr)
            e_add(ctx, P + (i - 1) * k, pr, Q + i * k)
        memcpy(Q + n * k, P + (n - 1) * k, k * sizeof(i64))
        n += 1
        tmp = P; P = Q; Q = tmp
    r = store_poly(ctx, P, n, False)
    free(P); free(Q); free(nr)
    return r


def zero_scan(RingCtx ctx, f, elements):
    """Indices of the elements annihilated by the twisted polynomial f."""
    cdef i64 n, k = ctx.k
    cdef i64* F = load_poly(ctx, f, &n)
    cdef i64* buf = <i64*> malloc(5 * k * sizeof(i64))
    cdef i64 i
    out = []
    for i in range(len(elements)):
        load(<tuple> elements[i], buf, k)
        eval_c(ctx, F, n, buf, buf + k, buf + 2 * k, buf + 3 * k, buf + 4 * k)
        if e_iszero(buf + k, k):
            out.append(i)
    free(F); free(buf)
    return out


# -- linear algebra over F_p ----------------------------------------------------

def nullspace_mod_p(rows, p):
    """Basis of {v : rows . v = 0 (mod p)}; rows is a list of int lists."""
    if not rows:
        return []
    cdef i64 P = p
    cdef i64 nr = len(rows), nc = len(rows[0])
    cdef i64* m = <i64*> malloc(nr * nc * sizeof(i64))
    cdef i64 r = 0, c, i, j, piv, inv, f, v
    for i in range(nr):
        row = rows[i]
        for j in range(nc):
            v = row[j] % P
            m[i * nc + j] = v + P if v < 0 else v
    pivots = []
    for c in range(nc):
        piv = -1
        for i in range(r, nr):
            if m[i * nc + c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(nc):
                v = m[r * nc + j]; m[r * nc + j] = m[piv * nc + j]; m[piv * nc + j] = v
        inv = pow(m[r * nc + c], P - 2, P)
        for j in range(nc):
            m[r * nc + j] = (m[r * nc + j] * inv) % P
        for i in range(nr):
            if i != r and m[i * nc + c]:
                f = m[i * nc + c]
                for j in range(nc):
                    v = (m[i * nc + j] - f * m[r * nc + j]) % P
                    m[i * nc + j] = v + P if v < 0 else v
        pivots.append(c)
        r += 1
        if r == nr:
            break
    pset = set(pivots)
    basis = []
    for fc in range(nc):
        if fc in pset:
            continue
        vec = [0] * nc
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (P - m[i * nc + fc]) % P
        basis.append(vec)
    free(m)
    return basis


def power_table(cols, p, n, size):
    """Powers c^0 .. c^(size-2) as base-p codes, or None when c is not primitive."""
    cdef i64 P = p, N = n, order = size - 1
    cdef i64* cd = <i64*> malloc(N * N * sizeof(i64))
    cdef i64* cur = <i64*> calloc(N, sizeof(i64))
    cdef i64* nxt = <i64*> malloc(N * sizeof(i64))
    cdef i64 i, t, e, d, code, col
    for i in range(N):
        col = cols[i]
        for t in range(N):
            cd[i * N + t] = col % P
            col //= P
    out = [1]
    cur[0] = 1
    result = out
    for e in range(1, order):
        for t in range(N):
            nxt[t] = 0
        for i in range(N):
            d = cur[i]
            if d:
                for t in range(N):
                    nxt[t] += d * cd[i * N + t]
        code = 0
        for i in range(N - 1, -1, -1):
            cur[i] = nxt[i] % P
            code = code * P + cur[i]
        if code == 1:
            result = None
            break
        out.append(code)
    free(cd); free(cur); free(nxt)
    return result
