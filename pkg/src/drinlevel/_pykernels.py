"""Pure-Python reference kernels.

Residue-field elements are stored in "L-rep": ``0`` is zero and ``e + 1``
stands for ``g**e`` with ``g`` a fixed primitive element, so multiplication
is addition of exponents and addition goes through a Zech table.  Elements of
``l[Y]/(Y^k)`` are k-tuples of L-reps (coefficient of ``Y^j`` at index j).
Twisted polynomials are tuples of such elements, index i multiplying tau^i.

The compiled module ``_ckernels`` exposes the same functions with the same
semantics; ``drinlevel._kernels`` picks one at import time.
"""

from __future__ import annotations

BACKEND = "python"


class RingCtx:
    """Lookup tables shared by every kernel call on one base ring."""

    def __init__(self, p, q, Q, k, zech):
        self.p = p
        self.q = q
        self.Q = Q
        self.M = Q - 1
        self.k = k
        self.zech = list(zech)
        self.neg_shift = 0 if p == 2 else (Q - 1) // 2
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def qpow(self, j):
        return pow(self.q, j, self.M) if self.M > 1 else 0


def make_ctx(p, q, Q, k, zech):
    return RingCtx(p, q, Q, k, zech)


# -- residue field -----------------------------------------------------------

def _fadd(ctx, a, b):
    if a == 0:
        return b
    if b == 0:
        return a
    M = ctx.M
    z = ctx.zech[(b - a) % M]
    if z == 0:
        return 0
    return (a + z - 2) % M + 1


def _fmul(ctx, a, b):
    if a == 0 or b == 0:
        return 0
    return (a + b - 2) % ctx.M + 1


def _fneg(ctx, a):
    if a == 0 or ctx.neg_shift == 0:
        return a
    return (a - 1 + ctx.neg_shift) % ctx.M + 1


def _finv(ctx, a):
    return (1 - a) % ctx.M + 1


def _fpow_q(ctx, a, qj):
    # qj is q**j reduced mod Q - 1
    if a == 0:
        return 0
    return ((a - 1) * qj) % ctx.M + 1


# -- l[Y]/(Y^k) --------------------------------------------------------------

def el_add(ctx, x, y):
    if ctx.k == 1:
        return (_fadd(ctx, x[0], y[0]),)
    return tuple(_fadd(ctx, a, b) for a, b in zip(x, y))


def el_neg(ctx, x):
    return tuple(_fneg(ctx, a) for a in x)


def el_sub(ctx, x, y):
    return el_add(ctx, x, el_neg(ctx, y))


def el_mul(ctx, x, y):
    k = ctx.k
    if k == 1:
        return (_fmul(ctx, x[0], y[0]),)
    out = [0] * k
    for i in range(k):
        a = x[i]
        if a == 0:
            continue
        for j in range(k - i):
            b = y[j]
            if b:
                out[i + j] = _fadd(ctx, out[i + j], _fmul(ctx, a, b))
    return tuple(out)


def el_frob(ctx, x, j):
    """x ** (q ** j)."""
    qj = ctx.qpow(j)
    k = ctx.k
    if k == 1:
        return (_fpow_q(ctx, x[0], qj),)
    step = ctx.q ** j
    out = [0] * k
    out[0] = _fpow_q(ctx, x[0], qj)
    for i in range(1, k):
        if i * step >= k:
            break
        out[i * step] = _fpow_q(ctx, x[i], qj)
    return tuple(out)


def el_is_unit(ctx, x):
    return x[0] != 0


def el_inv(ctx, x):
    if x[0] == 0:
        raise ZeroDivisionError("element is not a unit")
    inv0 = (_finv(ctx, x[0]),) + (0,) * (ctx.k - 1)
    if ctx.k == 1:
        return inv0
    # x = x0 (1 + n) with n nilpotent; (1 + n)^-1 = sum (-n)^i
    n = el_mul(ctx, inv0, x)
    n = (0,) + n[1:]
    neg_n = el_neg(ctx, n)
    acc = ctx.one
    term = ctx.one
    for _ in range(1, ctx.k):
        term = el_mul(ctx, term, neg_n)
        acc = el_add(ctx, acc, term)
    return el_mul(ctx, acc, inv0)


def el_pow(ctx, x, e):
    result = ctx.one
    base = x
    while e:
        if e & 1:
            result = el_mul(ctx, result, base)
        base = el_mul(ctx, base, base)
        e >>= 1
    return result


# -- twisted polynomials -----------------------------------------------------

def tw_trim(ctx, f):
    zero = ctx.zero
    n = len(f)
    while n and f[n - 1] == zero:
        n -= 1
    return tuple(f[:n])


def tw_add(ctx, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = el_add(ctx, out[i], c)
    return tw_trim(ctx, out)


def tw_mul(ctx, f, g):
    """(sum f_i tau^i)(sum g_j tau^j) = sum f_i g_j^(q^i) tau^(i+j)."""
    if not f or not g:
        return ()
    zero = ctx.zero
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == zero:
            continue
        for j, b in enumerate(g):
            if b == zero:
                continue
            t = el_mul(ctx, a, el_frob(ctx, b, i))
            out[i + j] = el_add(ctx, out[i + j], t)
    return tw_trim(ctx, out)


def tw_eval(ctx, f, x):
    zero = ctx.zero
    acc = zero
    xp = x
    for i, c in enumerate(f):
        if i:
            xp = el_frob(ctx, xp, 1)
            if xp == zero:
                break
        if c != zero:
            acc = el_add(ctx, acc, el_mul(ctx, c, xp))
    return acc


def subspace_poly(ctx, images):
    """prod over v in span_Fq(images) of (X - v), as a twisted polynomial.

    Uses prod_{c in Fq}(P - c*beta) = P^q - beta^(q-1) P, valid for any
    Fq-linear image (repeated or dependent images give repeated roots).
    """
    P = (ctx.one,)
    qm1 = ctx.q - 1
    for w in images:
        beta = tw_eval(ctx, P, w)
        c = el_neg(ctx, el_pow(ctx, beta, qm1))
        new = [el_mul(ctx, c, P[0])]
        for n in range(1, len(P)):
            new.append(el_add(ctx, el_frob(ctx, P[n - 1], 1), el_mul(ctx, c, P[n])))
        new.append(el_frob(ctx, P[-1], 1))
        P = tuple(new)
    return P


def span_values(ctx, images):
    """All F_q-combinations sum c_i images[i], with multiplicity (q**len values).

    Built one image at a time: vals <- [x + c*v for c in F_q for x in vals].
    """
    q = ctx.q
    # the F_q scalars inside l: 0 and the powers of g^((Q-1)/(q-1))
    step = ctx.M // (q - 1)
    scal = [(0,) + (0,) * (ctx.k - 1)] + [(1 + i * step,) + (0,) * (ctx.k - 1) for i in range(q - 1)]
    vals = [ctx.zero]
    for v in images:
        multiples = [el_mul(ctx, c, v) for c in scal[1:]]
        new = list(vals)
        for cv in multiples:
            new.extend(el_add(ctx, x, cv) for x in vals)
        vals = new
    return vals


def roots_product(ctx, roots):
    """Plain polynomial prod (X - r), coefficients low to high."""
    poly = [ctx.one]
    for r in roots:
        nr = el_neg(ctx, r)
        new = [el_mul(ctx, nr, poly[0])]
        for i in range(1, len(poly)):
            new.append(el_add(ctx, poly[i - 1], el_mul(ctx, nr, poly[i])))
        new.append(poly[-1])
        poly = new
    return tuple(poly)


def zero_scan(ctx, f, elements):
    """Indices of the elements annihilated by the twisted polynomial f."""
    zero = ctx.zero
    return [i for i, x in enumerate(elements) if tw_eval(ctx, f, x) == zero]


# -- linear algebra over F_p -------------------------------------------------

def nullspace_mod_p(rows, p):
    """Basis of {v : rows . v = 0 (mod p)}; rows is a list of int lists."""
    if not rows:
        return []
    ncols = len(rows[0])
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][fc]) % p
        basis.append(v)
    return basis


def power_table(cols, p, n, size):
    """Powers of the element whose multiplication matrix has columns ``cols``.

    Vectors are integer codes in base p (digit i = coordinate i).  Returns the
    list of codes of c^0, c^1, ... c^(size-2), or None when c is not primitive.
    """
    order = size - 1
    pw = [p ** i for i in range(n)]
    col_digits = [[(col // pw[i]) % p for i in range(n)] for col in cols]
    out = [1]
    cur = [1] + [0] * (n - 1)
    for e in range(1, order):
        nxt = [0] * n
        for i, d in enumerate(cur):
            if d:
                cd = col_digits[i]
                for t in range(n):
                    nxt[t] += d * cd[t]
        cur = [v % p for v in nxt]
        code = 0
        for i in range(n - 1, -1, -1):
            code = code * p + cur[i]
        if code == 1:
            return None
        out.append(code)
    return out
