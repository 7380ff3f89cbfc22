"""Finite fields built as towers F_p ⊂ F_q ⊂ F_{q^m} with canonical bases.

Elements are addressed by *codes*: the integer whose base-p digits are the
coordinates in the tower's polynomial basis (digit ``i*s + t`` is the
coefficient of ``w^i x^t``).  Enumerating codes in increasing order is the
lexicographic order on coordinates with the constant coordinate varying
fastest.  Internally every field also carries discrete-log tables so the
kernels can multiply by adding exponents.
"""

from __future__ import annotations

import functools
from typing import Iterator, Sequence

from ._kernels import kernels


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """A finite field given by a tower of monic irreducible moduli.

    ``base is None`` means the prime field F_p.  Otherwise the field is
    ``base[w]/(modulus)`` where ``modulus`` lists base codes from the constant
    term up, leading 1 included.
    """

    def __init__(self, p: int, base: FiniteField | None = None,
                 modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.base = base
        if base is None:
            self.modulus = (0, 1)
            self.rel_degree = 1
            self.degree = 1
        else:
            if modulus is None or modulus[-1] != 1:
                raise FieldError("extension modulus must be monic")
            self.modulus = tuple(modulus)
            self.rel_degree = len(modulus) - 1
            self.degree = base.degree * self.rel_degree
        self.size = p ** self.degree
        self._build_tables()

    # -- construction --------------------------------------------------------

    def _tower_mul(self, a: int, b: int) -> int:
        """Schoolbook multiplication in the tower; used only while building."""
        if self.base is None:
            return (a * b) % self.p
        B = self.base
        n = self.rel_degree
        da = _digits(a, B.size, n)
        db = _digits(b, B.size, n)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        mod = self.modulus
        for top in range(2 * n - 2, n - 1, -1):
            c = prod[top]
            if c == 0:
                continue
            for t in range(n + 1):
                prod[top - n + t] = B.sub(prod[top - n + t], B.mul(c, mod[t]))
        return _undigits(prod[:n], B.size)

    def _tower_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._tower_mul(r, a)
            a = self._tower_mul(a, a)
            e >>= 1
        return r

    def _build_tables(self) -> None:
        Q = self.size
        order = Q - 1
        if Q == 2:
            exp = [1]
            gen = 1
        else:
            factors = prime_factors(order)
            gen = None
            for c in range(2, Q):
                if all(self._tower_pow(c, order // r) != 1 for r in factors):
                    gen = c
                    break
            if gen is None:
                raise FieldError("no primitive element found (modulus not irreducible?)")
            cols = [self._tower_mul(gen, self.p ** i) for i in range(self.degree)]
            exp = kernels.power_table(cols, self.p, self.degree, Q)
            if exp is None:  # pragma: no cover - guarded by the order test
                raise FieldError("internal error: generator is not primitive")
        self.generator = gen
        self.exp = list(exp)
        self.log = [0] * Q
        for e, c in enumerate(self.exp):
            self.log[c] = e
        # L-rep: 0 for zero, log + 1 otherwise
        self.to_lrep = [0] + [self.log[c] + 1 for c in range(1, Q)]
        self.from_lrep = [0] + self.exp
        self.zech = [self.to_lrep[self.add(1, c)] for c in self.exp]

    # -- arithmetic on codes ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.base is None:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.base is None:
            return (-a) % p
        if p == 2:
            return a
        out, scale = 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.size - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(-self.log[a]) % (self.size - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % (self.size - 1)]

    # -- structure -------------------------------------------------------------

    def coords(self, a: int) -> list[int]:
        """Coordinates over F_p in the canonical basis."""
        return _digits(a, self.p, self.degree)

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.degree:
            raise FieldError(f"expected {self.degree} coordinates, got {len(coords)}")
        return _undigits([c % self.p for c in coords], self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))

    @property
    def prime_field(self) -> FiniteField:
        f = self
        while f.base is not None:
            f = f.base
        return f

    def __repr__(self) -> str:
        return f"F_{self.size}"


def _digits(a: int, base: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(a % base)
        a //= base
    return out


def _undigits(ds: Sequence[int], base: int) -> int:
    out = 0
    for d in reversed(ds):
        out = out * base + d
    return out


# -- polynomials over a FiniteField (coefficient codes, constant term first) --

def poly_trim(a: Sequence[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_divmod(a: Sequence[int], b: Sequence[int], F: FiniteField) -> tuple[list[int], list[int]]:
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = F.inv(b[-1])
    quo = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    db = len(b) - 1
    for top in range(len(rem) - 1, db - 1, -1):
        c = rem[top]
        if c == 0:
            continue
        f = F.mul(c, inv_lead)
        quo[top - db] = f
        for t in range(db + 1):
            rem[top - db + t] = F.sub(rem[top - db + t], F.mul(f, b[t]))
    return poly_trim(quo), poly_trim(rem)


def monic_polys(F: FiniteField, degree: int) -> Iterator[list[int]]:
    """Monic polynomials of the given degree, lower coefficients in code order."""
    for code in range(F.size ** degree):
        yield _digits(code, F.size, degree) + [1]


def is_irreducible(f: Sequence[int], F: FiniteField) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f) / 2."""
    f = poly_trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in monic_polys(F, d):
            if not poly_divmod(f, g, F)[1]:
                return False
    return True


def least_irreducible(F: FiniteField, degree: int) -> list[int]:
    for f in monic_polys(F, degree):
        if is_irreducible(f, F):
            return f
    raise FieldError(f"internal error: no irreducible of degree {degree} over {F}")


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> FiniteField:
    return FiniteField(p)


@functools.lru_cache(maxsize=None)
def ground_field(p: int, s: int = 1) -> FiniteField:
    """F_q with q = p^s, modulus the least monic irreducible of degree s."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if s < 1:
        raise FieldError("s must be >= 1")
    Fp = prime_field(p)
    if s == 1:
        return Fp
    return FiniteField(p, Fp, least_irreducible(Fp, s))


@functools.lru_cache(maxsize=None)
def extension_field(p: int, s: int, m: int) -> FiniteField:
    """F_{q^m} over the canonical F_q, modulus least monic irreducible."""
    Fq = ground_field(p, s)
    if m < 1:
        raise FieldError("m must be >= 1")
    if m == 1:
        return Fq
    return FiniteField(p, Fq, least_irreducible(Fq, m))


def rel_degree_over(F: FiniteField, Fq: FiniteField) -> int:
    if F is Fq:
        return 1
    if F.base is not Fq:
        raise FieldError(f"{F} is not a simple extension of {Fq}")
    return F.rel_degree


@functools.lru_cache(maxsize=None)
def field_embedding(src: FiniteField, dst: FiniteField, Fq: FiniteField) -> tuple[int, ...]:
    """Code table of the embedding src -> dst over the common ground Fq.

    The generator w of src goes to the least-code root of its modulus in dst.
    """
    m = rel_degree_over(src, Fq)
    M = rel_degree_over(dst, Fq)
    if M % m:
        raise FieldError(f"{src} does not embed in {dst}")
    if src is dst:
        return tuple(range(src.size))
    if m == 1:
        # ground field codes sit in the constant coordinate
        return tuple(range(src.size))
    mod = src.modulus
    # roots lie in the unique subfield of size |src|
    step = (dst.size - 1) // (src.size - 1)
    cands = sorted({0} | {dst.exp[(j * step) % (dst.size - 1)] for j in range(src.size - 1)})
    root = None
    for r in cands:
        acc = 0
        for c in reversed(mod):
            acc = dst.add(dst.mul(acc, r), c)
        if acc == 0:
            root = r
            break
    if root is None:  # pragma: no cover
        raise FieldError("internal error: modulus has no root in extension")
    table = []
    qs = Fq.size
    for code in range(src.size):
        coeffs = _digits(code, qs, m)
        acc = 0
        for c in reversed(coeffs):
            acc = dst.add(dst.mul(acc, root), c)
        table.append(acc)
    return tuple(table)
