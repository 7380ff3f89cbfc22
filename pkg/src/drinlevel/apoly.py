"""Polynomials a(T) in A = F_q[T], the coefficient ring of the Drinfeld modules."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .fields import (FiniteField, is_irreducible, monic_polys,
                     poly_divmod, poly_trim)


class APoly:
    """An element of F_q[T]; ``coeffs[i]`` is the F_q code of the T^i coefficient."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F: FiniteField, coeffs: Sequence[int]):
        self.F = F
        self.coeffs = tuple(poly_trim(coeffs))

    @classmethod
    def parse(cls, F: FiniteField, text: str) -> APoly:
        from .algebra import _eval_expr

        names = {"T": cls(F, [0, 1])}
        if F.degree > 1:
            names["x"] = cls(F, [F.p])
        return _eval_expr(text, names, lambda n: cls(F, [n % F.p]))

    @classmethod
    def T(cls, F: FiniteField) -> APoly:
        return cls(F, [0, 1])

    @classmethod
    def const(cls, F: FiniteField, c: int) -> APoly:
        return cls(F, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for zero

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _other(self, other) -> APoly:
        if isinstance(other, APoly):
            return other
        if isinstance(other, int):
            return APoly(self.F, [other % self.F.p])
        return NotImplemented

    def __add__(self, other) -> APoly:
        o = self._other(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(o.coeffs) + [0] * (n - len(o.coeffs))
        return APoly(self.F, [self.F.add(x, y) for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> APoly:
        return APoly(self.F, [self.F.neg(c) for c in self.coeffs])

    def __sub__(self, other) -> APoly:
        return self + (-self._other(other))

    def __rsub__(self, other) -> APoly:
        return self._other(other) - self

    def __mul__(self, other) -> APoly:
        o = self._other(other)
        if not self.coeffs or not o.coeffs:
            return APoly(self.F, [])
        F = self.F
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return APoly(F, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> APoly:
        r = APoly(self.F, [1])
        for _ in range(n):
            r = r * self
        return r

    def __divmod__(self, other: APoly) -> tuple[APoly, APoly]:
        q, r = poly_divmod(self.coeffs, other.coeffs, self.F)
        return APoly(self.F, q), APoly(self.F, r)

    def __floordiv__(self, other: APoly) -> APoly:
        return divmod(self, other)[0]

    def __mod__(self, other: APoly) -> APoly:
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = APoly(self.F, [other % self.F.p])
        return isinstance(other, APoly) and self.F is other.F and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.F.size, self.coeffs))

    def __lt__(self, other: APoly) -> bool:
        return (self.degree, self.coeffs[::-1]) < (other.degree, other.coeffs[::-1])

    def is_irreducible(self) -> bool:
        return is_irreducible(self.coeffs, self.F)

    def monic(self) -> APoly:
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        inv = self.F.inv(self.coeffs[-1])
        return APoly(self.F, [self.F.mul(inv, c) for c in self.coeffs])

    def __repr__(self) -> str:
        from .algebra import _format_ground

        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = _format_ground(self.F, c)
            mon = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mon:
                terms.append(cs)
            elif cs == "1":
                terms.append(mon)
            elif "+" in cs:
                terms.append(f"({cs})*{mon}")
            else:
                terms.append(f"{cs}*{mon}")
        return "+".join(terms)


def residues(F: FiniteField, a: APoly) -> Iterator[APoly]:
    """All polynomials of degree < deg a (coset representatives of A/(a)), in code order."""
    n = a.degree
    for code in range(F.size ** n):
        cs = []
        for _ in range(n):
            cs.append(code % F.size)
            code //= F.size
        yield APoly(F, cs)


@functools.lru_cache(maxsize=None)
def _irreducibles(F: FiniteField, degree: int) -> tuple[APoly, ...]:
    return tuple(APoly(F, f) for f in monic_polys(F, degree) if is_irreducible(f, F))


def irreducibles(F: FiniteField, degree: int) -> list[APoly]:
    """Monic irreducibles of the given degree, least first."""
    return list(_irreducibles(F, degree))


def factor(a: APoly) -> list[tuple[APoly, int]]:
    """Factorization of a monic polynomial into monic irreducible prime powers."""
    if not a:
        raise ValueError("cannot factor zero")
    if not a.is_monic:
        raise ValueError(f"{a} is not monic")
    rest = a
    out = []
    d = 1
    while rest.degree >= 2 * d:
        for pi in _irreducibles(a.F, d):
            n = 0
            while True:
                q, r = divmod(rest, pi)
                if r:
                    break
                rest = q
                n += 1
            if n:
                out.append((pi, n))
        d += 1
    if rest.degree >= 1:
        # no factor of degree <= deg(rest)/2 survives, so rest is irreducible
        out.append((rest, 1))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs[::-1]))
    return out


@dataclass(frozen=True)
class PrimePower:
    """The ideal (pi^n) with pi monic irreducible."""

    pi: APoly
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("exponent must be >= 0")
        if not (self.pi.is_monic and self.pi.is_irreducible()):
            raise ValueError(f"{self.pi} is not a monic irreducible")

    @property
    def generator(self) -> APoly:
        return self.pi ** self.n

    def __repr__(self) -> str:
        return f"({self.pi})^{self.n}"


def gl_order(F: FiniteField, a: APoly, d: int) -> int:
    """|GL_d(A/(a))|: the number of ordered bases of (A/(a))^d."""
    total = 1
    for pi, n in factor(a):
        Qf = F.size ** pi.degree
        g = 1
        for i in range(d):
            g *= Qf ** d - Qf ** i
        total *= g * Qf ** ((n - 1) * d * d)
    return total
