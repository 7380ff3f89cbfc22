"""The twisted polynomial ring B{tau}, tau*b = b^q*tau, and its X-form view.

One coefficient list serves both readings: ``sum c_i tau^i`` multiplies by
composition, and the same data read as ``sum c_i X^(q^i)`` is the additive
polynomial it acts as.
"""

from __future__ import annotations

import math
from typing import Sequence

from ._kernels import kernels
from .algebra import AlgebraElement, ArtinLocalAlgebra, FqLinearMap, NotAUnit, RingHom
from .bounds import DEFAULT, BoundExceeded


class NotDivisible(ArithmeticError):
    """Right division needs a divisor whose leading coefficient is a unit."""


def _raw(B: ArtinLocalAlgebra, c) -> tuple:
    if isinstance(c, AlgebraElement):
        return c.raw
    if isinstance(c, int):
        return B.scalar(c % B.p)
    if isinstance(c, str):
        return B(c).raw
    return tuple(c)


class TwistedPoly:
    __slots__ = ("base", "coeffs")

    def __init__(self, base: ArtinLocalAlgebra, coeffs: Sequence = ()):
        self.base = base
        self.coeffs = kernels.tw_trim(base.ctx, [_raw(base, c) for c in coeffs])

    @classmethod
    def _wrap(cls, base: ArtinLocalAlgebra, coeffs: tuple) -> TwistedPoly:
        obj = cls.__new__(cls)
        obj.base = base
        obj.coeffs = coeffs
        return obj

    @classmethod
    def tau(cls, base: ArtinLocalAlgebra, i: int = 1) -> TwistedPoly:
        return cls._wrap(base, (base.zero,) * i + (base.one,))

    @classmethod
    def one(cls, base: ArtinLocalAlgebra) -> TwistedPoly:
        return cls._wrap(base, (base.one,))

    @classmethod
    def zero(cls, base: ArtinLocalAlgebra) -> TwistedPoly:
        return cls._wrap(base, ())

    @classmethod
    def const(cls, base: ArtinLocalAlgebra, c) -> TwistedPoly:
        return cls(base, [c])

    @classmethod
    def from_x_form(cls, base: ArtinLocalAlgebra, terms: dict) -> TwistedPoly:
        """Build from ``{X-exponent: coefficient}``; exponents must be powers of q."""
        q = base.q
        coeffs = {}
        for e, c in terms.items():
            i = round(math.log(e, q)) if e > 1 else 0
            if q ** i != e:
                raise ValueError(f"X^{e} is not additive over F_{q}")
            coeffs[i] = _raw(base, c)
        n = max(coeffs, default=-1) + 1
        return cls(base, [coeffs.get(i, base.zero) for i in range(n)])

    # -- basic data ------------------------------------------------------------

    @property
    def degree(self) -> int:
        """tau-degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def x_degree(self) -> int:
        return self.base.q ** self.degree if self.coeffs else -1

    def coeff(self, i: int) -> AlgebraElement:
        if 0 <= i < len(self.coeffs):
            return AlgebraElement(self.base, self.coeffs[i])
        return AlgebraElement(self.base, self.base.zero)

    @property
    def leading_coeff(self) -> AlgebraElement:
        return self.coeff(self.degree)

    def x_form(self) -> dict[int, AlgebraElement]:
        q = self.base.q
        return {q ** i: AlgebraElement(self.base, c)
                for i, c in enumerate(self.coeffs) if c != self.base.zero}

    def unit_degree(self) -> int:
        """Largest index whose coefficient is a unit; -1 if none."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i][0]:
                return i
        return -1

    # -- ring operations -------------------------------------------------------

    def _check(self, other: TwistedPoly) -> None:
        if other.base != self.base:
            raise ValueError("twisted polynomials over different bases")

    def __add__(self, other: TwistedPoly) -> TwistedPoly:
        self._check(other)
        return TwistedPoly._wrap(self.base, kernels.tw_add(self.base.ctx, self.coeffs, other.coeffs))

    def __neg__(self) -> TwistedPoly:
        B = self.base
        return TwistedPoly._wrap(B, tuple(B.neg(c) for c in self.coeffs))

    def __sub__(self, other: TwistedPoly) -> TwistedPoly:
        return self + (-other)

    def __mul__(self, other) -> TwistedPoly:
        if not isinstance(other, TwistedPoly):
            return self * TwistedPoly.const(self.base, other)
        self._check(other)
        deg = self.degree + other.degree
        cap = DEFAULT.x_degree_cap
        if self.coeffs and other.coeffs and self.base.q ** deg > cap:
            raise BoundExceeded(f"twisted product of X-degree q^{deg} exceeds cap {cap}")
        return TwistedPoly._wrap(self.base, kernels.tw_mul(self.base.ctx, self.coeffs, other.coeffs))

    def __rmul__(self, other) -> TwistedPoly:
        return TwistedPoly.const(self.base, other) * self

    def scale(self, c) -> TwistedPoly:
        """Left scalar multiple c * f."""
        B = self.base
        c = _raw(B, c)
        return TwistedPoly(B, [B.mul(c, a) for a in self.coeffs])

    def __pow__(self, n: int) -> TwistedPoly:
        r = TwistedPoly.one(self.base)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other) -> bool:
        return isinstance(other, TwistedPoly) and self.base == other.base and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.base.key, self.coeffs))

    # -- as a function ---------------------------------------------------------

    def __call__(self, x, hom: RingHom | None = None):
        return tw_eval(self, x, hom)

    def base_change(self, hom: RingHom) -> TwistedPoly:
        if hom.src != self.base:
            raise ValueError(f"{hom} does not start at {self.base}")
        return TwistedPoly(hom.dst, [hom.map_raw(c) for c in self.coeffs])

    def inverse(self) -> TwistedPoly:
        """Two-sided inverse when c_0 is a unit and all higher c_i are nilpotent."""
        B = self.base
        if not self.coeffs or not B.is_unit(self.coeffs[0]):
            raise NotAUnit("constant term is not a unit")
        if any(B.is_unit(c) for c in self.coeffs[1:]):
            raise NotAUnit("higher coefficients must be nilpotent")
        u0inv = B.inv(self.coeffs[0])
        # self = u0 (1 + w); (1 + w)^-1 = sum (-w)^j terminates as w is nilpotent
        w = self.scale(u0inv) - TwistedPoly.one(B)
        negw = -w
        acc = TwistedPoly.one(B)
        term = TwistedPoly.one(B)
        while True:
            term = term * negw
            if not term.coeffs:
                break
            acc = acc + term
        return acc * TwistedPoly.const(B, u0inv)

    def __repr__(self) -> str:
        B = self.base
        q = B.q
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == B.zero:
                continue
            s = B.format(c)
            e = q ** i
            mon = "X" if e == 1 else f"X^{e}"
            if s == "1":
                terms.append(mon)
            elif "+" in s:
                terms.append(f"({s})*{mon}")
            else:
                terms.append(f"{s}*{mon}")
        return " + ".join(terms) if terms else "0"


# -- operations ------------------------------------------------------------------

def tw_mul(f: TwistedPoly, g: TwistedPoly) -> TwistedPoly:
    return f * g


def tw_eval(f: TwistedPoly, x, hom: RingHom | None = None):
    """f(x) = sum c_i x^(q^i); with ``hom`` the coefficients are pushed to hom.dst first."""
    g = f if hom is None else f.base_change(hom)
    if isinstance(x, AlgebraElement):
        if x.alg != g.base:
            raise ValueError(f"{x!r} is not in {g.base}")
        return AlgebraElement(g.base, kernels.tw_eval(g.base.ctx, g.coeffs, x.raw))
    return kernels.tw_eval(g.base.ctx, g.coeffs, x)


def as_linear_map(f: TwistedPoly, hom: RingHom | None = None) -> FqLinearMap:
    """Matrix of x -> f(x) on B' (B itself, or hom.dst) in the canonical F_p basis."""
    g = f if hom is None else f.base_change(hom)
    ctx = g.base.ctx
    return FqLinearMap.from_function(g.base, lambda x: kernels.tw_eval(ctx, g.coeffs, x))


def tw_right_divide(f: TwistedPoly, h: TwistedPoly) -> tuple[TwistedPoly, TwistedPoly]:
    """(g, r) with f = g*h + r and deg r < deg h."""
    B = f.base
    if h.base != B:
        raise ValueError("twisted polynomials over different bases")
    if not h.coeffs or not B.is_unit(h.coeffs[-1]):
        raise NotDivisible(f"leading coefficient of {h!r} is not a unit")
    e = h.degree
    lc_h = h.coeffs[-1]
    rem = list(f.coeffs)
    quo = [B.zero] * max(len(rem) - e, 0)
    ctx = B.ctx
    for top in range(len(rem) - 1, e - 1, -1):
        c = rem[top]
        if c == B.zero:
            continue
        j = top - e
        # (g_j tau^j)(lc_h tau^e) has leading term g_j lc_h^(q^j) tau^top
        gj = B.mul(c, B.inv(B.frob(lc_h, j)))
        quo[j] = gj
        for t, hc in enumerate(h.coeffs):
            rem[j + t] = B.sub(rem[j + t], B.mul(gj, B.frob(hc, j)))
    return (TwistedPoly._wrap(B, kernels.tw_trim(ctx, quo)),
            TwistedPoly._wrap(B, kernels.tw_trim(ctx, rem)))


def normalize(h: TwistedPoly) -> TwistedPoly:
    """lc^-1 * h, the monic additive polynomial with the same zero scheme."""
    if not h.coeffs:
        raise NotAUnit("zero polynomial cannot be normalized")
    lc = h.coeffs[-1]
    if not h.base.is_unit(lc):
        raise NotAUnit(f"leading coefficient of {h!r} is not a unit")
    return h.scale(h.base.inv(lc))


def is_separable(h: TwistedPoly) -> bool:
    """The X-coefficient (the formal derivative) is a unit."""
    return bool(h.coeffs) and h.base.is_unit(h.coeffs[0])
