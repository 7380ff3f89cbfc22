"""Drinfeld modules over B = l[Y]/(Y^k) for A = F_q[T] with the trivial line bundle.

A module is fixed by ``e_T = gamma(T) + c_1 tau + ... + c_N tau^N``; then
``e_a = a(e_T)`` for every a in A.  Over a local B the rank d is the index of
the highest unit coefficient, and everything above it must be nilpotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraElement, ArtinLocalAlgebra, RingHom
from .apoly import APoly, irreducibles
from .bounds import DEFAULT
from .twisted import TwistedPoly, _raw


class DrinfeldError(ValueError):
    pass


class NoUnitCoefficient(DrinfeldError):
    pass


class ZeroDegreeModule(DrinfeldError):
    pass


class NotCharacteristic(DrinfeldError):
    pass


class DrinfeldModule:
    """A Drinfeld module (B, e) of rank d; no validation here, see ``drinfeld_new``."""

    def __init__(self, base: ArtinLocalAlgebra, e_T: TwistedPoly, rank: int):
        if e_T.base != base:
            raise ValueError("e_T lives over a different base")
        self.base = base
        self.e_T = e_T
        self.rank = rank
        self._cache: dict[tuple, TwistedPoly] = {}

    @property
    def gamma_T(self) -> AlgebraElement:
        return self.e_T.coeff(0)

    @property
    def coeffs(self) -> list[AlgebraElement]:
        """c_1, ..., c_N."""
        return [self.e_T.coeff(i) for i in range(1, self.e_T.degree + 1)]

    @property
    def Fq(self):
        return self.base.ground

    @property
    def is_standard(self) -> bool:
        return self.e_T.degree == self.rank and self.base.is_unit(self.e_T.coeffs[-1])

    @property
    def key(self) -> tuple[int, ...]:
        """Canonical encoding: codes of gamma, c_1, ..., c_N."""
        return tuple(self.base.code(c) for c in self.e_T.coeffs)

    def gamma(self, a: APoly):
        """gamma(a) in B (raw), i.e. the constant term of e_a."""
        B = self.base
        g = self.e_T.coeffs[0] if self.e_T.coeffs else B.zero
        acc = B.zero
        for c in reversed(a.coeffs):
            acc = B.add(B.mul(acc, g), B.scalar(c))
        return acc

    def e(self, a: APoly) -> TwistedPoly:
        return e_of(self, a)

    def base_change(self, hom: RingHom) -> DrinfeldModule:
        return DrinfeldModule(hom.dst, self.e_T.base_change(hom), self.rank)

    def conjugate(self, u: TwistedPoly, u_inv: TwistedPoly | None = None) -> DrinfeldModule:
        """The isomorphic module with e'_T = u e_T u^-1 (same declared rank)."""
        u_inv = u.inverse() if u_inv is None else u_inv
        return DrinfeldModule(self.base, u * self.e_T * u_inv, self.rank)

    def __eq__(self, other) -> bool:
        return (isinstance(other, DrinfeldModule) and self.base == other.base
                and self.e_T == other.e_T and self.rank == other.rank)

    def __hash__(self) -> int:
        return hash((self.base.key, self.e_T.coeffs, self.rank))

    def __repr__(self) -> str:
        return f"DrinfeldModule(over {self.base}, rank {self.rank}, e_T = {self.e_T!r})"


def drinfeld_new(B: ArtinLocalAlgebra, gamma_T, coeffs: Sequence) -> DrinfeldModule:
    """Validate and build the module with e_T = gamma_T + sum c_i tau^i.

    The rank is the index of the highest unit coefficient; coefficients above
    it must be nilpotent (automatic over a local ring once the highest unit
    is taken).
    """
    raws = [_raw(B, gamma_T)] + [_raw(B, c) for c in coeffs]
    if all(c == B.zero for c in raws[1:]):
        raise ZeroDegreeModule("e_T has no tau-terms: the action is trivial")
    e_T = TwistedPoly(B, raws)
    d = e_T.unit_degree()
    if d < 1:
        raise NoUnitCoefficient("no unit coefficient among c_1..c_N")
    return DrinfeldModule(B, e_T, d)


def e_of(E: DrinfeldModule, a: APoly) -> TwistedPoly:
    """e_a = a(e_T) in B{tau} (Horner; constants act through F_q ⊂ B)."""
    if not a:
        raise ValueError("e_a is defined here for a != 0 only")
    hit = E._cache.get(a.coeffs)
    if hit is not None:
        return hit
    B = E.base
    cs = a.coeffs
    acc = TwistedPoly.const(B, B.scalar(cs[-1]))
    for c in reversed(cs[:-1]):
        acc = acc * E.e_T + TwistedPoly.const(B, B.scalar(c))
    E._cache[a.coeffs] = acc
    return acc


def rank_samples(Fq) -> list[APoly]:
    T = APoly.T(Fq)
    return [T, T + 1, T * T, irreducibles(Fq, 2)[0]]


@dataclass
class RankCheck:
    ok: bool
    witness: APoly | None = None

    def __bool__(self) -> bool:
        return self.ok


def rank_check(E: DrinfeldModule, samples: Sequence[APoly] | None = None) -> RankCheck:
    """Each sample e_a has its top unit coefficient at tau-index d*deg(a).

    Read in X-degrees this is rk e(a) = q^(d deg a), i.e. q^(-d deg(inf) inf(a))
    with deg(inf) = 1 and inf(a) = -deg a.  The constant term must be gamma(a).
    """
    d = E.rank
    for a in samples or rank_samples(E.Fq):
        ea = e_of(E, a)
        if ea.unit_degree() != d * a.degree:
            return RankCheck(False, a)
        if (ea.coeffs[0] if ea.coeffs else E.base.zero) != E.gamma(a):
            return RankCheck(False, a)
    return RankCheck(True)


def standardize(E: DrinfeldModule) -> tuple[DrinfeldModule, TwistedPoly]:
    """An isomorphic module in standard form and the isomorphism u.

    Returns ``(E_std, u)`` with ``u e_T = e_T,std u``.  Each pass conjugates by
    ``1 + sum delta_i tau^i`` with delta_i in (Y^r), which clears the excess
    coefficients modulo Y^(r+1); after k-1 passes they are zero.
    """
    B = E.base
    d = E.rank
    if E.e_T.unit_degree() != d:
        raise DrinfeldError("declared rank does not match the top unit coefficient")
    u_total = TwistedPoly.one(B)
    e = E.e_T
    for r in range(1, B.k):
        if e.degree <= d:
            break
        c = e.coeffs
        bar = [(cj[0],) + (0,) * (B.k - 1) for cj in c[: d + 1]]
        delta: dict[int, tuple] = {}
        for n in range(e.degree, d, -1):
            s = c[n]
            for j in range(d):
                i = n - j
                if i in delta:
                    s = B.add(s, B.mul(delta[i], B.frob(bar[j], i)))
            if n in delta:
                s = B.sub(s, B.mul(bar[0], delta[n]))
            delta[n - d] = B.neg(B.mul(s, B.inv(B.frob(bar[d], n - d))))
        top = max(delta)
        u = TwistedPoly(B, [B.one] + [delta.get(i, B.zero) for i in range(1, top + 1)])
        e = u * e * u.inverse()
        u_total = u * u_total
        excess = e.coeffs[d + 1:]
        if any(B.nil_order(x) < r + 1 for x in excess):  # pragma: no cover
            raise DrinfeldError("internal error: standardization step did not converge")
    if e.degree != d:  # pragma: no cover
        raise DrinfeldError("internal error: standardization left excess coefficients")
    return DrinfeldModule(B, e, d), u_total


@dataclass
class CharacteristicInfo:
    pi_char: APoly | None
    bound: int

    @property
    def general(self) -> bool:
        return self.pi_char is None

    def __repr__(self) -> str:
        if self.pi_char is None:
            return f"general characteristic (deg pi <= {self.bound})"
        return f"characteristic ({self.pi_char})"


def characteristic_of(E: DrinfeldModule, max_degree: int | None = None) -> CharacteristicInfo:
    """The monic irreducible pi with gamma(pi) non-unit, searched by degree."""
    bound = DEFAULT.char_degree if max_degree is None else max_degree
    for deg in range(1, bound + 1):
        for pi in irreducibles(E.Fq, deg):
            if not E.base.is_unit(E.gamma(pi)):
                return CharacteristicInfo(pi, bound)
    return CharacteristicInfo(None, bound)


def height_of(E: DrinfeldModule, pi: APoly) -> int:
    """Height at the characteristic: (first nonzero tau-index of e_pi) / deg pi."""
    if not E.base.is_field:
        raise DrinfeldError("height is defined here over a field base")
    if E.base.is_unit(E.gamma(pi)):
        raise NotCharacteristic(f"gamma({pi}) is a unit: {pi} is not the characteristic")
    e_pi = e_of(E, pi)
    first = next(i for i, c in enumerate(e_pi.coeffs) if c != E.base.zero)
    h, rest = divmod(first, pi.degree)
    if rest:  # pragma: no cover - impossible for a Drinfeld module
        raise DrinfeldError(f"inseparability index {first} not divisible by deg {pi}")
    return h
