"""Division points E[a], division polynomials h_a, and the checks built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ._kernels import kernels
from .algebra import AlgebraElement, ArtinLocalAlgebra, RingHom, linear_kernel_raw, with_residue
from .apoly import APoly, factor
from .bounds import DEFAULT, BoundExceeded, check_card
from .drinfeld import DrinfeldModule, characteristic_of, e_of, height_of
from .fields import extension_field
from .twisted import TwistedPoly, as_linear_map, is_separable, normalize


class SplittingError(RuntimeError):
    pass


@dataclass
class DivisionPolynomial:
    ideal: APoly
    h: TwistedPoly

    @property
    def x_degree(self) -> int:
        return self.h.x_degree


def division_poly(E: DrinfeldModule, a: APoly) -> DivisionPolynomial:
    """h_a = normalize(e_a): the monic additive polynomial cutting out E[a]."""
    if not E.is_standard:
        raise ValueError("division_poly needs a module in standard form")
    return DivisionPolynomial(a, normalize(e_of(E, a)))


@dataclass
class TorsionSet:
    E: DrinfeldModule          # the module over the algebra holding the points
    a: APoly
    points: list[AlgebraElement]

    def __len__(self) -> int:
        return len(self.points)

    def raw(self) -> list[tuple]:
        return [x.raw for x in self.points]

    def is_submodule(self, bs: Sequence[APoly]) -> bool:
        """Closed under addition and under every e_b."""
        B = self.E.base
        pts = set(self.raw())
        for x in pts:
            for y in pts:
                if B.add(x, y) not in pts:
                    return False
        for b in bs:
            eb = e_of(self.E, b)
            for x in pts:
                if kernels.tw_eval(B.ctx, eb.coeffs, x) not in pts:
                    return False
        return True


def _over(E: DrinfeldModule, hom: RingHom | None) -> DrinfeldModule:
    return E if hom is None else E.base_change(hom)


def torsion_points(E: DrinfeldModule, a: APoly, hom: RingHom | None = None,
                   max_card: int | None = None) -> TorsionSet:
    """E[a](B') as the kernel of the F_p-linear map x -> e_a(x) on B'."""
    E2 = _over(E, hom)
    check_card(E2.base.cardinality, f"torsion over {E2.base}", max_card)
    f = as_linear_map(e_of(E2, a))
    pts = [AlgebraElement(E2.base, x) for x in linear_kernel_raw(f)]
    return TorsionSet(E2, a, pts)


def torsion_points_bruteforce(E: DrinfeldModule, a: APoly, hom: RingHom | None = None,
                              max_card: int | None = None) -> TorsionSet:
    """Same set by evaluating e_a on every element of B' (independent oracle)."""
    E2 = _over(E, hom)
    B = E2.base
    elems = list(B.enumerate_elements(max_card))
    idx = kernels.zero_scan(B.ctx, e_of(E2, a).coeffs, elems)
    return TorsionSet(E2, a, [AlgebraElement(B, elems[i]) for i in idx])


def log_q(n: int, q: int) -> int:
    e = 0
    while n > 1:
        n, r = divmod(n, q)
        if r:
            raise ValueError("not a power of q")
        e += 1
    return e


def separable_count(E: DrinfeldModule, a: APoly) -> int:
    """Number of distinct roots of e_a over an algebraic closure (field base)."""
    if not E.base.is_field:
        raise ValueError("separable degree is computed over a field base")
    ea = e_of(E, a)
    first = next(i for i, c in enumerate(ea.coeffs) if c != E.base.zero)
    return E.base.q ** (ea.degree - first)


def expected_torsion_count(E: DrinfeldModule, a: APoly) -> int:
    """q^(d deg a - h deg(pi) n) with pi^n || a the characteristic part (0 if none)."""
    q = E.base.q
    d = E.rank
    exp = d * a.degree
    info = characteristic_of(E)
    if info.pi_char is not None:
        for pi, n in factor(a):
            if pi == info.pi_char:
                exp -= height_of(E, pi) * pi.degree * n
    return q ** exp


@dataclass
class SplitResult:
    degree: int            # [l' : F_q]
    hom: RingHom
    count: int
    expected: int

    @property
    def algebra(self) -> ArtinLocalAlgebra:
        return self.hom.dst


def extension_hom(B: ArtinLocalAlgebra, t: int) -> RingHom:
    """B = l -> l' with [l' : l] = t."""
    F = extension_field(B.p, B.ground.degree, B.m * t)
    return RingHom(B, with_residue(B, F, B.k))


def splitting_extension(E: DrinfeldModule, a: APoly, max_degree: int | None = None,
                        max_card: int | None = None) -> SplitResult:
    """Least l' ⊇ l (by degree) over which E[a] has all its separable points."""
    B = E.base
    if not B.is_field:
        raise ValueError("splitting extensions are searched over a field base")
    bound = DEFAULT.split_degree if max_degree is None else max_degree
    limit = DEFAULT.max_card if max_card is None else max_card
    expected = expected_torsion_count(E, a)
    best = None
    t = 1
    while B.m * t <= bound and B.Q ** t <= limit:
        hom = extension_hom(B, t)
        n = len(torsion_points(E, a, hom, max_card=limit))
        best = (B.m * t, n)
        if n == expected:
            return SplitResult(B.m * t, hom, n, expected)
        t += 1
    raise SplittingError(f"no splitting extension of degree <= {bound} (size <= {limit}) for E[{a}]; "
                         f"best partial count {best} of {expected}")


@dataclass
class ModuleStructure:
    pi: APoly
    exponents: list[int]     # n_1 >= n_2 >= ... : E[pi^n] = sum A/(pi^n_i)
    counts: list[int] = field(default_factory=list)   # log_q |E[pi^j]|, j = 0..n

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def is_free(self, n: int) -> bool:
        return all(e == n for e in self.exponents)

    def describe(self) -> str:
        if not self.exponents:
            return "trivial"
        parts = []
        for e in sorted(set(self.exponents), reverse=True):
            mult = self.exponents.count(e)
            pi = f"({self.pi})" if "+" in repr(self.pi) else f"{self.pi}"
            ideal = pi if e == 1 else f"{pi}^{e}"
            if e > 1 and pi == f"{self.pi}":
                ideal = f"({ideal})" if "^" in repr(self.pi) else ideal
            parts.append(f"(A/{ideal})^{mult}")
        return " + ".join(parts)


def module_structure(E: DrinfeldModule, pi: APoly, n: int, hom: RingHom | None = None,
                     max_card: int | None = None) -> ModuleStructure:
    """Elementary divisors of E[pi^n](B') from the filtration sizes |E[pi^j]|."""
    if hom is None:
        hom = splitting_extension(E, pi ** n, max_card=max_card).hom
    q = E.base.q
    f = pi.degree
    counts = [0]
    for j in range(1, n + 1):
        counts.append(log_q(len(torsion_points(E, pi ** j, hom, max_card=max_card)), q))
    expected = expected_torsion_count(E, pi ** n)
    if q ** counts[-1] < expected:
        raise SplittingError(f"{hom.dst} too small: {q ** counts[-1]} points of {expected}")
    r = [(counts[j] - counts[j - 1]) // f for j in range(1, n + 1)] + [0]
    exps = []
    for j in range(n, 0, -1):
        exps += [j] * (r[j - 1] - r[j])
    return ModuleStructure(pi, exps, counts)


def predicted_structure(E: DrinfeldModule, pi: APoly, n: int) -> list[int]:
    """Free of rank d off the characteristic, rank d - h at it."""
    info = characteristic_of(E)
    rank = E.rank
    if info.pi_char is not None and info.pi_char == pi:
        rank -= height_of(E, pi)
    return [n] * rank


@dataclass
class PropertyReport:
    degree_ok: bool
    crt_ok: bool
    etale_ok: bool
    base_change_ok: bool
    details: dict

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.crt_ok and self.etale_ok and self.base_change_ok

    def failures(self) -> list[str]:
        names = ("degree_ok", "crt_ok", "etale_ok", "base_change_ok")
        return [n for n in names if not getattr(self, n)]


def default_base_change(B: ArtinLocalAlgebra) -> RingHom:
    """Reduction to the residue field, or l -> F_{q^2m} for a field base."""
    if B.k > 1:
        return RingHom(B, with_residue(B, B.residue, 1))
    return extension_hom(B, 2)


def property_checks(E: DrinfeldModule, a: APoly, b: APoly, hom: RingHom | None = None,
                    bc_hom: RingHom | None = None, max_card: int | None = None) -> PropertyReport:
    """Degree of h_a, E[ab] = E[a] x E[b] on points, separable <=> gamma(a) unit, base change."""
    q, d = E.base.q, E.rank
    h_a = division_poly(E, a)
    degree_ok = h_a.x_degree == q ** (d * a.degree)

    Ta = torsion_points(E, a, hom, max_card)
    Tb = torsion_points(E, b, hom, max_card)
    Tab = torsion_points(E, a * b, hom, max_card)
    B2 = Ta.E.base
    sums = {B2.add(x, y) for x in Ta.raw() for y in Tb.raw()}
    crt_ok = (len(Tab) == len(Ta) * len(Tb) and len(sums) == len(Ta) * len(Tb)
              and sums == set(Tab.raw()))

    etale_ok = is_separable(h_a.h) == E.base.is_unit(E.gamma(a))

    bc = bc_hom or default_base_change(E.base)
    mapped = h_a.h.base_change(bc)
    direct = division_poly(E.base_change(bc), a).h
    base_change_ok = mapped == direct

    return PropertyReport(degree_ok, crt_ok, etale_ok, base_change_ok, {
        "deg_h": h_a.x_degree, "|E[a]|": len(Ta), "|E[b]|": len(Tb), "|E[ab]|": len(Tab),
        "separable": is_separable(h_a.h), "base_change_target": repr(bc.dst),
    })


def tower_divisible(E: DrinfeldModule, pi: APoly, n: int) -> bool:
    """h_{pi^(n-1)} right-divides h_{pi^n} with zero remainder."""
    from .twisted import tw_right_divide

    hn = division_poly(E, pi ** n).h
    hm = division_poly(E, pi ** (n - 1)).h if n > 1 else TwistedPoly.one(E.base)
    return not tw_right_divide(hn, hm)[1].coeffs

