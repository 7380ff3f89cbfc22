"""Level-(a) structures: the per-prime divisor test (A), the single test for (a) (B), and their comparison.

A candidate is a d-tuple y_1..y_d of a-torsion points; it defines the
A-linear map iota(x_1/a, ..., x_d/a) = sum_j e_{x_j}(y_j).  Both definitions
compare a division polynomial with prod (X - iota(x)) over a finite module.
Because iota is F_q-linear, that product is the additive "subspace
polynomial" of the images of an F_q-basis and is built one basis vector at
a time; ``method="product"`` multiplies out all q^n linear factors instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from ._kernels import kernels
from .algebra import AlgebraElement
from .apoly import APoly, factor, gl_order
from .bounds import DEFAULT, BoundExceeded, check_card
from .drinfeld import DrinfeldModule, characteristic_of, e_of
from .torsion import SplittingError, division_poly, splitting_extension, torsion_points


@dataclass
class LevelStructureCandidate:
    E: DrinfeldModule
    a: APoly
    ys: tuple                      # raw images of (1/a) e_j, j = 1..d
    factorization: list = field(default=None, repr=False)

    def __post_init__(self):
        self.ys = tuple(y.raw if isinstance(y, AlgebraElement) else tuple(y) for y in self.ys)
        if len(self.ys) != self.E.rank:
            raise ValueError(f"need {self.E.rank} basis images, got {len(self.ys)}")
        if self.factorization is None:
            self.factorization = factor(self.a)

    def is_well_defined(self) -> bool:
        """e_a(y_j) = 0 for every j."""
        ea = e_of(self.E, self.a).coeffs
        ctx = self.E.base.ctx
        return all(kernels.tw_eval(ctx, ea, y) == self.E.base.zero for y in self.ys)

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(self.E.base.code(y) for y in self.ys)

    def points(self) -> list[AlgebraElement]:
        return [AlgebraElement(self.E.base, y) for y in self.ys]

    def __repr__(self) -> str:
        B = self.E.base
        return f"iota(1/{self.a}) = ({', '.join(B.format(y) for y in self.ys)})"


@dataclass
class DivisorReport:
    lhs: tuple               # coefficients of the division polynomial
    rhs: tuple               # coefficients of prod (X - iota(x))
    form: str                # "tau" (index i <-> X^(q^i)) or "plain" (index = X-exponent)
    equal: bool
    first_mismatch: int | None    # X-exponent of the first differing coefficient
    prime: APoly | None = None

    def __bool__(self) -> bool:
        return self.equal


def _images(E: DrinfeldModule, zs: Sequence[tuple], n: int) -> list[tuple]:
    """e_T^i(z_j) for i < n: images of an F_q-basis of (A/(pi))^d-type modules."""
    ctx = E.base.ctx
    eT = E.e_T.coeffs
    out = []
    for z in zs:
        v = z
        for i in range(n):
            out.append(v)
            if i + 1 < n:
                v = kernels.tw_eval(ctx, eT, v)
    return out


def _span_values(E: DrinfeldModule, images: Sequence[tuple]) -> list[tuple]:
    """All F_q-combinations of the images, with multiplicity (q^len values)."""
    return kernels.span_values(E.base.ctx, list(images))


def _compare(E, lhs_tau: tuple, rhs: tuple, form: str, prime=None) -> DivisorReport:
    B = E.base
    q = B.q
    if form == "tau":
        lhs = lhs_tau
        n = max(len(lhs), len(rhs))
        for i in range(n):
            a = lhs[i] if i < len(lhs) else B.zero
            b = rhs[i] if i < len(rhs) else B.zero
            if a != b:
                return DivisorReport(lhs, rhs, form, False, q ** i, prime)
        return DivisorReport(lhs, rhs, form, True, None, prime)
    # plain polynomial: spread the additive coefficients to X-exponents q^i
    size = max(q ** (len(lhs_tau) - 1), len(rhs) - 1) + 1
    lhs = [B.zero] * size
    for i, c in enumerate(lhs_tau):
        lhs[q ** i] = c
    for e in range(size):
        b = rhs[e] if e < len(rhs) else B.zero
        if lhs[e] != b:
            return DivisorReport(tuple(lhs), rhs, form, False, e, prime)
    return DivisorReport(tuple(lhs), rhs, form, True, None, prime)


def divisor_product(E: DrinfeldModule, images: Sequence[tuple], method: str = "subspace") -> tuple:
    """prod over the F_q-span of ``images`` of (X - v)."""
    if method == "subspace":
        return kernels.subspace_poly(E.base.ctx, list(images))
    if method == "product":
        return kernels.roots_product(E.base.ctx, _span_values(E, images))
    raise ValueError(f"unknown method {method!r}")


def iota_eval(c: LevelStructureCandidate, x: Sequence[APoly]) -> AlgebraElement:
    """iota(sum_j (x_j/a) e_j) = sum_j e_{x_j}(y_j)."""
    E = c.E
    B = E.base
    if len(x) != E.rank:
        raise ValueError(f"expected {E.rank} components")
    acc = B.zero
    for xj, y in zip(x, c.ys):
        if xj.degree >= c.a.degree:
            raise ValueError(f"component {xj} is not reduced mod {c.a}")
        if xj:
            acc = B.add(acc, kernels.tw_eval(B.ctx, e_of(E, xj).coeffs, y))
    return AlgebraElement(B, acc)


def check_def_B(c: LevelStructureCandidate, method: str = "subspace") -> DivisorReport:
    """h_a(X) = prod over x in (A/(a))^d of (X - iota(x))."""
    E = c.E
    h = division_poly(E, c.a).h.coeffs
    rhs = divisor_product(E, _images(E, c.ys, c.a.degree), method)
    return _compare(E, h, rhs, "tau" if method == "subspace" else "plain")


def check_def_A(c: LevelStructureCandidate, method: str = "subspace") -> list[DivisorReport]:
    """For each prime pi | a: h_pi(X) = prod over x in (A/(pi))^d of (X - iota(x * a/pi))."""
    E = c.E
    ctx = E.base.ctx
    out = []
    for pi, _ in c.factorization:
        b = c.a // pi
        eb = e_of(E, b).coeffs
        zs = [kernels.tw_eval(ctx, eb, y) for y in c.ys]
        h = division_poly(E, pi).h.coeffs
        rhs = divisor_product(E, _images(E, zs, pi.degree), method)
        out.append(_compare(E, h, rhs, "tau" if method == "subspace" else "plain", prime=pi))
    return out


class _Checker:
    """Precomputed data for fast repeated A/B tests on one (E, a)."""

    def __init__(self, E: DrinfeldModule, a: APoly):
        self.E = E
        self.a = a
        self.ctx = E.base.ctx
        self.eT = E.e_T.coeffs
        self.fac = factor(a)
        self.h_a = division_poly(E, a).h.coeffs
        self.primes = []
        for pi, _ in self.fac:
            self.primes.append((pi.degree, e_of(E, a // pi).coeffs, division_poly(E, pi).h.coeffs))

    def _span(self, zs, n):
        ctx, eT = self.ctx, self.eT
        imgs = []
        for z in zs:
            v = z
            for i in range(n):
                imgs.append(v)
                if i + 1 < n:
                    v = kernels.tw_eval(ctx, eT, v)
        return kernels.subspace_poly(ctx, imgs)

    def def_B(self, ys) -> bool:
        return self._span(ys, self.a.degree) == self.h_a

    def def_A(self, ys) -> bool:
        ctx = self.ctx
        for deg_pi, eb, h_pi in self.primes:
            zs = [kernels.tw_eval(ctx, eb, y) for y in ys]
            if self._span(zs, deg_pi) != h_pi:
                return False
        return True


def _candidates(E: DrinfeldModule, a: APoly, max_card: int | None):
    pts = torsion_points(E, a).raw()
    check_card(len(pts) ** E.rank, f"level candidates for ({a}) over {E.base}", max_card)
    return pts, itertools.product(pts, repeat=E.rank)


def enumerate_level_structures(E: DrinfeldModule, a: APoly, mode: str,
                               max_card: int | None = None) -> list[LevelStructureCandidate]:
    """All d-tuples of a-torsion points over the base passing Definition ``mode`` ("A" or "B")."""
    if mode not in ("A", "B"):
        raise ValueError("mode must be 'A' or 'B'")
    chk = _Checker(E, a)
    test = chk.def_A if mode == "A" else chk.def_B
    _, cands = _candidates(E, a, max_card)
    return [LevelStructureCandidate(E, a, ys, chk.fac) for ys in cands if test(ys)]


def enumerate_both(E: DrinfeldModule, a: APoly, max_card: int | None = None):
    """(mode-A list, mode-B list, number of candidates) in one pass over the candidates."""
    chk = _Checker(E, a)
    pts, cands = _candidates(E, a, max_card)
    la, lb = [], []
    for ys in cands:
        if chk.def_A(ys):
            la.append(LevelStructureCandidate(E, a, ys, chk.fac))
        if chk.def_B(ys):
            lb.append(LevelStructureCandidate(E, a, ys, chk.fac))
    return la, lb, len(pts) ** E.rank


def count_ordered_bases(E: DrinfeldModule, a: APoly, points: Sequence[tuple]) -> int:
    """Brute force: d-tuples of points on which iota is injective on (A/(a))^d."""
    n = E.rank * a.degree
    target = E.base.q ** n
    count = 0
    for ys in itertools.product(points, repeat=E.rank):
        vals = _span_values(E, _images(E, ys, a.degree))
        if len(set(vals)) == target:
            count += 1
    return count


@dataclass
class EquivalenceReport:
    base: str
    module: str
    ideal: str
    candidates: int
    torsion: int
    count_A: int
    count_B: int
    equal: bool
    a_implies_b: bool
    definitions_coincide: bool
    prime_to_char: bool
    etale: dict | None
    witness: list | None
    set_A: list = field(repr=False, default_factory=list)
    set_B: list = field(repr=False, default_factory=list)

    @property
    def ok(self) -> bool:
        etale_ok = self.etale is None or self.etale.get("ok", True)
        return self.equal and self.a_implies_b and etale_ok

    def to_dict(self) -> dict:
        return {
            "base": self.base, "module": self.module, "ideal": self.ideal,
            "torsion_points": self.torsion, "candidates": self.candidates,
            "count_A": self.count_A, "count_B": self.count_B, "equal": self.equal,
            "a_implies_b": self.a_implies_b, "definitions_coincide": self.definitions_coincide,
            "prime_to_char": self.prime_to_char, "etale": self.etale,
            "witness": self.witness, "set_A": self.set_A,
        }


def equivalence_report(E: DrinfeldModule, a: APoly, max_card: int | None = None,
                       product_limit: int = 256, split: bool = False) -> EquivalenceReport:
    """Both lists, their set equality, the A => B direction pointwise, and the etale count.

    The pointwise A => B recheck multiplies out all linear factors whenever
    there are at most ``product_limit`` of them, so it does not share the
    subspace recursion with the enumeration.  With ``split`` a field base is
    also checked over the splitting extension of E[a] (see ``split_etale_check``).
    """
    B = E.base
    la, lb, ncand = enumerate_both(E, a, max_card)
    ka = sorted(c.key for c in la)
    kb = sorted(c.key for c in lb)
    equal = ka == kb
    witness = None
    if not equal:
        diff = sorted(set(ka) ^ set(kb))
        witness = list(diff[0])

    n_factors = B.q ** (E.rank * a.degree)
    method = "product" if n_factors <= product_limit else "subspace"
    a_implies_b = all(check_def_B(c, method).equal for c in la)

    fac = factor(a)
    info = characteristic_of(E)
    prime_to_char = info.pi_char is not None and all(pi != info.pi_char for pi, _ in fac)
    torsion = torsion_points(E, a)

    etale = None
    if B.is_field:
        etale = {"applies": prime_to_char}
        if prime_to_char:
            full = len(torsion) == n_factors
            predicted = gl_order(B.ground, a, E.rank) if full else 0
            brute = count_ordered_bases(E, a, torsion.raw())
            etale.update({"full_torsion": full, "predicted": predicted, "bases_bruteforce": brute,
                          "ok": predicted == brute == len(lb)})
            if split:
                etale["split"] = split_etale_check(E, a, max_card)
                etale["ok"] = etale["ok"] and etale["split"].get("ok", True)

    return EquivalenceReport(
        base=repr(B), module=repr(E.e_T), ideal=repr(a), candidates=ncand, torsion=len(torsion),
        count_A=len(la), count_B=len(lb), equal=equal, a_implies_b=a_implies_b,
        definitions_coincide=len(fac) == 1 and fac[0][1] == 1, prime_to_char=prime_to_char,
        etale=etale, witness=witness, set_A=[list(k) for k in ka], set_B=[list(k) for k in kb],
    )


def split_etale_check(E: DrinfeldModule, a: APoly, max_card: int | None = None) -> dict:
    """Over the splitting field l' of E[a]: count_A = count_B = |GL_d(A/(a))| = brute-force bases.

    Returns ``{"skipped": reason}`` when l' or the candidate space is out of bounds.
    """
    limit = DEFAULT.max_card if max_card is None else max_card
    try:
        sp = splitting_extension(E, a, max_card=limit)
    except (SplittingError, BoundExceeded) as exc:
        return {"skipped": str(exc)}
    E2 = E.base_change(sp.hom)
    n_points = sp.count
    if n_points ** E.rank > limit:
        return {"skipped": f"{n_points}^{E.rank} candidates over {E2.base} exceed {limit}"}
    la, lb, _ = enumerate_both(E2, a, limit)
    ka = sorted(c.key for c in la)
    kb = sorted(c.key for c in lb)
    predicted = gl_order(E.base.ground, a, E.rank)
    brute = count_ordered_bases(E2, a, torsion_points(E2, a).raw())
    return {"field": repr(E2.base), "degree": sp.degree, "count_A": len(la), "count_B": len(lb),
            "equal": ka == kb, "predicted": predicted, "bases_bruteforce": brute,
            "ok": ka == kb and predicted == brute == len(lb)}


def level_structures_over(E: DrinfeldModule, a: APoly, hom, mode: str = "B", max_card: int | None = None):
    """Enumerate on the base change E ⊗ B' (e.g. a splitting extension)."""
    return enumerate_level_structures(E.base_change(hom), a, mode, max_card)

