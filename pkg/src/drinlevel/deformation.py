"""Deformations of a Drinfeld module over artinian bases l[Y]/(Y^k), and quotient isogenies.

Deformations are taken in standard form: e_T = gamma_lift + c_1 tau + ... + c_d tau^d
with c_i lifting the coefficients of E0.  Two deformations are identified when
an isomorphism u (u e u^-1 = e') reduces to the identity modulo the maximal
ideal.  Between standard modules every such u is a scalar u0 in 1 + m_B:
comparing top degrees in u e = e' u forces deg u = 0.  So the scalars form a
complete generating set, and the "full" method re-derives the orbits from
every u of bounded tau-degree as an independent check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ._kernels import kernels
from .algebra import ArtinLocalAlgebra
from .apoly import APoly
from .bounds import check_card
from .drinfeld import DrinfeldError, DrinfeldModule, e_of
from .level import LevelStructureCandidate, _Checker
from .torsion import DivisionPolynomial, torsion_points
from .twisted import TwistedPoly, _raw, is_separable, tw_right_divide


class KernelNotStable(ArithmeticError):
    """h e_a is not right-divisible by h: ker h is not an A-submodule."""


@dataclass
class DeformationProblem:
    E0: DrinfeldModule
    B: ArtinLocalAlgebra
    gamma_lift: tuple = None     # raw element of B; defaults to the constant lift of gamma_0(T)

    def __post_init__(self):
        l = self.E0.base
        if l.k != 1:
            raise ValueError("E0 must live over a field")
        if (self.B.p, self.B.ground.degree, self.B.m) != (l.p, l.ground.degree, l.m):
            raise ValueError(f"{self.B} does not have residue field {l}")
        if not self.E0.is_standard:
            raise ValueError("E0 must be in standard form")
        g0 = self.E0.gamma_T.raw
        if self.gamma_lift is None:
            self.gamma_lift = self.B.lift(g0[0])
        else:
            self.gamma_lift = _raw(self.B, self.gamma_lift)
        if self.gamma_lift[0] != g0[0]:
            raise ValueError("gamma_lift does not reduce to gamma_0(T)")

    @property
    def rank(self) -> int:
        return self.E0.rank

    def module(self, coeffs: Sequence[tuple]) -> DrinfeldModule:
        return DrinfeldModule(self.B, TwistedPoly(self.B, [self.gamma_lift, *coeffs]), self.rank)


def enumerate_deformations(P: DeformationProblem, max_card: int | None = None) -> list[DrinfeldModule]:
    """All standard lifts (c_1..c_d) of E0 with constant term gamma_lift, in code order."""
    B = P.B
    d = P.rank
    m = B.maximal_ideal()
    check_card(len(m) ** d, f"deformations over {B}", max_card)
    lifts = []
    for i in range(1, d + 1):
        c0 = B.lift(P.E0.e_T.coeffs[i][0]) if i < len(P.E0.e_T.coeffs) else B.zero
        lifts.append(sorted((B.add(c0, x) for x in m), key=B.code))
    return [P.module(cs) for cs in itertools.product(*lifts)]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return [out[r] for r in sorted(out)]


def identity_isomorphisms(B: ArtinLocalAlgebra, degree: int, method: str = "generators") -> Iterable[TwistedPoly]:
    """Isomorphisms u = u0 + u_1 tau + ... reducing to the identity, tau-degree <= degree.

    ``generators``: every u with exactly one perturbation (u0 = 1 + x, or 1 + x tau^i).
    ``full``: every u with u0 in 1 + m_B and u_i in m_B.
    """
    m = [x for x in B.maximal_ideal() if x != B.zero]
    one = B.one
    if method == "generators":
        for i in range(degree + 1):
            for x in m:
                if i == 0:
                    yield TwistedPoly(B, [B.add(one, x)])
                else:
                    yield TwistedPoly(B, [one] + [B.zero] * (i - 1) + [x])
    elif method == "full":
        mz = [B.zero] + m
        check_card(len(mz) ** (degree + 1), f"isomorphisms over {B} of degree <= {degree}")
        for combo in itertools.product(mz, repeat=degree + 1):
            yield TwistedPoly(B, [B.add(one, combo[0]), *combo[1:]])
    else:
        raise ValueError(f"unknown method {method!r}")


@dataclass
class DeformationClass:
    representative: DrinfeldModule
    members: list[DrinfeldModule] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.members)


def deformation_classes(P: DeformationProblem, iso_degree: int | None = None, method: str = "generators",
                        max_card: int | None = None) -> list[DeformationClass]:
    """Orbits of the deformations under isomorphisms reducing to the identity."""
    defs = enumerate_deformations(P, max_card)
    index = {E.key: i for i, E in enumerate(defs)}
    uf = _UnionFind(len(defs))
    deg = 2 * P.rank if iso_degree is None else iso_degree
    B = P.B
    for u in identity_isomorphisms(B, deg, method):
        u_inv = u.inverse()
        for i, E in enumerate(defs):
            e2 = u * E.e_T * u_inv
            if e2.coeffs[0] != E.e_T.coeffs[0]:  # pragma: no cover - conjugation fixes gamma
                raise DrinfeldError("conjugation changed gamma(T)")
            j = index.get(tuple(B.code(c) for c in e2.coeffs))
            if j is not None:
                uf.union(i, j)
    return [DeformationClass(defs[g[0]], [defs[i] for i in g]) for g in uf.groups()]


def tangent_count_expected(E0: DrinfeldModule) -> int:
    """|l|^(d-1)."""
    return E0.base.cardinality ** (E0.rank - 1)


@dataclass
class LevelLiftReport:
    ideal: APoly
    count_A: int
    count_B: int
    classes_A: list          # canonical keys (module codes, point codes) of class representatives
    classes_B: list
    pairs_A: int
    pairs_B: int

    @property
    def equal(self) -> bool:
        return self.count_A == self.count_B and self.classes_A == self.classes_B

    def to_dict(self) -> dict:
        return {"ideal": repr(self.ideal), "count_A": self.count_A, "count_B": self.count_B,
                "pairs_A": self.pairs_A, "pairs_B": self.pairs_B, "equal": self.equal,
                "classes_A": self.classes_A, "classes_B": self.classes_B}


def _pair_classes(B, pairs: list[tuple], isos: list[TwistedPoly]) -> list:
    """Union-find over (E, ys) pairs under (E, y) -> (u e u^-1, u(y))."""
    index = {(E.key, tuple(B.code(y) for y in ys)): i for i, (E, ys) in enumerate(pairs)}
    uf = _UnionFind(len(pairs))
    for u in isos:
        u_inv = u.inverse()
        for i, (E, ys) in enumerate(pairs):
            e2 = u * E.e_T * u_inv
            key = (tuple(B.code(c) for c in e2.coeffs),
                   tuple(B.code(kernels.tw_eval(B.ctx, u.coeffs, y)) for y in ys))
            j = index.get(key)
            if j is not None:
                uf.union(i, j)
    keys = list(index)
    return sorted([list(keys[g[0]][0]), list(keys[g[0]][1])] for g in uf.groups())


def level_deformation_classes(P: DeformationProblem, iota0: LevelStructureCandidate,
                              iso_degree: int | None = None, max_card: int | None = None) -> LevelLiftReport:
    """Classes of (E, iota): E a deformation, iota a level structure lifting iota0, in both modes."""
    if iota0.E != P.E0:
        raise ValueError("iota0 is not a level structure of E0")
    B = P.B
    a = iota0.a
    d = P.rank
    pairs_A, pairs_B = [], []
    for E in enumerate_deformations(P, max_card):
        pts = torsion_points(E, a).raw()
        lifts = [[y for y in pts if y[0] == y0[0]] for y0 in iota0.ys]
        check_card(max(1, len(pts)) ** d, f"level lifts over {B}", max_card)
        chk = _Checker(E, a)
        for ys in itertools.product(*lifts):
            if chk.def_A(ys):
                pairs_A.append((E, ys))
            if chk.def_B(ys):
                pairs_B.append((E, ys))
    deg = 2 * d if iso_degree is None else iso_degree
    isos = list(identity_isomorphisms(B, deg))
    ca = _pair_classes(B, pairs_A, isos)
    cb = _pair_classes(B, pairs_B, isos)
    return LevelLiftReport(a, len(ca), len(cb), ca, cb, len(pairs_A), len(pairs_B))


@dataclass
class IsogenyWitness:
    remainders: dict            # repr(a) -> remainder of (h e_a) / h, must be 0
    identities: dict            # repr(a) -> h e_a == f_a h
    separable: bool
    f: dict = field(default_factory=dict, repr=False)    # repr(a) -> f_a

    @property
    def ok(self) -> bool:
        return all(not r for r in self.remainders.values()) and all(self.identities.values())


def quotient_isogeny(E: DrinfeldModule, h, samples: Sequence[APoly] | None = None):
    """(F, witness) with e'_a h = h e_a; F is defined by e'_T = (h e_T) / h."""
    hp = h.h if isinstance(h, DivisionPolynomial) else h
    if not hp.coeffs or not E.base.is_unit(hp.coeffs[-1]):
        raise KernelNotStable("h must have a unit leading coefficient")
    T = APoly.T(E.Fq)
    samples = list(samples) if samples is not None else [T, T + 1, T * T]
    if T not in samples:
        samples.insert(0, T)
    rems, ids, fs = {}, {}, {}
    for a in samples:
        ea = e_of(E, a)
        f_a, r = tw_right_divide(hp * ea, hp)
        rems[repr(a)] = r.coeffs
        ids[repr(a)] = hp * ea == f_a * hp
        fs[repr(a)] = f_a
    if rems[repr(T)]:
        raise KernelNotStable(f"h e_T has nonzero remainder {rems[repr(T)]} on division by h")
    F = DrinfeldModule(E.base, fs[repr(T)], E.rank)
    if F.e_T.unit_degree() != E.rank or F.gamma_T != E.gamma_T:
        raise KernelNotStable("quotient is not a module of the same rank and characteristic")
    for a in samples:
        ids[repr(a)] = ids[repr(a)] and e_of(F, a) == fs[repr(a)]
    return F, IsogenyWitness(rems, ids, is_separable(hp), fs)

