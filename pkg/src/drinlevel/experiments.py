"""One function per CLI command, each turning a single case dict into a record.

Records are plain JSON-ready dicts with a ``status`` of "pass", "fail" or
"skipped" (bound exceeded; the reason is kept).  Nothing here reads clocks
or randomness, so a record depends on the case and the bounds only.
"""

from __future__ import annotations

import hashlib
import json

from .algebra import algebra_new
from .apoly import APoly, factor
from .bounds import DEFAULT, BoundExceeded, Bounds
from .config import ConfigError, parse_apoly, parse_base, parse_element, parse_module, special_prime
from .deformation import (DeformationProblem, deformation_classes, level_deformation_classes,
                          quotient_isogeny, tangent_count_expected)
from .drinfeld import characteristic_of, height_of, standardize
from .level import enumerate_both, equivalence_report
from .torsion import (SplittingError, division_poly, module_structure, predicted_structure,
                      property_checks, splitting_extension, torsion_points)
from .twisted import TwistedPoly, is_separable


def apply_bounds(b: Bounds) -> None:
    """Install per-run bounds process-wide (each worker process calls this)."""
    for k, v in vars(b).items():
        setattr(DEFAULT, k, v)


def set_hash(keys) -> str:
    blob = json.dumps(sorted(list(k) for k in keys), separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _ideal(B, case: dict, path: str) -> tuple[APoly, int]:
    if "pi" not in case:
        raise ConfigError(f"{path}: missing 'pi'")
    pi = special_prime(B, case["pi"]) if isinstance(case["pi"], str) else parse_apoly(B, case["pi"], f"{path}.pi")
    if not pi.is_irreducible():
        raise ConfigError(f"{path}.pi: {pi} is not irreducible")
    n = case.get("n", 1)
    if not isinstance(n, int) or n < 0:
        raise ConfigError(f"{path}.n: expected a nonnegative integer")
    return pi, n


def _module(case: dict, path: str):
    if "base" not in case:
        raise ConfigError(f"{path}: missing 'base'")
    B = parse_base(case["base"], f"{path}.base")
    E = parse_module(B, case, path)
    if not E.is_standard:
        E, _ = standardize(E)
    return B, E


def _echo(B, E, **extra) -> dict:
    out = {"base": repr(B), "e_T": repr(E.e_T), "rank": E.rank}
    out.update({k: repr(v) if isinstance(v, APoly) else v for k, v in extra.items()})
    return out


def coprime_partner(a: APoly) -> APoly:
    """A small monic b coprime to a (for the splitting property)."""
    T = APoly.T(a.F)
    for b in (T, T + 1, T + 2 if a.F.size > 2 else T * T + T + 1):
        if all(pi != f for pi, _ in factor(b) for f, _ in factor(a)):
            return b
    raise ValueError(f"no small partner coprime to {a}")  # pragma: no cover


# -- equivalence ---------------------------------------------------------------------

def run_equivalence(case: dict, path: str = "case") -> dict:
    if "deformation" in case:
        return run_level_lifts(case, path)
    B, E = _module(case, path)
    pi, n = _ideal(B, case, path)
    if n < 1:
        raise ConfigError(f"{path}.n: level structures need n >= 1")
    a = pi ** n
    rec = _echo(B, E, ideal=a)
    try:
        rep = equivalence_report(E, a, split=bool(case.get("split", B.is_field)))
    except (BoundExceeded, SplittingError) as exc:
        rec.update(status="skipped", reason=str(exc))
        return rec
    d = rep.to_dict()
    set_a = d.pop("set_A")
    d.pop("base"), d.pop("module"), d.pop("ideal")
    rec.update(d)
    rec["set_hash"] = set_hash(set_a)
    rec["set"] = set_a if len(set_a) <= 64 else None
    rec["status"] = _status(rep.ok)
    return rec


def run_level_lifts(case: dict, path: str) -> dict:
    """Classes of (deformation, level structure) pairs in both modes, per level structure of E0."""
    spec = case["deformation"]
    if not isinstance(spec, dict):
        raise ConfigError(f"{path}.deformation: expected an object")
    l, E0 = _module(case, path)
    if not l.is_field:
        raise ConfigError(f"{path}.base: the special fibre must be a field")
    k = spec.get("k", 2)
    if not isinstance(k, int) or k < 1:
        raise ConfigError(f"{path}.deformation.k: expected a positive integer")
    Bk = algebra_new(l.p, l.ground.degree, l.m, k)
    gl = parse_element(Bk, spec["gamma_lift"], f"{path}.deformation.gamma_lift") if "gamma_lift" in spec else None
    pi, n = _ideal(l, case, path)
    a = pi ** n
    limit = spec.get("max_structures", 4)
    rec = _echo(l, E0, ideal=a, over=repr(Bk))
    try:
        P = DeformationProblem(E0, Bk, gl)
    except ValueError as exc:
        raise ConfigError(f"{path}.deformation: {exc}") from exc
    rec["gamma_lift"] = Bk.format(P.gamma_lift)
    try:
        la, lb, _ = enumerate_both(E0, a)
        if sorted(c.key for c in la) != sorted(c.key for c in lb):
            rec.update(status="fail", reason="level structures of E0 differ between the definitions")
            return rec
        lifts = []
        for iota0 in la[:limit]:
            r = level_deformation_classes(P, iota0)
            lifts.append({"iota0": list(iota0.key), "count_A": r.count_A, "count_B": r.count_B,
                          "pairs_A": r.pairs_A, "pairs_B": r.pairs_B, "equal": r.equal,
                          "set_hash": set_hash([c[0] + c[1] for c in r.classes_A])})
    except (BoundExceeded, SplittingError) as exc:
        rec.update(status="skipped", reason=str(exc))
        return rec
    rec["structures_E0"] = len(la)
    rec["lifts"] = lifts
    rec["equal"] = all(x["equal"] for x in lifts)
    rec["status"] = _status(rec["equal"])
    return rec


# -- torsion -------------------------------------------------------------------------

def run_torsion(case: dict, path: str = "case") -> dict:
    B, E = _module(case, path)
    pi, n = _ideal(B, case, path)
    if n < 1:
        raise ConfigError(f"{path}.n: expected n >= 1")
    a = pi ** n
    rec = _echo(B, E, pi=pi, n=n)
    info = characteristic_of(E)
    rec["characteristic"] = repr(info.pi_char) if info.pi_char is not None else None
    at_char = info.pi_char is not None and info.pi_char == pi
    try:
        h = division_poly(E, a)
        rec["h_x_degree"] = h.x_degree
        rec["h"] = repr(h.h)
        rec["points_over_base"] = len(torsion_points(E, a))
        b = coprime_partner(a)
        props = property_checks(E, a, b)
        rec["properties"] = {"partner": repr(b), "degree": props.degree_ok, "crt": props.crt_ok,
                             "etale": props.etale_ok, "base_change": props.base_change_ok}
        ok = props.ok
        if B.is_field:
            rec["height"] = height_of(E, pi) if at_char else None
            pred = predicted_structure(E, pi, n)
            try:
                sp = splitting_extension(E, a)
                ms = module_structure(E, pi, n, hom=sp.hom)
                rec["split_field"] = repr(sp.algebra)
                rec["structure"] = ms.describe()
                rec["exponents"] = ms.exponents
                rec["predicted"] = pred
                ok = ok and ms.exponents == pred
            except SplittingError as exc:
                rec["structure"] = None
                rec["structure_skipped"] = str(exc)
    except BoundExceeded as exc:
        rec.update(status="skipped", reason=str(exc))
        return rec
    rec["status"] = _status(ok)
    return rec


# -- tangent -------------------------------------------------------------------------

def run_tangent(case: dict, path: str = "case") -> dict:
    l, E0 = _module(case, path)
    if not l.is_field:
        raise ConfigError(f"{path}.base: the special fibre must be a field")
    d = E0.rank
    degrees = case.get("iso_degrees", [2 * d, 2 * d + 1])
    if not isinstance(degrees, list) or not all(isinstance(x, int) and x >= 0 for x in degrees):
        raise ConfigError(f"{path}.iso_degrees: expected a list of nonnegative integers")
    B = algebra_new(l.p, l.ground.degree, l.m, 2)
    P = DeformationProblem(E0, B)
    expected = tangent_count_expected(E0)
    rec = _echo(l, E0, over=repr(B))
    rec["expected"] = expected
    try:
        counts = {str(deg): len(deformation_classes(P, deg)) for deg in degrees}
        rec["counts"] = counts
        ok = all(c == expected for c in counts.values())
        if case.get("oracle", False):
            full = len(deformation_classes(P, 2 * d, method="full"))
            rec["full_search"] = full
            ok = ok and full == expected
    except BoundExceeded as exc:
        rec.update(status="skipped", reason=str(exc))
        return rec
    rec["status"] = _status(ok)
    return rec


# -- isogeny -------------------------------------------------------------------------

def run_isogeny(case: dict, path: str = "case") -> dict:
    B, E = _module(case, path)
    pi, n = _ideal(B, case, path)
    rec = _echo(B, E, pi=pi, n=n)
    try:
        h = division_poly(E, pi ** n).h if n else TwistedPoly.one(B)
        F, w = quotient_isogeny(E, h)
    except BoundExceeded as exc:
        rec.update(status="skipped", reason=str(exc))
        return rec
    gamma_unit = B.is_unit(E.gamma(pi ** n))
    rec["h"] = repr(h)
    rec["f_T"] = repr(F.e_T)
    rec["f_T_coeffs"] = [B.coords(c) for c in F.e_T.coeffs]
    rec["remainder_zero"] = all(not r for r in w.remainders.values())
    rec["identities"] = w.identities
    rec["separable"] = w.separable
    rec["gamma_unit"] = gamma_unit
    rec["identity_isogeny"] = F.e_T == E.e_T if n == 0 else None
    ok = w.ok and is_separable(h) == gamma_unit and (n > 0 or F.e_T == E.e_T)
    rec["status"] = _status(ok)
    return rec


RUNNERS = {
    "equivalence": run_equivalence,
    "torsion": run_torsion,
    "tangent": run_tangent,
    "isogeny": run_isogeny,
}
