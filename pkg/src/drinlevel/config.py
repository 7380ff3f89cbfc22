"""JSON experiment configs: schema checks, parsing of rings/elements/ideals, the default grid.

A config is one JSON object.  Every command reads ``cases`` (an explicit
list) and/or ``grid`` (a compact product description expanded in a fixed
order); ``bounds`` overrides enumeration limits.  Elements are written either
as expressions in the generators (``"1+Y"``, ``"w*Y"``) or as coordinate
lists over F_p in the canonical basis.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .algebra import ArtinLocalAlgebra, algebra_new
from .apoly import APoly, irreducibles
from .bounds import BoundExceeded, Bounds
from .drinfeld import DrinfeldError, DrinfeldModule, drinfeld_new


class ConfigError(ValueError):
    """Malformed config; the message names the offending field."""


COMMANDS = ("torsion", "equivalence", "tangent", "isogeny")


@dataclass
class Config:
    cases: list[dict]
    bounds: Bounds
    raw: dict = field(repr=False, default_factory=dict)


def _where(path: str, msg: str) -> ConfigError:
    return ConfigError(f"{path}: {msg}")


def _int(d: dict, key: str, path: str, default=None) -> int:
    v = d.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool):
        raise _where(f"{path}.{key}", f"expected an integer, got {v!r}")
    return v


def parse_base(spec: Any, path: str, max_card: int | None = None) -> ArtinLocalAlgebra:
    """``{"p": 2, "s": 1, "m": 2, "k": 1}`` or ``[p, s, m, k]``."""
    if isinstance(spec, list):
        if len(spec) != 4:
            raise _where(path, "base list must be [p, s, m, k]")
        spec = dict(zip("psmk", spec))
    if not isinstance(spec, dict):
        raise _where(path, f"expected a base description, got {spec!r}")
    p = _int(spec, "p", path)
    s = _int(spec, "s", path, 1)
    m = _int(spec, "m", path, 1)
    k = _int(spec, "k", path, 1)
    try:
        return algebra_new(p, s, m, k, max_card=max_card)
    except BoundExceeded:
        raise
    except Exception as exc:
        raise _where(path, str(exc)) from exc


def parse_element(B: ArtinLocalAlgebra, spec: Any, path: str):
    try:
        return B(spec)
    except Exception as exc:
        raise _where(path, f"cannot read {spec!r} as an element of {B}: {exc}") from exc


def parse_apoly(B: ArtinLocalAlgebra, spec: Any, path: str) -> APoly:
    """``"T^2+1"`` or a coefficient list (F_q codes, constant term first)."""
    F = B.ground
    try:
        if isinstance(spec, str):
            a = APoly.parse(F, spec)
        elif isinstance(spec, list) and all(isinstance(c, int) and 0 <= c < F.size for c in spec):
            a = APoly(F, spec)
        else:
            raise ValueError("expected an expression in T or a list of F_q codes")
    except ConfigError:
        raise
    except Exception as exc:
        raise _where(path, f"cannot read {spec!r} as a polynomial in T: {exc}") from exc
    if not isinstance(a, APoly) or not a.is_monic:
        raise _where(path, f"{spec!r} is not a monic polynomial in T")
    return a


def parse_module(B: ArtinLocalAlgebra, case: dict, path: str) -> DrinfeldModule:
    if "coeffs" not in case:
        raise _where(path, "missing 'coeffs'")
    coeffs = case["coeffs"]
    if not isinstance(coeffs, list) or not coeffs:
        raise _where(f"{path}.coeffs", "expected a nonempty list")
    gamma = parse_element(B, case.get("gamma", 0), f"{path}.gamma")
    cs = [parse_element(B, c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs)]
    try:
        return drinfeld_new(B, gamma, cs)
    except DrinfeldError as exc:
        raise _where(path, str(exc)) from exc


def special_prime(B: ArtinLocalAlgebra, name: str) -> APoly:
    """Named primes used by grids: ``quad`` is the least irreducible quadratic."""
    if name == "quad":
        return irreducibles(B.ground, 2)[0]
    return parse_apoly(B, name, "grid.primes")


def expand_grid(grid: dict, path: str = "grid") -> list[dict]:
    """Cases in the fixed order q, base, module, gamma, prime, exponent."""
    try:
        qs = grid["q"]
        bases = grid["bases"]
        modules = grid["modules"]
        gammas = grid.get("gammas", ["0"])
        primes = grid.get("primes", ["T"])
        exps = grid.get("exponents", [1])
    except KeyError as exc:
        raise _where(path, f"missing {exc}") from exc
    cases = []
    for q, (m, k), cs, g, pi, n in itertools.product(qs, bases, modules, gammas, primes, exps):
        if "Y" in str(g) and k == 1:
            continue  # Y-variants only exist on non-reduced bases
        cases.append({"base": {"p": q, "s": 1, "m": m, "k": k}, "gamma": g, "coeffs": cs,
                      "pi": pi, "n": n})
    return cases


def default_grid() -> dict:
    """The acceptance grid: q in {2,3}, five bases, three modules, four gammas, six ideals."""
    return {
        "q": [2, 3],
        "bases": [[1, 1], [2, 1], [1, 2], [1, 3], [2, 2]],
        "modules": [[1], [1, 1], [0, 1]],
        "gammas": ["0", "Y", "1", "1+Y"],
        "primes": ["T", "T+1", "quad"],
        "exponents": [1, 2],
    }


def lift_cases() -> list[dict]:
    """Level-structure lifts to l[Y]/(Y^k), k = 2, 3, for small special fibres."""
    out = []
    for p, m in ((2, 1), (3, 1), (2, 2)):
        for cs in ([1], [1, 1], [0, 1]):
            for g in ("0", "1"):
                for k in (2, 3):
                    for lift in (None, f"{g}+Y"):
                        for pi in ("T", "T+1"):
                            spec = {"k": k} if lift is None else {"k": k, "gamma_lift": lift}
                            out.append({"base": {"p": p, "s": 1, "m": m, "k": 1}, "gamma": g, "coeffs": cs,
                                        "pi": pi, "n": 1, "deformation": spec})
    return out


def tangent_cases() -> list[dict]:
    """(d, l) in {(1,F_2), (1,F_4), (2,F_2), (2,F_3), (2,F_4)}; full u-search on the two smallest."""
    return [
        {"base": [2, 1, 1, 1], "gamma": "0", "coeffs": [1], "oracle": True},
        {"base": [2, 1, 2, 1], "gamma": "w", "coeffs": [1]},
        {"base": [2, 1, 1, 1], "gamma": "0", "coeffs": [1, 1], "oracle": True},
        {"base": [2, 1, 1, 1], "gamma": "1", "coeffs": [0, 1]},
        {"base": [3, 1, 1, 1], "gamma": "0", "coeffs": [1, 1]},
        {"base": [3, 1, 1, 1], "gamma": "1", "coeffs": [2, 1]},
        {"base": [2, 1, 2, 1], "gamma": "0", "coeffs": [1, 1]},
        {"base": [2, 1, 2, 1], "gamma": "w", "coeffs": ["w", 1]},
    ]


def default_config(command: str) -> dict:
    """What a command runs when no ``--config`` is given."""
    if command == "tangent":
        return {"cases": tangent_cases()}
    if command == "isogeny":
        grid = dict(default_grid(), exponents=[0, 1, 2])
        return {"grid": grid}
    if command == "equivalence":
        return {"grid": "default", "cases": lift_cases()}
    return {"grid": "default"}


def parse_bounds(spec: Any, path: str = "bounds") -> Bounds:
    b = Bounds()
    if spec is None:
        return b
    if not isinstance(spec, dict):
        raise _where(path, "expected an object")
    for key, v in spec.items():
        if not hasattr(b, key):
            raise _where(f"{path}.{key}", "unknown bound")
        if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
            raise _where(f"{path}.{key}", f"expected a positive integer, got {v!r}")
        setattr(b, key, v)
    return b


def load_config(path: str | Path | None, command: str = "equivalence") -> Config:
    """Read and check a config file; ``None`` gives the command's default."""
    if path is None:
        raw = default_config(command)
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"{path}: {exc.strerror}") from exc
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return config_from_dict(raw)


def config_from_dict(raw: Any) -> Config:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - {"cases", "grid", "bounds", "description"}
    if unknown:
        raise ConfigError(f"unknown top-level field(s): {', '.join(sorted(unknown))}")
    cases = []
    if "grid" in raw:
        grid = raw["grid"]
        if grid == "default":
            grid = default_grid()
        if not isinstance(grid, dict):
            raise ConfigError("grid: expected an object or \"default\"")
        cases += expand_grid(grid)
    if "cases" in raw:
        if not isinstance(raw["cases"], list):
            raise ConfigError("cases: expected a list")
        for i, c in enumerate(raw["cases"]):
            if not isinstance(c, dict):
                raise ConfigError(f"cases[{i}]: expected an object")
        cases += raw["cases"]
    if not cases:
        raise ConfigError("config has neither 'cases' nor 'grid'")
    return Config(cases, parse_bounds(raw.get("bounds")), raw)
