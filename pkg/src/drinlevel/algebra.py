"""Finite local rings B = l[Y]/(Y^k) with l = F_{q^m}, and F_p-linear algebra on them."""

from __future__ import annotations

import ast
import functools
import itertools
from typing import Callable, Iterator, Sequence

from ._kernels import kernels
from .bounds import check_card
from .fields import (FiniteField, extension_field, field_embedding,
                     ground_field, rel_degree_over)


class NotAUnit(ArithmeticError):
    pass


class ArtinLocalAlgebra:
    """B = l[Y]/(Y^k) over the ground field F_q.

    Raw elements are k-tuples of L-reps of l (see ``_pykernels``).  Codes are
    ``sum_j code_l(c_j) * |l|^j``, so the F_p coordinates are ordered as
    ``w^i Y^j`` with i fastest.
    """

    def __init__(self, ground: FiniteField, residue: FiniteField, k: int):
        if k < 1:
            raise ValueError("nilpotency index k must be >= 1")
        self.ground = ground
        self.residue = residue
        self.m = rel_degree_over(residue, ground)
        self.k = k
        self.p = ground.p
        self.q = ground.size
        self.Q = residue.size
        self.cardinality = self.Q ** k
        self.dim_p = residue.degree * k
        self.ctx = kernels.make_ctx(self.p, self.q, self.Q, k, residue.zech)
        self.zero = self.ctx.zero
        self.one = self.ctx.one

    # -- identity ------------------------------------------------------------

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.p, self.ground.degree, self.m, self.k)

    def __eq__(self, other) -> bool:
        return isinstance(other, ArtinLocalAlgebra) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        name = f"F_{self.Q}"
        if self.k > 1:
            name += f"[Y]/(Y^{self.k})"
        return name

    @property
    def is_field(self) -> bool:
        return self.k == 1

    # -- encodings -----------------------------------------------------------

    def code(self, x: tuple) -> int:
        fl = self.residue.from_lrep
        out = 0
        for c in reversed(x):
            out = out * self.Q + fl[c]
        return out

    def from_code(self, code: int) -> tuple:
        tl = self.residue.to_lrep
        out = []
        for _ in range(self.k):
            out.append(tl[code % self.Q])
            code //= self.Q
        return tuple(out)

    def coords(self, x: tuple) -> list[int]:
        code = self.code(x)
        out = []
        for _ in range(self.dim_p):
            out.append(code % self.p)
            code //= self.p
        return out

    def from_coords(self, coords: Sequence[int]) -> tuple:
        if len(coords) != self.dim_p:
            raise ValueError(f"{self}: expected {self.dim_p} coordinates, got {len(coords)}")
        code = 0
        for c in reversed(coords):
            code = code * self.p + (c % self.p)
        return self.from_code(code)

    def scalar(self, c: int) -> tuple:
        """Embed a ground-field code (an element of F_q) into B."""
        return (self.residue.to_lrep[c],) + (0,) * (self.k - 1)

    def lift(self, c: int) -> tuple:
        """Embed a residue-field code via the coefficient field l ⊂ B."""
        return (self.residue.to_lrep[c],) + (0,) * (self.k - 1)

    def residue_code(self, x: tuple) -> int:
        return self.residue.from_lrep[x[0]]

    @property
    def Y(self) -> tuple:
        if self.k == 1:
            return self.zero
        return (0, 1) + (0,) * (self.k - 2)

    @property
    def w(self) -> tuple:
        """The generator w of l over F_q (only when m > 1)."""
        if self.m == 1:
            raise ValueError(f"{self} has no generator w (m = 1)")
        return self.lift(self.q)

    def element(self, raw: tuple) -> AlgebraElement:
        return AlgebraElement(self, raw)

    def __call__(self, value) -> AlgebraElement:
        if isinstance(value, AlgebraElement):
            if value.alg != self:
                raise ValueError("element belongs to a different algebra")
            return value
        if isinstance(value, str):
            return parse_element(self, value)
        if isinstance(value, int):
            return AlgebraElement(self, self.scalar(value % self.p))
        return AlgebraElement(self, self.from_coords(list(value)))

    # -- raw arithmetic (thin wrappers over the kernels) ---------------------

    def add(self, x, y):
        return kernels.el_add(self.ctx, x, y)

    def sub(self, x, y):
        return kernels.el_sub(self.ctx, x, y)

    def neg(self, x):
        return kernels.el_neg(self.ctx, x)

    def mul(self, x, y):
        return kernels.el_mul(self.ctx, x, y)

    def frob(self, x, j: int = 1):
        return kernels.el_frob(self.ctx, x, j)

    def pow(self, x, e: int):
        if e < 0:
            return kernels.el_pow(self.ctx, self.inv(x), -e)
        return kernels.el_pow(self.ctx, x, e)

    def is_unit(self, x) -> bool:
        return x[0] != 0

    def is_nilpotent(self, x) -> bool:
        return x[0] == 0

    def inv(self, x):
        if x[0] == 0:
            raise NotAUnit(f"{self.format(x)} is not a unit in {self}")
        return kernels.el_inv(self.ctx, x)

    def nil_order(self, x) -> int:
        """Largest r with x in (Y^r); k for zero."""
        for j, c in enumerate(x):
            if c:
                return j
        return self.k

    # -- enumeration ---------------------------------------------------------

    def enumerate_elements(self, max_card: int | None = None) -> Iterator[tuple]:
        check_card(self.cardinality, f"enumerate {self}", max_card)
        for code in range(self.cardinality):
            yield self.from_code(code)

    def maximal_ideal(self) -> list[tuple]:
        """Elements of (Y), in code order."""
        return [x for x in self.enumerate_elements() if x[0] == 0]

    def basis(self) -> list[tuple]:
        """Canonical F_p basis (code p^i)."""
        return [self.from_code(self.p ** i) for i in range(self.dim_p)]

    # -- printing ------------------------------------------------------------

    def format(self, x: tuple) -> str:
        terms = []
        for j, c in enumerate(x):
            if c == 0:
                continue
            lc = _format_residue(self, self.residue.from_lrep[c])
            ypart = "" if j == 0 else ("Y" if j == 1 else f"Y^{j}")
            if not ypart:
                terms.append(lc)
            elif lc == "1":
                terms.append(ypart)
            elif "+" in lc:
                terms.append(f"({lc})*{ypart}")
            else:
                terms.append(f"{lc}*{ypart}")
        return "+".join(terms) if terms else "0"


def _format_ground(F: FiniteField, c: int) -> str:
    if F.base is None:
        return str(c)
    ds = F.coords(c)
    terms = []
    for t, d in enumerate(ds):
        if d == 0:
            continue
        mon = "" if t == 0 else ("x" if t == 1 else f"x^{t}")
        if not mon:
            terms.append(str(d))
        else:
            terms.append(mon if d == 1 else f"{d}*{mon}")
    return "+".join(terms) if terms else "0"


def _format_residue(B: ArtinLocalAlgebra, code: int) -> str:
    if B.m == 1:
        return _format_ground(B.ground, code)
    terms = []
    for i in range(B.m):
        c = code % B.q
        code //= B.q
        if c == 0:
            continue
        cs = _format_ground(B.ground, c)
        mon = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
        if not mon:
            terms.append(cs)
        elif cs == "1":
            terms.append(mon)
        elif "+" in cs:
            terms.append(f"({cs})*{mon}")
        else:
            terms.append(f"{cs}*{mon}")
    return "+".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def _cached_algebra(p: int, s: int, m: int, k: int) -> ArtinLocalAlgebra:
    return ArtinLocalAlgebra(ground_field(p, s), extension_field(p, s, m), k)


def algebra_new(p: int, s: int = 1, m: int = 1, k: int = 1, max_card: int | None = None) -> ArtinLocalAlgebra:
    """The algebra F_{q^m}[Y]/(Y^k) with q = p^s, moduli lexicographically least.

    >>> algebra_new(2, 1, 2, 1)
    F_4
    """
    if m < 1 or k < 1 or s < 1:
        raise ValueError("s, m, k must all be >= 1")
    check_card((p ** s) ** (m * k), "algebra_new", max_card)
    return _cached_algebra(p, s, m, k)


@functools.total_ordering
class AlgebraElement:
    """An element of an ArtinLocalAlgebra with operator overloading."""

    __slots__ = ("alg", "raw")

    def __init__(self, alg: ArtinLocalAlgebra, raw: tuple):
        self.alg = alg
        self.raw = tuple(raw)

    def _coerce(self, other) -> tuple:
        if isinstance(other, AlgebraElement):
            if other.alg != self.alg:
                raise ValueError("elements of different algebras")
            return other.raw
        if isinstance(other, int):
            return self.alg.scalar(other % self.alg.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return AlgebraElement(self.alg, self.alg.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return AlgebraElement(self.alg, self.alg.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return AlgebraElement(self.alg, self.alg.sub(o, self.raw))

    def __mul__(self, other):
        o = self._coerce(other)
        return AlgebraElement(self.alg, self.alg.mul(self.raw, o))

    __rmul__ = __mul__

    def __neg__(self):
        return AlgebraElement(self.alg, self.alg.neg(self.raw))

    def __pow__(self, e: int):
        return AlgebraElement(self.alg, self.alg.pow(self.raw, e))

    def inv(self) -> AlgebraElement:
        return AlgebraElement(self.alg, self.alg.inv(self.raw))

    def frobenius(self, j: int = 1) -> AlgebraElement:
        if j < 0:
            raise ValueError("j must be >= 0")
        return AlgebraElement(self.alg, self.alg.frob(self.raw, j))

    def is_unit(self) -> bool:
        return self.alg.is_unit(self.raw)

    def is_nilpotent(self) -> bool:
        return self.alg.is_nilpotent(self.raw)

    def residue(self) -> AlgebraElement:
        """Image under Y -> 0, as an element of the residue field algebra."""
        R = residue_algebra(self.alg)
        return AlgebraElement(R, self.raw[:1])

    @property
    def code(self) -> int:
        return self.alg.code(self.raw)

    def coords(self) -> list[int]:
        return self.alg.coords(self.raw)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.raw == self.alg.scalar(other % self.alg.p)
        return isinstance(other, AlgebraElement) and other.alg == self.alg and other.raw == self.raw

    def __lt__(self, other) -> bool:
        return self.code < other.code

    def __hash__(self) -> int:
        return hash((self.alg.key, self.raw))

    def __bool__(self) -> bool:
        return self.raw != self.alg.zero

    def __repr__(self) -> str:
        return self.alg.format(self.raw)


# -- module-level operations ---------------------------------------------------

def elem_arith(op: str, x: AlgebraElement, y: AlgebraElement | None = None):
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown operation {op!r}")


def is_unit(x: AlgebraElement) -> bool:
    return x.is_unit()


def is_nilpotent(x: AlgebraElement) -> bool:
    return x.is_nilpotent()


def frobenius(x: AlgebraElement, j: int) -> AlgebraElement:
    return x.frobenius(j)


def enumerate_elements(B: ArtinLocalAlgebra, max_card: int | None = None) -> Iterator[AlgebraElement]:
    for raw in B.enumerate_elements(max_card):
        yield AlgebraElement(B, raw)


def residue_algebra(B: ArtinLocalAlgebra) -> ArtinLocalAlgebra:
    if B.k == 1:
        return B
    return with_residue(B, B.residue, 1)


def with_residue(B: ArtinLocalAlgebra, residue: FiniteField, k: int | None = None) -> ArtinLocalAlgebra:
    """B-like algebra over a (possibly larger) residue field l' ⊇ l."""
    k = B.k if k is None else k
    if residue is extension_field(B.p, B.ground.degree, rel_degree_over(residue, B.ground)):
        return _cached_algebra(B.p, B.ground.degree, rel_degree_over(residue, B.ground), k)
    return ArtinLocalAlgebra(B.ground, residue, k)


class FqLinearMap:
    """An F_p-linear endomorphism of B: ``matrix[r][c]`` is coordinate r of f(e_c)."""

    def __init__(self, alg: ArtinLocalAlgebra, matrix: Sequence[Sequence[int]]):
        self.alg = alg
        self.matrix = [list(r) for r in matrix]

    @classmethod
    def from_function(cls, alg: ArtinLocalAlgebra, fn: Callable[[tuple], tuple]) -> FqLinearMap:
        cols = [alg.coords(fn(b)) for b in alg.basis()]
        n = alg.dim_p
        return cls(alg, [[cols[c][r] for c in range(n)] for r in range(n)])

    def apply(self, x: tuple) -> tuple:
        v = self.alg.coords(x)
        p = self.alg.p
        return self.alg.from_coords([sum(a * b for a, b in zip(row, v)) % p for row in self.matrix])

    def __matmul__(self, other: FqLinearMap) -> FqLinearMap:
        p = self.alg.p
        n = len(self.matrix)
        cols = list(zip(*other.matrix))
        return FqLinearMap(self.alg, [[sum(a * b for a, b in zip(self.matrix[r], cols[c])) % p
                                       for c in range(n)] for r in range(n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, FqLinearMap) and self.alg == other.alg and self.matrix == other.matrix

    def kernel_basis(self) -> list[list[int]]:
        return kernels.nullspace_mod_p(self.matrix, self.alg.p)


def linear_kernel(f: FqLinearMap) -> list[AlgebraElement]:
    """All elements of ker f, in code order."""
    return [AlgebraElement(f.alg, x) for x in linear_kernel_raw(f)]


def linear_kernel_raw(f: FqLinearMap) -> list[tuple]:
    alg = f.alg
    p = alg.p
    basis = f.kernel_basis()
    codes = set()
    pw = [p ** i for i in range(alg.dim_p)]
    for combo in itertools.product(range(p), repeat=len(basis)):
        digits = [0] * alg.dim_p
        for c, v in zip(combo, basis):
            if c:
                for i, d in enumerate(v):
                    digits[i] += c * d
        codes.add(sum((d % p) * w for d, w in zip(digits, pw)))
    return [alg.from_code(c) for c in sorted(codes)]


class RingHom:
    """The natural map l[Y]/(Y^k) -> l'[Y]/(Y^k') for l ⊆ l' and k' <= k.

    Covers reduction mod (Y^k') and extension of the residue field.
    """

    def __init__(self, src: ArtinLocalAlgebra, dst: ArtinLocalAlgebra):
        if src.ground is not dst.ground:
            raise ValueError("algebras over different ground fields")
        if dst.k > src.k:
            raise ValueError(f"no natural map {src} -> {dst}")
        self.src = src
        self.dst = dst
        table = field_embedding(src.residue, dst.residue, src.ground)
        sf = src.residue.from_lrep
        dt = dst.residue.to_lrep
        self._lmap = [dt[table[sf[a]]] for a in range(src.Q)]

    def __call__(self, x):
        if isinstance(x, AlgebraElement):
            return AlgebraElement(self.dst, self.map_raw(x.raw))
        return self.map_raw(x)

    def map_raw(self, x: tuple) -> tuple:
        lm = self._lmap
        return tuple(lm[c] for c in x[: self.dst.k])

    def __repr__(self) -> str:
        return f"RingHom({self.src} -> {self.dst})"


# -- expression parsing ----------------------------------------------------------

_NAMES_W = ("w", "ω", "omega")


def parse_element(B: ArtinLocalAlgebra, text: str) -> AlgebraElement:
    """Parse an expression in w (or ω), Y and x over B, e.g. ``"1+w*Y"``."""
    names = {"Y": AlgebraElement(B, B.Y)}
    for n in _NAMES_W:
        names[n] = AlgebraElement(B, B.lift(B.q)) if B.m > 1 else None
    if B.ground.degree > 1:
        names["x"] = AlgebraElement(B, B.scalar(B.p))
    return _eval_expr(text, names, lambda n: AlgebraElement(B, B.scalar(n % B.p)))


def _eval_expr(text: str, names: dict, const: Callable[[int], object]):
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return const(node.value)
        if isinstance(node, ast.Name):
            val = names.get(node.id)
            if val is None:
                raise ValueError(f"unknown name {node.id!r} in {text!r}")
            return val
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.UAdd):
            return ev(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError(f"exponent must be an integer literal in {text!r}")
                return ev(node.left) ** node.right.value
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)
