"""Picard groups of Spec-hat^(N), Z_inf-lattices as convex bodies, and models.

Line bundles on Spec-hat^(N) are classified by positive units of B_N up to
±1, so a Pic element is a finitely supported exponent vector over the primes
dividing N.  Lattices are handled through three exact body shapes; the
ellipsoid norm is an exact square root and its volume is compared with
``2^d`` through an interval enclosure of π.
"""
from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath
import sympy

from .budget import enumeration_budget
from .errors import BudgetExceeded, InputError
from .exactnum import factor_int, format_rat, prime_divisors, rat


# factor vectors and Pic ------------------------------------------------------


@dataclass(frozen=True)
class FactorVec:
    """Π p^e as the sorted tuple of (p, e) with e != 0."""

    exps: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        ps = [p for p, _ in self.exps]
        if ps != sorted(set(ps)) or any(e == 0 for _, e in self.exps):
            raise InputError("factor vector must be sorted, without repeats or zero exponents")

    @classmethod
    def from_dict(cls, d: dict) -> "FactorVec":
        return cls(tuple(sorted((int(p), int(e)) for p, e in d.items() if e)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.exps)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.exps)

    def __add__(self, other: "FactorVec") -> "FactorVec":
        d = self.as_dict()
        for p, e in other.exps:
            d[p] = d.get(p, 0) + e
        return FactorVec.from_dict(d)

    def __neg__(self) -> "FactorVec":
        return FactorVec(tuple((p, -e) for p, e in self.exps))

    def __sub__(self, other: "FactorVec") -> "FactorVec":
        return self + (-other)

    @property
    def is_trivial(self) -> bool:
        return not self.exps

    def value(self) -> Fraction:
        out = Fraction(1)
        for p, e in self.exps:
            out *= Fraction(p) ** e
        return out

    def to_json(self) -> dict:
        return {str(p): e for p, e in self.exps}

    def __str__(self) -> str:
        if not self.exps:
            return "O"
        return " ⊗ ".join(f"O(log {p})" if e == 1 else f"O(log {p})^{e}" for p, e in self.exps)


def pic_limit_element(lam) -> FactorVec:
    """The class O(log λ) in Pic of the limit, λ a positive rational."""
    lam = rat(lam)
    if lam <= 0:
        raise InputError("λ must be a positive rational")
    d = {p: e for p, e in factor_int(lam.numerator)}
    for p, e in factor_int(lam.denominator):
        d[p] = d.get(p, 0) - e
    return FactorVec.from_dict(d)


def pic_limit_value(v: FactorVec) -> Fraction:
    return v.value()


@dataclass(frozen=True)
class PicGroup:
    """Pic(Spec-hat^(N)): free abelian on O(log p), p | N."""

    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N <= 1:
            raise InputError(f"N must be an integer > 1, got {self.N!r}")

    @property
    def primes(self) -> tuple[int, ...]:
        return prime_divisors(self.N)

    @property
    def rank(self) -> int:
        return len(self.primes)

    @property
    def basis(self) -> list[FactorVec]:
        return [FactorVec(((p, 1),)) for p in self.primes]

    @property
    def labels(self) -> list[str]:
        return [f"log {p}" for p in self.primes]

    def contains(self, v: FactorVec) -> bool:
        return all(self.N % p == 0 for p in v.support)

    def element(self, exps: dict) -> FactorVec:
        v = FactorVec.from_dict(exps)
        if not self.contains(v):
            raise InputError(f"{v} is not supported on the primes of {self.N}")
        return v

    def bundle(self, lam) -> FactorVec:
        """O(log λ) for λ a positive unit of B_N."""
        v = pic_limit_element(lam)
        if not self.contains(v):
            raise InputError(f"{format_rat(rat(lam))} is not a unit of B_{self.N}")
        return v

    def tensor(self, a: FactorVec, b: FactorVec) -> FactorVec:
        return self.element((a + b).as_dict())

    def inverse(self, a: FactorVec) -> FactorVec:
        return -a

    def coordinates(self, a: FactorVec) -> tuple[int, ...]:
        d = a.as_dict()
        return tuple(d.get(p, 0) for p in self.primes)

    def include(self, a: FactorVec, target: "PicGroup") -> FactorVec:
        """Pullback along Spec-hat^(target.N) -> Spec-hat^(N), for N | target.N."""
        if target.N % self.N:
            raise InputError(f"{self.N} does not divide {target.N}")
        return target.element(a.as_dict())

    def to_json(self) -> dict:
        return {"rank": self.rank, "basis": self.labels}


def pic_group(N: int) -> PicGroup:
    return PicGroup(N)


def line_bundle_trivial_AN(N: int, rank: int = 1, scalar=1) -> bool:
    """A rank-one projective A_N-module is free, so its bundle is trivial.

    ``scalar`` is the gluing datum; only its validity is checked.
    """
    if N <= 1:
        raise InputError("N must be > 1")
    if rank != 1:
        raise InputError(f"only rank-one modules are classified here, got rank {rank}")
    if rat(scalar) == 0:
        raise InputError("gluing scalar must be nonzero")
    return True


def line_bundle_trivial_Z(rank: int = 1) -> bool:
    """Pic(Spec Z) = 0 since Z is factorial."""
    if rank != 1:
        raise InputError(f"only rank-one modules are classified here, got rank {rank}")
    return True


# exact square roots ---------------------------------------------------------------


@dataclass(frozen=True)
class SqrtRat:
    """The non-negative real sqrt(sq), compared exactly with rationals."""

    sq: Fraction

    def __post_init__(self):
        if self.sq < 0:
            raise InputError("square root of a negative number")

    @staticmethod
    def _square(other) -> Fraction | None:
        if isinstance(other, SqrtRat):
            return other.sq
        x = rat(other)
        return None if x < 0 else x * x

    def __le__(self, other) -> bool:
        s = self._square(other)
        return s is not None and self.sq <= s

    def __lt__(self, other) -> bool:
        s = self._square(other)
        return s is not None and self.sq < s

    def __ge__(self, other) -> bool:
        s = self._square(other)
        return s is None or self.sq >= s

    def __gt__(self, other) -> bool:
        s = self._square(other)
        return s is None or self.sq > s

    def __eq__(self, other) -> bool:
        if isinstance(other, SqrtRat):
            return self.sq == other.sq
        try:
            s = self._square(other)
        except (InputError, TypeError, ValueError):
            return NotImplemented
        return s is not None and self.sq == s

    def __hash__(self):
        return hash(("sqrt", self.sq))

    def __float__(self) -> float:
        return math.sqrt(self.sq)

    def exact(self) -> Fraction | None:
        """The rational value when sq is a rational square."""
        n, d = self.sq.numerator, self.sq.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        return Fraction(rn, rd) if rn * rn == n and rd * rd == d else None

    def __str__(self) -> str:
        e = self.exact()
        return format_rat(e) if e is not None else f"sqrt({format_rat(self.sq)})"


# convex bodies --------------------------------------------------------------------


MAX_DIM = 3


def _positive(r, what: str) -> Fraction:
    r = rat(r)
    if r <= 0:
        raise InputError(f"{what} must be positive")
    return r


def _check_point(body, x: Sequence) -> list[Fraction]:
    x = [rat(c) for c in x]
    if len(x) != body.dim:
        raise InputError(f"point has dimension {len(x)}, body has dimension {body.dim}")
    return x


@dataclass(frozen=True)
class Octahedron:
    d: int
    r: Fraction

    def __post_init__(self):
        if not 1 <= self.d:
            raise InputError("dimension must be >= 1")
        object.__setattr__(self, "r", _positive(self.r, "radius"))

    @property
    def dim(self) -> int:
        return self.d

    def norm(self, x: Sequence) -> Fraction:
        return sum((abs(c) for c in _check_point(self, x)), Fraction(0)) / self.r

    def volume(self) -> Fraction:
        return Fraction(2**self.d) * self.r**self.d / math.factorial(self.d)

    def volume_exceeds(self, t) -> bool:
        return self.volume() > rat(t)

    def integer_bounds(self) -> list[int]:
        return [math.floor(self.r)] * self.d

    def describe(self) -> str:
        return f"oct:{format_rat(self.r)} (d={self.d})"


@dataclass(frozen=True)
class Box:
    rs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.rs:
            raise InputError("box needs at least one side")
        object.__setattr__(self, "rs", tuple(_positive(r, "half-side") for r in self.rs))

    @property
    def dim(self) -> int:
        return len(self.rs)

    def norm(self, x: Sequence) -> Fraction:
        return max(abs(c) / r for c, r in zip(_check_point(self, x), self.rs))

    def volume(self) -> Fraction:
        out = Fraction(1)
        for r in self.rs:
            out *= 2 * r
        return out

    def volume_exceeds(self, t) -> bool:
        return self.volume() > rat(t)

    def integer_bounds(self) -> list[int]:
        return [math.floor(r) for r in self.rs]

    def describe(self) -> str:
        return "box:" + ",".join(format_rat(r) for r in self.rs)


# 2^d / V_d where V_d is the unit-ball volume: 1, 4/π, 6/π
_PI_POWER = {1: 0, 2: 1, 3: 1}
_BALL_RATIO = {1: Fraction(1), 2: Fraction(4), 3: Fraction(6)}


def _pi_squared_exceeds(t: Fraction) -> bool:
    """Decide π^2 > t by tightening an interval enclosure (π^2 is irrational)."""
    iv = mpmath.iv
    saved = iv.prec
    prec = 53
    try:
        while True:
            iv.prec = prec
            sq = iv.pi ** 2
            tv = iv.mpf(t.numerator) / t.denominator
            if sq.a > tv.b:
                return True
            if sq.b < tv.a:
                return False
            prec *= 2
    finally:
        iv.prec = saved


@dataclass(frozen=True)
class Ellipsoid:
    """{x : x^T Q x <= 1} for a symmetric positive-definite rational Q."""

    Q: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(rat(c) for c in row) for row in self.Q)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise InputError("Q must be a nonempty square matrix")
        if any(rows[i][j] != rows[j][i] for i in range(d) for j in range(d)):
            raise InputError("Q must be symmetric")
        M = sympy.Matrix(d, d, lambda i, j: sympy.Rational(rows[i][j].numerator,
                                                            rows[i][j].denominator))
        if any(M[:k, :k].det() <= 0 for k in range(1, d + 1)):
            raise InputError("Q must be positive definite (a leading minor is <= 0)")
        object.__setattr__(self, "Q", rows)
        object.__setattr__(self, "_det", _frac(M.det()))
        inv = M.inv()
        object.__setattr__(self, "_inv_diag", tuple(_frac(inv[i, i]) for i in range(d)))

    @property
    def dim(self) -> int:
        return len(self.Q)

    @property
    def det(self) -> Fraction:
        return self._det

    def quad(self, x: Sequence) -> Fraction:
        x = _check_point(self, x)
        return sum((self.Q[i][j] * x[i] * x[j] for i in range(self.dim) for j in range(self.dim)),
                   Fraction(0))

    def norm(self, x: Sequence) -> SqrtRat:
        return SqrtRat(self.quad(x))

    def volume_exceeds(self, t) -> bool:
        """Exact comparison of V_d / sqrt(det Q) with t = 2^d only."""
        d = self.dim
        if rat(t) != 2**d:
            raise InputError("ellipsoid volumes are only compared with 2^d")
        if d not in _BALL_RATIO:
            raise InputError("ellipsoids are supported up to dimension 3")
        # V_d / sqrt(det) > 2^d  <=>  (pi^k)^2 > (2^d / c_d)^2 det with c_1 = 2
        bound = _BALL_RATIO[d] ** 2 * self.det
        if _PI_POWER[d] == 0:
            return bound < 1
        return _pi_squared_exceeds(bound)

    def volume(self) -> str:
        d = self.dim
        num = {1: "2", 2: "pi", 3: "4*pi/3"}[d]
        return f"{num}/sqrt({format_rat(self.det)})"

    def integer_bounds(self) -> list[int]:
        # |x_i| <= sqrt((Q^-1)_ii) on the ellipsoid
        return [math.isqrt(math.floor(c)) for c in self._inv_diag]

    def describe(self) -> str:
        return "ell:" + ";".join(",".join(format_rat(c) for c in row) for row in self.Q)


def _frac(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


ConvexBody = Union[Octahedron, Box, Ellipsoid]


def body_norm(b, x: Sequence):
    return b.norm(x)


def body_contains(b, x: Sequence) -> bool:
    return b.norm(x) <= 1


def parse_body(text: str, dim: int | None = None):
    """``oct:r``, ``box:a,b,...`` or ``ell:q11,q12;q21,q22`` (rows separated by ';')."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "oct":
            return Octahedron(dim or 1, Fraction(arg))
        if kind == "box":
            rs = [Fraction(a) for a in arg.split(",")]
            if dim is not None and len(rs) == 1:
                rs = rs * dim
            body = Box(tuple(rs))
        elif kind == "ell":
            body = Ellipsoid(tuple(tuple(Fraction(c) for c in row.split(","))
                                   for row in arg.split(";")))
        else:
            raise InputError(f"unknown body kind {kind!r}")
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot read a body from {text!r}") from None
    if dim is not None and body.dim != dim:
        raise InputError(f"body has dimension {body.dim}, expected {dim}")
    return body


@dataclass(frozen=True)
class ArakelovBundle:
    rank: int
    body: object

    def __post_init__(self):
        if self.rank != self.body.dim:
            raise InputError("rank must equal the body dimension")


@dataclass(frozen=True)
class SectionsCount:
    count: int
    points: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"count": self.count, "points": [list(p) for p in self.points]}


def _scan(body, budget: int | None = None) -> Iterable[tuple[int, ...]]:
    if body.dim > MAX_DIM:
        raise InputError(f"lattice enumeration is limited to dimension {MAX_DIM}")
    bounds = body.integer_bounds()
    size = 1
    for b in bounds:
        size *= 2 * b + 1
    budget = enumeration_budget() if budget is None else budget
    if size > budget:
        raise BudgetExceeded(f"bounding box has {size} lattice points", budget)
    ranges = [range(-b, b + 1) for b in bounds]
    for x in itertools.product(*ranges):
        if body.norm(x) <= 1:
            yield x


def global_sections_count(L) -> SectionsCount:
    body = L.body if isinstance(L, ArakelovBundle) else L
    pts = tuple(_scan(body))
    return SectionsCount(len(pts), pts)


@dataclass(frozen=True)
class MinkowskiVerdict:
    body: str
    dim: int
    volume: str
    exceeds: bool
    point: tuple[int, ...] | None

    @property
    def holds(self) -> bool:
        return not self.exceeds or self.point is not None

    def to_json(self) -> dict:
        return {
            "body": self.body, "dim": self.dim, "volume": self.volume,
            "exceeds": self.exceeds,
            "point": None if self.point is None else list(self.point),
            "holds": self.holds,
        }


def minkowski_check(b) -> MinkowskiVerdict:
    d = b.dim
    if d > MAX_DIM:
        raise InputError(f"Minkowski checks are limited to dimension {MAX_DIM}")
    exceeds = b.volume_exceeds(2**d)
    vol = b.volume()
    vol = format_rat(vol) if isinstance(vol, Fraction) else vol
    point = None
    for x in _scan(b):
        if any(x):
            point = x
            break
    return MinkowskiVerdict(b.describe(), d, vol, exceeds, point if exceeds or point else None)


def random_body(shape: str, d: int, rng: random.Random, large: bool = True,
                max_box: int = 4000):
    """A random body of the given shape; with ``large`` its volume exceeds 2^d."""
    for _ in range(10_000):
        if shape == "oct":
            r = Fraction(rng.randint(1, 60), 20)
            b = Octahedron(d, r)
        elif shape == "box":
            b = Box(tuple(Fraction(rng.randint(1, 60), 20) for _ in range(d)))
        elif shape == "ell":
            A = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)]
            if sympy.Matrix(A).det() == 0:
                continue
            s = Fraction(rng.randint(1, 30), 60)
            Q = [[s * sum(A[k][i] * A[k][j] for k in range(d)) for j in range(d)]
                 for i in range(d)]
            b = Ellipsoid(tuple(tuple(row) for row in Q))
        else:
            raise InputError(f"unknown shape {shape!r}")
        size = 1
        for m in b.integer_bounds():
            size *= 2 * m + 1
        if size > max_box:
            continue
        if not large or b.volume_exceeds(2**d):
            return b
    raise RuntimeError("could not sample a body")


# polynomials and models -------------------------------------------------------------


@dataclass(frozen=True)
class PolyQ:
    variables: tuple[str, ...]
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]  # sorted, no zero coefficients

    @classmethod
    def make(cls, variables: Sequence[str], terms: dict) -> "PolyQ":
        variables = tuple(variables)
        clean = {}
        for exps, c in terms.items():
            c = rat(c)
            if c:
                clean[tuple(exps)] = clean.get(tuple(exps), Fraction(0)) + c
        items = tuple(sorted(((e, c) for e, c in clean.items() if c),
                             key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0]))))
        return cls(variables, items)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, s) -> "PolyQ":
        s = rat(s)
        return PolyQ.make(self.variables, {e: c * s for e, c in self.terms})

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (exps, c) in enumerate(self.terms):
            mono = " ".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e)
            a = abs(c)
            coef = "" if a == 1 and mono else format_rat(a)
            body = " ".join(s for s in (coef, mono) if s)
            sign = ("-" if c < 0 else "") if i == 0 else (" - " if c < 0 else " + ")
            parts.append(sign + body)
        return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|([+\-*])|(.))")


def parse_poly(text: str, variables: Sequence[str] | None = None) -> PolyQ:
    """Read ``c X^a Y^b + ...``; juxtaposition and ``*`` both multiply."""
    tokens = []
    for m in _TOKEN.finditer(text):
        num, name, caret, op, bad = m.groups()
        if bad:
            raise InputError(f"unexpected {bad!r} in polynomial {text!r}")
        if num:
            tokens.append(("num", Fraction(num)))
        elif name:
            tokens.append(("var", name))
        elif caret:
            tokens.append(("^", None))
        elif op:
            tokens.append((op, None))
    if not tokens:
        raise InputError("empty polynomial")
    monos: list[tuple[Fraction, dict]] = []
    i, sign, coef, powers = 0, 1, Fraction(1), {}
    started, signed = False, False
    seen_var: list[str] = []

    def flush():
        if not started:
            raise InputError(f"dangling sign in polynomial {text!r}")
        monos.append((sign * coef, dict(powers)))

    while i < len(tokens):
        kind, val = tokens[i]
        if kind in ("+", "-"):
            if started:
                flush()
            elif signed:
                raise InputError(f"two signs in a row in polynomial {text!r}")
            sign = -1 if kind == "-" else 1
            coef, powers, started, signed = Fraction(1), {}, False, True
        elif kind == "num":
            coef *= val
            started = True
        elif kind == "var":
            if i + 1 < len(tokens) and tokens[i + 1][0] == "^":
                if i + 2 >= len(tokens) or tokens[i + 2][0] != "num" or \
                        tokens[i + 2][1].denominator != 1:
                    raise InputError(f"exponent must be a non-negative integer in {text!r}")
                powers[val] = powers.get(val, 0) + int(tokens[i + 2][1])
                i += 2
            else:
                powers[val] = powers.get(val, 0) + 1
            if val not in seen_var:
                seen_var.append(val)
            started = True
        elif kind != "*":
            raise InputError(f"misplaced '^' in polynomial {text!r}")
        i += 1
    flush()
    if variables is None:
        variables = sorted(seen_var, key=_var_key)
    else:
        missing = [v for v in seen_var if v not in variables]
        if missing:
            raise InputError(f"unknown variables {missing}")
    terms: dict = {}
    for c, pw in monos:
        e = tuple(pw.get(v, 0) for v in variables)
        terms[e] = terms.get(e, Fraction(0)) + c
    return PolyQ.make(variables, terms)


def _var_key(v: str):
    m = re.fullmatch(r"([A-Za-z_]+)(\d*)", v)
    if m:
        return (m.group(1), int(m.group(2) or -1))
    return (v, -1)


def parse_poly_file(text: str) -> list[PolyQ]:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError("no polynomials given")
    names: list[str] = []
    for ln in lines:
        for v in parse_poly(ln).variables:
            if v not in names:
                names.append(v)
    names.sort(key=_var_key)
    return [parse_poly(ln, names) for ln in lines]


def poly_norm(P: PolyQ) -> Fraction:
    return sum((abs(c) for _, c in P.terms), Fraction(0))


@dataclass(frozen=True)
class ModelRelation:
    original: PolyQ
    scale: Fraction
    poly: PolyQ

    @property
    def norm(self) -> Fraction:
        return poly_norm(self.poly)

    def to_json(self) -> dict:
        return {
            "original": str(self.original), "scale": format_rat(self.scale),
            "poly": str(self.poly), "norm": format_rat(self.norm),
            "homogeneous": self.poly.is_homogeneous,
        }


@dataclass(frozen=True)
class ModelPresentation:
    """Z_inf[T_0, ..., T_k] / (f_1, ..., f_m) with every f_j of norm <= 1."""

    generators: tuple[str, ...]
    relations: tuple[ModelRelation, ...] = field(default=())

    @property
    def projective(self) -> bool:
        return all(r.poly.is_homogeneous for r in self.relations)

    def to_json(self) -> dict:
        return {
            "base": "Zinf",
            "generators": list(self.generators),
            "relations": [r.to_json() for r in self.relations],
            "projective": self.projective,
        }

    def to_text(self) -> str:
        lines = [f"over Z_(inf), generators {', '.join(self.generators)}"]
        lines += [f"  {r.poly} = 0" for r in self.relations]
        if self.projective:
            lines.append("all relations homogeneous: the Proj variant applies")
        return "\n".join(lines)


def build_model(fs: Sequence[PolyQ]) -> ModelPresentation:
    if not fs:
        raise InputError("need at least one polynomial")
    names: list[str] = []
    for f in fs:
        if f.is_zero:
            raise InputError("the zero polynomial cannot be a relation")
        for v in f.variables:
            if v not in names:
                names.append(v)
    rels = []
    for f in fs:
        n = poly_norm(f)
        s = Fraction(1) if n <= 1 else 1 / n
        g = f.scale(s)
        assert poly_norm(g) <= 1
        rels.append(ModelRelation(f, s, g))
    return ModelPresentation(tuple(sorted(names, key=_var_key)), tuple(rels))
