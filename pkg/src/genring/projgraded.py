"""The graded monad R with R_d(n) = {λ in Z^n : Σ|λ_i| <= N^d} and its Proj.

Homogeneous localization is only needed at f1 = T, f2 = N T and their
product; ``proj_is_compactification`` glues the two charts and compares the
result with Spec-hat^(N) from :mod:`genring.spectra`.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import coeffmonads as cm
from . import spectra as sp
from .errors import InputError, InvariantViolation, Undecided
from .exactnum import format_rat, prime_divisors, primes_upto, rat


@dataclass(frozen=True)
class GradedRingR:
    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N <= 1:
            raise InputError(f"N must be an integer > 1, got {self.N!r}")

    def bound(self, d: int) -> int:
        return self.N**d

    def element(self, degree: int, coeffs: Sequence[int]) -> "GradedElement":
        return GradedElement(self.N, degree, tuple(int(c) for c in coeffs))

    def unit(self) -> "GradedElement":
        return self.element(0, (1,))

    def proj(self, k: int, n: int, degree: int = 0) -> "GradedElement":
        return self.element(degree, [int(i == k) for i in range(n)])

    @property
    def f1(self) -> "GradedElement":
        return self.element(1, (1,))

    @property
    def f2(self) -> "GradedElement":
        return self.element(1, (self.N,))

    @property
    def f1f2(self) -> "GradedElement":
        return graded_substitute(self.f1, [self.f2])

    def sample(self, degree: int, n: int, count: int, rng: random.Random) -> list["GradedElement"]:
        b = self.bound(degree)
        out = []
        while len(out) < count:
            v = [rng.randint(-b, b) for _ in range(n)]
            if sum(abs(x) for x in v) <= b:
                out.append(self.element(degree, v))
        return out


@dataclass(frozen=True)
class GradedElement:
    """``(λ_1, ..., λ_n) T^d`` in R_d(n)."""

    N: int
    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise InputError("degree must be >= 0")
        if not graded_contains(GradedRingR(self.N), self.degree, self.coeffs):
            raise InvariantViolation(
                f"{list(self.coeffs)} has l1 mass above {self.N}^{self.degree}"
            )

    @property
    def arity(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        body = ", ".join(map(str, self.coeffs))
        return f"({body})T^{self.degree}"

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": list(self.coeffs)}


def graded_contains(R: GradedRingR, d: int, v: Sequence) -> bool:
    if d < 0:
        raise InputError("degree must be >= 0")
    vals = [rat(x) for x in v]
    if any(x.denominator != 1 for x in vals):
        return False
    return sum(abs(x) for x in vals) <= R.N**d


def graded_substitute(t: GradedElement, args: Sequence[GradedElement]) -> GradedElement:
    """Coefficient substitution; degrees add."""
    if len(args) != t.arity:
        raise InputError(f"expected {t.arity} arguments, got {len(args)}")
    if not args:
        return t
    if len({a.degree for a in args}) != 1 or len({a.arity for a in args}) != 1:
        raise InputError("arguments must share degree and arity")
    if any(a.N != t.N for a in args):
        raise InputError("arguments come from different graded rings")
    n = args[0].arity
    out = [0] * n
    for ti, a in zip(t.coeffs, args):
        for j, aj in enumerate(a.coeffs):
            out[j] += ti * aj
    return GradedElement(t.N, t.degree + args[0].degree, tuple(out))


def _unary_scalar(f: GradedElement) -> tuple[int, int]:
    if f.arity != 1 or f.coeffs[0] == 0:
        raise InputError("localization needs a nonzero unary homogeneous element")
    return f.coeffs[0], f.degree


# degree-zero localizations --------------------------------------------------------------


@dataclass(frozen=True)
class LocalizationCert:
    member: bool
    d: int | None = None
    numerator: tuple[int, ...] | None = None  # u^d v, an element of R_{ed}

    def to_json(self) -> dict:
        return {"member": self.member, "d": self.d,
                "numerator": None if self.numerator is None else list(self.numerator)}


def deg0_localization_contains(R: GradedRingR, f: GradedElement, v: Sequence,
                               k_bound: int = 64) -> LocalizationCert:
    """Is ``v = x / f^d`` for some ``x`` in ``R_{ed}``?  Returns the smallest d."""
    u, e = _unary_scalar(f)
    if e < 1:
        raise InputError("f must have positive degree")
    v = [rat(x) for x in v]
    # structural obstructions: a denominator prime that u cannot clear, or
    # |u| = N^e, where scaling never changes the l1 budget
    for x in v:
        for p in prime_divisors(x.denominator):
            if u % p:
                return LocalizationCert(False)
    if abs(u) == R.N**e and sum(abs(x) for x in v) > 1:
        return LocalizationCert(False)
    ud = Fraction(1)
    for d in range(k_bound + 1):
        x = [ud * c for c in v]
        if graded_contains(R, e * d, x):
            return LocalizationCert(True, d, tuple(int(c) for c in x))
        ud *= u
    raise Undecided(f"no certificate with d <= {k_bound}", k_bound)


@dataclass
class LocalizationReport:
    label: str
    target: str
    checked: int = 0
    members: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "label": self.label, "target": self.target, "checked": self.checked,
            "members": self.members, "agree": self.agree,
            "disagreements": [[format_rat(x) for x in v] for v in self.disagreements[:5]],
        }


def localization_equals(R: GradedRingR, f: GradedElement, target: cm.CoeffMonad,
                        sample: Sequence[Sequence], label: str = "") -> LocalizationReport:
    rep = LocalizationReport(label or str(f), target.name)
    for v in sample:
        a = deg0_localization_contains(R, f, v).member
        b = target.contains(v)
        rep.checked += 1
        rep.members += a
        if a != b:
            rep.disagreements.append(tuple(rat(x) for x in v))
    return rep


def localization_sample(N: int, count: int, seed: int = 0, max_arity: int = 3) -> list[tuple]:
    """Rational vectors biased towards the l1 boundaries of Z, A_N and B_N."""
    rng = random.Random(seed)
    extra = [p for p in primes_upto(13) if N % p][:3]
    out: list[tuple] = []
    kinds = ("a_boundary", "b_boundary", "integer", "bad_den", "generic")
    while len(out) < count:
        n = rng.randint(1, max_arity)
        kind = kinds[len(out) % len(kinds)]
        if kind == "a_boundary":
            # l1 mass exactly 1 with N-power denominators, sometimes nudged past
            k = rng.randint(0, 3)
            den = N**k
            parts = _composition(den, n, rng)
            v = [Fraction(rng.choice((-1, 1)) * a, den) for a in parts]
            if rng.random() < 0.3:
                v[0] += Fraction(rng.choice((-1, 1)), den * N)
        elif kind == "b_boundary":
            d = rng.randint(0, 3)
            parts = _composition(N**d, n, rng)
            v = [Fraction(rng.choice((-1, 1)) * a, N ** rng.randint(0, 2)) for a in parts]
        elif kind == "integer":
            v = [Fraction(rng.randint(-40, 40)) for _ in range(n)]
        elif kind == "bad_den":
            v = [Fraction(rng.randint(-5, 5), rng.choice(extra) * N ** rng.randint(0, 1))
                 for _ in range(n)]
        else:
            v = [Fraction(rng.randint(-9, 9), rng.choice((1, N, N * N, *extra)))
                 for _ in range(n)]
        out.append(tuple(v))
    return out


def _composition(total: int, n: int, rng: random.Random) -> list[int]:
    """n non-negative integers summing to total."""
    cuts = sorted(rng.randint(0, total) for _ in range(n - 1))
    bounds = [0, *cuts, total]
    return [bounds[i + 1] - bounds[i] for i in range(n)]


# radicals ----------------------------------------------------------------------


@dataclass(frozen=True)
class RadicalWitness:
    m: int
    factor: str
    cofactor: GradedElement

    def to_json(self) -> dict:
        return {"m": self.m, "factor": self.factor, "cofactor": self.cofactor.to_json()}


def radical_witness(R: GradedRingR, t: GradedElement, safety: int = 256) -> RadicalWitness:
    """Smallest m with t^m = f_i r, r in R; f1 wins ties."""
    if t.arity != 1 or t.degree < 1:
        raise InputError("t must be a unary element of positive degree")
    u, d = t.coeffs[0], t.degree
    N = R.N
    for m in range(1, safety + 1):
        um, top = u**m, d * m - 1
        if abs(um) <= N**top:
            return RadicalWitness(m, "f1", R.element(top, (um,)))
        if um % N == 0 and abs(um // N) <= N**top:
            return RadicalWitness(m, "f2", R.element(top, (um // N,)))
    raise InvariantViolation(f"no radical witness for {t} below m = {safety}")


# P^n over F1 -------------------------------------------------------------------------

MAX_PROJ_N = 20


@dataclass(frozen=True)
class ProjF1:
    n: int
    points: tuple[frozenset, ...]  # S means the prime ideal (T_i : i in S)

    @property
    def count(self) -> int:
        return len(self.points)

    def chart(self, i: int) -> list[frozenset]:
        """Points of D+(T_i): primes not containing T_i."""
        return [S for S in self.points if i not in S]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "count": self.count,
            "points": [sorted(S) for S in self.points],
        }


def proj_points_F1(n: int) -> ProjF1:
    if not 0 <= n <= MAX_PROJ_N:
        raise InputError(f"n must be between 0 and {MAX_PROJ_N}")
    full = range(n + 1)
    pts = [frozenset(S) for r in range(n + 1) for S in itertools.combinations(full, r)]
    return ProjF1(n, tuple(pts))


@dataclass(frozen=True)
class ChartCheck:
    n: int
    chart_sizes: tuple[int, ...]
    intersection_sizes: dict
    covers: bool

    @property
    def ok(self) -> bool:
        n = self.n
        return (
            self.covers
            and all(c == 2**n for c in self.chart_sizes)
            and all(v == 2 ** (n - 1) for v in self.intersection_sizes.values())
        )


def proj_chart_check(n: int) -> ChartCheck:
    P = proj_points_F1(n)
    charts = [set(P.chart(i)) for i in range(n + 1)]
    union = set().union(*charts)
    inter = {(i, j): len(charts[i] & charts[j]) for i, j in itertools.combinations(range(n + 1), 2)}
    return ChartCheck(n, tuple(len(c) for c in charts), inter, union == set(P.points))


# Proj R --------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjChart:
    label: str
    f: GradedElement
    sections: cm.CoeffMonad
    space: sp.SpecSpace


@dataclass
class ProjReport:
    N: int
    prime_bound: int
    charts: list
    localizations: list
    points_agree: bool
    overlap_agree: bool
    opens_agree: bool
    subsets_checked: int
    mismatches: list = field(default_factory=list)

    @property
    def isomorphic(self) -> bool:
        return (self.points_agree and self.overlap_agree and self.opens_agree
                and all(r.agree for r in self.localizations))

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "prime_bound": self.prime_bound,
            "isomorphic": self.isomorphic,
            "charts": [{"label": c.label, "sections": c.sections.name} for c in self.charts],
            "localizations": [r.to_json() for r in self.localizations],
            "points_agree": self.points_agree,
            "overlap_agree": self.overlap_agree,
            "opens_agree": self.opens_agree,
            "subsets_checked": self.subsets_checked,
        }


def proj_charts(R: GradedRingR) -> list[ProjChart]:
    N = R.N
    return [
        ProjChart("D+(f1)", R.f1, cm.Z, sp.spec_z()),
        ProjChart("D+(f2)", R.f2, cm.AN(N), sp.spec_an(N)),
        ProjChart("D+(f1f2)", R.f1f2, cm.BN(N), sp.spec_bn(N)),
    ]


def proj_is_compactification(N: int, prime_bound: int = 50, samples: int = 500,
                             seed: int = 0, open_bound: int | None = None) -> ProjReport:
    """Glue D+(f1) and D+(f2) along D+(f1f2) and compare with Spec-hat^(N).

    Chart sections are checked against Z, A_N and B_N on a sample; the glued
    point set and overlap are compared at ``prime_bound``; a subset is open in
    the gluing iff its traces on both charts are open, which is compared with
    the closed-form criterion on every subset of the truncation at
    ``open_bound`` (default: the primes up to ``prime_bound``).
    """
    R = GradedRingR(N)
    charts = proj_charts(R)
    sample = localization_sample(N, samples, seed)
    locs = [localization_equals(R, c.f, c.sections, sample, c.label) for c in charts]
    z, a, b = (c.space for c in charts)
    target = sp.compactified(N)
    glued = set(sp.points(z, prime_bound)) | set(sp.points(a, prime_bound))
    points_agree = glued == set(sp.points(target, prime_bound))
    # the overlap seen from each chart: D(N) in Spec Z, D(1/N) in Spec A_N
    in_z = {pt for pt in sp.points(z, prime_bound) if pt in sp.principal_open(z, N)}
    in_a = {pt for pt in sp.points(a, prime_bound)
            if pt in sp.principal_open(a, Fraction(1, N))}
    overlap_agree = in_z == in_a == set(sp.points(b, prime_bound))
    primes = primes_upto(prime_bound if open_bound is None else open_bound)
    tr = sp.truncation(target, primes)
    mismatches = []
    for mask in range(tr.full + 1):
        u = tr.as_open(mask)
        if u.is_empty:
            glued_open = True
        else:
            # truncated points are always kept, so both traces are nonempty
            zc = frozenset(pt for pt in u.complement if z.contains(pt))
            ac = frozenset(pt for pt in u.complement if a.contains(pt))
            glued_open = sp.is_open(z, sp.OpenSubset(z, zc)) and sp.is_open(a, sp.OpenSubset(a, ac))
        if glued_open != sp.is_open(target, u):
            mismatches.append(mask)
    return ProjReport(N, prime_bound, charts, locs, points_agree, overlap_agree,
                      not mismatches, tr.full + 1, mismatches[:5])
