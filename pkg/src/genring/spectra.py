"""Prime spectra, Zariski topologies, stalks and the compactification of Spec Z.

Infinite spectra are symbolic: a point is the generic point, a prime, or the
point at infinity, and opens are stored through their (finite) complements.
Finite monads get their ideals enumerated from first principles.  The
``truncated_topology`` helpers rebuild topologies from principal opens and
serve as an independent check on the closed-form open-set criteria.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import coeffmonads as cm
from .errors import InputError
from .exactnum import format_rat, is_prime, prime_divisors, primes_upto, radical, rat

GENERIC, PRIME, INFINITY = "generic", "prime", "infinity"


@dataclass(frozen=True, order=True)
class SpecPoint:
    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in (GENERIC, PRIME, INFINITY):
            raise InputError(f"unknown point kind {self.kind!r}")
        if self.kind == PRIME and not is_prime(self.p):
            raise InputError(f"{self.p!r} is not a prime")
        if self.kind != PRIME and self.p is not None:
            raise InputError("only prime points carry p")

    def __str__(self) -> str:
        return {GENERIC: "ξ", INFINITY: "∞"}.get(self.kind) or str(self.p)

    def sort_key(self):
        return ({GENERIC: 0, PRIME: 1, INFINITY: 2}[self.kind], self.p or 0)

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> "SpecPoint":
        return cls(data["kind"], data.get("p"))


XI = SpecPoint(GENERIC)
INF_PT = SpecPoint(INFINITY)


def prime_point(p: int) -> SpecPoint:
    return SpecPoint(PRIME, p)


def parse_point(text: str) -> SpecPoint:
    t = text.strip().lower()
    if t in ("xi", "ξ", "generic", "0"):
        return XI
    if t in ("inf", "infinity", "∞", "oo"):
        return INF_PT
    try:
        return prime_point(int(t))
    except ValueError:
        raise InputError(f"cannot read a point from {text!r}") from None


def _sorted(points: Iterable[SpecPoint]) -> list[SpecPoint]:
    return sorted(points, key=SpecPoint.sort_key)


# spaces -------------------------------------------------------------------------

KINDS = ("SpecZ", "SpecBN", "SpecAN", "CompactifiedN", "CompactifiedLimit", "FiniteSpec")


@dataclass(frozen=True)
class SpecSpace:
    kind: str
    N: int | None = None
    ideals: tuple = ()  # prime FiniteIdeals, FiniteSpec only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown space kind {self.kind!r}")
        if self.kind in ("SpecBN", "SpecAN", "CompactifiedN") and (
            not isinstance(self.N, int) or self.N <= 1
        ):
            raise InputError(f"{self.kind} needs N > 1")

    @property
    def name(self) -> str:
        if self.N is not None:
            return f"{self.kind}({self.N})"
        return self.kind

    def contains(self, pt: SpecPoint) -> bool:
        k = self.kind
        if k == "FiniteSpec":
            return False
        if pt.kind == GENERIC:
            return True
        if pt.kind == INFINITY:
            return k in ("SpecAN", "CompactifiedN", "CompactifiedLimit")
        if k in ("SpecBN", "SpecAN"):
            return self.N % pt.p != 0
        return True

    def require(self, pt: SpecPoint) -> None:
        if not self.contains(pt):
            raise InputError(f"{pt} is not a point of {self.name}")

    @property
    def has_infinity(self) -> bool:
        return self.contains(INF_PT)


def spec_z() -> SpecSpace:
    return SpecSpace("SpecZ")


def spec_bn(N: int) -> SpecSpace:
    return SpecSpace("SpecBN", N)


def spec_an(N: int) -> SpecSpace:
    return SpecSpace("SpecAN", N)


def compactified(N: int) -> SpecSpace:
    return SpecSpace("CompactifiedN", N)


def compactified_limit() -> SpecSpace:
    return SpecSpace("CompactifiedLimit")


def space_from_ident(text: str) -> SpecSpace:
    """``Z``, ``BN:k``, ``AN:k``, ``hat:k`` (Spec-hat^(k)) or ``hat`` (the limit)."""
    t = text.strip()
    if t in ("Z", "SpecZ"):
        return spec_z()
    if t in ("hat", "limit", "CompactifiedLimit"):
        return compactified_limit()
    head, _, arg = t.partition(":")
    makers = {"BN": spec_bn, "AN": spec_an, "hat": compactified}
    if head in makers and arg:
        try:
            return makers[head](int(arg))
        except ValueError:
            pass
    raise InputError(f"unknown space {text!r}")


def points(s: SpecSpace, prime_bound: int) -> list[SpecPoint]:
    if s.kind == "FiniteSpec":
        raise InputError("finite spectra list ideals, not symbolic points")
    if prime_bound < 2:
        raise InputError("prime_bound must be >= 2")
    out = [XI] + [prime_point(p) for p in primes_upto(prime_bound)]
    out = [pt for pt in out if s.contains(pt)]
    if s.has_infinity:
        out.append(INF_PT)
    return out


# closures -----------------------------------------------------------------------


@dataclass(frozen=True)
class PointSet:
    """A set of points: either the whole space or an explicit finite set."""

    whole: bool
    members: frozenset = frozenset()

    def __contains__(self, pt) -> bool:
        return self.whole or pt in self.members

    def to_json(self):
        if self.whole:
            return "all"
        return [pt.to_json() for pt in _sorted(self.members)]

    def __str__(self) -> str:
        if self.whole:
            return "all"
        return "{" + ", ".join(str(p) for p in _sorted(self.members)) + "}"


def closure(s: SpecSpace, pt: SpecPoint) -> PointSet:
    s.require(pt)
    if pt.kind == GENERIC:
        return PointSet(True)
    if pt.kind == INFINITY or s.kind in ("SpecZ", "SpecBN", "CompactifiedLimit"):
        return PointSet(False, frozenset([pt]))
    if s.kind == "SpecAN" or (s.kind == "CompactifiedN" and s.N % pt.p != 0):
        return PointSet(False, frozenset([pt, INF_PT]))
    return PointSet(False, frozenset([pt]))


def is_closed_point(s: SpecSpace, pt: SpecPoint) -> bool:
    c = closure(s, pt)
    return not c.whole and c.members == {pt}


def closure_of_set(s: SpecSpace, pts: Iterable[SpecPoint]) -> PointSet:
    members: set = set()
    for pt in pts:
        c = closure(s, pt)
        if c.whole:
            return PointSet(True)
        members |= c.members
    return PointSet(False, frozenset(members))


# open subsets ---------------------------------------------------------------------


@dataclass(frozen=True)
class OpenSubset:
    """A candidate open: empty, or the whole space minus a finite complement."""

    space: SpecSpace
    complement: frozenset | None  # None encodes the empty set

    @classmethod
    def empty(cls, s: SpecSpace) -> "OpenSubset":
        return cls(s, None)

    @classmethod
    def full(cls, s: SpecSpace) -> "OpenSubset":
        return cls(s, frozenset())

    @classmethod
    def avoiding(cls, s: SpecSpace, pts: Iterable[SpecPoint]) -> "OpenSubset":
        pts = frozenset(pts)
        for pt in pts:
            s.require(pt)
        return cls(s, pts)

    @property
    def is_empty(self) -> bool:
        return self.complement is None

    @property
    def is_full(self) -> bool:
        return self.complement == frozenset()

    def __contains__(self, pt: SpecPoint) -> bool:
        return self.complement is not None and pt not in self.complement

    def intersection(self, other: "OpenSubset") -> "OpenSubset":
        if self.is_empty or other.is_empty:
            return OpenSubset.empty(self.space)
        return OpenSubset(self.space, self.complement | other.complement)

    def union(self, other: "OpenSubset") -> "OpenSubset":
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return OpenSubset(self.space, self.complement & other.complement)

    def to_json(self) -> dict:
        if self.is_empty:
            return {"empty": True, "complement": None}
        return {"empty": False, "complement": [p.to_json() for p in _sorted(self.complement)]}


def is_open(s: SpecSpace, u: OpenSubset) -> bool:
    """Closed-form open-set criteria for the symbolic spaces."""
    if u.is_empty or u.is_full:
        return True
    comp = u.complement
    if XI in comp:
        return False  # every nonempty open contains the generic point
    k = s.kind
    if k in ("SpecZ", "SpecBN", "CompactifiedLimit"):
        return True
    if k == "SpecAN":
        return INF_PT in comp
    if k == "CompactifiedN":
        if INF_PT in comp:
            return True
        # infinity stays, so every prime of Spec B_N must stay as well
        return all(s.N % pt.p == 0 for pt in comp)
    raise InputError(f"is_open is not defined for {s.name}")


def principal_open(s: SpecSpace, f) -> OpenSubset:
    """D(f) for f in the global-sections monoid of an affine chart."""
    f = rat(f)
    if f == 0:
        return OpenSubset.empty(s)
    if s.kind == "SpecZ" or s.kind == "SpecBN":
        gs = global_sections(s)
        if not gs.contains([f]):
            raise InputError(f"{format_rat(f)} is not a section of {s.name}")
        return OpenSubset(s, frozenset(prime_point(p) for p in prime_divisors(f.numerator)
                                       if s.contains(prime_point(p))))
    if s.kind == "SpecAN":
        if not cm.AN(s.N).contains([f]):
            raise InputError(f"{format_rat(f)} is not in |A_{s.N}|")
        if abs(f) == 1:
            return OpenSubset.full(s)
        comp = {INF_PT} | {prime_point(p) for p in prime_divisors(f.numerator) if s.N % p}
        return OpenSubset(s, frozenset(comp))
    raise InputError(f"principal opens are only defined on affine charts, not {s.name}")


# brute-force topologies on truncations ------------------------------------------------


@dataclass(frozen=True)
class Truncation:
    """Finitely many points of a space; the remaining points are always kept.

    A nonzero bitmask ``S`` over ``pts`` stands for ``S`` together with every
    point outside the truncation; the zero mask is the empty set.
    """

    space: SpecSpace
    pts: tuple[SpecPoint, ...]

    @property
    def full(self) -> int:
        return (1 << len(self.pts)) - 1

    def mask(self, members: Iterable[SpecPoint]) -> int:
        m = 0
        for pt in members:
            if pt in self.pts:
                m |= 1 << self.pts.index(pt)
        return m

    def members(self, mask: int) -> list[SpecPoint]:
        return [pt for i, pt in enumerate(self.pts) if mask >> i & 1]

    def as_open(self, mask: int) -> OpenSubset:
        if mask == 0:
            return OpenSubset.empty(self.space)
        return OpenSubset(self.space, frozenset(self.members(self.full & ~mask)))


def truncation(s: SpecSpace, primes: Sequence[int]) -> Truncation:
    pts = [XI] + [prime_point(p) for p in primes]
    pts = [pt for pt in pts if s.contains(pt)]
    if s.has_infinity:
        pts.append(INF_PT)
    return Truncation(s, tuple(pts))


def close_lattice(masks: Iterable[int]) -> frozenset[int]:
    """Close a family of bitmasks under pairwise union and intersection."""
    family = set(masks)
    frontier = set(family)
    while frontier:
        new = set()
        for a in frontier:
            for b in family:
                for c in (a | b, a & b):
                    if c not in family:
                        new.add(c)
        family |= new
        frontier = new
    return frozenset(family)


def _chart_basis(kind: str, N: int | None, primes: Sequence[int]) -> list[tuple[SpecPoint, ...]]:
    """Principal opens D(f) as explicit point sets, f over T-smooth elements."""
    basis = []
    usable = [p for p in primes if kind != "SpecAN" or N % p]
    for r in range(len(usable) + 1):
        for ps in itertools.combinations(usable, r):
            kept = [XI] + [prime_point(p) for p in primes
                           if p not in ps and (kind != "SpecAN" or N % p)]
            basis.append(tuple(kept))
    if kind == "SpecAN":
        everything = [XI] + [prime_point(p) for p in primes if N % p] + [INF_PT]
        basis.append(tuple(everything))
    return basis


def truncated_topology(s: SpecSpace, primes: Sequence[int]) -> tuple[Truncation, frozenset[int]]:
    """The open sets of ``s`` seen on a truncation, built from principal opens.

    For Spec-hat^(N) a set is open iff its traces on the charts Spec Z and
    Spec A_N are open there.  For the limit the topology is generated by
    the topologies of all Spec-hat^(M) with M built from the given primes.
    """
    tr = truncation(s, primes)
    if s.kind in ("SpecZ", "SpecAN", "SpecBN"):
        kind = "SpecZ" if s.kind == "SpecBN" else s.kind
        masks = [tr.mask(b) for b in _chart_basis(kind, s.N, [p for p in primes
                                                              if s.contains(prime_point(p))])]
        return tr, close_lattice([0, tr.full] + masks)
    if s.kind == "CompactifiedN":
        z_tr, z_top = truncated_topology(spec_z(), primes)
        a_tr, a_top = truncated_topology(spec_an(s.N), primes)
        opens = []
        for mask in range(tr.full + 1):
            pts = tr.members(mask)
            if z_tr.mask([p for p in pts if p in z_tr.pts]) in z_top and \
                    a_tr.mask([p for p in pts if p in a_tr.pts]) in a_top:
                opens.append(mask)
        return tr, frozenset(opens)
    if s.kind == "CompactifiedLimit":
        gens: set[int] = set()
        for r in range(1, len(primes) + 1):
            for ps in itertools.combinations(primes, r):
                M = 1
                for p in ps:
                    M *= p
                _, top = truncated_topology(compactified(M), primes)
                gens |= top
        return tr, close_lattice(gens)
    raise InputError(f"no truncated topology for {s.name}")


def is_topology(full: int, family: frozenset[int]) -> bool:
    if 0 not in family or full not in family:
        return False
    return all(a | b in family and a & b in family for a in family for b in family)


# stalks and sections ---------------------------------------------------------------


def stalk(s: SpecSpace, pt: SpecPoint) -> cm.CoeffMonad:
    """The local monad at ``pt``; membership of a rational x is ``contains([x])``."""
    s.require(pt)
    if pt.kind == GENERIC:
        return cm.Q
    if pt.kind == PRIME:
        return cm.Zp(pt.p)
    if s.kind == "CompactifiedLimit":
        return cm.ZINF
    return cm.AN(s.N)


def sections_principal(s: SpecSpace, f) -> cm.CoeffMonad:
    """Sections over D(f), i.e. the localization of the chart at f."""
    f = rat(f)
    if f == 0:
        raise InputError("D(0) is empty; no localization at zero")
    base = global_sections(s)
    if s.kind not in ("SpecZ", "SpecBN", "SpecAN"):
        raise InputError(f"principal sections are computed on affine charts, not {s.name}")
    if not base.contains([f]):
        raise InputError(f"{format_rat(f)} is not a global section of {s.name}")
    num = abs(f.numerator)
    if s.kind == "SpecZ":
        return cm.Z if num == 1 else cm.BN(radical(num))
    if s.kind == "SpecBN":
        return cm.BN(radical(s.N * num))
    if abs(f) == 1:
        return cm.AN(s.N)
    return cm.BN(radical(s.N * num))


def global_sections(s: SpecSpace) -> cm.CoeffMonad:
    if s.kind == "SpecZ":
        return cm.Z
    if s.kind == "SpecBN":
        return cm.BN(s.N)
    if s.kind == "SpecAN":
        return cm.AN(s.N)
    if s.kind == "CompactifiedN":
        return cm.intersect([cm.Z, cm.AN(s.N)])
    if s.kind == "CompactifiedLimit":
        return cm.intersect([cm.Z, cm.ZINF])
    raise InputError(f"no global sections for {s.name}")


def chart_v2_sections(N: int, M: int) -> cm.CoeffMonad:
    """Sections of the chart V2 = Spec A_{NM} glued with Spec B_N."""
    return cm.intersect([cm.AN(N * M), cm.BN(N)])


# the projective system -------------------------------------------------------------


@dataclass(frozen=True)
class MorphismReport:
    N: int
    M: int
    continuous: bool
    is_identity: bool
    is_homeomorphism: bool
    witness: int | None
    opens_checked: int

    def to_json(self) -> dict:
        return {
            "source": f"hat:{self.N * self.M}",
            "target": f"hat:{self.N}",
            "continuous": self.continuous,
            "is_identity": self.is_identity,
            "is_homeomorphism": self.is_homeomorphism,
            "witness": self.witness,
            "opens_checked": self.opens_checked,
        }


def system_morphism(N: int, M: int, prime_bound: int = 13) -> MorphismReport:
    """f_N^{NM}: Spec-hat^(NM) -> Spec-hat^(N), the identity on points."""
    if N <= 1 or M <= 1:
        raise InputError("N and M must be > 1")
    src, tgt = compactified(N * M), compactified(N)
    primes = sorted(set(primes_upto(prime_bound)) | set(prime_divisors(N * M)))
    tr = truncation(tgt, primes)
    continuous = True
    homeo = True
    checked = 0
    for mask in range(tr.full + 1):
        u = tr.as_open(mask)
        in_tgt = is_open(tgt, u)
        in_src = is_open(src, OpenSubset(src, u.complement))
        checked += in_tgt
        if in_tgt and not in_src:
            continuous = False
        if in_src and not in_tgt:
            homeo = False
    new = [p for p in prime_divisors(M) if N % p]
    return MorphismReport(
        N, M, continuous, not new, homeo and continuous, new[0] if new else None, checked
    )


# finite monads --------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteIdeal:
    monad: str
    elements: tuple  # sorted indices into the unary elements
    labels: tuple[str, ...]
    prime: bool

    def to_json(self) -> dict:
        return {"elements": list(self.labels), "prime": self.prime}


def _unary(m) -> list:
    xs = m.elements(1)
    if xs is None:
        raise InputError(f"{m.name} does not have a finite underlying monoid")
    return list(xs)


def _label(x) -> str:
    if isinstance(x, cm.Element):
        return format_rat(x.coeffs[0])
    return str(x)


def is_submodule(m, subset: frozenset[int], max_arity: int = 2) -> bool:
    xs = _unary(m)
    index = {x: i for i, x in enumerate(xs)}
    for a in range(max_arity + 1):
        ops = m.elements(a)
        if ops is None:
            raise InputError(f"{m.name} has infinitely many operations of arity {a}")
        for t in ops:
            for args in itertools.product(sorted(subset), repeat=a):
                y = m.substitute(t, [xs[i] for i in args], 1)
                if index[y] not in subset:
                    return False
    return True


def is_prime_ideal(m, subset: frozenset[int]) -> bool:
    """Complement contains e and is closed under the monoid product."""
    xs = _unary(m)
    index = {x: i for i, x in enumerate(xs)}
    comp = [i for i in range(len(xs)) if i not in subset]
    if index[m.unit()] not in comp:
        return False
    return all(index[m.substitute(xs[i], [xs[j]], 1)] in comp for i in comp for j in comp)


def ideals_finite(m, max_arity: int = 2) -> list[FiniteIdeal]:
    """All submodules of the underlying monoid, with primality flags."""
    xs = _unary(m)
    out = []
    for r in range(len(xs) + 1):
        for sub in itertools.combinations(range(len(xs)), r):
            s = frozenset(sub)
            if m.has_constant and xs.index(m.zero(1)) not in s:
                continue
            if is_submodule(m, s, max_arity):
                out.append(FiniteIdeal(m.name, tuple(sub), tuple(_label(xs[i]) for i in sub),
                                       is_prime_ideal(m, s)))
    return out


def finite_spec(m, max_arity: int = 2) -> SpecSpace:
    return SpecSpace("FiniteSpec", ideals=tuple(i for i in ideals_finite(m, max_arity) if i.prime))


def membership(monad: cm.CoeffMonad, x) -> bool:
    return monad.contains([rat(x)])


__all__ = [
    "FiniteIdeal", "INF_PT", "MorphismReport", "OpenSubset", "PointSet", "SpecPoint",
    "SpecSpace", "Truncation", "XI", "chart_v2_sections", "close_lattice", "closure",
    "closure_of_set", "compactified", "compactified_limit", "finite_spec", "global_sections",
    "ideals_finite", "is_closed_point", "is_open", "is_prime_ideal", "is_submodule",
    "is_topology", "membership", "parse_point", "points", "prime_point", "principal_open",
    "sections_principal", "space_from_ident", "spec_an", "spec_bn", "spec_z", "stalk",
    "system_morphism", "truncated_topology", "truncation",
]
