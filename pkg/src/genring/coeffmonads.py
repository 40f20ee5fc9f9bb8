"""Sub-monads of the rational-coefficient monad, as decidable predicates.

An operation of arity n is a vector ``(l_1, ..., l_n)`` of rationals, read as
the formal combination ``l_1{1} + ... + l_n{n}``.  Each monad here is a
predicate on such vectors that is closed under bilinear substitution::

    (t o [s_1..s_k])_j = sum_i t_i * (s_i)_j

Only the rational subring Z_(inf) = Z_inf ∩ Q of the real octahedral monad is
modelled; membership must be decidable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import InputError, InvariantViolation, Undecided
from .exactnum import format_rat, is_prime, radical, rat, vp

# tags understood by contains(); "Q", "Zp" and "Fempty" are additions to the classical examples
TAGS = ("Z", "N", "BN", "ZlocInf", "AN", "F1", "F12", "Fempty", "Q", "Zp", "Inter")


def _denominator_divides_power(x: Fraction, n: int) -> bool:
    d = x.denominator
    g = gcd(d, n)
    while g > 1:
        while d % g == 0:
            d //= g
        g = gcd(d, n)
    return d == 1


def l1(v: Sequence[Fraction]) -> Fraction:
    return sum((abs(x) for x in v), Fraction(0))


@dataclass(frozen=True)
class CoeffMonad:
    tag: str
    N: int | None = None
    parts: tuple["CoeffMonad", ...] = ()

    def __post_init__(self):
        if self.tag not in TAGS:
            raise InputError(f"unknown coefficient monad tag {self.tag!r}")
        if self.tag in ("BN", "AN") and (not isinstance(self.N, int) or self.N <= 1):
            raise InputError(f"{self.tag} needs an integer N > 1, got {self.N!r}")
        if self.tag == "Zp" and not is_prime(self.N):
            raise InputError(f"Zp needs a prime, got {self.N!r}")
        if self.tag == "Inter" and not self.parts:
            raise InputError("empty intersection")

    # naming -----------------------------------------------------------------
    @property
    def name(self) -> str:
        if self.tag in ("BN", "AN"):
            return f"{self.tag}:{self.N}"
        if self.tag == "Zp":
            return f"Zp:{self.N}"
        if self.tag == "ZlocInf":
            return "Zinf"
        if self.tag == "Inter":
            return "Inter(" + ",".join(p.name for p in self.parts) + ")"
        return self.tag

    def __str__(self) -> str:
        return self.name

    # predicate --------------------------------------------------------------
    def contains(self, v: Sequence) -> bool:
        v = [rat(x) for x in v]
        tag = self.tag
        if tag == "Q":
            return True
        if tag == "Z":
            return all(x.denominator == 1 for x in v)
        if tag == "N":
            return all(x.denominator == 1 and x >= 0 for x in v)
        if tag == "BN":
            return all(_denominator_divides_power(x, self.N) for x in v)
        if tag == "Zp":
            return all(x.denominator % self.N != 0 for x in v)
        if tag == "ZlocInf":
            return l1(v) <= 1
        if tag == "AN":
            return all(_denominator_divides_power(x, self.N) for x in v) and l1(v) <= 1
        if tag == "F1":
            nz = [x for x in v if x != 0]
            return len(nz) == 0 or (len(nz) == 1 and nz[0] == 1)
        if tag == "F12":
            nz = [x for x in v if x != 0]
            return len(nz) == 0 or (len(nz) == 1 and abs(nz[0]) == 1)
        if tag == "Fempty":
            nz = [x for x in v if x != 0]
            return len(nz) == 1 and nz[0] == 1
        return all(p.contains(v) for p in self.parts)

    @property
    def coordinatewise(self) -> bool:
        """True when membership is a condition on each coordinate separately."""
        if self.tag == "Inter":
            return all(p.coordinatewise for p in self.parts)
        return self.tag in ("Q", "Z", "N", "BN", "Zp")

    @property
    def has_constant(self) -> bool:
        return self.tag != "Fempty" and (
            self.tag != "Inter" or all(p.has_constant for p in self.parts)
        )

    # monad structure -------------------------------------------------------------
    def element(self, coeffs: Iterable) -> "Element":
        return Element(self, tuple(rat(c) for c in coeffs))

    def unit(self) -> "Element":
        return self.proj(0, 1)

    def proj(self, k: int, n: int) -> "Element":
        if not 0 <= k < n:
            raise InputError(f"projection {k} out of range for arity {n}")
        return Element(self, tuple(Fraction(int(i == k)) for i in range(n)))

    def zero(self, n: int) -> "Element | None":
        if not self.has_constant:
            return None
        return Element(self, (Fraction(0),) * n)

    def substitute(self, t: "Element", args: Sequence["Element"], n: int | None = None) -> "Element":
        return substitute(t, args, n)

    def induced(self, phi: Sequence[int], t: "Element", m: int) -> "Element":
        return induced_map(phi, t, m)

    def elements(self, n: int) -> list["Element"] | None:
        """All of Sigma(n) when it is finite, else None."""
        if self.tag == "Fempty":
            return [self.proj(k, n) for k in range(n)]
        if self.tag == "F1":
            return [self.zero(n)] + [self.proj(k, n) for k in range(n)]
        if self.tag == "F12":
            out = [self.zero(n)]
            for k in range(n):
                out.append(self.proj(k, n))
                out.append(Element(self, tuple(Fraction(-int(i == k)) for i in range(n))))
            return out
        return None

    def coordinate_values(self, box: int) -> list[Fraction]:
        dens = set(range(1, box + 1))
        for m in _moduli(self):
            dens |= {m, m * m}
        vals = {Fraction(a, d) for a in range(-box, box + 1) for d in dens}
        return sorted(vals, key=lambda x: (abs(x), x))

    def sample(self, n: int, box: int = 2) -> list["Element"]:
        """Deterministic sample of Sigma(n): vectors with entries a/d, |a| <= box."""
        finite = self.elements(n)
        if finite is not None:
            return finite
        vals = self.coordinate_values(box)
        out = [Element(self, v) for v in itertools.product(vals, repeat=n) if self.contains(v)]
        return out


def _moduli(m: CoeffMonad) -> set[int]:
    if m.tag in ("BN", "AN", "Zp"):
        return {m.N}
    if m.tag == "Inter":
        out: set[int] = set()
        for p in m.parts:
            out |= _moduli(p)
        return out
    return set()


Z = CoeffMonad("Z")
NN = CoeffMonad("N")
ZINF = CoeffMonad("ZlocInf")
F1 = CoeffMonad("F1")
F12 = CoeffMonad("F12")
FEMPTY = CoeffMonad("Fempty")
Q = CoeffMonad("Q")


def BN(n: int) -> CoeffMonad:
    return CoeffMonad("BN", n)


def AN(n: int) -> CoeffMonad:
    return CoeffMonad("AN", n)


def Zp(p: int) -> CoeffMonad:
    return CoeffMonad("Zp", p)


@dataclass(frozen=True)
class Element:
    monad: CoeffMonad
    coeffs: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        if not self.monad.contains(self.coeffs):
            raise InputError(
                f"({', '.join(map(format_rat, self.coeffs))}) is not in {self.monad.name}"
            )

    @property
    def arity(self) -> int:
        return len(self.coeffs)

    def __str__(self) -> str:
        return "(" + ", ".join(format_rat(c) for c in self.coeffs) + ")"

    def to_json(self) -> dict:
        return {
            "monad": self.monad.name,
            "arity": self.arity,
            "coeffs": [format_rat(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Element":
        from .registry import monad_from_ident

        m = monad_from_ident(data["monad"])
        coeffs = tuple(rat(c) for c in data["coeffs"])
        if len(coeffs) != data["arity"]:
            raise InputError("arity does not match coefficient count")
        return cls(m, coeffs)


def contains(m: CoeffMonad, v: Sequence) -> bool:
    return m.contains(v)


def substitute(t: Element, args: Sequence[Element], n: int | None = None) -> Element:
    """Bilinear substitution ``sum_i t_i * args_i``.

    ``n`` fixes the result arity; it is only needed when ``t`` is a constant.
    """
    m = t.monad
    if len(args) != t.arity:
        raise InputError(f"expected {t.arity} arguments, got {len(args)}")
    if any(a.monad != m for a in args):
        raise InputError("monad mismatch in substitution")
    arities = {a.arity for a in args}
    if len(arities) > 1:
        raise InputError("arguments must share one arity")
    if arities:
        k = arities.pop()
        if n is not None and n != k:
            raise InputError(f"arguments have arity {k}, expected {n}")
        n = k
    elif n is None:
        n = 0
    out = [Fraction(0)] * n
    for ti, a in zip(t.coeffs, args):
        if ti:
            for j, aj in enumerate(a.coeffs):
                if aj:
                    out[j] += ti * aj
    if not m.contains(out):
        raise InvariantViolation(f"substitution left {m.name}: {out}")
    return Element(m, tuple(out))


def induced_map(phi: Sequence[int], t: Element, m: int) -> Element:
    """Push ``t`` forward along ``phi: {0..n-1} -> {0..m-1}``, summing merged slots."""
    if len(phi) != t.arity:
        raise InputError("phi must be defined on every slot of t")
    if any(not 0 <= j < m for j in phi):
        raise InputError("phi leaves the target range")
    out = [Fraction(0)] * m
    for ti, j in zip(t.coeffs, phi):
        out[j] += ti
    if not t.monad.contains(out):
        raise InvariantViolation(f"induced map left {t.monad.name}: {out}")
    return Element(t.monad, tuple(out))


# intersections ---------------------------------------------------------------

def _atoms(m: CoeffMonad) -> list[CoeffMonad]:
    if m.tag == "F1":
        return [NN, ZINF]
    if m.tag == "F12":
        return [Z, ZINF]
    if m.tag == "AN":
        return [BN(m.N), ZINF]
    if m.tag == "Inter":
        return [a for p in m.parts for a in _atoms(p)]
    return [m]


def _atom_subset(a: CoeffMonad, b: CoeffMonad) -> bool:
    """Known inclusions between atomic predicates (sound, not complete)."""
    if a == b or b.tag == "Q" or a.tag == "Fempty":
        return True
    ta, tb = a.tag, b.tag
    if ta == "N":
        return tb in ("Z", "BN", "Zp")
    if ta == "Z":
        return tb in ("BN", "Zp")
    if ta == "BN":
        if tb == "BN":
            return radical(b.N) % radical(a.N) == 0
        if tb == "Zp":
            return a.N % b.N != 0
    return False


def intersect(ms: Sequence[CoeffMonad]) -> CoeffMonad:
    """Intersection of predicates, renamed when it is one of the named monads."""
    if not ms:
        raise InputError("intersect needs at least one monad")
    atoms: list[CoeffMonad] = []
    for a in (a for m in ms for a in _atoms(m)):
        if a not in atoms:
            atoms.append(a)
    bns = [a for a in atoms if a.tag == "BN"]
    if len(bns) > 1:
        # B_a ∩ B_b = B_gcd(rad a, rad b), which is Z when the radicals are coprime
        g = 0
        for a in bns:
            g = gcd(g, radical(a.N))
        atoms = [a for a in atoms if a.tag != "BN"] + [BN(g) if g > 1 else Z]
    kept: list[CoeffMonad] = []
    for a in atoms:
        dominated = False
        for b in atoms:
            if b is a:
                continue
            if _atom_subset(b, a) and (not _atom_subset(a, b) or _order(b) < _order(a)):
                dominated = True
                break
        if not dominated:
            kept.append(a)
    kept.sort(key=_order)
    if len(kept) == 1:
        return kept[0]
    if len(kept) == 2 and ZINF in kept:
        other = kept[0] if kept[1] == ZINF else kept[1]
        if other.tag == "N":
            return F1
        if other.tag == "Z":
            return F12
        if other.tag == "BN":
            return AN(other.N)
    return CoeffMonad("Inter", parts=tuple(kept))


def _order(m: CoeffMonad):
    return (m.tag, m.N or 0)


# localization ----------------------------------------------------------------

@dataclass(frozen=True)
class LocalizationResult:
    member: bool
    k: int | None = None


def _never_member(m: CoeffMonad, f: Fraction, v: Sequence[Fraction]) -> bool:
    """Cheap certificates that f^k * v is outside m for every k."""
    if abs(f) == 1:
        return False  # handled by the cyclic check in in_localization
    nz = [x for x in v if x != 0]
    for a in _atoms(m):
        if a.tag in ("N", "Z", "BN", "Zp", "Fempty"):
            for x in nz:
                for p, _ in _denominator_primes(x):
                    if a.tag == "BN" and a.N % p == 0:
                        continue
                    if a.tag == "Zp" and p != a.N:
                        continue
                    if vp(p, f) <= 0:
                        return True
        if a.tag == "ZlocInf" and abs(f) >= 1 and l1(v) > 1:
            return True
        if a.tag == "N":
            if f > 0 and any(x < 0 for x in nz):
                return True
            if any(x < 0 for x in nz) and any(x > 0 for x in nz):
                return True
        if a.tag == "Fempty" and len(nz) != 1:
            return True
    return False


def _denominator_primes(x: Fraction):
    from .exactnum import factor_int

    return factor_int(x.denominator) if x.denominator > 1 else ()


def in_localization(m: CoeffMonad, f, v: Sequence, bound: int = 64) -> LocalizationResult:
    """Decide ``v in m[f^-1](n)`` by searching for k with ``f^k v in m(n)``.

    Returns a certificate ``k`` on success, ``member=False`` when a structural
    obstruction proves no k works, and raises :class:`Undecided` otherwise.
    """
    f = rat(f)
    v = [rat(x) for x in v]
    if f == 0:
        raise InputError("cannot localize at zero")
    if not m.contains([f]):
        raise InputError(f"{format_rat(f)} is not in the monoid of {m.name}")
    scaled = list(v)
    for k in range(bound + 1):
        if m.contains(scaled):
            return LocalizationResult(True, k)
        if abs(f) == 1 and k >= 1:
            return LocalizationResult(False)
        scaled = [f * x for x in scaled]
    if _never_member(m, f, v):
        return LocalizationResult(False)
    raise Undecided(f"no certificate with k <= {bound}", bound)
