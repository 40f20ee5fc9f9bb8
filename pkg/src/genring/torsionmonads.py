"""Monads outside the rational-coefficient family.

* ``CyclotomicMonad(n)`` is F_{1^n}: an operation of arity m is either the
  constant 0 or ``zeta^e {i}`` with ``e`` taken mod n.
* ``ResidueMonad()`` is F_inf = Z_inf / m_inf: an operation is a sign vector,
  standing for every octahedral combination of l1 mass exactly 1 with those
  signs, or the zero class.

F_{1^inf} only exists through its finite truncations and the embeddings
``zeta_n -> zeta_{nm}^m``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError

# ---------------------------------------------------------------------------
# F_{1^n}


@dataclass(frozen=True)
class CycElement:
    n: int
    arity: int
    index: int | None = None  # 0-based slot, None for the constant
    exp: int = 0

    def __post_init__(self):
        if self.n < 1 or self.arity < 0:
            raise InputError("order must be >= 1 and arity >= 0")
        if self.index is None:
            object.__setattr__(self, "exp", 0)
        else:
            if not 0 <= self.index < self.arity:
                raise InputError(f"slot {self.index} out of range for arity {self.arity}")
            object.__setattr__(self, "exp", self.exp % self.n)

    @property
    def is_zero(self) -> bool:
        return self.index is None

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"z^{self.exp}{{{self.index + 1}}}" if self.exp else f"{{{self.index + 1}}}"

    def to_json(self) -> dict:
        if self.is_zero:
            return {"zero": True}
        return {"n": self.n, "arity": self.arity, "index": self.index + 1, "exp": self.exp}


def cyc_substitute(t: CycElement, args: Sequence[CycElement], m: int | None = None) -> CycElement:
    if len(args) != t.arity:
        raise InputError(f"expected {t.arity} arguments, got {len(args)}")
    if any(a.n != t.n for a in args):
        raise InputError("order mismatch in substitution")
    arities = {a.arity for a in args}
    if len(arities) > 1:
        raise InputError("arguments must share one arity")
    if arities:
        m = arities.pop()
    elif m is None:
        m = 0
    if t.is_zero:
        return CycElement(t.n, m)
    a = args[t.index]
    if a.is_zero:
        return CycElement(t.n, m)
    return CycElement(t.n, m, a.index, a.exp + t.exp)


def cyc_induced(phi: Sequence[int], t: CycElement, m: int) -> CycElement:
    # a single nonzero slot means merging never has to add two roots
    if len(phi) != t.arity or any(not 0 <= j < m for j in phi):
        raise InputError("phi must map every slot into range(m)")
    if t.is_zero:
        return CycElement(t.n, m)
    return CycElement(t.n, m, phi[t.index], t.exp)


def f1inf_embed(t: CycElement, m: int) -> CycElement:
    """Image under F_{1^n} -> F_{1^{nm}}, zeta_n -> zeta_{nm}^m."""
    if m < 1:
        raise InputError("embedding factor must be >= 1")
    if t.is_zero:
        return CycElement(t.n * m, t.arity)
    return CycElement(t.n * m, t.arity, t.index, t.exp * m)


def cyc_to_f12(t: CycElement) -> tuple[Fraction, ...]:
    """Coefficient vector under zeta -> -1 (only meaningful for n = 2)."""
    if t.n != 2:
        raise InputError("only F_{1^2} has a coefficient model")
    out = [Fraction(0)] * t.arity
    if not t.is_zero:
        out[t.index] = Fraction(-1 if t.exp else 1)
    return tuple(out)


@dataclass(frozen=True)
class CyclotomicMonad:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"order must be a positive integer, got {self.n!r}")

    @property
    def name(self) -> str:
        return f"F1n:{self.n}"

    def __str__(self) -> str:
        return self.name

    has_constant = True
    coordinatewise = False

    def element(self, arity: int, index: int | None = None, exp: int = 0) -> CycElement:
        return CycElement(self.n, arity, index, exp)

    def unit(self) -> CycElement:
        return CycElement(self.n, 1, 0, 0)

    def proj(self, k: int, arity: int) -> CycElement:
        return CycElement(self.n, arity, k, 0)

    def zero(self, arity: int) -> CycElement:
        return CycElement(self.n, arity)

    def zeta(self) -> CycElement:
        return CycElement(self.n, 1, 0, 1)

    def substitute(self, t, args, m=None):
        return cyc_substitute(t, args, m)

    def induced(self, phi, t, m):
        return cyc_induced(phi, t, m)

    def elements(self, arity: int) -> list[CycElement]:
        return [self.zero(arity)] + [
            CycElement(self.n, arity, i, e) for i in range(arity) for e in range(self.n)
        ]

    def sample(self, arity: int, box: int = 2) -> list[CycElement]:
        return self.elements(arity)


# ---------------------------------------------------------------------------
# F_inf


@dataclass(frozen=True)
class SignClass:
    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 0, 1) for s in self.signs):
            raise InputError(f"signs must lie in {{-1, 0, 1}}: {self.signs}")

    @property
    def arity(self) -> int:
        return len(self.signs)

    @property
    def is_zero(self) -> bool:
        return not any(self.signs)

    def __str__(self) -> str:
        return "(" + ",".join({1: "+", -1: "-", 0: "0"}[s] for s in self.signs) + ")"

    def to_json(self) -> dict:
        return {"signs": list(self.signs)}


def canonical_rep(c: SignClass) -> tuple[Fraction, ...]:
    """Equal magnitudes 1/k on the k nonzero signs; the zero vector for the zero class."""
    k = sum(1 for s in c.signs if s)
    if k == 0:
        return (Fraction(0),) * c.arity
    return tuple(Fraction(s, k) for s in c.signs)


def finf_classify(v: Sequence) -> SignClass:
    v = [Fraction(x) for x in v]
    mass = sum((abs(x) for x in v), Fraction(0))
    if mass > 1:
        raise InputError("l1 mass exceeds 1; not an octahedral combination")
    if mass < 1:
        return SignClass((0,) * len(v))
    return SignClass(tuple((x > 0) - (x < 0) for x in v))


def _combine(t_rep, arg_reps, m):
    out = [Fraction(0)] * m
    for ti, a in zip(t_rep, arg_reps):
        if ti:
            for j, aj in enumerate(a):
                out[j] += ti * aj
    return out


def finf_substitute(
    t: SignClass, args: Sequence[SignClass], m: int | None = None, reps=None
) -> SignClass:
    """Substitute via representatives; ``reps`` overrides the canonical choice."""
    if len(args) != t.arity:
        raise InputError(f"expected {t.arity} arguments, got {len(args)}")
    arities = {a.arity for a in args}
    if len(arities) > 1:
        raise InputError("arguments must share one arity")
    if arities:
        m = arities.pop()
    elif m is None:
        m = 0
    if reps is None:
        t_rep, arg_reps = canonical_rep(t), [canonical_rep(a) for a in args]
    else:
        t_rep, arg_reps = reps
    return finf_classify(_combine(t_rep, arg_reps, m))


def finf_induced(phi: Sequence[int], t: SignClass, m: int, rep=None) -> SignClass:
    if len(phi) != t.arity or any(not 0 <= j < m for j in phi):
        raise InputError("phi must map every slot into range(m)")
    rep = canonical_rep(t) if rep is None else rep
    out = [Fraction(0)] * m
    for x, j in zip(rep, phi):
        out[j] += x
    return finf_classify(out)


@dataclass(frozen=True)
class ResidueMonad:
    @property
    def name(self) -> str:
        return "Finf"

    def __str__(self) -> str:
        return self.name

    has_constant = True
    coordinatewise = False

    def element(self, signs) -> SignClass:
        return SignClass(tuple(signs))

    def unit(self) -> SignClass:
        return SignClass((1,))

    def proj(self, k: int, arity: int) -> SignClass:
        if not 0 <= k < arity:
            raise InputError(f"projection {k} out of range for arity {arity}")
        return SignClass(tuple(int(i == k) for i in range(arity)))

    def zero(self, arity: int) -> SignClass:
        return SignClass((0,) * arity)

    def neg(self) -> SignClass:
        return SignClass((-1,))

    def star(self) -> SignClass:
        # [(1 - l) x + l y] with l = 1/2
        return SignClass((1, 1))

    def substitute(self, t, args, m=None):
        return finf_substitute(t, args, m)

    def induced(self, phi, t, m):
        return finf_induced(phi, t, m)

    def elements(self, arity: int) -> list[SignClass]:
        return [SignClass(s) for s in itertools.product((0, 1, -1), repeat=arity)]

    def sample(self, arity: int, box: int = 2) -> list[SignClass]:
        return self.elements(arity)


FINF = ResidueMonad()
