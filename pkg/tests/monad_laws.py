"""Random law checking for any monad handle (proj, zero, substitute, elements)."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from genring.classify import commute
from genring.coeffmonads import CoeffMonad
from genring.errors import InvariantViolation
from genring.registry import monad_from_ident

MONAD_IDENTS = (
    "Z", "N", "Zinf", "Q", "Fempty", "F1", "F12", "Finf", "Zp:3", "BN:2", "BN:6",
    "AN:2", "AN:3", "AN:6", "F1n:1", "F1n:2", "F1n:3", "F1n:4", "F1n:5", "F1n:6",
)


def random_element(m, n: int, rng: random.Random):
    """A random element of Sigma(n), or None when Sigma(n) is empty."""
    finite = m.elements(n)
    if finite is not None:
        return rng.choice(finite) if finite else None
    assert isinstance(m, CoeffMonad)
    vals = m.coordinate_values(3)
    for _ in range(500):
        v = [rng.choice(vals) for _ in range(n)]
        if m.tag in ("ZlocInf", "AN"):
            # rescale into the unit ball so the rejection step rarely fails
            total = sum(abs(x) for x in v)
            if total > 1:
                v = [x / total for x in v] if m.tag == "ZlocInf" else [
                    Fraction(0) if i else x for i, x in enumerate(v)
                ]
        if m.contains(v):
            return m.element(v)
    return m.zero(n)


@dataclass
class LawReport:
    monad: str
    samples: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_laws(m, samples: int = 200, max_arity: int = 3, seed: int = 0) -> LawReport:
    rng = random.Random(seed)
    rep = LawReport(m.name)
    done = 0
    while done < samples:
        a, b, c = (rng.randint(0, max_arity) for _ in range(3))
        t = random_element(m, a, rng)
        ss = [random_element(m, b, rng) for _ in range(a)]
        us = [random_element(m, c, rng) for _ in range(b)]
        if t is None or None in ss or None in us:
            continue
        done += 1
        try:
            # unit and projections
            e = m.proj(0, 1)
            if m.substitute(e, [t], a) != t:
                rep.failures.append(("left unit", t))
            if m.substitute(t, [m.proj(k, a) for k in range(a)], a) != t:
                rep.failures.append(("right unit", t))
            for k in range(a):
                if m.substitute(m.proj(k, a), ss, b) != ss[k]:
                    rep.failures.append(("projection", k, ss))
            # associativity
            left = m.substitute(t, [m.substitute(s, us, c) for s in ss], c)
            right = m.substitute(m.substitute(t, ss, b), us, c)
            if left != right:
                rep.failures.append(("associativity", t, ss, us))
            # commutativity of t with a second random operation
            s2 = random_element(m, rng.randint(0, max_arity), rng)
            if s2 is not None and not commute(m, t, s2).commute:
                rep.failures.append(("commutativity", t, s2))
        except InvariantViolation as exc:
            rep.failures.append(("closure", str(exc)))
    rep.samples = done
    return rep


def all_monads():
    return [monad_from_ident(i) for i in MONAD_IDENTS]
