"""Commutativity, comparison maps and additivity of concrete monads.

Works over any monad handle exposing ``proj``, ``zero``, ``substitute``,
``has_constant`` and ``elements``/``sample``.  Coefficient monads get exact
verdicts from their defining constraints; finite monads are enumerated.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .coeffmonads import CoeffMonad, Element
from .errors import InputError
from .exactnum import format_rat

YES, NO, UNKNOWN = "oui", "non", "unknown"


def _arity(x) -> int:
    return x.arity


def constants(m) -> list:
    return [m.zero(0)] if m.has_constant else []


@dataclass(frozen=True)
class CommuteResult:
    commute: bool
    left: Any
    right: Any
    position: int | None = None

    def __bool__(self) -> bool:
        return self.commute

    def to_json(self) -> dict:
        return {
            "commute": self.commute,
            "left": _render(self.left),
            "right": _render(self.right),
            "position": None if self.position is None else self.position + 1,
        }


def _render(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


def commute(m, t, s) -> CommuteResult:
    """Compare ``t(s(row_1), ..., s(row_n))`` with ``s(t(col_1), ..., t(col_m))``.

    Variable (i, j) of the n*m grid is ``x_{i*m + j}`` (0-based).
    """
    n, k = _arity(t), _arity(s)
    nm = n * k
    rows = [m.substitute(s, [m.proj(i * k + j, nm) for j in range(k)], nm) for i in range(n)]
    left = m.substitute(t, rows, nm)
    cols = [m.substitute(t, [m.proj(i * k + j, nm) for i in range(n)], nm) for j in range(k)]
    right = m.substitute(s, cols, nm)
    if left == right:
        return CommuteResult(True, left, right)
    pos = None
    if isinstance(left, Element):
        pos = next(i for i, (a, b) in enumerate(zip(left.coeffs, right.coeffs)) if a != b)
    return CommuteResult(False, left, right, pos)


def _thin(xs: list, cap: int) -> list:
    if len(xs) <= cap:
        return xs
    step = len(xs) / cap
    return [xs[int(i * step)] for i in range(cap)]


def generating_sample(m, arity_bound: int, per_arity: int = 12, box: int = 2) -> list:
    out = []
    for a in range(arity_bound + 1):
        finite = m.elements(a)
        xs = list(finite) if finite is not None else m.sample(a, box)
        out.extend(_thin(xs, per_arity))
    return out


@dataclass(frozen=True)
class CommutativityReport:
    monad: str
    pairs_checked: int
    witness: tuple | None = None

    @property
    def commutative(self) -> bool:
        return self.witness is None


def is_commutative(m, arity_bound: int = 3, sample_budget: int = 2000, per_arity: int = 12,
                   box: int = 2) -> CommutativityReport:
    if arity_bound < 1 or sample_budget < 1:
        raise InputError("bounds must be >= 1")
    xs = generating_sample(m, arity_bound, per_arity, box)
    pairs = list(itertools.combinations_with_replacement(range(len(xs)), 2))
    pairs = _thin(pairs, sample_budget)
    for count, (i, j) in enumerate(pairs, 1):
        r = commute(m, xs[i], xs[j])
        if not r.commute:
            return CommutativityReport(m.name, count, (xs[i], xs[j], r))
    return CommutativityReport(m.name, len(pairs))


def comparison_map(m, t) -> tuple:
    """``pi_n(t)``: slot k carries e, every other slot the constant."""
    if not m.has_constant:
        raise InputError("pi undefined (no zero)")
    n = _arity(t)
    e, z = m.proj(0, 1), m.zero(1)
    return tuple(m.substitute(t, [e if i == k else z for i in range(n)], 1) for k in range(n))


def underlying_monoid(m) -> list | None:
    return m.elements(1)


# additivity ------------------------------------------------------------------------


@dataclass
class AdditivityReport:
    monad: str
    n_max: int
    hypoadditive: str
    hyperadditive: str
    hypo_method: str
    hyper_method: str
    witnesses: list = field(default_factory=list)

    @property
    def additive(self) -> bool:
        return self.hypoadditive == YES and self.hyperadditive == YES

    def row(self) -> dict:
        return {
            "monad": self.monad,
            "n_max": self.n_max,
            "hypoadditive": self.hypoadditive,
            "hyperadditive": self.hyperadditive,
            "additive": self.additive,
            "hypo_method": self.hypo_method,
            "hyper_method": self.hyper_method,
            "witnesses": [w for w in self.witnesses],
        }


def _coeff_pi_exact(m: CoeffMonad, n: int) -> tuple[bool, bool, list]:
    """Exact verdicts from the constraints.

    pi_n(t)_k is the 1-vector (t_k), so pi_n is injective on every
    coefficient monad.  Surjectivity asks whether every tuple of unary
    elements is itself an n-ary element: true for coordinatewise predicates,
    and for the others refuted by (e, ..., e) = (1, ..., 1).
    """
    witnesses = []
    if m.coordinatewise:
        hyper = True
    else:
        ones = (Fraction(1),) * n
        hyper = m.contains(ones)
        if not hyper:
            witnesses.append({"n": n, "not_in_image": ["e"] * n})
    return True, hyper, witnesses


def _sampled_pi(m, n: int, box: int) -> tuple[bool, bool, list]:
    xs = m.sample(n, box)
    images: dict = {}
    witnesses = []
    injective = True
    for t in xs:
        img = comparison_map(m, t)
        if img in images and images[img] != t:
            injective = False
            witnesses.append({"n": n, "collision": [_render(images[img]), _render(t)]})
            break
        images.setdefault(img, t)
    unary = m.elements(1)
    if unary is None:
        unary = m.sample(1, box)
    surjective = True
    for tup in itertools.product(_thin(unary, 12), repeat=n):
        if tup not in images:
            # an element with these coordinates may lie outside the sample box
            if isinstance(m, CoeffMonad):
                coeffs = tuple(u.coeffs[0] for u in tup)
                if m.contains(coeffs):
                    continue
            surjective = False
            witnesses.append({"n": n, "not_in_image": [_render(u) for u in tup]})
            break
    return injective, surjective, witnesses


def _finite_pi(m, n: int) -> tuple[bool, bool, list]:
    xs = m.elements(n)
    images: dict = {}
    witnesses = []
    injective = True
    for t in xs:
        img = comparison_map(m, t)
        if img in images:
            if injective:
                witnesses.append({"n": n, "collision": [_render(images[img]), _render(t)]})
            injective = False
        else:
            images[img] = t
    surjective = True
    for tup in itertools.product(m.elements(1), repeat=n):
        if tup not in images:
            surjective = False
            witnesses.append({"n": n, "not_in_image": [_render(u) for u in tup]})
            break
    return injective, surjective, witnesses


def classify_additivity(m, n_max: int = 3, box: int = 2) -> AdditivityReport:
    if n_max < 2:
        raise InputError("n_max must be >= 2")
    if not m.has_constant:
        return AdditivityReport(m.name, n_max, NO, NO, "not applicable (no zero)",
                                "not applicable (no zero)",
                                [{"n": n_max, "reason": "no constant, pi_n undefined"}])
    finite = m.elements(n_max) is not None
    hypo = hyper = True
    hypo_sampled = hyper_sampled = True
    witnesses: list = []
    for n in range(2, n_max + 1):
        if finite:
            inj, sur, w = _finite_pi(m, n)
            hypo, hyper = hypo and inj, hyper and sur
            witnesses += w
            continue
        inj_s, sur_s, w_s = _sampled_pi(m, n, box)
        hypo_sampled, hyper_sampled = hypo_sampled and inj_s, hyper_sampled and sur_s
        if isinstance(m, CoeffMonad):
            inj, sur, w = _coeff_pi_exact(m, n)
            if inj != inj_s and not inj:
                raise AssertionError("sampled and exact injectivity disagree")
            if sur != sur_s:
                raise AssertionError(f"sampled and exact surjectivity disagree for {m.name}")
            hypo, hyper = hypo and inj, hyper and sur
            witnesses += w or w_s
        else:
            hypo, hyper = None, None
            witnesses += w_s
    if finite:
        method = "exact (enumerated)"
        return AdditivityReport(m.name, n_max, YES if hypo else NO, YES if hyper else NO,
                                method, method, witnesses)
    if hypo is None:
        return AdditivityReport(
            m.name, n_max,
            "yes (sampled)" if hypo_sampled else NO, "yes (sampled)" if hyper_sampled else NO,
            "sampled", "sampled", witnesses,
        )
    return AdditivityReport(
        m.name, n_max, YES if hypo else NO, YES if hyper else NO,
        "sampled + exact (coordinate projection)",
        "sampled + exact (constraint)", witnesses,
    )


# pseudoaddition --------------------------------------------------------------------


@dataclass(frozen=True)
class PseudoAddition:
    element: Any
    unique: bool | None
    candidates: int

    def to_json(self) -> dict:
        return {
            "element": None if self.element is None else _render(self.element),
            "unique": self.unique,
            "candidates": self.candidates,
        }


def find_pseudoaddition(m) -> PseudoAddition:
    """An operation ``t`` of arity 2 with ``pi_2(t) = (e, e)``, if one exists."""
    if not m.has_constant:
        raise InputError("pi undefined (no zero)")
    e = m.proj(0, 1)
    if isinstance(m, CoeffMonad) and m.elements(2) is None:
        # pi_2(t) = ((t_1), (t_2)), so the only candidate is (1, 1)
        if m.contains((1, 1)):
            return PseudoAddition(m.element((1, 1)), True, 1)
        return PseudoAddition(None, True, 0)
    xs = m.elements(2)
    if xs is None:
        xs = m.sample(2)
        found = [t for t in xs if comparison_map(m, t) == (e, e)]
        return PseudoAddition(found[0] if found else None, None, len(found))
    found = [t for t in xs if comparison_map(m, t) == (e, e)]
    return PseudoAddition(found[0] if found else None, len(found) <= 1, len(found))


def table1_rows(n_max: int = 3, box: int = 2) -> list[AdditivityReport]:
    from .registry import monad_from_ident

    idents = ["Z", "N", "Zinf", "Fempty", "F1", "F1n:3", "Finf", "AN:2", "BN:2"]
    return [classify_additivity(monad_from_ident(i), n_max, box) for i in idents]


def format_element(x) -> str:
    if isinstance(x, Element):
        return "(" + ", ".join(format_rat(c) for c in x.coeffs) + ")"
    return str(x)


def format_table(rows: Sequence[AdditivityReport]) -> str:
    head = f"{'monad':<10} {'hypo':<14} {'hyper':<14} additive"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(f"{r.monad:<10} {r.hypoadditive:<14} {r.hyperadditive:<14} "
                     f"{'oui' if r.additive else 'non'}")
    return "\n".join(lines)
