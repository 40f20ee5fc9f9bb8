"""Matching, ordered rewriting and free-term enumeration.

Every equation of the theory is used in whichever direction makes an
instance strictly smaller in :func:`term_key` order.  That order is
monotone under contexts and well-founded, so normalization terminates.  It
is not confluent in general: distinct normal forms are an upper bound on
the number of classes, and equal normal forms always mean provably equal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..budget import enumeration_budget
from ..errors import InputError
from .terms import (
    Presentation,
    Relation,
    Term,
    is_var,
    sorted_terms,
    substitute_vars,
    term_key,
    variables,
)


def match(pattern: Term, t: Term, sigma: dict | None = None) -> dict | None:
    sigma = {} if sigma is None else sigma
    if is_var(pattern):
        bound = sigma.get(pattern)
        if bound is None:
            sigma[pattern] = t
            return sigma
        return sigma if bound == t else None
    if is_var(t) or t[0] != pattern[0] or len(t) != len(pattern):
        return None
    for p_arg, t_arg in zip(pattern[1:], t[1:]):
        if match(p_arg, t_arg, sigma) is None:
            return None
    return sigma


class Rewriter:
    def __init__(self, relations: list[Relation]):
        self.rules: dict[str, list[tuple[Term, Term]]] = {}
        for r in relations:
            for lhs, rhs in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
                if is_var(lhs) or not variables(rhs) <= variables(lhs):
                    continue
                self.rules.setdefault(lhs[0], []).append((lhs, rhs))
        self._cache: dict[Term, Term] = {}

    def normal_form(self, t: Term) -> Term:
        hit = self._cache.get(t)
        if hit is not None:
            return hit
        if is_var(t):
            return t
        cur = (t[0], *(self.normal_form(a) for a in t[1:]))
        key = term_key(cur)
        for lhs, rhs in self.rules.get(cur[0], ()):
            sigma = match(lhs, cur)
            if sigma is None:
                continue
            new = substitute_vars(rhs, sigma)
            if term_key(new) < key:
                cur = self.normal_form(new)
                break
        self._cache[t] = cur
        return cur


@dataclass(frozen=True)
class FreeTerms:
    terms: tuple[Term, ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.terms)


def free_terms(
    p: Presentation,
    n: int,
    depth: int,
    cap: int | None = None,
    modulo: bool = False,
) -> FreeTerms:
    """Terms reachable from the n projections by at most ``depth`` layers of generators.

    With ``modulo=True`` each term is replaced by its ordered-rewriting normal
    form under the theory, so the result approximates the classes of the
    presented monad from above.
    """
    if depth < 0 or n < 0:
        raise InputError("depth and context must be non-negative")
    cap = enumeration_budget(100_000) if cap is None else cap
    symbols = p.symbols()
    rw = Rewriter(p.theory()) if modulo else None
    seen: set[Term] = set(range(n))
    layer: list[Term] = list(range(n))
    truncated = False
    for _ in range(depth):
        pool = sorted_terms(seen)
        fresh: list[Term] = []
        for name, ar in symbols.items():
            for args in itertools.product(pool, repeat=ar):
                t = (name, *args)
                if rw is not None:
                    t = rw.normal_form(t)
                if t not in seen:
                    seen.add(t)
                    fresh.append(t)
                    if len(seen) > cap:
                        truncated = True
                        break
            if truncated:
                break
        layer = fresh
        if truncated or not layer:
            break
    out = sorted_terms(seen)
    if truncated:
        out = out[:cap]
    return FreeTerms(tuple(out), truncated)
