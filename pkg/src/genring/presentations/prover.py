"""Bounded equational proving by instantiation plus congruence closure.

Variables of the goal are treated as fresh constants.  Each round builds a
pool of ground terms (goal subterms and constants, grown by one layer of
generators per extra round), instantiates every equation of the theory
over that pool, and closes the resulting ground equations under
congruence.  Everything derived this way holds in every model, so a
``Proven`` answer is sound; ``Unknown`` only means the budget ran out.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..budget import enumeration_budget
from ..errors import InputError
from .terms import (
    Presentation,
    Relation,
    Term,
    format_term,
    is_var,
    sorted_terms,
    substitute_vars,
    subterms,
    variables,
)


class CongruenceClosure:
    def __init__(self):
        self._ids: dict[Term, int] = {}
        self._nodes: list[tuple] = []
        self._parent: list[int] = []
        self._uses: list[list[int]] = []
        self._sig: dict[tuple, int] = {}

    def find(self, i: int) -> int:
        root = i
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[i] != root:
            self._parent[i], i = root, self._parent[i]
        return root

    def add(self, t: Term) -> int:
        hit = self._ids.get(t)
        if hit is not None:
            return hit
        if is_var(t):
            node = ("#var", t)
            children: tuple[int, ...] = ()
        else:
            children = tuple(self.add(a) for a in t[1:])
            node = (t[0], children)
        i = len(self._nodes)
        self._ids[t] = i
        self._nodes.append(node)
        self._parent.append(i)
        self._uses.append([])
        if children:
            for c in set(self.find(c) for c in children):
                self._uses[c].append(i)
        if not is_var(t):
            key = (t[0], tuple(self.find(c) for c in children))
            other = self._sig.get(key)
            if other is None:
                self._sig[key] = i
            else:
                self._merge(i, other)
        return i

    def _merge(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            x, y = pending.pop()
            rx, ry = self.find(x), self.find(y)
            if rx == ry:
                continue
            if len(self._uses[rx]) < len(self._uses[ry]):
                rx, ry = ry, rx
            self._parent[ry] = rx
            moved = self._uses[ry]
            self._uses[ry] = []
            for u in moved:
                op, children = self._nodes[u]
                key = (op, tuple(self.find(c) for c in children))
                other = self._sig.get(key)
                if other is None:
                    self._sig[key] = u
                elif self.find(other) != self.find(u):
                    pending.append((u, other))
            self._uses[rx].extend(moved)

    def union(self, s: Term, t: Term) -> None:
        self._merge(self.add(s), self.add(t))

    def equal(self, s: Term, t: Term) -> bool:
        return self.find(self.add(s)) == self.find(self.add(t))

    def __len__(self) -> int:
        return len(self._nodes)


@dataclass(frozen=True)
class ProofResult:
    status: str  # "Proven" or "Unknown"
    lhs: Term
    rhs: Term
    depth: int
    instances: int
    pool_size: int
    reason: str = ""
    lemmas: tuple[str, ...] = field(default=())

    @property
    def proven(self) -> bool:
        return self.status == "Proven"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "lhs": format_term(self.lhs),
            "rhs": format_term(self.rhs),
            "depth": self.depth,
            "instances": self.instances,
            "pool_size": self.pool_size,
            "reason": self.reason,
        }


def _grow(pool: list[Term], symbols: dict[str, int]) -> list[Term]:
    seen = set(pool)
    out = list(pool)
    for name, ar in symbols.items():
        for args in itertools.product(pool, repeat=ar):
            t = (name, *args)
            if t not in seen:
                seen.add(t)
                out.append(t)
    return sorted_terms(out)


def derive_equal(
    p: Presentation,
    lhs: Term,
    rhs: Term,
    budget: int = 2,
    lemmas: tuple[Relation, ...] = (),
    max_instances: int | None = None,
) -> ProofResult:
    """Try to prove ``lhs = rhs`` with instantiation depth up to ``budget``.

    ``lemmas`` are previously proven equations; they are instantiated like
    relations.
    """
    if lhs == rhs:
        return ProofResult("Proven", lhs, rhs, 0, 0, 0)
    if budget <= 0:
        raise InputError("proof budget must be positive")
    max_instances = enumeration_budget(400_000) if max_instances is None else max_instances
    symbols = p.symbols()
    theory = p.theory() + list(lemmas)
    base = {s for side in (lhs, rhs) for s in subterms(side)} | set(p.constants())
    pool = sorted_terms(base)
    total = 0
    for d in range(1, budget + 1):
        if d > 1:
            pool = _grow(pool, symbols)
        plan = [(r, sorted(variables(r.lhs) | variables(r.rhs))) for r in theory]
        needed = sum(len(pool) ** len(vs) for _, vs in plan)
        if needed > max_instances:
            return ProofResult("Unknown", lhs, rhs, d - 1, total, len(pool),
                               f"depth {d} needs {needed} instances (cap {max_instances})")
        cc = CongruenceClosure()
        cc.add(lhs)
        cc.add(rhs)
        count = 0
        for r, vs in plan:
            for values in itertools.product(pool, repeat=len(vs)):
                sigma = dict(zip(vs, values))
                cc.union(substitute_vars(r.lhs, sigma), substitute_vars(r.rhs, sigma))
                count += 1
        total += count
        if cc.equal(lhs, rhs):
            return ProofResult("Proven", lhs, rhs, d, count, len(pool),
                               lemmas=tuple(str(lm) for lm in lemmas))
    return ProofResult("Unknown", lhs, rhs, budget, total, len(pool), "budget exhausted")
