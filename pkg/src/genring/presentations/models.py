"""Finite models of presentations and a backtracking countermodel finder."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from ..budget import enumeration_budget
from ..errors import BudgetExceeded, InputError
from .terms import ZERO, Presentation, Term, is_var, terms_context


def _index(args: Sequence[int], size: int) -> int:
    i = 0
    for a in args:
        i = i * size + a
    return i


@dataclass(frozen=True)
class FiniteModel:
    size: int
    tables: dict  # symbol -> tuple of values indexed by mixed radix (first argument most significant)
    arities: dict

    def __hash__(self):
        return hash((self.size, tuple(sorted(self.tables.items()))))

    def apply(self, name: str, args: Sequence[int]) -> int:
        return self.tables[name][_index(args, self.size)]

    def evaluate(self, t: Term, env: Sequence[int]) -> int:
        if is_var(t):
            return env[t]
        return self.apply(t[0], [self.evaluate(a, env) for a in t[1:]])

    def satisfies(self, lhs: Term, rhs: Term) -> bool:
        k = terms_context([lhs, rhs])
        return all(
            self.evaluate(lhs, env) == self.evaluate(rhs, env)
            for env in itertools.product(range(self.size), repeat=k)
        )

    def is_model_of(self, p: Presentation) -> bool:
        return all(self.satisfies(r.lhs, r.rhs) for r in p.theory())

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "tables": {
                name: {"arity": self.arities[name], "values": list(vals)}
                for name, vals in sorted(self.tables.items())
            },
        }


def _compile(t: Term, tables: dict, size: int) -> Callable:
    """Partial evaluator: returns None when an undefined table cell is reached."""
    if is_var(t):
        return lambda env, k=t: env[k]
    name, args = t[0], [_compile(a, tables, size) for a in t[1:]]
    table = tables[name]
    if not args:
        return lambda env: table[0]
    if len(args) == 1:
        f = args[0]

        def unary(env):
            v = f(env)
            return None if v is None else table[v]

        return unary
    if len(args) == 2:
        f, g = args

        def binary(env):
            a = f(env)
            if a is None:
                return None
            b = g(env)
            return None if b is None else table[a * size + b]

        return binary

    def general(env):
        i = 0
        for h in args:
            v = h(env)
            if v is None:
                return None
            i = i * size + v
        return table[i]

    return general


def find_countermodel(
    p: Presentation,
    lhs: Term,
    rhs: Term,
    max_size: int,
    node_budget: int | None = None,
) -> FiniteModel | None:
    """Smallest model of ``p`` (size <= max_size) in which ``lhs = rhs`` fails.

    Returns None when every model up to ``max_size`` satisfies the equation.
    Raises :class:`BudgetExceeded` when the search tree is too large.
    """
    if max_size < 1:
        raise InputError("max_size must be at least 1")
    if lhs == rhs:
        return None
    node_budget = enumeration_budget(2_000_000) if node_budget is None else node_budget
    nodes = 0
    arities = p.symbols()
    theory = p.theory()
    goal_ctx = terms_context([lhs, rhs])
    for size in range(1, max_size + 1):
        tables = {name: [None] * size**ar for name, ar in arities.items()}
        # symmetry breaking: the first constant is element 0
        consts = [n for n, a in arities.items() if a == 0]
        pinned = ZERO if ZERO in consts else (consts[0] if consts else None)
        if pinned is not None:
            tables[pinned][0] = 0
        checks = []
        for r in theory:
            k = r.context
            envs = list(itertools.product(range(size), repeat=k))
            syms = _symbols(r.lhs) | _symbols(r.rhs)
            checks.append((syms, _compile(r.lhs, tables, size), _compile(r.rhs, tables, size), envs))
        cells = [
            (name, i)
            for name, ar in sorted(arities.items(), key=lambda kv: (kv[1], kv[0]))
            for i in range(size**ar)
            if tables[name][i] is None
        ]
        lhs_f = _compile(lhs, tables, size)
        rhs_f = _compile(rhs, tables, size)
        goal_envs = list(itertools.product(range(size), repeat=goal_ctx))

        def consistent(changed: str | None) -> bool:
            for syms, f, g, envs in checks:
                if changed is not None and changed not in syms:
                    continue
                for env in envs:
                    a = f(env)
                    if a is None:
                        continue
                    b = g(env)
                    if b is not None and a != b:
                        return False
            return True

        def search(pos: int):
            nonlocal nodes
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded(f"countermodel search exceeded {node_budget} nodes", node_budget)
            if pos == len(cells):
                for env in goal_envs:
                    if lhs_f(env) != rhs_f(env):
                        return True
                return False
            name, i = cells[pos]
            for v in range(size):
                tables[name][i] = v
                if consistent(name) and search(pos + 1):
                    return True
            tables[name][i] = None
            return False

        if consistent(None) and search(0):
            frozen = {name: tuple(vals) for name, vals in tables.items()}
            return FiniteModel(size, frozen, dict(arities))
    return None


def _symbols(t: Term) -> set[str]:
    if is_var(t):
        return set()
    out = {t[0]}
    for a in t[1:]:
        out |= _symbols(a)
    return out


def model_from_tables(size: int, tables: dict, arities: dict) -> FiniteModel:
    for name, vals in tables.items():
        if len(vals) != size ** arities[name] or any(not 0 <= v < size for v in vals):
            raise InputError(f"table for {name} is not total on a carrier of size {size}")
    return FiniteModel(size, {k: tuple(v) for k, v in tables.items()}, dict(arities))


# ---------------------------------------------------------------------------
# the clone of a finite model, used as a monad handle


@dataclass(frozen=True)
class TableOp:
    size: int
    arity: int
    values: tuple[int, ...]

    def __str__(self) -> str:
        return f"op/{self.arity}{list(self.values)}"


class ModelClone:
    """Term operations of a finite model: a (possibly noncommutative) monad handle."""

    coordinatewise = False

    def __init__(self, model: FiniteModel, name: str = "model"):
        self.model = model
        self._name = name

    @property
    def name(self) -> str:
        return self._name

    @property
    def has_constant(self) -> bool:
        return any(a == 0 for a in self.model.arities.values())

    def proj(self, k: int, n: int) -> TableOp:
        s = self.model.size
        return TableOp(s, n, tuple(env[k] for env in itertools.product(range(s), repeat=n)))

    def unit(self) -> TableOp:
        return self.proj(0, 1)

    def zero(self, n: int) -> TableOp | None:
        consts = sorted(k for k, a in self.model.arities.items() if a == 0)
        if not consts:
            return None
        c = self.model.apply(consts[0], ())
        return TableOp(self.model.size, n, (c,) * self.model.size**n)

    def substitute(self, t: TableOp, args: Sequence[TableOp], n: int | None = None) -> TableOp:
        if len(args) != t.arity:
            raise InputError("arity mismatch")
        s = self.model.size
        if args:
            n = args[0].arity
        n = 0 if n is None else n
        out = []
        for i in range(s**n):
            out.append(t.values[_index([a.values[i] for a in args], s)])
        return TableOp(s, n, tuple(out))

    def generator(self, name: str) -> TableOp:
        ar = self.model.arities[name]
        return TableOp(self.model.size, ar, self.model.tables[name])

    def sample(self, n: int, box: int = 2) -> list[TableOp]:
        """Projections and one layer of generators applied to projections."""
        projs = [self.proj(k, n) for k in range(n)]
        out = list(projs)
        for name in sorted(self.model.arities):
            g = self.generator(name)
            for args in itertools.product(projs, repeat=g.arity):
                op = self.substitute(g, list(args), n)
                if op not in out:
                    out.append(op)
        return out

    def elements(self, n: int):
        return None


def describe_model(m: FiniteModel) -> str:
    lines = [f"carrier size {m.size}"]
    for name, vals in sorted(m.tables.items()):
        ar = m.arities[name]
        if ar == 0:
            lines.append(f"  {name} = {vals[0]}")
            continue
        for args in itertools.product(range(m.size), repeat=ar):
            lines.append(f"  {name}({', '.join(map(str, args))}) = {vals[_index(args, m.size)]}")
    return "\n".join(lines)


__all__ = [
    "FiniteModel",
    "ModelClone",
    "TableOp",
    "describe_model",
    "find_countermodel",
    "model_from_tables",
]
