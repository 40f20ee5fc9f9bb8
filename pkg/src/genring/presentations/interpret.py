"""Interpreting terms in concrete monads, and the free term monad."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from ..errors import InputError
from .terms import ZERO, Presentation, Term, format_term, is_var, substitute_vars, terms_context


@dataclass
class Interpretation:
    target: Any  # a monad handle: proj / zero / substitute
    assignment: dict = field(default_factory=dict)

    def value(self, name: str):
        if name in self.assignment:
            return self.assignment[name]
        if name == ZERO and getattr(self.target, "has_constant", False):
            return self.target.zero(0)
        raise InputError(f"symbol {name!r} is not assigned")


def interpret(t: Term, i: Interpretation, n: int | None = None):
    """Evaluate ``t`` bottom-up in context arity ``n`` (default: its own context)."""
    n = terms_context([t]) if n is None else n
    return _eval(t, i, n)


def _eval(t: Term, i: Interpretation, n: int):
    if is_var(t):
        if t >= n:
            raise InputError(f"x{t + 1} is outside context {n}")
        return i.target.proj(t, n)
    op = i.value(t[0])
    if op.arity != len(t) - 1:
        raise InputError(f"{t[0]} is assigned an element of arity {op.arity}")
    return i.target.substitute(op, [_eval(a, i, n) for a in t[1:]], n)


@dataclass(frozen=True)
class RelationCheck:
    index: int
    label: str
    lhs: str
    rhs: str
    lhs_value: str
    rhs_value: str
    passed: bool


@dataclass(frozen=True)
class RelationsReport:
    checks: tuple[RelationCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.passed]

    def by_label(self) -> dict[str, bool]:
        out: dict[str, bool] = {}
        for c in self.checks:
            out[c.label] = out.get(c.label, True) and c.passed
        return out


def check_relations(p: Presentation, i: Interpretation) -> RelationsReport:
    checks = []
    for k, r in enumerate(p.relations):
        n = r.context
        a, b = interpret(r.lhs, i, n), interpret(r.rhs, i, n)
        checks.append(
            RelationCheck(k, r.label, format_term(r.lhs), format_term(r.rhs), str(a), str(b), a == b)
        )
    return RelationsReport(tuple(checks))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TermOp:
    term: Term
    arity: int

    def __str__(self) -> str:
        return format_term(self.term)


class TermMonad:
    """The free monad on a signature: operations are terms, equality is syntactic."""

    coordinatewise = False

    def __init__(self, symbols: dict[str, int], name: str = "free"):
        self.symbols = dict(symbols)
        self._name = name

    @property
    def name(self) -> str:
        return self._name

    @property
    def has_constant(self) -> bool:
        return ZERO in self.symbols

    def op(self, name: str) -> TermOp:
        ar = self.symbols[name]
        return TermOp((name, *range(ar)), ar)

    def proj(self, k: int, n: int) -> TermOp:
        return TermOp(k, n)

    def unit(self) -> TermOp:
        return TermOp(0, 1)

    def zero(self, n: int) -> TermOp | None:
        return TermOp((ZERO,), n) if self.has_constant else None

    def substitute(self, t: TermOp, args: Sequence[TermOp], n: int | None = None) -> TermOp:
        if len(args) != t.arity:
            raise InputError("arity mismatch")
        if args:
            n = args[0].arity
        return TermOp(substitute_vars(t.term, [a.term for a in args]), 0 if n is None else n)

    def elements(self, n: int):
        return None
