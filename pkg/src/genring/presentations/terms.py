"""Terms over a signature, presentations, and the interchange law.

A term is either an ``int`` k, the variable ``x_{k+1}`` (the projection
``{k+1}_n``), or a tuple ``(name, *args)`` applying a symbol.  The base
constant of an F1 presentation is the symbol ``"0"``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from ..errors import InputError

Term = Union[int, tuple]

BASES = ("F_empty", "F1")
ZERO = "0"


def is_var(t: Term) -> bool:
    return isinstance(t, int)


def app(name: str, *args: Term) -> tuple:
    return (name, *args)


def const(name: str = ZERO) -> tuple:
    return (name,)


@lru_cache(maxsize=None)
def size(t: Term) -> int:
    if is_var(t):
        return 1
    return 1 + sum(size(a) for a in t[1:])


@lru_cache(maxsize=None)
def depth(t: Term) -> int:
    if is_var(t):
        return 0
    return 1 + max((depth(a) for a in t[1:]), default=0)


@lru_cache(maxsize=None)
def term_key(t: Term) -> tuple:
    """Total order: size first, then variables before applications, then labels, then children."""
    if is_var(t):
        return (1, 0, t, "", ())
    return (size(t), 1, 0, t[0], tuple(term_key(a) for a in t[1:]))


def variables(t: Term) -> set[int]:
    if is_var(t):
        return {t}
    out: set[int] = set()
    for a in t[1:]:
        out |= variables(a)
    return out


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if not is_var(t):
        for a in t[1:]:
            yield from subterms(a)


def substitute_vars(t: Term, sigma) -> Term:
    """Replace variable k by ``sigma[k]`` (a sequence or a dict)."""
    if is_var(t):
        return sigma[t]
    return (t[0], *(substitute_vars(a, sigma) for a in t[1:]))


def symbols_in(t: Term) -> set[str]:
    if is_var(t):
        return set()
    out = {t[0]}
    for a in t[1:]:
        out |= symbols_in(a)
    return out


def format_term(t: Term) -> str:
    if is_var(t):
        return f"x{t + 1}"
    if len(t) == 1:
        return t[0]
    return f"{t[0]}(" + ", ".join(format_term(a) for a in t[1:]) + ")"


@dataclass(frozen=True)
class OpSymbol:
    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 0:
            raise InputError(f"negative arity for {self.name}")


@dataclass(frozen=True)
class Relation:
    lhs: Term
    rhs: Term
    label: str = field(default="", compare=False)

    @property
    def context(self) -> int:
        vs = variables(self.lhs) | variables(self.rhs)
        return max(vs) + 1 if vs else 0

    def oriented(self) -> "Relation":
        """Same equation with the sides in a canonical order (used for deduplication)."""
        if term_key(self.rhs) > term_key(self.lhs):
            return Relation(self.rhs, self.lhs, self.label)
        return self

    def __str__(self) -> str:
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"


def interchange(t: OpSymbol, s: OpSymbol) -> Relation:
    """Matrix interchange of ``t`` (arity n) and ``s`` (arity m) in context n*m.

    The variable for row i, column j is ``i*m + j``.
    """
    n, m = t.arity, s.arity
    lhs = (t.name, *((s.name, *(i * m + j for j in range(m))) for i in range(n)))
    rhs = (s.name, *((t.name, *(i * m + j for i in range(n))) for j in range(m)))
    return Relation(lhs, rhs, f"interchange {t.name}/{s.name}")


@dataclass(frozen=True)
class Presentation:
    base: str = "F_empty"
    generators: tuple[OpSymbol, ...] = ()
    relations: tuple[Relation, ...] = ()
    commutative: bool = True
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.base not in BASES:
            raise InputError(f"base must be one of {BASES}, got {self.base!r}")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise InputError("generator names must be unique")
        if self.base == "F1" and ZERO in names:
            raise InputError("'0' is reserved for the base constant")
        arities = self.symbols()
        for r in self.relations:
            for side in (r.lhs, r.rhs):
                check_term(side, arities)

    def symbols(self) -> dict[str, int]:
        out = {ZERO: 0} if self.base == "F1" else {}
        out.update((g.name, g.arity) for g in self.generators)
        return out

    def op_symbols(self) -> list[OpSymbol]:
        return [OpSymbol(n, a) for n, a in self.symbols().items()]

    def constants(self) -> list[tuple]:
        return [(n,) for n, a in self.symbols().items() if a == 0]

    def theory(self) -> list[Relation]:
        """Relations plus, for commutative presentations, every interchange law."""
        rels = list(self.relations)
        if self.commutative:
            ops = self.op_symbols()
            for i, a in enumerate(ops):
                for b in ops[i:]:
                    rels.append(interchange(a, b))
        seen: set[tuple] = set()
        out = []
        for r in rels:
            o = r.oriented()
            if o.lhs == o.rhs or (o.lhs, o.rhs) in seen:
                continue
            seen.add((o.lhs, o.rhs))
            out.append(r)
        return out

    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"# {self.name}")
        lines.append(f"base {self.base};")
        if not self.commutative:
            lines.append("noncommutative;")
        if self.generators:
            lines.append("gen " + ", ".join(f"{g.name}/{g.arity}" for g in self.generators) + ";")
        for r in self.relations:
            suffix = f"  # {r.label}" if r.label else ""
            lines.append(f"rel {r};{suffix}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "commutative": self.commutative,
            "generators": [{"name": g.name, "arity": g.arity} for g in self.generators],
            "relations": [
                {"lhs": format_term(r.lhs), "rhs": format_term(r.rhs), "label": r.label}
                for r in self.relations
            ],
        }


def check_term(t: Term, arities: dict[str, int]) -> None:
    if is_var(t):
        if t < 0:
            raise InputError("variables are numbered from x1")
        return
    name, args = t[0], t[1:]
    if name not in arities:
        raise InputError(f"unknown symbol {name!r}")
    if len(args) != arities[name]:
        raise InputError(f"{name} has arity {arities[name]}, applied to {len(args)} arguments")
    for a in args:
        check_term(a, arities)


def terms_context(terms: Iterable[Term]) -> int:
    vs: set[int] = set()
    for t in terms:
        vs |= variables(t)
    return max(vs) + 1 if vs else 0


def rename_symbols(t: Term, mapping: dict[str, str]) -> Term:
    if is_var(t):
        return t
    return (mapping.get(t[0], t[0]), *(rename_symbols(a, mapping) for a in t[1:]))


def tensor_presentation(p1: Presentation, p2: Presentation) -> Presentation:
    """Coproduct of the two theories plus interchange of every cross pair."""
    if p1.base != p2.base:
        raise InputError("tensor product needs a common base")
    names1 = {g.name for g in p1.generators}
    names2 = {g.name for g in p2.generators}
    clash = names1 & names2
    map1 = {n: f"{n}_1" for n in clash}
    map2 = {n: f"{n}_2" for n in clash}
    gens1 = tuple(OpSymbol(map1.get(g.name, g.name), g.arity) for g in p1.generators)
    gens2 = tuple(OpSymbol(map2.get(g.name, g.name), g.arity) for g in p2.generators)
    if {g.name for g in gens1} & {g.name for g in gens2}:
        raise InputError("renaming produced a clash; rename generators first")
    rels = [Relation(rename_symbols(r.lhs, map1), rename_symbols(r.rhs, map1), r.label)
            for r in p1.relations]
    rels += [Relation(rename_symbols(r.lhs, map2), rename_symbols(r.rhs, map2), r.label)
             for r in p2.relations]
    for a in gens1:
        for b in gens2:
            rels.append(interchange(a, b))
    name = f"{p1.name} (x) {p2.name}" if p1.name and p2.name else ""
    return Presentation(p1.base, gens1 + gens2, tuple(rels),
                        p1.commutative and p2.commutative, name)


def free_monad_terms(symbols: dict[str, int], n: int, levels: int) -> list[list[Term]]:
    """Syntactic terms in context n, grouped by depth 0..levels."""
    import itertools

    by_depth: list[list[Term]] = [list(range(n))]
    upto: list[Term] = list(range(n))
    for d in range(1, levels + 1):
        fresh = []
        for name, ar in symbols.items():
            for args in itertools.product(upto, repeat=ar):
                if ar == 0 and d > 1:
                    continue
                if ar and max(depth(a) for a in args) != d - 1:
                    continue
                fresh.append((name, *args))
        by_depth.append(fresh)
        upto = upto + fresh
    return by_depth


def sorted_terms(ts: Iterable[Term]) -> list[Term]:
    return sorted(ts, key=term_key)
