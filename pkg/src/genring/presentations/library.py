"""Presentations of the standard examples and their intended interpretations."""
from __future__ import annotations

import itertools
from fractions import Fraction

from .. import coeffmonads as cm
from ..errors import InputError
from ..exactnum import prime_divisors
from ..torsionmonads import FINF, CyclotomicMonad
from .interpret import Interpretation
from .terms import ZERO, OpSymbol, Presentation, Relation


def _group_relations(add: str, neg: str, zero: tuple) -> tuple[Relation, ...]:
    return (
        Relation((add, 0, (neg, 0)), zero, "inverse"),
        Relation((add, 0, zero), 0, "right unit"),
        Relation((add, zero, 0), 0, "left unit"),
        Relation((add, (add, 0, 1), 2), (add, 0, (add, 1, 2)), "associativity"),
        Relation((add, 0, 1), (add, 1, 0), "commutativity"),
    )


def integers() -> Presentation:
    """Z over F1: an abelian group with the base constant as neutral element."""
    return Presentation(
        "F1", (OpSymbol("neg", 1), OpSymbol("add", 2)),
        _group_relations("add", "neg", (ZERO,)), name="Z over F1",
    )


def integers_over_fempty() -> Presentation:
    return Presentation(
        "F_empty", (OpSymbol("z", 0), OpSymbol("neg", 1), OpSymbol("add", 2)),
        _group_relations("add", "neg", ("z",)), name="Z over F_empty",
    )


def naturals() -> Presentation:
    return Presentation(
        "F1", (OpSymbol("add", 2),),
        (
            Relation(("add", (ZERO,), 0), 0, "left unit"),
            Relation(("add", 0, (ZERO,)), 0, "right unit"),
        ),
        name="N",
    )


def f1() -> Presentation:
    return Presentation("F_empty", (OpSymbol("z", 0),), (), name="F1")


def f12() -> Presentation:
    return Presentation(
        "F1", (OpSymbol("neg", 1),), (Relation(("neg", ("neg", 0)), 0, "involution"),), name="F12"
    )


def f1n(n: int) -> Presentation:
    if n < 1:
        raise InputError("order must be >= 1")
    t = 0
    for _ in range(n):
        t = ("zeta", t)
    return Presentation(
        "F1", (OpSymbol("zeta", 1),), (Relation(t, 0, "order"),), name=f"F1^{n}"
    )


def finf() -> Presentation:
    """F_inf over F12 = F1<neg | neg neg = id> with one binary operation star."""
    return Presentation(
        "F1", (OpSymbol("neg", 1), OpSymbol("star", 2)),
        (
            Relation(("neg", ("neg", 0)), 0, "involution"),
            Relation(("star", 0, ("neg", 0)), (ZERO,), "cancellation"),
            Relation(("star", 0, 0), 0, "idempotence"),
            Relation(("star", 0, 1), ("star", 1, 0), "commutativity"),
            Relation(("star", ("star", 0, 1), 2), ("star", 0, ("star", 1, 2)), "associativity"),
        ),
        name="Finf",
    )


def _s_relations(name: str, p: int) -> list[Relation]:
    rels = [Relation((name, *([0] * p)), 0, f"{name} idempotence")]
    ident = tuple(range(p))
    for sigma in itertools.permutations(range(p)):
        if sigma != ident:
            rels.append(Relation((name, *ident), (name, *sigma), f"{name} symmetry"))
    lhs = (name, *range(p - 1), ("neg", p - 2))
    rhs = (name, *range(p - 2), (ZERO,), (ZERO,))
    rels.append(Relation(lhs, rhs, f"{name} cancellation"))
    return rels


def an_presentation(N: int) -> Presentation:
    """A_N over F1: one averaging operation s_p per prime p | N, plus negation."""
    if N < 2:
        raise InputError("N must be > 1")
    gens = [OpSymbol("neg", 1)]
    rels = [Relation(("neg", ("neg", 0)), 0, "involution")]
    for p in prime_divisors(N):
        gens.append(OpSymbol(f"s{p}", p))
        rels.extend(_s_relations(f"s{p}", p))
    return Presentation("F1", tuple(gens), tuple(rels), name=f"A_{N}")


def words() -> Presentation:
    return Presentation(
        "F_empty", (OpSymbol("cat", 2), OpSymbol("eps", 0)),
        (
            Relation(("cat", ("cat", 0, 1), 2), ("cat", 0, ("cat", 1, 2)), "associativity"),
            Relation(("cat", ("eps",), 0), 0, "left unit"),
            Relation(("cat", 0, ("eps",)), 0, "right unit"),
        ),
        commutative=False, name="words",
    )


LIBRARY = {
    "Z": integers,
    "Z_Fempty": integers_over_fempty,
    "N": naturals,
    "F1": f1,
    "F12": f12,
    "Finf": finf,
    "words": words,
}


def library(name: str) -> Presentation:
    if name in LIBRARY:
        return LIBRARY[name]()
    if name.startswith("AN:"):
        return an_presentation(int(name[3:]))
    if name.startswith("F1n:"):
        return f1n(int(name[4:]))
    raise InputError(f"no library presentation named {name!r}")


# intended interpretations ------------------------------------------------------

def z_interpretation(over_fempty: bool = False) -> Interpretation:
    m = cm.Z
    a = {"neg": m.element([-1]), "add": m.element([1, 1])}
    if over_fempty:
        a["z"] = m.zero(0)
    return Interpretation(m, a)


def n_interpretation() -> Interpretation:
    return Interpretation(cm.NN, {"add": cm.NN.element([1, 1])})


def an_interpretation(N: int) -> Interpretation:
    m = cm.AN(N)
    a = {"neg": m.element([-1])}
    for p in prime_divisors(N):
        a[f"s{p}"] = m.element([Fraction(1, p)] * p)
    return Interpretation(m, a)


def f12_interpretation() -> Interpretation:
    return Interpretation(cm.F12, {"neg": cm.F12.element([-1])})


def f1n_interpretation(n: int) -> Interpretation:
    m = CyclotomicMonad(n)
    return Interpretation(m, {"zeta": m.zeta()})


def finf_interpretation() -> Interpretation:
    return Interpretation(FINF, {"neg": FINF.neg(), "star": FINF.star()})
