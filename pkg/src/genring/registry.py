"""Parse the ASCII monad identifiers used on the command line."""
from __future__ import annotations

import re
from fractions import Fraction

from . import coeffmonads as cm
from .errors import InputError
from .torsionmonads import FINF, CyclotomicMonad

_SIMPLE = {
    "Z": cm.Z,
    "N": cm.NN,
    "Zinf": cm.ZINF,
    "F1": cm.F1,
    "F12": cm.F12,
    "Fempty": cm.FEMPTY,
    "Q": cm.Q,
    "Finf": FINF,
}

_PARAM = re.compile(r"^(BN|AN|F1n|Zp):(\d+)$")

IDENTS = ("Z", "N", "BN:k", "AN:k", "Zinf", "F1", "F12", "F1n:k", "Finf", "Fempty")


def monad_from_ident(ident: str):
    ident = ident.strip()
    if ident in _SIMPLE:
        return _SIMPLE[ident]
    m = _PARAM.match(ident)
    if not m:
        raise InputError(f"unknown monad {ident!r}; expected one of {', '.join(IDENTS)}")
    tag, k = m.group(1), int(m.group(2))
    if tag == "F1n":
        return CyclotomicMonad(k)
    if tag == "Zp":
        return cm.Zp(k)
    return cm.CoeffMonad(tag, k)


_CYC = re.compile(r"^(?:(\d+)@(-?\d+)|0)/(\d+)$")


def parse_element(m, text: str):
    """Read an element of ``m`` from the command line.

    Coefficient monads take ``1/2,-1/2`` (``()`` for arity 0); F1n takes
    ``k@e/m`` (slot k of m, exponent e) or ``0/m``; Finf takes signs ``+,-,0``.
    """
    t = text.strip()
    if isinstance(m, CyclotomicMonad):
        g = _CYC.match(t)
        if not g:
            raise InputError(f"expected k@e/m or 0/m for {m.name}, got {text!r}")
        arity = int(g.group(3))
        if g.group(1) is None:
            return m.zero(arity)
        return m.element(arity, int(g.group(1)) - 1, int(g.group(2)))
    parts = [] if t in ("", "()") else [p.strip() for p in t.strip("()").split(",")]
    if m is FINF:
        signs = {"+": 1, "-": -1, "0": 0}
        if any(p not in signs for p in parts):
            raise InputError(f"signs must be +, - or 0, got {text!r}")
        return m.element([signs[p] for p in parts])
    try:
        coeffs = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot read coefficients from {text!r}") from None
    if not m.contains(coeffs):
        raise InputError(f"{text} is not an element of {m.name}")
    return m.element(coeffs)
