"""Independent reference computations used by the tests.

The topologies here are generated from principal opens D(f) of actual ring
elements f, glued chart by chart, and closed under finite unions and
intersections by brute force.  Nothing is shared with the library's own
truncated topology beyond the principal_open primitive.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from genring import spectra as sp


def subsets_mask(points, keep) -> int:
    return sum(1 << i for i, pt in enumerate(points) if pt in keep)


def lattice(masks) -> set[int]:
    fam = set(masks)
    while True:
        new = {op for a in fam for b in fam for op in (a | b, a & b)} - fam
        if not new:
            return fam
        fam |= new


def chart_opens(chart: sp.SpecSpace, pts: list, primes: list[int]) -> set[int]:
    """Opens of an affine chart traced on ``pts`` (ξ, primes of the chart, maybe ∞)."""
    N = chart.N or 1
    local = [p for p in primes if chart.contains(sp.prime_point(p))]
    fs = []
    for r in range(len(local) + 1):
        for ps in itertools.combinations(local, r):
            f = 1
            for p in ps:
                f *= p
            if chart.kind == "SpecAN":
                # push f into the unit ball with a power of N
                k = 0
                while f > N**k:
                    k += 1
                fs.append(Fraction(f, N ** (k + 1)))
                fs.append(Fraction(1))
            else:
                fs.append(Fraction(f))
    masks = {0}
    for f in fs:
        u = sp.principal_open(chart, f)
        masks.add(subsets_mask(pts, [pt for pt in pts if pt in u]))
    return lattice(masks)


def glued_opens(N: int, primes: list[int]) -> tuple[list, set[int]]:
    """Opens of Spec-hat^(N) on the truncation ξ, primes, ∞ via its two charts."""
    pts = [sp.XI] + [sp.prime_point(p) for p in primes] + [sp.INF_PT]
    z_chart, a_chart = sp.spec_z(), sp.spec_an(N)
    z_pts = [pt for pt in pts if z_chart.contains(pt)]
    a_pts = [pt for pt in pts if a_chart.contains(pt)]
    z_top = chart_opens(z_chart, z_pts, primes)
    a_top = chart_opens(a_chart, a_pts, primes)
    opens = set()
    for mask in range(1 << len(pts)):
        members = [pt for i, pt in enumerate(pts) if mask >> i & 1]
        if subsets_mask(z_pts, members) in z_top and subsets_mask(a_pts, members) in a_top:
            opens.add(mask)
    return pts, opens


def limit_opens(primes: list[int]) -> tuple[list, set[int]]:
    """Opens of the limit: generated by every Spec-hat^(M), M squarefree over ``primes``."""
    gens: set[int] = set()
    pts = None
    for r in range(1, len(primes) + 1):
        for ps in itertools.combinations(primes, r):
            M = 1
            for p in ps:
                M *= p
            pts, top = glued_opens(M, primes)
            gens |= top
    return pts, lattice(gens)


def hat_open(N: int, pts, members: set) -> bool:
    """Opens of Spec-hat^(N): empty, or ξ ∈ U, cofinite, and ∞ ∉ U or Spec B_N ⊂ U."""
    if not members:
        return True
    if sp.XI not in members:
        return False
    if sp.INF_PT not in members:
        return True
    return all(pt in members for pt in pts if pt.kind == "prime" and N % pt.p)


def limit_open(members: set) -> bool:
    return not members or sp.XI in members


def closure_from_opens(pts, opens, pt):
    i = pts.index(pt)
    return {q for j, q in enumerate(pts)
            if all(m >> i & 1 for m in opens if m >> j & 1)}


def monomial_primes(n: int) -> int:
    """Count primes of F1[T_0..T_n] seen in degree <= 2, excluding the irrelevant ideal."""
    mons = [Counter({i: 1}) for i in range(n + 1)]
    mons += [Counter([i, j]) for i, j in itertools.combinations_with_replacement(range(n + 1), 2)]
    keys = [tuple(sorted(m.elements())) for m in mons]
    idx = {k: i for i, k in enumerate(keys)}
    count = 0
    for mask in range(1 << len(keys)):
        inside = lambda k: mask >> idx[k] & 1  # noqa: E731
        ok = True
        for k in keys:
            if len(k) == 1:
                for j in range(n + 1):
                    prod = tuple(sorted(k + (j,)))
                    if inside(k) and not inside(prod):
                        ok = False  # not an ideal
                    if inside(prod) and not (inside(k) or inside((j,))):
                        ok = False  # not prime
        if ok and not all(inside((i,)) for i in range(n + 1)):
            count += 1
    return count
