from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import monomial_primes

from genring import coeffmonads as cm
from genring.errors import InputError, InvariantViolation, Undecided
from genring.projgraded import (
    GradedRingR,
    deg0_localization_contains,
    graded_contains,
    graded_substitute,
    localization_equals,
    localization_sample,
    proj_chart_check,
    proj_is_compactification,
    proj_points_F1,
    radical_witness,
)


def test_graded_membership():
    R = GradedRingR(2)
    assert graded_contains(R, 1, (1, 1))
    assert not graded_contains(R, 1, (3,))
    assert graded_contains(R, 0, (1,))
    assert not graded_contains(R, 2, (Fraction(1, 2),))
    with pytest.raises(InvariantViolation):
        R.element(1, (3,))


def test_graded_substitution_examples():
    R = GradedRingR(2)
    assert R.f1f2 == R.element(2, (2,))
    t = R.element(1, (1, 1))
    assert graded_substitute(t, [R.proj(0, 2, 1), R.proj(1, 2, 1)]) == R.element(2, (1, 1))
    assert graded_substitute(t, [R.f1, R.f1]) == R.element(2, (2,))
    assert graded_substitute(R.unit(), [t]) == t
    with pytest.raises(InputError):
        graded_substitute(t, [R.f1, R.element(0, (1,))])


@given(st.sampled_from([2, 3, 6]), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3),
       st.integers(1, 3), st.integers(1, 3), st.randoms(use_true_random=False))
def test_graded_monad_laws(N, a, b, c, n, k, rng):
    R = GradedRingR(N)
    t = R.sample(a, n, 1, rng)[0]
    ss = R.sample(b, k, n, rng)
    us = R.sample(c, 2, k, rng)
    left = graded_substitute(t, [graded_substitute(s, us) for s in ss])
    right = graded_substitute(graded_substitute(t, ss), us)
    assert left == right and left.degree == a + b + c
    assert graded_substitute(t, [R.proj(i, n) for i in range(n)]) == t
    assert graded_substitute(R.proj(0, n), ss) == ss[0]


def test_deg0_examples():
    R = GradedRingR(2)
    c = deg0_localization_contains(R, R.f1, [5])
    assert c.member and c.d == 3
    c = deg0_localization_contains(R, R.f2, [Fraction(1, 2), Fraction(1, 2)])
    assert c.member and c.d == 1 and c.numerator == (1, 1)
    assert deg0_localization_contains(R, R.f1f2, [Fraction(5, 4)]).member
    assert not deg0_localization_contains(R, R.f2, [3]).member
    assert not deg0_localization_contains(R, R.f1, [Fraction(1, 2)]).member
    with pytest.raises(Undecided):
        deg0_localization_contains(R, R.f1, [10**30], k_bound=5)


@pytest.mark.parametrize("N", [2, 3, 6])
def test_localizations_agree(N):
    R = GradedRingR(N)
    sample = localization_sample(N, 300, seed=N)
    for f, target in ((R.f1, cm.Z), (R.f2, cm.AN(N)), (R.f1f2, cm.BN(N))):
        rep = localization_equals(R, f, target, sample)
        assert rep.agree, rep.disagreements[:3]
        # the sample exercises both answers
        assert 0 < rep.members < rep.checked


def test_sample_hits_l1_boundary():
    N = 3
    sample = localization_sample(N, 200, seed=1)
    assert any(sum(abs(x) for x in v) == 1 and any(x.denominator > 1 for x in v) for v in sample)


@pytest.mark.parametrize("N,u,d", [(2, 1, 1), (2, 2, 1), (2, 3, 2), (3, 9, 2), (6, 5, 1), (6, 36, 2)])
def test_radical_witness_minimal(N, u, d):
    R = GradedRingR(N)
    w = radical_witness(R, R.element(d, (u,)))
    assert graded_contains(R, w.cofactor.degree, w.cofactor.coeffs)
    f = R.f1 if w.factor == "f1" else R.f2
    assert graded_substitute(f, [w.cofactor]).coeffs == (u**w.m,)
    # no smaller power factors through f1 or f2
    for m in range(1, w.m):
        um, top = u**m, d * m - 1
        assert abs(um) > N**top and not (um % N == 0 and abs(um // N) <= N**top)


def test_radical_witness_example():
    w = radical_witness(GradedRingR(2), GradedRingR(2).element(2, (3,)))
    assert (w.m, w.factor, w.cofactor.degree, w.cofactor.coeffs) == (3, "f1", 5, (27,))
    assert radical_witness(GradedRingR(2), GradedRingR(2).f2).factor == "f2"


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_projective_space_matches_monomial_brute_force(n):
    assert proj_points_F1(n).count == monomial_primes(n) == 2 ** (n + 1) - 1


def test_projective_counts():
    assert proj_points_F1(1).count == 3
    for n in range(11):
        assert proj_points_F1(n).count == 2 ** (n + 1) - 1
    with pytest.raises(InputError):
        proj_points_F1(21)


@pytest.mark.parametrize("n", range(1, 7))
def test_chart_cover(n):
    c = proj_chart_check(n)
    assert c.ok
    P = proj_points_F1(n)
    for i, j in itertools.combinations(range(n + 1), 2):
        both = [S for S in P.points if i not in S and j not in S]
        assert len(both) == 2 ** (n - 1) == c.intersection_sizes[(i, j)]


@pytest.mark.parametrize("N", [2, 6])
def test_proj_is_compactification_small(N):
    rep = proj_is_compactification(N, prime_bound=20, samples=200, open_bound=13)
    assert rep.isomorphic
    assert [c.sections for c in rep.charts] == [cm.Z, cm.AN(N), cm.BN(N)]
    assert rep.subsets_checked == 2 ** (len([2, 3, 5, 7, 11, 13]) + 2)


def test_bad_ring():
    with pytest.raises(InputError):
        GradedRingR(1)
    with pytest.raises(InputError):
        deg0_localization_contains(GradedRingR(2), GradedRingR(2).element(0, (1,)), [1])
    with pytest.raises(InputError):
        radical_witness(GradedRingR(2), GradedRingR(2).unit())


def test_sample_determinism():
    assert localization_sample(2, 50, seed=4) == localization_sample(2, 50, seed=4)
    rng = random.Random(0)
    assert all(graded_contains(GradedRingR(3), 2, e.coeffs)
               for e in GradedRingR(3).sample(2, 3, 20, rng))
