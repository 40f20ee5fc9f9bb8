from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import trial_factor
from genring import coeffmonads as cm
from genring.coeffmonads import AN, BN, F1, F12, FEMPTY, NN, ZINF, Z, Element, Zp
from genring.errors import InputError, Undecided
from genring.registry import monad_from_ident, parse_element

small_rats = st.builds(Fraction, st.integers(-12, 12), st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12]))
vectors = st.lists(small_rats, min_size=0, max_size=4)


def den_primes(x: Fraction) -> set[int]:
    return set(trial_factor(x.denominator))


def oracle(tag: str, N: int | None, v) -> bool:
    """Membership written from the definitions, via trial-division valuations."""
    l1 = sum(abs(x) for x in v)
    if tag == "Z":
        return all(not den_primes(x) for x in v)
    if tag == "N":
        return all(not den_primes(x) and x >= 0 for x in v)
    if tag == "BN":
        return all(den_primes(x) <= set(trial_factor(N)) for x in v)
    if tag == "AN":
        return oracle("BN", N, v) and l1 <= 1
    if tag == "ZlocInf":
        return l1 <= 1
    if tag == "Zp":
        return all(N not in den_primes(x) for x in v)
    if tag == "F1":
        return sorted(v)[-1:] in ([], [0], [1]) and sum(1 for x in v if x) <= 1 and min(v, default=0) >= 0
    if tag == "F12":
        return sum(1 for x in v if x) <= 1 and all(x in (-1, 0, 1) for x in v)
    raise AssertionError(tag)


CASES = [("Z", None), ("N", None), ("BN", 2), ("BN", 6), ("AN", 2), ("AN", 3), ("AN", 6),
         ("ZlocInf", None), ("Zp", 3), ("F1", None), ("F12", None)]


@pytest.mark.parametrize("tag,N", CASES)
@given(v=vectors)
def test_membership_matches_definition(tag, N, v):
    m = cm.CoeffMonad(tag, N)
    assert m.contains(v) == oracle(tag, N, v)


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_an_closed_under_substitution(n, k, data):
    m = AN(6)
    pool = m.sample(k, 1) if k else [m.zero(0)]
    t = data.draw(st.sampled_from(m.sample(n, 1)))
    args = [data.draw(st.sampled_from(pool)) for _ in range(n)]
    r = cm.substitute(t, args, k)
    assert m.contains(r.coeffs)


def test_substitution_example():
    t = AN(2).element(["1/2", "-1/2"])
    r = cm.substitute(t, [AN(2).element([1, 0]), AN(2).element(["1/2", "1/2"])])
    assert r.coeffs == (Fraction(1, 4), Fraction(-1, 4))


def test_element_validation_and_json():
    with pytest.raises(InputError):
        AN(2).element(["1/3"])
    with pytest.raises(InputError):
        ZINF.element([1, 1])
    x = BN(6).element(["5/36", -2])
    assert Element.from_json(x.to_json()) == x


def test_induced_map_merges_slots():
    t = Z.element([1, 2, 3])
    assert cm.induced_map([0, 1, 0], t, 2).coeffs == (4, 2)
    with pytest.raises(InputError):
        cm.induced_map([0, 2], Z.element([1, 1]), 2)


def test_constructor_checks():
    with pytest.raises(InputError):
        cm.CoeffMonad("BN", 1)
    with pytest.raises(InputError):
        Zp(4)
    with pytest.raises(InputError):
        cm.CoeffMonad("bogus")


def test_fempty_has_no_constants():
    assert FEMPTY.zero(2) is None
    assert FEMPTY.elements(0) == []
    assert not FEMPTY.has_constant


def test_finite_elements():
    assert len(F1.elements(3)) == 4
    assert len(F12.elements(3)) == 7


def test_named_intersections():
    assert cm.intersect([BN(6), ZINF]) == AN(6)
    assert cm.intersect([Z, ZINF]) == F12
    assert cm.intersect([NN, ZINF]) == F1
    assert cm.intersect([BN(2), BN(6)]) == BN(2)
    assert cm.intersect([AN(2), AN(3)]) == F12
    assert cm.intersect([AN(6), F12]) == F12


@given(vectors)
def test_intersection_is_conjunction(v):
    for parts in ([BN(2), BN(3)], [AN(6), Zp(5)], [NN, BN(2), ZINF]):
        m = cm.intersect(parts)
        assert m.contains(v) == all(p.contains(v) for p in parts)


def test_localization():
    assert cm.in_localization(AN(2), "1/2", [3]).member
    assert cm.in_localization(AN(2), "1/2", [3]).k == 2
    assert not cm.in_localization(AN(2), "1/2", ["1/3"]).member
    assert not cm.in_localization(AN(6), -1, [2]).member
    with pytest.raises(InputError):
        cm.in_localization(AN(2), 0, [1])
    with pytest.raises(InputError):
        cm.in_localization(AN(2), 2, [1])


def test_localization_bn_is_bnm():
    # B_2[1/3] = B_6 on a grid of rationals
    for num in range(-20, 21):
        for den in (1, 2, 3, 5, 6, 9):
            x = Fraction(num, den)
            r = cm.in_localization(BN(2), 3, [x])
            assert r.member == BN(6).contains([x])


def test_parse_element():
    assert parse_element(monad_from_ident("AN:2"), "1/2,-1/2").coeffs == (Fraction(1, 2), Fraction(-1, 2))
    assert parse_element(Z, "()").arity == 0
    with pytest.raises(InputError):
        parse_element(AN(2), "1,1")
    with pytest.raises(InputError):
        parse_element(Z, "a,b")
