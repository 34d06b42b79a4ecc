import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import primerange

from heckepairs import IntegralIdeal, factor_principal, make_field, primes_above
from heckepairs.ideals import (
    decompose_unit,
    local_unit_generators,
    max_level,
    parse_place,
    precision_for,
    pow_mod,
)
from heckepairs.quadfield import QuadInt

FIELDS = [-1, -2, -3, -7, -11, 2, 5, 13, 29, 41, 229, -23, 10, 3]


def splitting_by_root_count(K, p):
    """Classify p by counting roots of the minimal polynomial of w mod p."""
    roots = [x for x in range(p) if (x * x - K.t * x + K.n0) % p == 0]
    if len(roots) == 2:
        return "split"
    if len(roots) == 1:
        return "ramified"
    return "inert"


@pytest.mark.parametrize("d", [-1, -7, 5, 229])
def test_splitting_matches_root_count(d):
    K = make_field(d)
    for p in primerange(2, 10_000):
        places = primes_above(K, p)
        kind = splitting_by_root_count(K, p)
        assert places[0].kind == kind
        assert len(places) == (2 if kind == "split" else 1)
        assert sum(v.f * v.e for v in places) == 2


def test_split_labels_order_roots():
    K = make_field(5)
    v1, v2 = primes_above(K, 29)
    assert (v1.label, v2.label) == (1, 2)
    assert v1.root < v2.root
    assert v1.root == 6
    assert v1.conj() == v2 and v2.conj() == v1
    assert primes_above(K, 41)[1].root == 35


def test_parse_place_round_trip():
    K = make_field(-7)
    for p in primerange(2, 60):
        for v in primes_above(K, p):
            assert parse_place(K, v.code()) == v
    with pytest.raises(ValueError):
        parse_place(K, "3:split:1")


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(-500, 500), st.integers(-500, 500))
def test_factor_principal_norm(d, a, b):
    x = QuadInt(a, b, d)
    if x.is_zero():
        return
    I = factor_principal(x)
    assert I.norm == abs(x.norm())
    for v, e in I.items():
        assert v.valuation(x) == e
    assert I.contains(x)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(-200, 200), st.integers(-200, 200),
       st.integers(-200, 200), st.integers(-200, 200))
def test_factorisation_is_multiplicative(d, a, b, c, e):
    x, y = QuadInt(a, b, d), QuadInt(c, e, d)
    if x.is_zero() or y.is_zero():
        return
    assert factor_principal(x * y) == factor_principal(x) * factor_principal(y)
    assert factor_principal(x.conj()) == factor_principal(x).conj()


def test_conjugation_is_an_involution():
    K = make_field(13)
    rng = random.Random(3)
    for _ in range(200):
        x = K.elt(rng.randint(-999, 999), rng.randint(-999, 999))
        if x.is_zero():
            continue
        I = factor_principal(x)
        assert I.conj().conj() == I
        assert I.conj().norm == I.norm


def test_ideal_json_round_trip():
    K = make_field(-7)
    I = factor_principal(K.elt(30, 7))
    assert IntegralIdeal.from_json(K, I.to_json()) == I


def test_residue_key_detects_membership():
    rng = random.Random(5)
    for d in (-1, -2, -3, 2, 5, -7, 13):
        K = make_field(d)
        for v in primes_above(K, 2) + primes_above(K, 3) + primes_above(K, 7):
            for m in range(1, 5):
                zero = v.residue_key(K.elt(0), m)
                for _ in range(60):
                    x = K.elt(rng.randint(-300, 300), rng.randint(-300, 300))
                    if x.is_zero():
                        continue
                    assert (v.residue_key(x, m) == zero) == (v.valuation(x) >= m)


def _all_places_over_two_and_odd():
    out = []
    for d in (-1, -2, -3, -7, -11, 2, 5, 13, 3, 6):
        K = make_field(d)
        for v in primes_above(K, 2):
            for m in range(1, max_level(v) + 1):
                out.append((d, v, m))
        for p in (3, 5, 7):
            for v in primes_above(K, p):
                out.append((d, v, 1))
    return out


@pytest.mark.parametrize("d,v,m", _all_places_over_two_and_odd(), ids=lambda x: str(x))
def test_unit_group_size_matches_brute_count(d, v, m):
    K = make_field(d)
    G = local_unit_generators(v, m)
    q = v.p ** precision_for(v, m)
    units = {
        v.residue_key(K.elt(a, b), m)
        for a in range(q)
        for b in range(q)
        if not K.elt(a, b).is_zero() and v.valuation(K.elt(a, b)) == 0
    }
    assert G.size == len(units)


@pytest.mark.parametrize("d", [-1, -2, -7, -3, 2, 5, 13])
def test_decompose_is_a_bijection(d):
    K = make_field(d)
    for v in primes_above(K, 2):
        m = max_level(v)
        G = local_unit_generators(v, m)
        seen = set()
        for exps in itertools.product(*(range(o) for o in G.orders)):
            x = G.element(exps)
            assert decompose_unit(x, G) == exps
            seen.add(G.key(x))
        assert len(seen) == G.size


def test_decompose_examples():
    K = make_field(-2)
    (v,) = primes_above(K, 2)
    G = local_unit_generators(v, 5)
    assert G.orders == [4, 2, 2]
    assert decompose_unit(K.elt(-1), G) == (2, 1, 0)
    K = make_field(-1)
    (v,) = primes_above(K, 2)
    G = local_unit_generators(v, 2)
    assert decompose_unit(K.omega, G) == (1,)


def test_decompose_is_a_homomorphism():
    rng = random.Random(7)
    for d in (-1, -2, -3, 2, 5, -7):
        K = make_field(d)
        for v in primes_above(K, 2):
            G = local_unit_generators(v, max_level(v))
            for _ in range(100):
                x = K.elt(rng.randint(-99, 99), rng.randint(-99, 99))
                y = K.elt(rng.randint(-99, 99), rng.randint(-99, 99))
                if x.is_zero() or y.is_zero() or v.valuation(x) or v.valuation(y):
                    continue
                ex, ey, exy = decompose_unit(x, G), decompose_unit(y, G), decompose_unit(x * y, G)
                assert all((a + b - c) % o == 0 for a, b, c, o in zip(ex, ey, exy, G.orders))


def test_unit_is_square_at_29():
    K = make_field(5)
    v = primes_above(K, 29)[0]
    G = local_unit_generators(v, 1)
    (e,) = decompose_unit(K.fundamental_unit, G)
    assert e % 2 == 0
    assert pow_mod(G.generators[0], 28, 29) == K.one


def test_rejects_precision_out_of_range():
    K = make_field(-2)
    (v,) = primes_above(K, 2)
    with pytest.raises(ValueError):
        local_unit_generators(v, 6)
    w = primes_above(make_field(5), 29)[0]
    with pytest.raises(ValueError):
        local_unit_generators(w, 2)
    with pytest.raises(ValueError):
        decompose_unit(make_field(5).elt(29), local_unit_generators(w, 1))


def test_places_carry_plain_ints():
    gmpy2 = pytest.importorskip("gmpy2")
    from heckepairs import is_principal

    K = make_field(-7)
    (v,) = primes_above(K, gmpy2.mpz(2693))
    assert type(v.p) is int
    assert is_principal(IntegralIdeal.from_place(v)) == K.elt(2693)
