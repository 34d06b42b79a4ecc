import pytest
from sympy import primerange

from heckepairs import IntegralIdeal, make_field, primes_above
from heckepairs.characters import (
    DirichletQuadratic,
    base_change_of_dirichlet,
    build_character,
    conjugate_char,
    mul_chars,
)
from heckepairs.classify import enumerate_characters
from heckepairs.equiv import (
    NoPartnerError,
    construct_partner,
    fundamental_discriminant_of,
    partner_field,
    partner_fields,
    verify_equiv,
)
from heckepairs.ideals import kronecker
from heckepairs.lfunc import local_factor


def split_char(d, p, label=1):
    K = make_field(d)
    v = primes_above(K, p)[label - 1]
    return build_character(K, IntegralIdeal.from_place(v), {v: (1,)})


@pytest.fixture(scope="module")
def gaussian_pair():
    chi = split_char(-1, 17)
    eta, cert = construct_partner(chi, N=10_000)
    return chi, eta, cert


def test_gaussian_partner(gaussian_pair):
    chi, eta, cert = gaussian_pair
    assert eta.field.d == 17
    ((R, e),) = eta.conductor.items()
    assert R.p == 2 and e == 2
    assert cert.matched and cert.first_mismatch is None and cert.oracle_agrees
    assert (cert.level, cert.kind, cert.nebentypus) == (68, "holomorphic_weight_one", -68)
    # eta takes opposite signs at the two real places
    assert sorted(eta.real_signs()) == [-1, 1]


@pytest.mark.parametrize("q,kind", [(29, "maass_even_cos"), (41, "maass_even_sin")])
def test_real_pairs(q, kind):
    chi = split_char(5, q)
    eta, cert = construct_partner(chi, N=10_000)
    assert eta.field.d == q
    assert eta.conductor == IntegralIdeal.from_place(primes_above(eta.field, 5)[0]) or \
        eta.conductor == IntegralIdeal.from_place(primes_above(eta.field, 5)[1])
    assert cert.matched and cert.kind == kind and cert.level == 5 * q


def test_pair_agrees_beyond_the_certificate(gaussian_pair):
    chi, eta, _ = gaussian_pair
    for p in primerange(10_000, 12_000):
        a = local_factor(chi, p)
        b = local_factor(eta, p)
        assert a == b, p


def test_certificate_is_symmetric(gaussian_pair):
    chi, eta, _ = gaussian_pair
    back, cert = construct_partner(eta, N=3000)
    assert back.field is chi.field
    assert cert.matched
    assert verify_equiv(back, eta, 3000).matched


def test_wrong_partner_reports_first_mismatch(gaussian_pair):
    chi, eta, _ = gaussian_pair
    twist = base_change_of_dirichlet(DirichletQuadratic(-3), eta.field)
    wrong = mul_chars(eta, twist)
    cert = verify_equiv(chi, wrong, 2000)
    assert not cert.matched
    p = cert.first_mismatch
    assert p is not None and p <= 20


def test_conjugate_has_same_coefficients():
    chi = split_char(5, 41)
    eta, _ = construct_partner(chi, N=2000)
    assert verify_equiv(conjugate_char(chi), eta, 2000).matched


def test_delta_matches_partner_field():
    for chi in (split_char(-1, 17), split_char(5, 29), split_char(5, 41)) + tuple(enumerate_characters(make_field(-7), 60)[-2:]):
        M = partner_field(chi)
        delta = mul_chars(chi, conjugate_char(chi))
        for p in primerange(2, 200):
            for v in primes_above(chi.field, p):
                if v in delta.local or M.disc % p == 0:
                    continue
                assert delta.sign(v) == kronecker(M.disc, v.norm)


def test_partner_field_refuses_base_change():
    chi = base_change_of_dirichlet(DirichletQuadratic(13), make_field(5))
    with pytest.raises(ValueError):
        partner_field(chi)


def test_construct_partner_errors():
    chi = split_char(-1, 17)
    with pytest.raises(NoPartnerError):
        construct_partner(chi, N=200, M=make_field(13))  # 13 does not divide the level
    with pytest.raises(NoPartnerError):
        construct_partner(chi, N=200, M=make_field(-17))  # even class number


def test_verify_equiv_rejects_same_field():
    chi = split_char(-1, 17)
    with pytest.raises(ValueError):
        verify_equiv(chi, chi, 100)


@pytest.mark.parametrize("n,D", [(5, 5), (3, 12), (-1, -4), (2, 8), (-6, -24), (45, 5), (-7, -7), (68, 17)])
def test_fundamental_discriminant_of(n, D):
    assert fundamental_discriminant_of(n) == D


def test_fallback_to_second_subfield():
    K = make_field(-2)
    (v,) = primes_above(K, 2)
    chi = [c for c in enumerate_characters(K, 40) if c.conductor == IntegralIdeal.from_place(v, 5)][0]
    assert [M.d for M in partner_fields(chi)] == [-1, 2]
    eta, cert = construct_partner(chi, N=3000)
    assert eta.field.d == 2 and cert.matched


def test_no_partner_reports_both_subfields():
    K = make_field(-7)
    f = IntegralIdeal(-7, {primes_above(K, 2)[0]: 2, primes_above(K, 7)[0]: 1})
    (chi,) = [c for c in enumerate_characters(K, 60) if c.conductor == f]
    with pytest.raises(NoPartnerError) as info:
        construct_partner(chi, N=500)
    msg = str(info.value)
    assert "Q(sqrt -1)" in msg and "Q(sqrt 7)" in msg
    assert info.value.near_misses


@pytest.mark.parametrize("d,bound", [(-1, 120), (5, 120), (-7, 120), (13, 80)])
def test_partner_field_holds_at_fresh_primes(d, bound):
    for chi in enumerate_characters(make_field(d), bound):
        M = partner_field(chi)
        assert M is not chi.field
        delta = mul_chars(chi, conjugate_char(chi))
        fresh = [p for p in primerange(211, 2000) if M.disc % p and chi.field.disc % p][:50]
        assert len(fresh) == 50
        for p in fresh:
            v = primes_above(chi.field, p)[0]
            if v in delta.local:
                continue
            assert delta.sign(v) == kronecker(M.disc, v.norm)
