"""Arithmetically equivalent pairs: from (chi, K) find (eta, M) with the same L-function."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from sympy import factorint, primefactors, primerange

from .characters import (
    HeckeCharacter,
    UnitConstraintError,
    build_character,
    conjugate_char,
    is_base_change,
    mul_chars,
)
from .classify import (
    UnadmittedFieldError,
    characters_with_conductor,
    family,
    is_admissible,
    local_options,
)
from .ideals import IntegralIdeal, kronecker, max_level, primes_above
from .lfunc import (
    CoeffTable,
    dirichlet_coeffs,
    fundamental_discriminants_supported_on,
    ideal_sum_oracle,
    induced_descriptor,
)
from .quadfield import QuadField, make_field


class AmbiguousPartnerError(ValueError):
    pass


class NoPartnerError(ValueError):
    def __init__(self, message: str, near_misses: list):
        super().__init__(message)
        self.near_misses = near_misses


def fundamental_discriminant_of(n: int) -> int:
    """Discriminant of Q(sqrt n) for a nonsquare integer n."""
    core = 1 if n > 0 else -1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            core *= p
    return core if core % 4 == 1 else 4 * core


def _is_admitted(D: int) -> bool:
    d = D if D % 4 == 1 else D // 4
    try:
        family(make_field(d))
    except (UnadmittedFieldError, ValueError):
        return False
    return True


def _d_of(D: int) -> int:
    return D if D % 4 == 1 else D // 4


def partner_fields(chi: HeckeCharacter, prime_bound: int = 200) -> list[QuadField]:
    """Both quadratic fields M with delta_M restricted to K equal to chi^c / chi, best first.

    Only the compositum KM is determined by chi: M and the third quadratic
    subfield of KM give the same signs. A field in one of the classified
    families is preferred, then smaller |D|, then D > 0.
    """
    if chi.order != 2:
        raise ValueError("only quadratic characters are supported")
    if is_base_change(chi):
        raise ValueError("chi is self-conjugate; it has no partner")
    K = chi.field
    delta = mul_chars(chi, conjugate_char(chi))
    samples = []
    for p in primerange(2, prime_bound + 1):
        places = primes_above(K, p)
        if any(v in delta.local for v in places):
            continue
        if places[0].kind == "inert":
            # delta = nu o N and N(v) = p^2
            assert delta.sign(places[0]) == 1
        else:
            # at a ramified v, delta(v) = chi_v(-1) can be either sign
            samples.append((p, delta.sign(places[0])))
    level = abs(K.disc) * chi.conductor.norm
    bound = abs(K.disc) * chi.conductor.norm ** 2
    matches = [
        D
        for D in fundamental_discriminants_supported_on(primefactors(level))
        if D not in (1, K.disc) and abs(D) <= bound
        and all(kronecker(D, p) == s for p, s in samples)
    ]
    classes: dict[frozenset, list[int]] = {}
    for D in matches:
        key = frozenset({D, fundamental_discriminant_of(D * K.disc)})
        classes.setdefault(key, []).append(D)
    if not classes:
        raise ValueError("no quadratic field matches chi^c / chi")
    if len(classes) > 1:
        raise AmbiguousPartnerError(f"several composita fit the samples: {sorted(matches)}")
    (key,) = classes.keys()
    ranked = sorted(key, key=lambda D: (not _is_admitted(D), abs(D), D < 0))
    return [make_field(_d_of(D)) for D in ranked]


def partner_field(chi: HeckeCharacter, prime_bound: int = 200) -> QuadField:
    """The preferred quadratic field M with delta_M restricted to K equal to chi^c / chi."""
    return partner_fields(chi, prime_bound)[0]


@dataclass
class EquivCertificate:
    chi: HeckeCharacter
    eta: HeckeCharacter
    N: int
    matched: bool
    first_mismatch: int | None
    level: int
    parity: str
    kind: str
    nebentypus: int
    oracle_agrees: bool
    candidates_checked: int = 1
    extra: dict = field(default_factory=dict)

    @property
    def K(self) -> QuadField:
        return self.chi.field

    @property
    def M(self) -> QuadField:
        return self.eta.field

    def to_json(self) -> dict:
        return {
            "K": {"d": self.K.d, "conductor": self.chi.conductor.to_json()},
            "M": {"d": self.M.d, "conductor": self.eta.conductor.to_json()},
            "level": self.level,
            "parity": self.parity,
            "kind": self.kind,
            "nebentypus": self.nebentypus,
            "N": self.N,
            "matched": self.matched,
            "first_mismatch": self.first_mismatch,
            "oracle_agrees": self.oracle_agrees,
            "candidates_checked": self.candidates_checked,
        }


def verify_equiv(chi: HeckeCharacter, eta: HeckeCharacter, N: int = 10_000,
                 tables: tuple[CoeffTable, CoeffTable] | None = None) -> EquivCertificate:
    if chi.field is eta.field:
        raise ValueError("the two characters must live on different fields")
    a = tables[0] if tables else dirichlet_coeffs(chi, N)
    b = tables[1] if tables else dirichlet_coeffs(eta, N)
    oracle_ok = (
        a.first_difference(ideal_sum_oracle(chi, N)) is None
        and b.first_difference(ideal_sum_oracle(eta, N)) is None
    )
    first = a.first_difference(b)
    dchi = induced_descriptor(chi, partner=eta)
    deta = induced_descriptor(eta, partner=chi)
    consistent = (
        dchi.level == deta.level
        and dchi.parity == deta.parity
        and dchi.nebentypus == deta.nebentypus
        and (dchi.kind == deta.kind)
    )
    kind = dchi.kind if chi.field.is_real else deta.kind
    return EquivCertificate(
        chi=chi,
        eta=eta,
        N=N,
        matched=first is None and consistent and oracle_ok,
        first_mismatch=first,
        level=dchi.level,
        parity=dchi.parity,
        kind=kind,
        nebentypus=dchi.nebentypus,
        oracle_agrees=oracle_ok,
        extra={"descriptor_K": dchi.to_json(), "descriptor_M": deta.to_json()},
    )


def _conductors_of_norm(M: QuadField, target: int):
    """All ideals of M of norm `target` with exponents a quadratic character allows."""
    per_prime = []
    for p, e in factorint(target).items():
        places = primes_above(M, p)
        opts = []
        ranges = [range(0, max_level(v) + 1) for v in places]
        for exps in itertools.product(*ranges):
            if sum(v.f * m for v, m in zip(places, exps)) == e:
                opts.append({v: m for v, m in zip(places, exps) if m})
        if not opts:
            return []
        per_prime.append(opts)
    out = []
    for combo in itertools.product(*per_prime):
        f = {}
        for part in combo:
            f.update(part)
        out.append(IntegralIdeal(M.d, f))
    return out


def _all_characters(M: QuadField, f: IntegralIdeal):
    places = f.support()
    options = [local_options(M, v, f.exponent(v), clauses=False) for v in places]
    for combo in itertools.product(*options):
        try:
            yield build_character(M, f, dict(zip(places, combo)))
        except UnitConstraintError:
            continue


def _candidates(M: QuadField, target: int):
    """Recipe candidates first (admissible conductors of M), then everything else."""
    conductors = _conductors_of_norm(M, target)
    try:
        fam = family(M)
    except UnadmittedFieldError:
        fam = None
    if fam is not None:
        for f in conductors:
            if is_admissible(M, f):
                for eta in characters_with_conductor(M, f):
                    yield "recipe", eta
    for f in conductors:
        for eta in _all_characters(M, f):
            yield "search", eta


def construct_partner(chi: HeckeCharacter, N: int = 10_000, M: QuadField | None = None,
                      quick: int = 200) -> tuple[HeckeCharacter, EquivCertificate]:
    """Find a quadratic eta on M with the same L-function as chi, certified to N.

    Without M, both candidate fields of the compositum are tried in order.
    On the other one the matching character can have order 4, which is not
    searched.
    """
    if M is not None:
        return _partner_on(chi, M, N, quick)
    failures = []
    near = []
    for cand in partner_fields(chi):
        try:
            return _partner_on(chi, cand, N, quick)
        except NoPartnerError as exc:
            failures.append(str(exc))
            near += exc.near_misses
        except NotImplementedError as exc:
            failures.append(f"Q(sqrt {cand.d}): {exc}")
    raise NoPartnerError("; ".join(failures), near)


def _partner_on(chi: HeckeCharacter, M: QuadField, N: int, quick: int):
    K = chi.field
    level = abs(K.disc) * chi.conductor.norm
    if level % abs(M.disc):
        raise NoPartnerError(f"|d_M| = {abs(M.disc)} does not divide the level {level}", [])
    target = level // abs(M.disc)
    if M.class_number % 2 == 0:
        raise NoPartnerError(f"Q(sqrt {M.d}) has even class number; construction unsupported", [])
    a_quick = dirichlet_coeffs(chi, min(quick, N))
    a_full = None
    near = []
    checked = 0
    tried = set()
    for how, eta in _candidates(M, target):
        key = (eta.conductor, tuple(sorted((v, c.exps) for v, c in eta.local.items())))
        if key in tried:
            continue
        tried.add(key)
        checked += 1
        b_quick = dirichlet_coeffs(eta, min(quick, N))
        first = a_quick.first_difference(b_quick)
        if first is not None:
            near.append({"d": M.d, "conductor": eta.conductor.to_json(), "first_mismatch": first})
            continue
        if a_full is None:
            a_full = dirichlet_coeffs(chi, N)
        b_full = dirichlet_coeffs(eta, N)
        cert = verify_equiv(chi, eta, N, tables=(a_full, b_full))
        if cert.first_mismatch is None:
            cert.candidates_checked = checked
            cert.extra["route"] = how
            return eta, cert
        near.append({"d": M.d, "conductor": eta.conductor.to_json(), "first_mismatch": cert.first_mismatch})
    raise NoPartnerError(f"no quadratic character of Q(sqrt {M.d}) matches", near)
