"""Quadratic characters up to base change: admissible conductors and their characters.

Three families of fields are covered:

* imaginary_general: Q(sqrt -2) and Q(sqrt -p) with p = 3 mod 4 prime,
* gaussian: Q(sqrt -1),
* real: Q(sqrt 2) and Q(sqrt p) with p = 1 mod 4 prime.

For these fields every quadratic character is, up to a character from
base change, one of the characters produced here, and distinct ones never
differ by base change.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from sympy import isprime, primerange

from .characters import (
    HeckeCharacter,
    LocalCharacter,
    UnitConstraintError,
    build_character,
    is_base_change,
)
from .ideals import IntegralIdeal, PrimePlace, local_unit_generators, primes_above, uniformizer
from .quadfield import QuadField


class UnadmittedFieldError(ValueError):
    pass


def family(K: QuadField) -> str:
    d = K.d
    if d == -1:
        return "gaussian"
    if d == -2 or (d < 0 and isprime(-d) and -d % 4 == 3):
        return "imaginary_general"
    if d == 2 or (d > 0 and isprime(d) and d % 4 == 1):
        return "real"
    raise UnadmittedFieldError(f"Q(sqrt {d}) is outside the classified families")


@dataclass(frozen=True)
class AdmissibleConductor:
    field: QuadField
    ideal: IntegralIdeal
    family: str
    r_count: int


@dataclass(frozen=True)
class ClauseReport:
    ok: bool
    clause: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _allowed_levels(fam: str, v: PrimePlace) -> set[int]:
    """Conductor exponents permitted at v by the structural clauses."""
    if v.p != 2:
        if v.kind == "split":
            return {1}
        if v.kind == "ramified" and fam == "imaginary_general":
            return {1}
        return set()
    if v.kind == "split":
        return {2, 3}
    if v.kind == "inert":
        return {2}
    return {"imaginary_general": {4, 5}, "gaussian": {2, 5}, "real": {4}}[fam]


def is_admissible(K: QuadField, f: IntegralIdeal) -> ClauseReport:
    fam = family(K)
    sfx = "r" if fam == "real" else "i"
    ramified_odd = 0
    for v, m in f.items():
        if v.p != 2 and v.kind == "inert":
            return ClauseReport(False, f"(A){sfx}", f"{v.code()} lies over an odd inert prime")
        if v.p != 2 and v.kind == "ramified":
            if fam == "real":
                return ClauseReport(False, "(A)r", f"{v.code()} lies over an odd ramified prime")
            ramified_odd += 1
            if ramified_odd > 1 or m != 1:
                return ClauseReport(False, "(B)i", f"exponent {m} at {v.code()}")
        if v.kind == "split":
            if v.label != 1:
                return ClauseReport(False, f"(C){sfx}", f"{v.code()} is not the designated place")
            if m not in _allowed_levels(fam, v):
                return ClauseReport(False, f"(C){sfx}", f"exponent {m} at {v.code()}")
    for v, m in f.items():
        if v.p == 2 and v.kind != "split" and m not in _allowed_levels(fam, v):
            clause = "(D)i'" if fam == "gaussian" else f"(D){sfx}"
            return ClauseReport(False, clause, f"exponent {m} at {v.code()}")
    return ClauseReport(True)


def r_count(K: QuadField, f: IntegralIdeal) -> int:
    fam = family(K)
    if fam == "real":
        return 0
    if fam == "gaussian":
        return sum(1 for v in f.support() if v.p % 8 == 5)
    return sum(1 for v in f.support() if v.p % 4 == 3)


def exists_character(K: QuadField, f: IntegralIdeal) -> bool:
    rep = is_admissible(K, f)
    if not rep:
        raise ValueError(f"conductor violates {rep.clause}: {rep.detail}")
    fam = family(K)
    if fam == "real":
        return True
    r = r_count(K, f)
    two = [m for v, m in f.items() if v.p == 2]
    if not two:
        return r % 2 == 0
    m = two[0]
    if m in {2, 4}:
        return r % 2 == 1
    return True


# -- local data -------------------------------------------------------------

def quadratic_local_characters(v: PrimePlace, m: int) -> list[LocalCharacter]:
    """All quadratic characters of U_v with conductor exponent exactly m."""
    G = local_unit_generators(v, m)
    ranges = [range(2) if o % 2 == 0 else range(1) for o in G.orders]
    out = []
    for exps in itertools.product(*ranges):
        c = LocalCharacter(v, m, tuple(exps), 2)
        if any(exps) and c.is_primitive():
            out.append(c)
    return out


def local_clause_ok(fam: str, c: LocalCharacter) -> bool:
    """The value conditions on the local character at a non-split place over 2."""
    v = c.place
    if v.p != 2 or v.kind == "split":
        return True
    K = v.field
    if v.kind == "inert":
        mu = local_unit_generators(v, c.level).generators[0]
        return c.value(K.elt(-1)) == 1 and c.value(mu * 2 + 1) == 0
    pi = uniformizer(v)
    one = K.one
    if fam == "imaginary_general":
        return c.value(one + pi) == 0
    if fam == "gaussian":
        if c.level == 2:
            return c.value(K.omega) == 1
        return c.value(one + pi**3) == 0
    return c.value(one + pi) == 0 and c.value(one + pi**3) == 1


def local_options(K: QuadField, v: PrimePlace, m: int, clauses: bool = True) -> list[LocalCharacter]:
    opts = quadratic_local_characters(v, m)
    if clauses:
        fam = family(K)
        opts = [c for c in opts if local_clause_ok(fam, c)]
    return opts


def characters_with_conductor(K: QuadField, f: IntegralIdeal, clauses: bool = True) -> list[HeckeCharacter]:
    """Every quadratic character with conductor exactly f (optionally subject to the clauses).

    This is a direct construction: all local data are tried and the global
    unit condition decides which survive.
    """
    places = f.support()
    options = [local_options(K, v, f.exponent(v), clauses) for v in places]
    out = []
    for combo in itertools.product(*options):
        try:
            chi = build_character(K, f, dict(zip(places, combo)))
        except UnitConstraintError:
            continue
        out.append(chi)
    return out


# -- enumeration -----------------------------------------------------------

def _blocks(K: QuadField, fam: str, p: int) -> list[tuple[PrimePlace, int]]:
    out = []
    for v in primes_above(K, p):
        if v.kind == "split" and v.label != 1:
            continue
        for m in sorted(_allowed_levels(fam, v)):
            out.append((v, m))
    return out


def admissible_conductors(K: QuadField, norm_bound: int) -> list[AdmissibleConductor]:
    """All nontrivial admissible conductors of norm at most norm_bound."""
    fam = family(K)
    per_prime = []
    for p in primerange(2, norm_bound + 1):
        blocks = [(v, m) for v, m in _blocks(K, fam, p) if v.norm**m <= norm_bound]
        if blocks:
            per_prime.append(blocks)
    found = []

    def walk(i: int, norm: int, chosen: list):
        if chosen:
            I = IntegralIdeal(K.d, dict(chosen))
            found.append(I)
        for j in range(i, len(per_prime)):
            # every block over p has norm at least p
            if norm * per_prime[j][0][0].p > norm_bound:
                break
            for v, m in per_prime[j]:
                n = norm * v.norm**m
                if n <= norm_bound:
                    walk(j + 1, n, chosen + [(v, m)])

    walk(0, 1, [])
    found.sort(key=lambda I: (I.norm, repr(I)))
    return [AdmissibleConductor(K, I, fam, r_count(K, I)) for I in found]


def enumerate_characters(K: QuadField, norm_bound: int, check: bool = True) -> list[HeckeCharacter]:
    out = []
    for ac in admissible_conductors(K, norm_bound):
        if not exists_character(K, ac.ideal):
            continue
        chars = characters_with_conductor(K, ac.ideal)
        if not chars:
            raise AssertionError(f"no character realises admissible conductor {ac.ideal!r}")
        for chi in chars:
            if check and is_base_change(chi):
                raise AssertionError(f"{chi!r} arises from base change")
            out.append(chi)
    return out


def listing_line(chi: HeckeCharacter) -> str:
    K = chi.field
    local = " ".join(
        f"{v.code()}^{c.level}:{''.join(map(str, c.exps))}" for v, c in sorted(chi.local.items())
    )
    inf = ",".join("-" if s else "+" for s in chi.infinity) or "none"
    bc = "base_change" if is_base_change(chi) else "not_base_change"
    return (
        f"conductor={chi.conductor!r} norm={chi.conductor.norm} r={r_count(K, chi.conductor)} "
        f"local=[{local}] inf={inf} {bc}"
    )
