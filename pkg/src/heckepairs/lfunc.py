"""Dirichlet coefficients of L(s, chi, K) and the modular form attached to chi."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from sympy import primefactors, primerange

from .characters import HeckeCharacter, is_base_change, is_fundamental_discriminant
from .ideals import IntegralIdeal, kronecker, primes_above


def _place_value(chi: HeckeCharacter, v) -> int:
    if v in chi.local:
        return 0
    return chi.sign(v)


def local_factor(chi: HeckeCharacter, p: int) -> list[int]:
    """Coefficients [1, c1, c2] of the Euler factor 1 + c1 X + c2 X^2 (trailing zeros dropped), X = p^-s."""
    if chi.order != 2:
        raise ValueError("integer coefficients need a quadratic character")
    places = primes_above(chi.field, p)
    kind = places[0].kind
    if kind == "split":
        x1, x2 = (_place_value(chi, v) for v in places)
        poly = [1, -(x1 + x2), x1 * x2]
    elif kind == "inert":
        poly = [1, 0, -_place_value(chi, places[0])]
    else:
        poly = [1, -_place_value(chi, places[0])]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _inverse_series(poly: list[int], kmax: int) -> list[int]:
    c1 = poly[1] if len(poly) > 1 else 0
    c2 = poly[2] if len(poly) > 2 else 0
    b = [1]
    for k in range(1, kmax + 1):
        b.append(-c1 * b[k - 1] - (c2 * b[k - 2] if k >= 2 else 0))
    return b


def smallest_prime_factor(N: int) -> np.ndarray:
    spf = np.zeros(N + 1, dtype=np.int64)
    for p in range(2, int(N**0.5) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.arange(N + 1, dtype=np.int64)
    mask = spf == 0
    spf[mask] = idx[mask]
    return spf


@dataclass
class CoeffTable:
    character: HeckeCharacter
    N: int
    a: np.ndarray  # a[0] unused, a[n] for 1 <= n <= N
    method: str

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(n)
        return int(self.a[n])

    def as_list(self) -> list[int]:
        return [int(x) for x in self.a[1:]]

    def first_difference(self, other: CoeffTable) -> int | None:
        n = min(self.N, other.N)
        diff = np.nonzero(self.a[1 : n + 1] != other.a[1 : n + 1])[0]
        return int(diff[0]) + 1 if diff.size else None


def dirichlet_coeffs(chi: HeckeCharacter, N: int) -> CoeffTable:
    """a(n) for n <= N by multiplicative assembly from the Euler factors."""
    if N < 1:
        raise ValueError("N must be positive")
    spf = smallest_prime_factor(N)
    powers: dict[int, list[int]] = {}
    for p in primerange(2, N + 1):
        k = 0
        q = 1
        while q * p <= N:
            q *= p
            k += 1
        powers[p] = _inverse_series(local_factor(chi, p), k)
    a = np.zeros(N + 1, dtype=np.int64)
    if N >= 1:
        a[1] = 1
    for n in range(2, N + 1):
        p = int(spf[n])
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        a[n] = a[m] * powers[p][k]
    return CoeffTable(chi, N, a, "euler_product")


def ideal_sum_oracle(chi: HeckeCharacter, N: int) -> CoeffTable:
    """a(n) as the sum of chi over integral ideals of norm n prime to the conductor."""
    if N < 1:
        raise ValueError("N must be positive")
    K = chi.field
    places = []
    for p in primerange(2, N + 1):
        for v in primes_above(K, p):
            if v.norm <= N and v not in chi.local:
                places.append((v.norm, chi.sign(v)))
    places.sort()
    a = [0] * (N + 1)

    def walk(start: int, n: int, val: int):
        a[n] += val
        for j in range(start, len(places)):
            q, s = places[j]
            if n * q > N:
                break
            walk(j, n * q, val * s)

    walk(0, 1, 1)
    return CoeffTable(chi, N, np.array(a, dtype=np.int64), "ideal_sum")


# -- the attached modular form ----------------------------------------------

@dataclass
class FormDescriptor:
    level: int
    nebentypus: int  # fundamental discriminant D: the character is (D/.), D = 1 trivial
    kind: str  # holomorphic_weight_one | maass_even_cos | maass_even_sin
    parity: str  # odd | even
    notes: dict = field(default_factory=dict)

    def to_json(self, coeffs: CoeffTable | None = None) -> dict:
        out = {"level": self.level, "kind": self.kind, "nebentypus": self.nebentypus,
               "parity": self.parity}
        if coeffs is not None:
            out["coeffs"] = coeffs.as_list()
        return out


def nebentypus_value(chi: HeckeCharacter, p: int) -> int:
    """The determinant of the induced representation at a prime p not dividing the level."""
    K = chi.field
    ideal = IntegralIdeal.of_integer(K, p)
    val = -1 if chi.eval_ideal(ideal) else 1
    return kronecker(K.disc, p) * val


def nebentypus_sign(chi: HeckeCharacter) -> int:
    """Value of the determinant at -1 (complex conjugation)."""
    K = chi.field
    if not K.is_real:
        return -1
    return -1 if sum(chi.infinity) % 2 else 1


def fundamental_discriminants_supported_on(primes) -> list[int]:
    """All fundamental discriminants (including 1) whose prime factors lie in `primes`."""
    odd = [q for q in primes if q != 2]
    twos = [1, -4, 8, -8] if 2 in primes else [1]
    out = []
    for r in range(len(odd) + 1):
        for combo in combinations(odd, r):
            core = 1
            for q in combo:
                core *= q if q % 4 == 1 else -q
            for t in twos:
                D = core * t
                if D == 1 or is_fundamental_discriminant(D):
                    out.append(D)
    return sorted(set(out), key=lambda D: (abs(D), -D))


def identify_nebentypus(chi: HeckeCharacter, prime_bound: int = 200) -> int:
    K = chi.field
    level = abs(K.disc) * chi.conductor.norm
    sign = nebentypus_sign(chi)
    samples = [(p, nebentypus_value(chi, p)) for p in primerange(2, prime_bound + 1) if level % p]
    matches = [
        D
        for D in fundamental_discriminants_supported_on(primefactors(level))
        if (1 if D > 0 else -1) == sign and all(kronecker(D, p) == s for p, s in samples)
    ]
    if len(matches) != 1:
        raise ValueError(f"nebentypus not determined: candidates {matches}")
    return matches[0]


def induced_descriptor(chi: HeckeCharacter, partner: HeckeCharacter | None = None) -> FormDescriptor:
    if is_base_change(chi):
        raise ValueError("a self-conjugate character induces a reducible representation")
    K = chi.field
    level = abs(K.disc) * chi.conductor.norm
    neb = identify_nebentypus(chi)
    notes = {}
    if K.is_real:
        s1, s2 = chi.real_signs()
        odd = s1 != s2
        sign = s1
    else:
        # complex conjugation acts by an antidiagonal matrix with eigenvalues 1, -1
        odd = True
        sign = None
        if partner is not None and partner.field.is_real:
            p1, p2 = partner.real_signs()
            notes["partner_signs"] = [p1, p2]
            if (p1 != p2) != odd:
                raise AssertionError("partner infinity type contradicts the parity")
    if odd != (neb < 0):
        raise AssertionError("parity disagrees with the nebentypus sign")
    if odd:
        kind = "holomorphic_weight_one"
    else:
        kind = "maass_even_cos" if sign == 1 else "maass_even_sin"
    return FormDescriptor(level, neb, kind, "odd" if odd else "even", notes)
