"""Finite-order idele class characters of quadratic fields.

A character is stored through its finite-order data: the conductor, the local
characters xi_v on the unit groups at places dividing it (as exponent vectors
on the explicit generators from `local_unit_generators`) and the signs at the
real places. Values at unramified places are derived from triviality on K^x
and cached.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from sympy import primerange

from .ideals import (
    IntegralIdeal,
    PrimePlace,
    decompose_unit,
    factor_principal,
    kronecker,
    local_unit_generators,
    max_level,
    precision_for,
    primes_above,
    residue_symbol,
)
from .quadfield import QuadField, QuadInt, is_principal, make_field


class UnitConstraintError(ValueError):
    """The local data is not trivial on the global units in the required way."""

    def __init__(self, message: str, clause: str):
        super().__init__(f"{message} [{clause}]")
        self.clause = clause


# -- local characters -------------------------------------------------------

@dataclass(frozen=True)
class LocalCharacter:
    """A character of U_v of conductor exponent `level`, values as exponents mod `order`."""

    place: PrimePlace
    level: int
    exps: tuple[int, ...]
    order: int = 2

    def group(self):
        return local_unit_generators(self.place, self.level)

    def value(self, u: QuadInt) -> int:
        if self.level == 0:
            return 0
        v = self.place
        if v.p != 2:
            k = self.exps[0] % self.order
            if k == 0:
                return 0
            g = math.gcd(k, self.order)
            o = self.order // g
            j = residue_symbol(u, v, o)
            return g * ((k // g) * j % o) % self.order
        e = decompose_unit(u, self.group())
        return sum(a * b for a, b in zip(self.exps, e)) % self.order

    @classmethod
    def from_function(cls, v: PrimePlace, fn, order: int = 2) -> LocalCharacter:
        """Recover the local character whose values on units are given by fn.

        The conductor exponent is the least level on whose residue classes
        fn is constant.
        """
        K = v.field
        if v.p != 2:
            G = local_unit_generators(v, 1)
            k = fn(G.generators[0]) % order
            if k == 0:
                return cls(v, 0, (), order)
            return cls(v, 1, (k,), order)
        top = max_level(v)
        q = 2 ** precision_for(v, top + 1)
        reps = [K.elt(a, b) for a in range(q) for b in range(q)]
        reps = [x for x in reps if not x.is_zero() and v.valuation(x) == 0]
        vals = [fn(x) % order for x in reps]
        for m in range(0, top + 1):
            classes: dict = {}
            ok = True
            for x, val in zip(reps, vals):
                key = v.residue_key(x, m)
                if classes.setdefault(key, val) != val:
                    ok = False
                    break
            if ok:
                if m == 0:
                    return cls(v, 0, (), order)
                G = local_unit_generators(v, m)
                exps = tuple(fn(g) % order for g in G.generators)
                return cls(v, m, exps, order)
        raise ValueError(f"local character at {v.code()} has conductor exponent above {top}")

    def is_primitive(self) -> bool:
        again = LocalCharacter.from_function(self.place, self.value, self.order)
        return again.level == self.level

    def to_json(self) -> dict:
        return {"place": self.place.code(), "level": self.level, "exps": list(self.exps)}


# -- Dirichlet characters ---------------------------------------------------

@dataclass(frozen=True)
class DirichletQuadratic:
    """The Kronecker character n -> (D/n) for a fundamental discriminant D (D = 1: trivial)."""

    D: int

    def __post_init__(self):
        if not is_fundamental_discriminant(self.D) and self.D != 1:
            raise ValueError(f"{self.D} is not a fundamental discriminant")

    @property
    def modulus(self) -> int:
        return abs(self.D)

    def __call__(self, n: int) -> int:
        return kronecker(self.D, n)

    def prime_part(self, p: int) -> int:
        """The discriminant of the p-primary factor of this character."""
        if p == 2:
            return self.D // math.prod(q if q % 4 == 1 else -q for q in _odd_prime_factors(self.D))
        if self.D % p:
            return 1
        return p if p % 4 == 1 else -p

    def local_value(self, p: int, n: int) -> int:
        """The p-component evaluated at a p-adic unit n (as integer), in {1, -1}."""
        Dp = self.prime_part(p)
        if Dp == 1:
            return 1
        if p == 2:
            return kronecker(Dp, n % 8)
        return kronecker(n % p, p)


def _odd_prime_factors(n: int):
    from sympy import primefactors

    return [q for q in primefactors(abs(n)) if q != 2]


def is_fundamental_discriminant(D: int) -> bool:
    from .quadfield import is_squarefree

    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


# -- global characters ---------------------------------------------------------

class HeckeCharacter:
    """A finite-order character of the idele class group of a quadratic field."""

    def __init__(self, K: QuadField, order: int, conductor: IntegralIdeal,
                 local: dict[PrimePlace, LocalCharacter], infinity: tuple[int, ...]):
        self.field = K
        self.order = order
        self.conductor = conductor
        self.local = dict(local)
        self.infinity = tuple(infinity)
        self._cache: dict[PrimePlace, int] = {}
        self._lock = threading.Lock()

    # -- finite-order pieces
    def xi(self, alpha: QuadInt) -> int:
        """Product of the local characters at the conductor, as an exponent."""
        return sum(c.value(alpha) for c in self.local.values()) % self.order

    def chi_inf(self, alpha: QuadInt) -> int:
        if not self.infinity:
            return 0
        total = 0
        for i, s in enumerate(self.infinity):
            if s and alpha.sign(i) < 0:
                total += s
        return total % self.order

    # -- evaluation on ideals
    def eval_place(self, v: PrimePlace) -> int:
        """chi at a uniformizer of v (exponent mod order); v must not divide the conductor."""
        cached = self._cache.get(v)
        if cached is not None:
            return cached
        if v in self.local:
            raise ValueError(f"{v.code()} divides the conductor")
        k, beta = _class_order(v)
        val = -(self.chi_inf(beta) + self.xi(beta)) * pow(k, -1, self.order) % self.order
        with self._lock:
            self._cache.setdefault(v, val)
        return val

    def eval_ideal(self, I: IntegralIdeal) -> int:
        if not I.is_coprime(self.conductor):
            raise ValueError("ideal is not coprime to the conductor")
        return sum(e * self.eval_place(v) for v, e in I.items()) % self.order

    def sign(self, v: PrimePlace) -> int:
        """Value at v as +-1 (quadratic characters only)."""
        assert self.order == 2
        return -1 if self.eval_place(v) else 1

    def value(self, x: int) -> complex:
        return complex(math.cos(2 * math.pi * x / self.order), math.sin(2 * math.pi * x / self.order))

    def on_principal(self, alpha: QuadInt) -> int:
        """chi evaluated on the principal idele of alpha; 0 means trivial, as it must be."""
        I = factor_principal(alpha)
        return (self.chi_inf(alpha) + self.xi(alpha) + self.eval_ideal(I)) % self.order

    # -- structure
    def is_trivial(self) -> bool:
        return self.conductor.is_one() and not any(self.infinity)

    def real_signs(self) -> tuple[int, ...]:
        """chi_infinity_i(-1) as +-1 for each real place."""
        return tuple(-1 if s else 1 for s in self.infinity)

    def __repr__(self) -> str:
        return f"HeckeCharacter(d={self.field.d}, conductor={self.conductor!r}, inf={self.infinity})"

    def to_json(self) -> dict:
        return {
            "field": self.field.descriptor(),
            "order": self.order,
            "conductor": self.conductor.to_json(),
            "local": [c.to_json() for _, c in sorted(self.local.items())],
            "infinity": list(self.infinity),
        }

    @classmethod
    def from_json(cls, data: dict) -> HeckeCharacter:
        from .ideals import parse_place

        K = make_field(data["field"]["d"])
        conductor = IntegralIdeal.from_json(K, data["conductor"])
        local = {}
        for item in data["local"]:
            v = parse_place(K, item["place"])
            local[v] = tuple(item["exps"])
        return build_character(K, conductor, local, tuple(data["infinity"]) or None, data["order"])


def _class_order(v: PrimePlace) -> tuple[int, QuadInt]:
    return _class_order_cached(v)


_class_order_table: dict = {}
_class_order_lock = threading.Lock()


def _class_order_cached(v: PrimePlace) -> tuple[int, QuadInt]:
    hit = _class_order_table.get(v)
    if hit is not None:
        return hit
    K = v.field
    h = K.class_number
    for k in range(1, h + 1):
        if h % k:
            continue
        beta = is_principal(IntegralIdeal.from_place(v, k))
        if beta is not None:
            with _class_order_lock:
                _class_order_table.setdefault(v, (k, beta))
            return k, beta
    raise AssertionError("class order not found")


def build_character(K: QuadField, conductor: IntegralIdeal, local_data: dict,
                    infinity_hint=None, order: int = 2) -> HeckeCharacter:
    """The unique character with the given conductor and local data at its places.

    local_data maps each place dividing the conductor to a LocalCharacter or an
    exponent vector on the generators of its local unit group.
    """
    if order & (order - 1) or order < 2:
        raise ValueError("order must be a power of two")
    if K.class_number % 2 == 0:
        raise ValueError(f"class number {K.class_number} of Q(sqrt {K.d}) is even")
    local: dict[PrimePlace, LocalCharacter] = {}
    if set(local_data) != set(conductor.support()):
        raise ValueError("local data must be given exactly at the places of the conductor")
    for v, m in conductor.items():
        data = local_data[v]
        if not isinstance(data, LocalCharacter):
            data = LocalCharacter(v, m, tuple(int(e) % order for e in data), order)
        if data.level != m or data.order != order:
            raise ValueError(f"local data at {v.code()} has the wrong level or order")
        if len(data.exps) != len(data.group().generators):
            raise ValueError(f"local data at {v.code()} has the wrong length")
        for e, o in zip(data.exps, data.group().orders):
            if (e * o) % order:
                raise ValueError(f"exponent {e} incompatible with generator order {o}")
        if not data.is_primitive():
            raise ValueError(f"local data at {v.code()} is not primitive of exponent {m}")
        local[v] = data

    def xi(u):
        return sum(c.value(u) for c in local.values()) % order

    half = order // 2
    if not K.is_real:
        if xi(K.torsion_generator) != 0:
            raise UnitConstraintError(
                f"xi is nontrivial on the roots of unity of Q(sqrt {K.d})",
                "imaginary-units-trivial",
            )
        infinity: tuple[int, ...] = ()
        if infinity_hint:
            raise ValueError("imaginary fields have no real places")
    else:
        eps = K.fundamental_unit
        if eps.norm() != -1:
            raise NotImplementedError(
                "infinity type for real fields whose fundamental unit has norm +1 "
                "needs an auxiliary element of negative norm; not supported"
            )
        x_minus = xi(K.elt(-1))
        x_eps = xi(eps)
        if x_minus not in (0, half) or x_eps not in (0, half):
            raise UnitConstraintError("xi(U_K) is not contained in {1, -1}", "real-units-sign")
        # eps is positive at place 0, negative at place 1
        s2 = x_eps
        s1 = (x_minus + x_eps) % order
        infinity = (s1, s2)
        if infinity_hint is not None and tuple(int(s) % order for s in infinity_hint) != infinity:
            raise UnitConstraintError(
                f"requested signs {tuple(infinity_hint)} differ from forced {infinity}",
                "real-infinity-type",
            )
    chi = HeckeCharacter(K, order, conductor, local, infinity)
    for u in K.unit_generators():
        assert (chi.chi_inf(u) + chi.xi(u)) % order == 0
    return chi


def trivial_character(K: QuadField, order: int = 2) -> HeckeCharacter:
    return build_character(K, IntegralIdeal.one(K), {}, None, order)


def character_from_local_functions(K: QuadField, fns: dict, order: int,
                                   infinity_hint=None) -> HeckeCharacter:
    """Build a character from value functions on local units at a set of places."""
    local = {}
    for v, fn in fns.items():
        c = LocalCharacter.from_function(v, fn, order)
        if c.level:
            local[v] = c
    conductor = IntegralIdeal(K.d, {v: c.level for v, c in local.items()})
    return build_character(K, conductor, local, infinity_hint, order)


def xi_eval(chi: HeckeCharacter, alpha: QuadInt) -> int:
    for v in chi.local:
        if v.valuation(alpha):
            raise ValueError(f"{alpha} is not coprime to {v.code()}")
    return chi.xi(alpha)


def eval_ideal(chi: HeckeCharacter, I: IntegralIdeal) -> int:
    return chi.eval_ideal(I)


def conjugate_char(chi: HeckeCharacter) -> HeckeCharacter:
    fns = {}
    for v, c in chi.local.items():
        fns[v.conj()] = (lambda u, c=c: c.value(u.conj()))
    inf = tuple(reversed(chi.infinity)) if chi.infinity else None
    return character_from_local_functions(chi.field, fns, chi.order, inf)


def mul_chars(chi1: HeckeCharacter, chi2: HeckeCharacter) -> HeckeCharacter:
    if chi1.field is not chi2.field:
        raise ValueError("characters live on different fields")
    order = max(chi1.order, chi2.order)
    s1, s2 = order // chi1.order, order // chi2.order
    places = set(chi1.local) | set(chi2.local)
    fns = {}
    for v in places:
        c1, c2 = chi1.local.get(v), chi2.local.get(v)

        def fn(u, c1=c1, c2=c2):
            return (s1 * (c1.value(u) if c1 else 0) + s2 * (c2.value(u) if c2 else 0)) % order

        fns[v] = fn
    inf = None
    if chi1.infinity:
        inf = tuple((s1 * a + s2 * b) % order for a, b in zip(chi1.infinity, chi2.infinity))
    return character_from_local_functions(chi1.field, fns, order, inf)


def same_character(chi1: HeckeCharacter, chi2: HeckeCharacter) -> bool:
    """Structural equality: by uniqueness this decides equality of characters."""
    if chi1.field is not chi2.field or chi1.order != chi2.order:
        return False
    if chi1.conductor != chi2.conductor or chi1.infinity != chi2.infinity:
        return False
    return all(chi1.local[v].exps == chi2.local[v].exps for v in chi1.local)


def is_base_change(chi: HeckeCharacter, bound: int = 200) -> bool:
    conj = conjugate_char(chi)
    if not same_character(chi, conj):
        return False
    K = chi.field
    for p in primerange(2, bound + 1):
        for v in primes_above(K, p):
            if v.norm > bound or v in chi.local:
                continue
            if chi.eval_place(v) != conj.eval_place(v):
                raise AssertionError(f"structurally equal characters differ at {v.code()}")
    return True


def local_norm(v: PrimePlace, u: QuadInt) -> int:
    """The norm from K_v to Q_p of u, as an integer congruent modulo 8p."""
    if v.kind == "split":
        k = 3 if v.p == 2 else 1
        return (u.a + u.b * v.root_mod(k)) % (v.p**k)
    return u.norm()


def base_change_of_dirichlet(nu: DirichletQuadratic, K: QuadField) -> HeckeCharacter:
    fns = {}
    primes = _odd_prime_factors(nu.D)
    if nu.D % 2 == 0:
        primes = [2] + primes
    for p in primes:
        for v in primes_above(K, p):
            fns[v] = (lambda u, v=v: 0 if nu.local_value(v.p, local_norm(v, u)) == 1 else 1)
    inf = None
    if K.is_real:
        s = 1 if nu.D < 0 else 0
        inf = (s, s)
    return character_from_local_functions(K, fns, 2, inf)
