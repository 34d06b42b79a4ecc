"""Prime places, factored ideals and local unit groups of quadratic fields."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import factorint, isprime, primitive_root
from sympy.ntheory import sqrt_mod
from sympy.ntheory.modular import crt
from sympy.functions.combinatorial.numbers import kronecker_symbol

from .quadfield import QuadField, QuadInt, make_field


def kronecker(a: int, n: int) -> int:
    return int(kronecker_symbol(a, n))


@dataclass(frozen=True, order=True)
class PrimePlace:
    p: int
    kind: str  # "split" | "inert" | "ramified"
    label: int
    root: int | None = field(compare=False)
    d: int = field(compare=False)

    @property
    def f(self) -> int:
        return 2 if self.kind == "inert" else 1

    @property
    def e(self) -> int:
        return 2 if self.kind == "ramified" else 1

    @property
    def norm(self) -> int:
        return self.p**self.f

    @property
    def field(self) -> QuadField:
        return make_field(self.d)

    def __hash__(self):
        return hash((self.d, self.p, self.label))

    def __eq__(self, other):
        return (
            isinstance(other, PrimePlace)
            and (self.d, self.p, self.label) == (other.d, other.p, other.label)
        )

    def conj(self) -> PrimePlace:
        if self.kind != "split":
            return self
        return primes_above(self.field, self.p)[2 - self.label]

    def code(self) -> str:
        if self.kind == "split":
            return f"{self.p}:split:{self.label}"
        return f"{self.p}:{'inert' if self.kind == 'inert' else 'ram'}"

    def __str__(self) -> str:
        return self.code()

    # -- local arithmetic ---------------------------------------------------
    def root_mod(self, k: int) -> int:
        """Root of the minimal polynomial of w modulo p^k congruent to root mod p."""
        assert self.kind == "split"
        return _hensel_root(self.d, self.p, self.root, k)

    def valuation(self, x: QuadInt) -> int:
        if x.is_zero():
            raise ValueError("valuation of zero")
        p = self.p
        if self.kind == "split":
            n = abs(x.norm())
            j = 0
            while n % p == 0:
                n //= p
                j += 1
            if j == 0:
                return 0
            # largest i <= j with a + b r_i = 0 mod p^i
            for i in range(j, 0, -1):
                if (x.a + x.b * self.root_mod(i)) % p**i == 0:
                    return i
            return 0
        if self.kind == "inert":
            j = 0
            a, b = x.a, x.b
            while a % p == 0 and b % p == 0:
                a //= p
                b //= p
                j += 1
            return j
        # ramified
        a, b = x.a, x.b
        j = 0
        while a % p == 0 and b % p == 0:
            a //= p
            b //= p
            j += 1
        extra = 1 if (a + b * self.root) % p == 0 else 0
        return 2 * j + extra

    def residue_lattice(self, m: int) -> tuple[int, int, int]:
        """HNF (n1, c, n2) of v^m: lattice spanned by (n1, 0) and (c, n2)."""
        p = self.p
        if m == 0:
            return 1, 0, 1
        if self.kind == "split":
            q = p**m
            return q, (-self.root_mod(m)) % q, 1
        if self.kind == "inert":
            q = p**m
            return q, 0, q
        j, odd = divmod(m, 2)
        if not odd:
            q = p**j
            return q, 0, q
        q = p ** (j + 1)
        return q, (-(p**j) * self.root) % q, p**j

    def residue_key(self, x: QuadInt, m: int) -> tuple[int, int]:
        """Canonical representative of x modulo v^m."""
        n1, c, n2 = self.residue_lattice(m)
        b = x.b % n2
        a = x.a - (x.b - b) // n2 * c
        return a % n1, b


def _hensel_root(d: int, p: int, r: int, k: int) -> int:
    return _hensel_root_cached(d, p, r, k)


@lru_cache(maxsize=None)
def _hensel_root_cached(d: int, p: int, r: int, k: int) -> int:
    K = make_field(d)
    q = p**k
    x = r % q
    for _ in range(k + 2):
        fx = (x * x - K.t * x + K.n0) % q
        if fx == 0:
            return x
        x = (x - fx * pow(2 * x - K.t, -1, q)) % q
    assert (x * x - K.t * x + K.n0) % q == 0
    return x


@lru_cache(maxsize=None)
def _places(d: int, p: int) -> tuple[PrimePlace, ...]:
    K = make_field(d)
    chi = kronecker(K.disc, p)
    if p == 2:
        roots = [x for x in range(2) if (x * x - K.t * x + K.n0) % 2 == 0]
    elif chi >= 0:
        s = sqrt_mod(K.disc % p, p)
        inv2 = pow(2, -1, p)
        roots = sorted({((K.t + s) * inv2) % p, ((K.t - s) * inv2) % p})
    else:
        roots = []
    if chi == 1:
        r1, r2 = sorted(roots)
        return (
            PrimePlace(p, "split", 1, int(r1), d),
            PrimePlace(p, "split", 2, int(r2), d),
        )
    if chi == -1:
        return (PrimePlace(p, "inert", 1, None, d),)
    return (PrimePlace(p, "ramified", 1, int(roots[0]), d),)


def primes_above(K: QuadField, p: int) -> list[PrimePlace]:
    p = int(p)  # factorint may hand back gmpy2 integers
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return list(_places(K.d, p))


def parse_place(K: QuadField, text: str) -> PrimePlace:
    """Parse 'p:split:1', 'p:split:2', 'p:inert' or 'p:ram'."""
    parts = text.split(":")
    p = int(parts[0])
    kind = parts[1] if len(parts) > 1 else None
    places = primes_above(K, p)
    actual = places[0].kind
    alias = {"ram": "ramified", "ramified": "ramified", "split": "split", "inert": "inert"}
    if kind is not None and alias.get(kind) != actual:
        raise ValueError(f"{p} is {actual} in Q(sqrt {K.d}), not {kind}")
    if actual == "split":
        label = int(parts[2]) if len(parts) > 2 else 1
        if label not in (1, 2):
            raise ValueError(f"label must be 1 or 2, got {label}")
        return places[label - 1]
    return places[0]


class IntegralIdeal:
    """A nonzero integral ideal stored as a map place -> exponent."""

    __slots__ = ("d", "_factors", "_hash")

    def __init__(self, d: int, factors=None):
        self.d = d
        items = {}
        for v, e in (factors or {}).items():
            if v.d != d:
                raise ValueError("place from a different field")
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                items[v] = items.get(v, 0) + e
        self._factors = tuple(sorted(items.items()))
        self._hash = hash((d, self._factors))

    @classmethod
    def one(cls, K: QuadField) -> IntegralIdeal:
        return cls(K.d)

    @classmethod
    def from_place(cls, v: PrimePlace, e: int = 1) -> IntegralIdeal:
        return cls(v.d, {v: e})

    @classmethod
    def of_integer(cls, K: QuadField, n: int) -> IntegralIdeal:
        result = {}
        for p, e in factorint(abs(n)).items():
            places = primes_above(K, p)
            for v in places:
                result[v] = e * (2 if v.kind == "ramified" else 1)
        return cls(K.d, result)

    @property
    def field(self) -> QuadField:
        return make_field(self.d)

    @property
    def factors(self) -> dict[PrimePlace, int]:
        return dict(self._factors)

    def items(self):
        return self._factors

    def support(self) -> list[PrimePlace]:
        return [v for v, _ in self._factors]

    def exponent(self, v: PrimePlace) -> int:
        return dict(self._factors).get(v, 0)

    def is_one(self) -> bool:
        return not self._factors

    @property
    def norm(self) -> int:
        n = 1
        for v, e in self._factors:
            n *= v.norm**e
        return n

    def __eq__(self, other):
        return (
            isinstance(other, IntegralIdeal)
            and self.d == other.d
            and self._factors == other._factors
        )

    def __hash__(self):
        return self._hash

    def __mul__(self, other: IntegralIdeal) -> IntegralIdeal:
        if other.d != self.d:
            raise ValueError("mixed fields")
        f = dict(self._factors)
        for v, e in other._factors:
            f[v] = f.get(v, 0) + e
        return IntegralIdeal(self.d, f)

    def __pow__(self, k: int) -> IntegralIdeal:
        return IntegralIdeal(self.d, {v: e * k for v, e in self._factors})

    def conj(self) -> IntegralIdeal:
        return IntegralIdeal(self.d, {v.conj(): e for v, e in self._factors})

    def divides(self, other: IntegralIdeal) -> bool:
        return all(other.exponent(v) >= e for v, e in self._factors)

    def is_coprime(self, other: IntegralIdeal) -> bool:
        mine = {v for v, _ in self._factors}
        return not any(v in mine for v, _ in other._factors)

    def contains(self, x: QuadInt) -> bool:
        if x.is_zero():
            return True
        return all(v.valuation(x) >= e for v, e in self._factors)

    def primitive_part(self) -> tuple[int, int, int]:
        """(m, N, r): self = m * (N, w - r) with the second factor primitive."""
        m = 1
        moduli, residues = [], []
        by_prime: dict[int, dict[int, int]] = {}
        for v, e in self._factors:
            by_prime.setdefault(v.p, {})[v.label] = e
        for p, exps in by_prime.items():
            v0 = primes_above(self.field, p)[0]
            if v0.kind == "inert":
                m *= p ** exps[1]
            elif v0.kind == "ramified":
                e = exps[1]
                m *= p ** (e // 2)
                if e % 2:
                    moduli.append(p)
                    residues.append(v0.root)
            else:
                e1, e2 = exps.get(1, 0), exps.get(2, 0)
                low = min(e1, e2)
                m *= p**low
                if e1 != e2:
                    k = abs(e1 - e2)
                    v = primes_above(self.field, p)[0 if e1 > e2 else 1]
                    moduli.append(p**k)
                    residues.append(v.root_mod(k))
        if not moduli:
            return m, 1, 0
        N = math.prod(moduli)
        r = int(crt(moduli, residues)[0]) % N
        return m, N, r

    def to_json(self) -> list[dict]:
        return [{"p": v.p, "kind": v.kind, "label": v.label, "exponent": e} for v, e in self._factors]

    @classmethod
    def from_json(cls, K: QuadField, data) -> IntegralIdeal:
        f = {}
        for item in data:
            v = primes_above(K, item["p"])[item.get("label", 1) - 1]
            f[v] = f.get(v, 0) + item["exponent"]
        return cls(K.d, f)

    def __repr__(self) -> str:
        if not self._factors:
            return "(1)"
        return "*".join(f"[{v.code()}]^{e}" for v, e in self._factors)


def conjugate_ideal(I: IntegralIdeal) -> IntegralIdeal:
    return I.conj()


def factor_principal(alpha: QuadInt) -> IntegralIdeal:
    if alpha.is_zero():
        raise ValueError("zero has no factorisation")
    K = make_field(alpha.d)
    n = abs(alpha.norm())
    result = {}
    for p, k in factorint(n).items():
        places = primes_above(K, p)
        for v in places:
            val = v.valuation(alpha)
            if val:
                result[v] = val
        assert sum(v.f * result.get(v, 0) for v in places) == k
    return IntegralIdeal(K.d, result)


# -- residue rings and local unit groups ----------------------------------

def _mul_mod(x: QuadInt, y: QuadInt, q: int) -> QuadInt:
    return (x * y).reduce(q)


def pow_mod(x: QuadInt, e: int, q: int) -> QuadInt:
    result = QuadInt(1, 0, x.d)
    base = x.reduce(q)
    while e:
        if e & 1:
            result = _mul_mod(result, base, q)
        base = _mul_mod(base, base, q)
        e >>= 1
    return result


def inverse_mod(x: QuadInt, q: int) -> QuadInt:
    """Inverse of x in Z_K/(q); requires N(x) coprime to q."""
    n = x.norm() % q
    return (x.conj() * pow(n, -1, q)).reduce(q)


def max_level(v: PrimePlace) -> int:
    if v.p != 2:
        return 1
    return 5 if v.kind == "ramified" else 3


def precision_for(v: PrimePlace, m: int) -> int:
    """k such that p^k lies in v^m."""
    return math.ceil(m / 2) if v.kind == "ramified" else m


def uniformizer(v: PrimePlace) -> QuadInt:
    K = v.field
    if v.kind == "inert":
        return K.elt(v.p)
    if v.kind == "split":
        return K.elt(-v.root, 1) if v.p != 2 else K.elt(2)
    # ramified
    if v.p == 2:
        return K.omega if K.d % 4 == 2 else K.elt(-1, 1)
    return K.elt(-v.root, 1)


def cube_root_of_unity(K: QuadField, k: int) -> QuadInt:
    """Root of x^2 + x + 1 in Z_K/(2^k) lifting w, for 2 inert."""
    q = 2**k
    mu = K.omega
    for _ in range(k + 2):
        g = (mu * mu + mu + 1).reduce(q)
        if g.is_zero():
            return mu
        mu = (mu - g * inverse_mod(mu * 2 + 1, q)).reduce(q)
    assert (mu * mu + mu + 1).reduce(q).is_zero()
    return mu


@dataclass
class LocalUnitGroup:
    """Explicit generators of U_v / (1 + M_v^m) as a direct product of cyclic groups."""

    place: PrimePlace
    precision: int
    generators: list[QuadInt]
    orders: list[int]
    names: list[str]
    table: dict | None = None  # residue key -> exponent tuple (p = 2 only)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    def key(self, u: QuadInt):
        return self.place.residue_key(u, self.precision)

    def element(self, exps) -> QuadInt:
        q = self.place.p ** precision_for(self.place, self.precision)
        x = QuadInt(1, 0, self.place.d)
        for g, e, o in zip(self.generators, exps, self.orders):
            x = _mul_mod(x, pow_mod(g, e % o, q), q)
        return x


@lru_cache(maxsize=None)
def local_unit_generators(v: PrimePlace, m: int) -> LocalUnitGroup:
    if m < 1:
        raise ValueError("precision must be at least 1")
    K = v.field
    p = v.p
    if p != 2:
        if m != 1:
            raise ValueError("odd places only need precision 1")
        if v.kind == "inert":
            g = _inert_generator(v)
        else:
            g = K.elt(int(primitive_root(p)))
        G = LocalUnitGroup(v, 1, [g], [v.norm - 1], ["g"])
        _check_generator_order(G)
        return G
    if m > max_level(v):
        raise ValueError(
            f"precision {m} at {v.code()} is outside the supported range "
            f"(max {max_level(v)}); the unit structure there depends on the field"
        )
    k = precision_for(v, m)
    if v.kind == "split":
        table = {1: ([], [], []), 2: ([K.elt(-1)], [2], ["-1"]),
                 3: ([K.elt(-1), K.elt(5)], [2, 2], ["-1", "1+pi^2"])}
        gens, orders, names = table[m]
    elif v.kind == "inert":
        mu = cube_root_of_unity(K, max(k, 1))
        gens, orders, names = [mu], [3], ["mu3"]
        if m >= 2:
            gens += [K.elt(-1), (mu * 2 + 1).reduce(2**k)]
            orders += [2, 2 ** (m - 1)]
            names += ["-1", "1+2mu3"]
        if m >= 3:
            gens.append((K.one - mu * 4).reduce(2**k))
            orders.append(2 ** (m - 2))
            names.append("1-4mu3")
    else:
        pi = uniformizer(v)
        one = K.one
        g1 = one + pi
        g3 = one + pi**3
        g4 = one + pi**4
        if m == 1:
            gens, orders, names = [], [], []
        elif m <= 3:
            gens, orders, names = [g1], [2 ** (m - 1)], ["1+pi"]
        elif m == 4:
            gens, orders, names = [g1, g3], [4, 2], ["1+pi", "1+pi^3"]
        else:
            gens, orders, names = [g1, g3, g4], [4, 2, 2], ["1+pi", "1+pi^3", "1+pi^4"]
    q = 2**k
    gens = [g.reduce(q) for g in gens]
    G = LocalUnitGroup(v, m, gens, list(orders), list(names))
    G.table = _enumerate_group(G)
    return G


def _inert_generator(v: PrimePlace) -> QuadInt:
    K = v.field
    p = v.p
    n = p * p - 1
    qs = list(factorint(n))
    for b in range(1, p):
        for a in range(p):
            x = K.elt(a, b)
            if all(pow_mod(x, n // q, p) != K.one for q in qs):
                return x
    raise AssertionError("no generator of the residue field found")


def _check_generator_order(G: LocalUnitGroup):
    v = G.place
    n = v.norm - 1
    g = G.generators[0]
    one = v.field.one
    assert pow_mod(g, n, v.p) == one
    for q in factorint(n):
        assert pow_mod(g, n // q, v.p) != one


def _enumerate_group(G: LocalUnitGroup) -> dict:
    """Map every residue key to its exponent vector; checks the direct product."""
    v = G.place
    table = {}
    for exps in itertools.product(*(range(o) for o in G.orders)):
        key = G.key(G.element(exps))
        if key in table:
            raise AssertionError(f"generators at {v.code()} are not independent")
        table[key] = exps
    for g, o in zip(G.generators, G.orders):
        if G.key(pow_mod(g, o, 2 ** precision_for(v, G.precision))) != G.key(v.field.one):
            raise AssertionError("generator order mismatch")
    expected = v.norm ** (G.precision - 1) * (v.norm - 1)
    if len(table) != expected:
        raise AssertionError(f"generators at {v.code()} do not span the unit group")
    return table


def decompose_unit(u: QuadInt, G: LocalUnitGroup) -> tuple[int, ...]:
    v = G.place
    if v.valuation(u) != 0:
        raise ValueError(f"{u} is not a unit at {v.code()}")
    if G.table is not None:
        return G.table[G.key(u)]
    return (discrete_log_residue(u, v),)


def discrete_log_residue(u: QuadInt, v: PrimePlace) -> int:
    """Exponent e with u = g^e mod v for the generator g of local_unit_generators(v, 1)."""
    G = local_unit_generators(v, 1)
    g = G.generators[0]
    n = v.norm - 1
    p = v.p
    if v.kind != "inert":
        from sympy.ntheory import discrete_log

        val = (u.a + u.b * v.root) % p
        return int(discrete_log(p, val, g.a % p))
    # baby-step giant-step in F_{p^2}
    step = math.isqrt(n) + 1
    baby = {}
    x = v.field.one
    for j in range(step):
        baby.setdefault(x.reduce(p), j)
        x = _mul_mod(x, g, p)
    giant = inverse_mod(pow_mod(g, step, p), p)
    y = u.reduce(p)
    for i in range(step + 1):
        if y in baby:
            return (i * step + baby[y]) % n
        y = _mul_mod(y, giant, p)
    raise AssertionError("discrete log failed")


def residue_symbol(u: QuadInt, v: PrimePlace, order: int) -> int:
    """Exponent j mod order with u^((N-1)/order) = g^(j (N-1)/order) mod v."""
    n = v.norm - 1
    if n % order:
        raise ValueError("order does not divide the residue field unit group")
    p = v.p
    e = n // order
    w = pow_mod(u, e, p) if v.kind == "inert" else None
    g = local_unit_generators(v, 1).generators[0]
    if v.kind == "inert":
        base = pow_mod(g, e, p)
        x = v.field.one
        for j in range(order):
            if x == w:
                return j
            x = _mul_mod(x, base, p)
        raise AssertionError("not a unit")
    r = v.root
    val = (u.a + u.b * r) % p
    if val == 0:
        raise ValueError("not a unit")
    w = pow(val, e, p)
    base = pow(g.a, e, p)
    x = 1
    for j in range(order):
        if x == w:
            return j
        x = x * base % p
    raise AssertionError("power residue not found")
