"""Arithmetic in the ring of integers of a quadratic field Q(sqrt d).

Elements are stored in the integral basis {1, w} where w = (1 + sqrt d)/2
for d = 1 mod 4 and w = sqrt d otherwise.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint, primerange
from sympy.ntheory.primetest import is_square

SEARCH_LIMIT = int(os.environ.get("HECKEPAIRS_SEARCH_LIMIT", "2000000"))


class ResourceBoundError(RuntimeError):
    """Raised when a search would exceed the configured size limit."""


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(abs(n)).values())


@dataclass(frozen=True)
class QuadInt:
    """The element a + b*w of the field with parameter d."""

    a: int
    b: int
    d: int

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other) -> QuadInt:
        if isinstance(other, QuadInt):
            if other.d != self.d:
                raise ValueError(f"mixed fields: d={self.d} and d={other.d}")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.d)
        return NotImplemented

    @property
    def field(self) -> QuadField:
        return make_field(self.d)

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t, n0 = _min_poly(self.d)
        bb = self.b * o.b
        # w^2 = t*w - n0
        return QuadInt(self.a * o.a - n0 * bb, self.a * o.b + self.b * o.a + t * bb, self.d)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not integral")
        result = QuadInt(1, 0, self.d)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> QuadInt:
        t, _ = _min_poly(self.d)
        return QuadInt(self.a + self.b * t, -self.b, self.d)

    def norm(self) -> int:
        t, n0 = _min_poly(self.d)
        return self.a * self.a + t * self.a * self.b + n0 * self.b * self.b

    def trace(self) -> int:
        t, _ = _min_poly(self.d)
        return 2 * self.a + t * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def divides(self, other: QuadInt) -> bool:
        """True if other / self lies in the ring of integers."""
        q = self.exact_div(other)
        return q is not None

    def exact_div(self, other: QuadInt) -> QuadInt | None:
        """other / self if integral, else None."""
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        num = other * self.conj()
        if num.a % n or num.b % n:
            return None
        return QuadInt(num.a // n, num.b // n, self.d)

    def reduce(self, modulus: int) -> QuadInt:
        return QuadInt(self.a % modulus, self.b % modulus, self.d)

    # -- real embeddings -------------------------------------------------
    def half_coords(self) -> tuple[int, int]:
        """(u, v) with self = (u + v*sqrt d)/2."""
        if self.d % 4 == 1:
            return 2 * self.a + self.b, self.b
        return 2 * self.a, 2 * self.b

    def sign(self, place: int = 0) -> int:
        """Exact sign under real embedding `place` (0: sqrt d > 0, 1: sqrt d < 0)."""
        if self.d < 0:
            raise ValueError("no real embeddings")
        u, v = self.half_coords()
        if place == 1:
            v = -v
        return _sign_of(u, v, self.d)

    def embed(self, place: int = 0) -> complex | float:
        u, v = self.half_coords()
        if self.d > 0:
            r = math.sqrt(self.d)
            return (u + (v if place == 0 else -v) * r) / 2
        return complex(u / 2, v * math.sqrt(-self.d) / 2)

    # -- I/O -------------------------------------------------------------
    def __str__(self) -> str:
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*w"

    def to_json(self) -> list[int]:
        return [self.a, self.b]


def _sign_of(u: int, v: int, d: int) -> int:
    """Sign of u + v*sqrt(d) for d > 0, exactly."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return 1 if v > 0 else -1
    if (u > 0) == (v > 0):
        return 1 if u > 0 else -1
    # opposite signs: compare u^2 against d v^2
    if u * u > d * v * v:
        return 1 if u > 0 else -1
    return 1 if v > 0 else -1


@lru_cache(maxsize=None)
def _min_poly(d: int) -> tuple[int, int]:
    """(t, n0) with w^2 - t*w + n0 = 0."""
    if d % 4 == 1:
        return 1, (1 - d) // 4
    return 0, -d


def parse_element(text: str, d: int) -> QuadInt:
    """Parse 'a+b*w' (also 'a-b*w', 'a', 'b*w')."""
    s = text.replace(" ", "")
    if "w" not in s:
        return QuadInt(int(s), 0, d)
    body = s[: s.index("w")].rstrip("*")
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut <= 0:
        a, bpart = 0, body
    else:
        a, bpart = int(body[:cut]), body[cut:]
    if bpart in ("", "+"):
        b = 1
    elif bpart == "-":
        b = -1
    else:
        b = int(bpart)
    return QuadInt(a, b, d)


class QuadField:
    """Q(sqrt d) with its integral basis, units and (lazily) class number.

    Instances are interned by `make_field`, so identity comparison works.
    """

    def __init__(self, d: int):
        if d in (0, 1) or not is_squarefree(d):
            raise ValueError(f"d must be squarefree and not 0 or 1, got {d}")
        self.d = d
        self.t, self.n0 = _min_poly(d)
        self.disc = d if d % 4 == 1 else 4 * d
        self.signature = (2, 0) if d > 0 else (0, 1)
        self.torsion_order = {-1: 4, -3: 6}.get(d, 2)
        self.fundamental_unit = _fundamental_unit(d) if d > 0 else None
        self._lock = threading.Lock()
        self._class_data = None

    def __repr__(self) -> str:
        return f"QuadField({self.d})"

    def __reduce__(self):
        return make_field, (self.d,)

    @property
    def is_real(self) -> bool:
        return self.d > 0

    def elt(self, a: int, b: int = 0) -> QuadInt:
        return QuadInt(a, b, self.d)

    @property
    def one(self) -> QuadInt:
        return QuadInt(1, 0, self.d)

    @property
    def omega(self) -> QuadInt:
        return QuadInt(0, 1, self.d)

    @property
    def sqrt_d(self) -> QuadInt:
        return QuadInt(-1, 2, self.d) if self.d % 4 == 1 else QuadInt(0, 1, self.d)

    @property
    def torsion_generator(self) -> QuadInt:
        """A generator of the roots of unity in the field."""
        if self.d in (-1, -3):
            return self.omega  # i, resp. a primitive sixth root of unity
        return QuadInt(-1, 0, self.d)

    def unit_generators(self) -> list[QuadInt]:
        gens = [self.torsion_generator]
        if self.fundamental_unit is not None:
            gens.append(self.fundamental_unit)
        return gens

    def minkowski_bound(self) -> float:
        if self.is_real:
            return math.sqrt(self.disc) / 2
        return 2 / math.pi * math.sqrt(abs(self.disc))

    def descriptor(self) -> dict:
        return {"d": self.d}

    # -- class group ------------------------------------------------------
    def class_group_data(self):
        """(h, representatives) with representatives as IntegralIdeals."""
        if self._class_data is None:
            with self._lock:
                if self._class_data is None:
                    self._class_data = _compute_class_group(self)
        return self._class_data

    @property
    def class_number(self) -> int:
        return self.class_group_data()[0]


@lru_cache(maxsize=None)
def make_field(d: int) -> QuadField:
    return QuadField(d)


def class_number(K: QuadField) -> int:
    return K.class_number


# -- continued fractions ----------------------------------------------------

def _cf_step(P: int, Q: int, D: int, s: int) -> tuple[int, int, int]:
    """One step of the expansion of (P + sqrt D)/Q with Q | D - P^2; s = isqrt(D)."""
    if Q > 0:
        a = (P + s) // Q
    else:
        a = -((P + s) // (-Q) + 1)
    P2 = a * Q - P
    Q2 = (D - P2 * P2) // Q
    return a, P2, Q2


def _fundamental_unit(d: int) -> QuadInt:
    t, _ = _min_poly(d)
    # w = (P + sqrt D)/Q
    P, Q, D = (1, 2, d) if t == 1 else (0, 1, d)
    s = math.isqrt(D)
    h0, h1 = 1, 0
    k0, k1 = 0, 1
    for _ in range(10 * SEARCH_LIMIT):
        a, P, Q = _cf_step(P, Q, D, s)
        h0, h1 = a * h0 + h1, h0
        k0, k1 = a * k0 + k1, k0
        cand = QuadInt(h0 - t * k0, k0, d)
        if abs(cand.norm()) == 1 and k0 > 0:
            if cand.sign(0) < 0:
                cand = -cand
            if _gt_one(cand):
                return cand
    raise ResourceBoundError(f"no unit found for d={d}")


def _gt_one(x: QuadInt) -> bool:
    u, v = x.half_coords()
    return _sign_of(u - 2, v, x.d) > 0


# -- principality via binary quadratic forms ----------------------------------

def generator_of_lattice(K: QuadField, N: int, r: int) -> QuadInt | None:
    """A generator of the ideal Z*N + Z*(w - r), which has norm N, or None.

    Requires r to be a root of the minimal polynomial of w modulo N.
    """
    if N == 1:
        return K.one
    t, n0 = K.t, K.n0
    num = r * r - t * r + n0
    assert num % N == 0, "r is not a root modulo N"
    A, B, C = N, t - 2 * r, num // N
    if K.is_real:
        xy = _represent_unit_real(A, B, C, K.disc)
        if xy is None:
            return _box_search_real(K, N, r)
    else:
        xy = _represent_one_imag(A, B, C, K.disc)
    if xy is None:
        return None
    x, y = xy
    alpha = QuadInt(x * N - y * r, y, K.d)
    assert abs(alpha.norm()) == N
    return alpha


def _represent_one_imag(A: int, B: int, C: int, D: int):
    """Solve f(x, y) = 1 for a positive definite form by Gauss reduction.

    f represents 1 iff its reduced form is the principal one (a = 1), and the
    first column of the reducing matrix is then a solution.
    """
    a, b, c = A, B, C
    p, q, r, s = 1, 0, 0, 1  # f(pX + qY, rX + sY) = current form
    while True:
        k = (a - b) // (2 * a)  # bring b into (-a, a]
        if k:
            b, c = b + 2 * a * k, a * k * k + b * k + c
            q, s = q + p * k, s + r * k
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            p, q, r, s = q, -p, s, -r
            continue
        break
    if a != 1:
        return None
    assert A * p * p + B * p * r + C * r * r == 1
    return p, r


def _represent_unit_real(A: int, B: int, C: int, D: int):
    """Find (x, y) with Ax^2 + Bxy + Cy^2 = +-1 among convergents of the roots.

    Any solution with |f| < sqrt(D)/2 appears among the convergents of a root
    of f(X, 1), so scanning one full period of each expansion is complete.
    """
    s = math.isqrt(D)
    for P, Q in ((-B, 2 * A), (B, -2 * A)):
        seen = set()
        h0, h1 = 1, 0
        k0, k1 = 0, 1
        steps = 0
        while (P, Q) not in seen:
            seen.add((P, Q))
            a, P, Q = _cf_step(P, Q, D, s)
            h0, h1 = a * h0 + h1, h0
            k0, k1 = a * k0 + k1, k0
            if A * h0 * h0 + B * h0 * k0 + C * k0 * k0 in (1, -1):
                return h0, k0
            steps += 1
            if steps > SEARCH_LIMIT:
                raise ResourceBoundError("continued fraction period too long")
    return None


def _box_search_real(K: QuadField, N: int, r: int) -> QuadInt | None:
    """Exhaustive search for a generator of norm +-N in the unit-reduced box.

    Every principal ideal of norm N has a generator with
    sqrt(N) <= |alpha| < eps*sqrt(N) under the first embedding; its conjugate
    is then at most sqrt(N) in absolute value, bounding the w-coordinate.
    """
    eps = K.fundamental_unit.embed(0)
    sd = math.sqrt(K.d)
    scale = 1 if K.d % 4 == 1 else 2
    bmax = int((eps + 1) * math.sqrt(N) / (sd * scale)) + 2
    if bmax > SEARCH_LIMIT:
        raise ResourceBoundError(f"box search of size {bmax} exceeds limit")
    t, n0 = K.t, K.n0
    for b in range(-bmax, bmax + 1):
        for target in (N, -N):
            # a^2 + t a b + n0 b^2 - target = 0
            disc = t * t * b * b - 4 * (n0 * b * b - target)
            if disc < 0 or not is_square(disc):
                continue
            s = math.isqrt(disc)
            for num in (-t * b + s, -t * b - s):
                if num % 2:
                    continue
                a = num // 2
                if (a + b * r) % N == 0:
                    return QuadInt(a, b, K.d)
    return None


def is_principal(I) -> QuadInt | None:
    """A generator of the integral ideal I, or None if I is not principal."""
    from .ideals import factor_principal

    K = I.field
    m, N, r = I.primitive_part()
    g = generator_of_lattice(K, N, r)
    if g is None:
        return None
    alpha = g * m
    assert factor_principal(alpha) == I, "generator does not reproduce the ideal"
    return alpha


def _compute_class_group(K: QuadField):
    from .ideals import IntegralIdeal, primes_above

    bound = K.minkowski_bound()
    gens = []
    for p in primerange(2, int(bound) + 1):
        for v in primes_above(K, p):
            if v.norm <= bound:
                gens.append(IntegralIdeal.from_place(v))
    reps = [IntegralIdeal.one(K)]
    frontier = list(reps)
    while frontier:
        new = []
        for R in frontier:
            for g in gens:
                T = R * g
                if any(is_principal(T * S.conj()) is not None for S in reps):
                    continue
                reps.append(T)
                new.append(T)
                if len(reps) > SEARCH_LIMIT:
                    raise ResourceBoundError("class group too large")
        frontier = new
    return len(reps), tuple(reps)
