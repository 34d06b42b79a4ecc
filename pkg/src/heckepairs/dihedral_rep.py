"""Finite groups G with H of index 2 and projective image Klein four, as exact 2x2 matrices.

Matrices are monomial with entries that are roots of unity, stored as exponents
modulo a common denominator L (None for a zero entry).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Matrix = tuple  # (e00, e01, e10, e11), each an exponent mod L or None


@dataclass(frozen=True)
class ExactRoot:
    """exp(2 pi i num / den)."""

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")

    def to(self, L: int) -> int:
        if L % self.den:
            raise ValueError(f"root of order dividing {self.den} is not an L={L} root")
        return (self.num * (L // self.den)) % L

    def order(self) -> int:
        return self.den // math.gcd(self.num, self.den)

    def __mul__(self, other: ExactRoot) -> ExactRoot:
        L = math.lcm(self.den, other.den)
        return ExactRoot((self.to(L) + other.to(L)) % L, L)

    def is_one(self) -> bool:
        return self.num % self.den == 0


def _mul(x: Matrix, y: Matrix, L: int) -> Matrix:
    def entry(a, b, c, d):
        terms = [(p + q) % L for p, q in ((a, b), (c, d)) if p is not None and q is not None]
        if len(terms) > 1:
            raise ValueError("product left the monomial group")
        return terms[0] if terms else None

    return (
        entry(x[0], y[0], x[1], y[2]),
        entry(x[0], y[1], x[1], y[3]),
        entry(x[2], y[0], x[3], y[2]),
        entry(x[2], y[1], x[3], y[3]),
    )


def _scalar(e: int) -> Matrix:
    return (e, None, None, e)


def _is_scalar(x: Matrix) -> bool:
    return x[1] is None and x[2] is None and x[0] == x[3]


@dataclass
class DihedralGroup:
    m: int
    variant: str  # "cyclic" | "product"
    L: int
    elements: dict  # label -> matrix
    rho_c: Matrix
    H: dict  # label -> matrix, the index-2 subgroup
    delta: dict  # label in H -> 0/1, the quadratic character with kernel Z

    def mul(self, x: Matrix, y: Matrix) -> Matrix:
        return _mul(x, y, self.L)

    @property
    def identity(self) -> Matrix:
        return _scalar(0)

    def inverse(self, x: Matrix) -> Matrix:
        for y in self.elements.values():
            if self.mul(x, y) == self.identity:
                return y
        raise ValueError("no inverse in the group")

    @property
    def order(self) -> int:
        return len(set(self.elements.values()))


def build_group(m: int, variant: str = "cyclic", chi_c_squared: ExactRoot | None = None) -> DihedralGroup:
    """The image of Ind_H^G chi for the given variant.

    cyclic: H = <h0> of order 2m, chi(h0) a primitive 2m-th root of unity.
    product: H = <z0> x <h1>, chi(z0) a primitive m-th root, chi(h1) = 1.
    In both cases chi^c = chi * delta, and rho(c) = [[0, chi(c^2)], [1, 0]].
    """
    if m <= 0 or m % 2:
        raise ValueError(f"m = {m}: the center has even order m, so m must be even")
    if variant not in ("cyclic", "product"):
        raise ValueError(f"unknown variant {variant!r}")
    L = math.lcm(2 * m, 4)
    ccs = chi_c_squared or ExactRoot(0, 1)
    if m % ccs.order():
        raise ValueError("chi(c^2) must be an m-th root of unity (c^2 lies in the center)")
    half = L // 2
    rho_c = (None, ccs.to(L), 0, None)
    H: dict[str, Matrix] = {}
    delta: dict[str, int] = {}
    if variant == "cyclic":
        z = L // (2 * m)  # zeta_{2m}
        h0 = (z, None, None, (z + half) % L)
        x = _scalar(0)
        for j in range(2 * m):
            H[f"h0^{j}"] = x
            delta[f"h0^{j}"] = j % 2
            x = _mul(x, h0, L)
    else:
        z0 = _scalar(L // m)
        h1 = (0, None, None, half)
        x = _scalar(0)
        for i in range(m):
            for e in range(2):
                label = f"z0^{i} h1^{e}"
                H[label] = _mul(x, h1, L) if e else x
                delta[label] = e
            x = _mul(x, z0, L)
    elements = {}
    for label, mat in H.items():
        elements[f"{label} c^0"] = mat
        elements[f"{label} c^1"] = _mul(mat, rho_c, L)
    G = DihedralGroup(m, variant, L, elements, rho_c, H, delta)
    mats = set(elements.values())
    for x in mats:
        for y in mats:
            if _mul(x, y, L) not in mats:
                raise AssertionError("element list is not closed")
    return G


def verify_structure(G: DihedralGroup) -> dict:
    """Check the structure statements; every entry is a bool."""
    L = G.L
    mats = list(G.elements.values())
    ident = G.identity
    report = {}
    report["order_4m"] = len(set(mats)) == 4 * G.m
    report["injective"] = len(set(mats)) == len(G.elements)
    report["closed"] = all(G.mul(x, y) in set(mats) for x in mats for y in mats)
    report["identity_and_inverses"] = ident in mats and all(
        any(G.mul(x, y) == ident for y in mats) for x in mats
    )
    center = {x for x in mats if all(G.mul(x, y) == G.mul(y, x) for y in mats)}
    scalars = {x for x in mats if _is_scalar(x)}
    ker_delta = {G.H[lbl] for lbl, e in G.delta.items() if e == 0}
    report["center_is_scalars"] = center == scalars
    report["center_is_ker_delta"] = center == ker_delta
    report["center_order_m"] = len(center) == G.m
    involutions = [x for x in center if x != ident and G.mul(x, x) == ident]
    minus_one = _scalar(L // 2)
    report["unique_central_involution"] = involutions == [minus_one]
    # Klein four quotient: 4 cosets, each squaring into Z
    cosets = {frozenset(G.mul(x, z) for z in center) for x in mats}
    report["quotient_order_4"] = len(cosets) == 4
    report["quotient_klein_four"] = all(G.mul(x, x) in center for x in mats)
    c = G.rho_c
    c_inv = G.inverse(c)
    ok = True
    for lbl, h in G.H.items():
        conj = G.mul(G.mul(c, h), c_inv)
        expected = h if h in center else G.mul(minus_one, h)
        ok &= conj == expected
    report["c_action"] = ok
    report["c_squared_in_center"] = G.mul(c, c) in center
    return report


def faithfulness_criteria(r: int, variant: str = "cyclic") -> dict:
    """Evaluate the four equivalent faithfulness statements for a character of order r."""
    if r % 4:
        raise ValueError("the criteria assume the order r is divisible by 4")
    m = r // 2 if variant == "cyclic" else r
    G = build_group(m, variant)
    L = G.L

    def chi(h):
        return h[0]

    def chi_c(h):
        return h[3]

    def delta(h):
        return (chi_c(h) - chi(h)) % L

    hs = list(G.H.values())
    ident = G.identity
    ker_chi = [h for h in hs if chi(h) == 0]
    ker_delta = {h for h in hs if delta(h) == 0}
    order = L // math.gcd(L, math.gcd(*[chi(h) for h in hs]))
    return {
        "variant": variant,
        "m": m,
        "chi_order": order,
        "a_faithful": ker_chi == [ident],
        "b_kernel_contained": all(h in ker_delta for h in ker_chi),
        "c_power_is_delta": all((chi(h) * (r // 2)) % L == delta(h) for h in hs),
        "d_conjugate_formula": all(chi_c(h) == (chi(h) * (1 + r // 2)) % L for h in hs),
    }
