"""Gaussian characters of prime conductor and their real quadratic partners.

For q = 1 mod 8 the character of Q(i) with conductor a prime above q has the
same L-function as a character of Q(sqrt q) with conductor R^2, R over 2.
"""
import time

from heckepairs import IntegralIdeal, make_field, primes_above
from heckepairs.characters import build_character
from heckepairs.equiv import construct_partner

K = make_field(-1)
for q in (17, 41, 73, 89, 97, 113):
    v = primes_above(K, q)[0]
    chi = build_character(K, IntegralIdeal.from_place(v), {v: (1,)})
    t = time.perf_counter()
    eta, cert = construct_partner(chi, N=5000)
    dt = time.perf_counter() - t
    print(f"q={q:>3}: M = Q(sqrt {eta.field.d}), cond(eta) = {eta.conductor!r}, "
          f"level {cert.level}, nebentypus {cert.nebentypus}, agrees to {cert.N}: "
          f"{cert.matched} ({dt:.2f}s)")
    print("        signs of eta at the real places:", eta.real_signs())
