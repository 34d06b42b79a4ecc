"""A quadratic character of Q(sqrt 5) with conductor a split prime over q
sees whether the fundamental unit is a square mod q.

chi(eps) agrees with Euler's criterion for eps modulo q. When it is -1 the
infinity type has to absorb the sign, which changes the parity of the form.
"""
from sympy import primerange

from heckepairs import IntegralIdeal, make_field, primes_above
from heckepairs.characters import build_character

K = make_field(5)
eps = K.fundamental_unit
print("eps =", eps)
print(f"{'q':>4} {'eps^((q-1)/2) mod q':>22} {'chi(eps)':>9} {'inf type':>9}")
for q in primerange(7, 200):
    if q % 5 not in (1, 4):
        continue
    v = primes_above(K, q)[0]
    chi = build_character(K, IntegralIdeal.from_place(v), {v: (1,)})
    r = v.root
    # eps = (1 + sqrt 5)/2 maps to the root r of x^2 - x - 1 at v
    euler = pow(eps.a + eps.b * r, (q - 1) // 2, q)
    euler = euler if euler == 1 else -1
    sign = -1 if chi.xi(eps) else 1
    print(f"{q:>4} {euler:>22d} {sign:>9d} {str(chi.infinity):>9}")
