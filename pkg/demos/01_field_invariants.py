"""Walk through the arithmetic of a few quadratic fields.

Run: python demos/01_field_invariants.py
"""
from heckepairs import make_field, primes_above, factor_principal, is_principal, IntegralIdeal

for d in (5, 2, 13, -1, -7, -2):
    K = make_field(d)
    line = f"Q(sqrt {d:>3}): disc {K.disc:>4}, class number {K.class_number}"
    if K.is_real:
        eps = K.fundamental_unit
        line += f", fundamental unit {eps} of norm {eps.norm():+d}"
    print(line)

# how small primes decompose in Q(sqrt 5)
K = make_field(5)
print()
for p in (2, 3, 5, 11, 29, 41):
    print(p, [v.code() for v in primes_above(K, p)])

# factor an element and recover a generator from the ideal
x = K.elt(17, 4)
I = factor_principal(x)
print()
print(f"({x}) has norm {I.norm}; factors {[(v.code(), e) for v, e in I.items()]}")
v = primes_above(K, 41)[1]
print("a generator of", v.code(), "is", is_principal(IntegralIdeal.from_place(v)))
