"""Two real quadratic fields sharing an L-function: an even Maass form.

The character on Q(sqrt 5) with conductor over 29 is trivial on units, the
one over 41 is not; this decides between the cosine and sine type.
"""
import json

from heckepairs import IntegralIdeal, make_field, primes_above
from heckepairs.characters import build_character
from heckepairs.equiv import construct_partner
from heckepairs.lfunc import dirichlet_coeffs

K = make_field(5)
for q in (29, 41):
    v = primes_above(K, q)[0]
    chi = build_character(K, IntegralIdeal.from_place(v), {v: (1,)})
    eta, cert = construct_partner(chi, N=10_000)
    a = dirichlet_coeffs(chi, 60)
    print(f"--- q = {q}: {cert.kind}")
    print("a_n, n <= 60:", a.as_list())
    print(json.dumps(cert.to_json(), indent=1))
