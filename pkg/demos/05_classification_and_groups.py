"""List characters up to base change, then check the finite group side."""
import itertools

from heckepairs import make_field
from heckepairs.characters import is_base_change, mul_chars
from heckepairs.classify import admissible_conductors, enumerate_characters, listing_line
from heckepairs.dihedral_rep import build_group, faithfulness_criteria, verify_structure

for d in (-7, 2):
    K = make_field(d)
    chars = enumerate_characters(K, 100)
    print(f"Q(sqrt {d}): {len(admissible_conductors(K, 100))} admissible conductors up to norm 100")
    for chi in chars:
        print("  ", listing_line(chi))
    clashes = sum(is_base_change(mul_chars(a, b)) for a, b in itertools.combinations(chars, 2))
    print("   pairs whose product is a base change:", clashes)

print()
for m, variant in itertools.product((2, 4), ("cyclic", "product")):
    rep = verify_structure(build_group(m, variant))
    print(f"m={m} {variant:>7}:", all(v for k, v in rep.items() if isinstance(v, bool)))
for r in (4, 8):
    print(f"order {r}: cyclic", faithfulness_criteria(r, "cyclic"))
    print(f"order {r}: product", faithfulness_criteria(r, "product"))
