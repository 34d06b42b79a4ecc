import cmath
import itertools

import numpy as np
import pytest

from heckepairs.dihedral_rep import ExactRoot, build_group, faithfulness_criteria, verify_structure


def as_complex(x, L):
    out = np.zeros((2, 2), dtype=complex)
    for k, e in enumerate(x):
        if e is not None:
            out[k // 2, k % 2] = cmath.exp(2j * cmath.pi * e / L)
    return out


def numeric_closure(gens):
    """Group generated by complex matrices, elements deduplicated after rounding."""
    def key(a):
        return tuple(np.round(a, 8).ravel().tolist())

    seen = {key(np.eye(2)): np.eye(2, dtype=complex)}
    frontier = list(seen.values())
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = a @ g
                k = key(b)
                if k not in seen:
                    seen[k] = b
                    new.append(b)
        frontier = new
    return list(seen.values())


CASES = list(itertools.product([2, 4, 6, 8], ["cyclic", "product"]))


@pytest.mark.parametrize("m,variant", CASES)
def test_structure_checks_pass(m, variant):
    G = build_group(m, variant)
    report = verify_structure(G)
    assert all(report.values()), report
    assert G.order == 4 * m


@pytest.mark.parametrize("m,variant", CASES)
def test_structure_with_nontrivial_c_squared(m, variant):
    G = build_group(m, variant, ExactRoot(1, m))
    assert all(verify_structure(G).values())


@pytest.mark.parametrize("m,variant", CASES)
def test_numeric_closure_oracle(m, variant):
    """Rebuild the group from generators in floating point and compare invariants."""
    G = build_group(m, variant)
    gens = [as_complex(x, G.L) for x in G.elements.values()]
    elems = numeric_closure(gens)
    assert len(elems) == 4 * m
    center = [a for a in elems if all(np.allclose(a @ b, b @ a) for b in elems)]
    assert len(center) == m
    assert all(np.allclose(a, a[0, 0] * np.eye(2)) for a in center)
    # every element squares into the center
    for a in elems:
        assert any(np.allclose(a @ a, z) for z in center)


def test_rejects_odd_m():
    with pytest.raises(ValueError, match="must be even"):
        build_group(3)
    with pytest.raises(ValueError):
        build_group(4, "other")
    with pytest.raises(ValueError):
        build_group(4, "cyclic", ExactRoot(1, 8))


@pytest.mark.parametrize("r", [4, 8, 12, 16])
def test_faithfulness_statements_are_equivalent(r):
    cyc = faithfulness_criteria(r, "cyclic")
    keys = ["a_faithful", "b_kernel_contained", "c_power_is_delta", "d_conjugate_formula"]
    assert all(cyc[k] for k in keys)
    assert cyc["chi_order"] == r
    prod = faithfulness_criteria(r, "product")
    assert not any(prod[k] for k in keys)


def test_faithfulness_needs_r_divisible_by_four():
    with pytest.raises(ValueError):
        faithfulness_criteria(6)


def test_exact_root_arithmetic():
    a = ExactRoot(1, 4)
    assert (a * a * a * a).is_one()
    assert a.order() == 4 and ExactRoot(2, 4).order() == 2
    assert a.to(8) == 2
    with pytest.raises(ValueError):
        ExactRoot(1, 8).to(4)
