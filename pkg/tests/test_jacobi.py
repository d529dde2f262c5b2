import random
from collections import Counter
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prshells.designs import check_design, conjugate_union
from prshells.errors import FormatError, NotIndependent
from prshells.groups import Permutation
from prshells.jacobi import (
    JacobiPolynomial,
    codeword_union_jacobi,
    independence_check,
    jacobi,
    jacobi_conjugate_sum,
    lambda_from_jacobi,
    weight_enumerator_from_jacobi,
)
from prshells.prcode import build_code


def jacobi_oracle(code, T):
    """Count (m0, m1, n0, n1) per codeword over a brute-force codeword list."""
    G = np.array(code.rows)
    T = set(T)
    c = Counter()
    for u in product(range(code.q), repeat=code.k):
        w = np.array(u) @ G % code.q
        m1 = sum(1 for j in T if w[j])
        n1 = sum(1 for j in range(code.n) if j not in T and w[j])
        c[(len(T) - m1, m1, code.n - len(T) - n1, n1)] += 1
    return c


@pytest.mark.parametrize("T", [(), (0,), (1, 3), (0, 2, 5)])
def test_jacobi_matches_brute_force(T):
    code = build_code(7, 2, 2)
    J = jacobi(code, T)
    assert {e: c for c, e in J.terms()} == dict(jacobi_oracle(code, T))


def test_jacobi_over_f5_brute_force():
    from prshells.prcode import coset_code

    code = coset_code(13, 3, 5, [0, 1])  # 5^5 codewords
    J = jacobi(code, (2, 7))
    assert {e: c for c, e in J.terms()} == dict(jacobi_oracle(code, (2, 7)))


def test_published_coefficients(pr31, pr13):
    J = jacobi(pr31.S, (13, 18))
    assert J.coefficient(2, 0, 24, 5) == 152
    assert J.coefficient(1, 1, 25, 4) == 60
    assert J.coefficient(0, 2, 26, 3) == 5
    J = jacobi(pr13.S, (6, 12))
    assert J.coefficient(2, 0, 7, 4) == 168
    assert J.coefficient(0, 2, 9, 2) == 28
    assert "168 w^2 x^7 y^4" in J.to_text().splitlines()


def test_trivial_coefficients(pr31):
    J = jacobi(pr31.S, (0, 7))
    assert J.coefficient(2, 0, 29, 0) == 1
    assert J.evaluate() == J.total() == 2**21
    assert J.coefficient(1, 0, 29, 0) == 0


def test_empty_T_is_weight_enumerator(pr13):
    J = jacobi(pr13.S, ())
    assert weight_enumerator_from_jacobi(J) == pr13.S.weight_distribution()


def test_constant_on_orbits(pr31):
    rng = random.Random(3)
    for orb in pr31.pairs.orbits:
        members = sorted(orb)
        ref = jacobi(pr31.S, members[0])
        for T in rng.sample(members, 5):
            assert jacobi(pr31.S, T) == ref


@pytest.mark.parametrize("name", ["pr31", "pr13"])
def test_translation_identity(name, request):
    inst = request.getfixturevalue(name)
    rng = random.Random(4)
    for _ in range(2):
        T = tuple(sorted(rng.sample(range(inst.p), 2)))
        fast = jacobi_conjugate_sum(inst.S, inst.tau, 3, T)
        slow = jacobi_conjugate_sum(inst.code, inst.tau, 3, T, direct=True)
        assert fast == slow


def test_conjugate_sum_s1_is_single(pr13):
    ident = Permutation.identity(13)
    assert jacobi_conjugate_sum(pr13.S, ident, 1, (1, 4)) == jacobi(pr13.S, (1, 4))


def test_independence_and_lambda(pr31, pr13):
    rep = pr31.independence
    assert rep and rep.subsets_checked == 465 and rep.mode == "all"
    assert lambda_from_jacobi(rep, 5) == 14 == 5 + 4 + 5
    assert lambda_from_jacobi(rep, 6) == 81 == 29 + 26 + 26
    assert lambda_from_jacobi(rep, 1) == 0
    rep13 = pr13.independence
    assert rep13.subsets_checked == 78
    assert lambda_from_jacobi(rep13, 4) == 84 == 28 + 24 + 32
    assert lambda_from_jacobi(rep13, 5) == 820 == 280 + 288 + 252


def test_orbit_mode_agrees(pr13):
    rep = pr13.independence
    orb = independence_check(pr13.code, pr13.tau, 3, 2, orbits=pr13.pairs, group=pr13.H)
    assert orb.mode == "orbits" and orb.subsets_checked == 3
    assert orb.independent and orb.reference == rep.reference


def test_single_code_is_not_independent(pr31):
    rep = independence_check(pr31.S, Permutation.identity(31), 1, 2, exhaustive=False)
    assert not rep.independent
    a, b = rep.witness
    assert jacobi(pr31.S, a) != jacobi(pr31.S, b)
    with pytest.raises(NotIndependent):
        lambda_from_jacobi(rep, 5)


def test_jacobi_lambda_matches_multiset_count(pr13):
    rep = pr13.independence
    for ell in range(4, 14):
        B = conjugate_union(pr13.S, pr13.tau, 3, ell, "multiset")
        assert check_design(B, 2).lam == lambda_from_jacobi(rep, ell)


def test_inclusion_exclusion_matches_codeword_union(pr13):
    J = codeword_union_jacobi(13, 3, 5, (0, 1))
    for ell in range(4, 14):
        B = conjugate_union(pr13.S, pr13.tau, 3, ell, "codewords")
        assert check_design(B, 2).lam == lambda_from_jacobi(J, ell)


coeff_maps = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 5)), st.integers(1, 10**6), max_size=8
)


@settings(max_examples=50)
@given(coeff_maps)
def test_text_and_json_round_trip(coeffs):
    J = JacobiPolynomial(2, 7, coeffs)
    assert JacobiPolynomial.from_text(J.to_text(), 2, 7) == J
    assert JacobiPolynomial.from_json(J.to_json(), 2, 7) == J


def test_text_format_details():
    J = JacobiPolynomial(2, 31, {(0, 0): 1, (1, 4): 60, (2, 3): 5})
    assert J.to_text().splitlines() == ["1 w^2 x^29", "60 w z x^25 y^4", "5 z^2 x^26 y^3"]
    with pytest.raises(FormatError):
        JacobiPolynomial.from_text("3 w^2 q^4")
    with pytest.raises(FormatError):
        JacobiPolynomial.from_text("3 w^2 x^4\n2 w x^4")


def test_arithmetic():
    a = JacobiPolynomial(1, 3, {(0, 1): 2})
    b = JacobiPolynomial(1, 3, {(0, 1): 1, (1, 0): 4})
    assert (a + b).coeffs == {(0, 1): 3, (1, 0): 4}
    assert (a + b - b) == a
    with pytest.raises(ValueError):
        a + JacobiPolynomial(2, 3)
