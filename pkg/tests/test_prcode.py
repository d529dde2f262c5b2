import random
from itertools import product

import numpy as np
import pytest

from prshells.arith import Polynomial
from prshells.errors import CapExceeded, FormatError, NotDivisor, NotResidue
from prshells.groups import Permutation
from prshells.prcode import (
    Codeword,
    build_code,
    codeword_supports,
    coset_code,
    dual,
    dumps_code,
    enumerate_codewords,
    generator_polynomial,
    is_cyclic_code,
    loads_code,
    permute_code,
    residue_cosets,
    shell,
    weight_distribution,
)


def all_codewords(code):
    """Oracle: every F_q-combination of generator rows, by brute force."""
    G = np.array(code.rows)
    return {tuple(int(x) for x in np.asarray(u) @ G % code.q) for u in product(range(code.q), repeat=code.k)}


def x_n_minus_1(n, q):
    return Polynomial((q - 1,) + (0,) * (n - 1) + (1,), q)


@pytest.mark.parametrize("p,m", [(7, 2), (31, 3), (13, 3), (7, 3)])
def test_residue_cosets_match_powers(p, m):
    rc = residue_cosets(p, m)
    assert set(rc.cosets[0]) == {pow(x, m, p) for x in range(1, p)}
    assert sorted(a for A in rc.cosets for a in A) == list(range(1, p))
    assert all(len(A) == (p - 1) // m for A in rc.cosets)
    g = rc.generator
    for i, A in enumerate(rc.cosets):
        assert set(A) == {pow(g, i, p) * a % p for a in rc.cosets[0]}


def test_residue_coset_examples():
    assert set(residue_cosets(7, 2).cosets[0]) == {1, 2, 4}
    A0 = set(residue_cosets(31, 3).cosets[0])
    assert len(A0) == 10 and 2 in A0 and 3 not in A0
    assert set(residue_cosets(13, 3).cosets[0]) == {1, 5, 8, 12}
    with pytest.raises(NotDivisor):
        residue_cosets(13, 5)


def test_generator_polynomial_p7_is_a_factor_of_x7_minus_1():
    # oracle: monic cubic divisors of x^7 - 1 over F_2 by exhaustive trial
    f = x_n_minus_1(7, 2)
    cubics = [Polynomial(c + (1,), 2) for c in product(range(2), repeat=3)]
    divisors = {g for g in cubics if (f % g).is_zero()}
    assert divisors == {Polynomial((1, 1, 0, 1), 2), Polynomial((1, 0, 1, 1), 2)}
    assert generator_polynomial(7, 2, 2) in divisors


@pytest.mark.parametrize("p,m,q,deg", [(31, 3, 2, 10), (13, 3, 5, 4), (7, 2, 2, 3)])
def test_generator_polynomial_divides(p, m, q, deg):
    g = generator_polynomial(p, m, q)
    assert g.degree == deg and g.is_monic
    assert g.divides(x_n_minus_1(p, q))


def test_non_residue_rejected():
    with pytest.raises(NotResidue):
        generator_polynomial(31, 3, 3)


@pytest.mark.parametrize("p,m,q,k", [(31, 3, 2, 21), (13, 3, 5, 9), (7, 2, 2, 4)])
def test_build_code_dimension(p, m, q, k):
    code = build_code(p, m, q)
    assert code.k == k and code.size == q ** k
    for row in code.rows:
        assert code.generator_poly.divides(Polynomial(row, q))


def test_small_code_enumeration_matches_oracle():
    code = build_code(7, 2, 2)
    words = {c.entries for c in enumerate_codewords(code)}
    assert words == all_codewords(code)
    oracle = [0] * 8
    for w in words:
        oracle[sum(1 for x in w if x)] += 1
    assert weight_distribution(code) == oracle


def test_enumeration_ranges_partition():
    code = build_code(13, 3, 5)
    full = [c.entries for c in enumerate_codewords(code, 0, 3000)]
    parts = [c.entries for a, b in [(0, 1000), (1000, 2500), (2500, 3000)] for c in enumerate_codewords(code, a, b)]
    assert full == parts
    first = next(enumerate_codewords(code))
    assert first.weight == 0 and first.support == ()


def test_codeword_fields():
    c = Codeword((0, 3, 0, 1))
    assert c.support == (1, 3) and c.weight == 2 and c.mask == 0b1010


def test_cap_exceeded():
    with pytest.raises(CapExceeded) as err:
        codeword_supports(build_code(31, 3, 2), cap=1000)
    assert err.value.required == 2**21


def test_pr31_weight_distribution(pr31):
    A = pr31.S.weight_distribution()
    assert A[0] == 1 and A[5] == 217
    assert sum(A) == 2**21 and len(pr31.S) == 2**21


def test_pr13_weight_distribution(pr13):
    A = pr13.S.weight_distribution()
    assert A[0] == 1 and A[4] == 364 and sum(A) == 5**9


def test_shell_multiplicities_divisible_by_q_minus_1(pr13):
    for ell in range(1, 14):
        B = shell(pr13.S, ell)
        assert all(int(c) % 4 == 0 for c in B.mults)
    assert shell(pr13.S, 4).count == 364
    B0 = shell(pr13.S, 0)
    assert B0.blocks == {(): 1}


def test_worker_count_does_not_change_result():
    code = build_code(13, 3, 5)
    a = codeword_supports(code, workers=1)
    b = codeword_supports(code, workers=3)
    assert np.array_equal(a.masks, b.masks) and np.array_equal(a.keys, b.keys)


def test_cyclic_closure_sampled(pr31):
    code = pr31.code
    rng = random.Random(1)
    for _ in range(1000):
        c = code.encode([rng.randrange(2) for _ in range(code.k)])
        assert code.contains(c[-1:] + c[:-1])
    assert is_cyclic_code(code)


def test_permute_code(pr31):
    code = pr31.code
    assert permute_code(code, Permutation.identity(31)).same_code(code)
    assert permute_code(code, Permutation.shift(31)).same_code(code)
    moved = permute_code(code, pr31.tau)
    assert not moved.same_code(code)
    assert codeword_supports(moved).weight_distribution() == pr31.S.weight_distribution()
    # the image of a codeword lies in the moved code but not in the original
    rng = random.Random(2)
    for _ in range(20):
        c = code.encode([rng.randrange(2) for _ in range(code.k)])
        img = [0] * 31
        for i, x in enumerate(c):
            img[pr31.tau(i)] = x
        assert moved.contains(img)
        if not code.contains(img):
            break
    else:
        pytest.fail("no sampled codeword left the code")


def test_permute_code_maps_supports():
    code = build_code(7, 2, 2)
    perm = Permutation.multiplier(7, 3)
    moved = {tuple(sorted(perm(i) for i, x in enumerate(w) if x)) for w in all_codewords(code)}
    got = {tuple(i for i, x in enumerate(w) if x) for w in all_codewords(permute_code(code, perm))}
    assert moved == got


def test_dual(pr31):
    code = pr31.code
    D = dual(code)
    assert D.k == 10
    G, H = np.array(code.rows), np.array(D.rows)
    assert not np.any(G @ H.T % 2)
    assert dual(D).same_code(code)


def test_dual_over_f5():
    code = build_code(13, 3, 5)
    D = dual(code)
    assert D.k == 4
    assert not np.any(np.array(code.rows) @ np.array(D.rows).T % 5)


def test_coset_code_is_intersection():
    p, m, q = 7, 2, 2
    sets = [all_codewords(coset_code(p, m, q, [i])) for i in range(m)]
    assert all_codewords(coset_code(p, m, q, [0, 1])) == sets[0] & sets[1]
    assert all_codewords(coset_code(p, m, q, [0])) == all_codewords(build_code(p, m, q))


def test_coset_code_intersection_over_f5():
    conj = [coset_code(13, 3, 5, [i]) for i in range(3)]
    both = coset_code(13, 3, 5, [0, 1])
    assert both.k == 13 - 8
    assert all(conj[0].contains(r) and conj[1].contains(r) for r in both.rows)
    assert not all(conj[2].contains(r) for r in both.rows)


@pytest.mark.parametrize("args", [(31, 3, 2), (13, 3, 5)])
def test_code_text_round_trip(args):
    code = build_code(*args)
    text = dumps_code(code)
    back = loads_code(text)
    assert dumps_code(back) == text
    assert back.same_code(code) and back.generator_poly == code.generator_poly
    assert text.splitlines()[0] == f"{args[0]} {args[1]} {args[2]} {code.k}"


def test_code_text_malformed():
    with pytest.raises(FormatError):
        loads_code("31 3 two 21\n")
