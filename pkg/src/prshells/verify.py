"""The theorem-level check suite for one power residue code.

Each check is a named pass/fail item with a short detail string, so the
CLI and the acceptance tests report the same things.
"""

from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass
from math import comb

from .designs import check_design, conjugate_union
from .groups import (
    Permutation,
    affine_group,
    conjugating_permutation,
    is_normal,
    orbit_cycle_length,
    orbits_on_ksubsets,
)
from .harmonics import conjugate_vanishing_check, delsarte_design_check, invariant_harmonic_basis
from .jacobi import codeword_union_jacobi, independence_check, lambda_from_jacobi
from .prcode import build_code


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def _sampled_codewords(code, count: int, rng: random.Random):
    for _ in range(count):
        msg = [rng.randrange(code.q) for _ in range(code.k)]
        yield code.encode(msg)


def group_checks(code, samples: int = 200, seed: int = 0) -> list[Check]:
    p, m = code.p, code.m
    H, G = affine_group(p, m)
    rng = random.Random(seed)
    words = list(_sampled_codewords(code, samples, rng))
    aut = all(code.contains([w[h.inverse()(i)] for i in range(p)]) for h in H.generators for w in words)
    pairs_H = orbits_on_ksubsets(H, 2)
    pairs_G = orbits_on_ksubsets(G, 2)
    sizes = pairs_H.sizes
    sigma = Permutation.shift(p)
    ident_ok = True
    for _ in range(20):
        a, b, i = rng.randrange(1, p), rng.randrange(1, p), rng.randrange(p)
        ta, tb = Permutation.multiplier(p, a), Permutation.multiplier(p, b)
        ident_ok &= ta * sigma ** i * ta.inverse() == sigma ** (a * i % p)
        ident_ok &= sigma ** i * tb * sigma ** (-i % p) == sigma ** ((1 - b) * i % p) * tb
    tau = conjugating_permutation(p, m, code)
    return [
        Check("H generators are automorphisms", aut, f"{samples} sampled codewords x {len(H.generators)} generators"),
        Check("H is normal in G", is_normal(H, G)),
        Check("G is transitive on pairs", len(pairs_G) == 1, f"{len(pairs_G)} orbit(s)"),
        Check(f"H has {m} orbits on pairs", len(pairs_H) == m, f"{len(pairs_H)} orbits"),
        Check("H-orbits on pairs have equal size", len(set(sizes)) == 1, f"sizes {sizes}"),
        Check("group orders", (H.order, G.order) == (p * (p - 1) // m, p * (p - 1)),
              f"|H|={H.order} |G|={G.order} [G:H]={G.order // H.order}"),
        Check("conjugation identities", ident_ok, "20 sampled (a, b, i)"),
        Check("tau_g cycles the H-orbits", orbit_cycle_length(tau, pairs_H) == m,
              f"cycle length {orbit_cycle_length(tau, pairs_H)}"),
    ]


def theorem_checks(p: int, m: int, q: int, t: int = 2, code=None,
                   progress: Callable[[str], None] | None = None) -> list[Check]:
    """Independence, vanishing, the group suite, 1-designs and method agreement."""
    say = progress or (lambda _msg: None)
    code = build_code(p, m, q) if code is None else code
    S = code.supports
    tau = conjugating_permutation(p, m)
    H, _ = affine_group(p, m)
    checks: list[Check] = []

    say("independence over all t-subsets")
    rep = independence_check(S, tau, m, t)
    detail = f"{rep.subsets_checked} subsets"
    if not rep.independent:
        detail += f", witness {rep.witness}"
    checks.append(Check("conjugate Jacobi sum independent of T", rep.independent, detail))

    say("harmonic basis and vanishing")
    basis = invariant_harmonic_basis(H, t)
    van = conjugate_vanishing_check(S, tau, m, basis)
    checks.append(Check("conjugate harmonic enumerators vanish", van.vanishes,
                        f"basis dimension {basis.dimension}" + (f", nonzero at {van.failing[:5]}" if van.failing else "")))

    say("group properties")
    checks += group_checks(code)

    say("single shells at t=1")
    bad = [ell for ell in range(1, p + 1) if (S.weights == ell).any() and not check_design(S.shell(ell), 1).is_design]
    checks.append(Check("every non-empty shell is a 1-design", not bad, f"failing weights {bad}" if bad else ""))

    say("method agreement per weight")
    T0 = tuple(range(t))
    union_poly = codeword_union_jacobi(p, m, q, T0)
    mismatches = []
    for ell in range(t, p + 1):
        for mode, poly in (("multiset", rep.reference), ("codewords", union_poly)):
            B = conjugate_union(S, tau, m, ell, mode)
            if B.is_empty():
                continue
            direct = check_design(B, t)
            lam_j = lambda_from_jacobi(poly, ell, t) if rep.independent else None
            delsarte = delsarte_design_check(B, t, H)
            double = direct.blocks * comb(ell, t) == (direct.lam or 0) * comb(p, t)
            if not (direct.is_design and lam_j == direct.lam and delsarte and double):
                mismatches.append((mode, ell, direct.lam, lam_j, delsarte))
    checks.append(Check("counting, Jacobi and harmonic routes agree", not mismatches,
                        f"mismatches {mismatches[:3]}" if mismatches else f"weights {t}..{p}, both unions"))
    return checks
