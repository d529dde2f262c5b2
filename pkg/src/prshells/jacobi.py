"""Jacobi polynomials of codes relative to a coordinate subset T.

For a codeword c, m1 counts nonzero entries inside T and n1 nonzero
entries outside it; m0 and n0 are the matching zero counts. Only
(m1, n1) is stored since m0 = t - m1 and n0 = n - t - n1.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .blocks import mask_of
from .errors import FormatError, NotIndependent
from .prcode import _supports, permute_code


class JacobiPolynomial:
    def __init__(self, t: int, n: int, coeffs=None):
        self.t = t
        self.n = n
        self.coeffs: dict[tuple[int, int], int] = {}
        for (m1, n1), c in (coeffs or {}).items():
            if not (0 <= m1 <= t and 0 <= n1 <= n - t):
                raise ValueError(f"exponent pair {(m1, n1)} out of range for t={t}, n={n}")
            if c:
                self.coeffs[(m1, n1)] = int(c)

    def coefficient(self, m0: int, m1: int, n0: int, n1: int) -> int:
        if m0 + m1 != self.t or n0 + n1 != self.n - self.t:
            return 0
        return self.coeffs.get((m1, n1), 0)

    def total(self) -> int:
        return sum(self.coeffs.values())

    def evaluate(self, w=1, z=1, x=1, y=1):
        t, r = self.t, self.n - self.t
        return sum(c * w ** (t - a) * z ** a * x ** (r - b) * y ** b for (a, b), c in self.coeffs.items())

    def terms(self) -> list[tuple[int, tuple[int, int, int, int]]]:
        """(coeff, (m0, m1, n0, n1)) sorted by the z then y exponent."""
        t, r = self.t, self.n - self.t
        return [(self.coeffs[k], (t - k[0], k[0], r - k[1], k[1])) for k in sorted(self.coeffs)]

    def _same_shape(self, other):
        if (self.t, self.n) != (other.t, other.n):
            raise ValueError("Jacobi polynomials with different (t, n)")

    def __add__(self, other: JacobiPolynomial) -> JacobiPolynomial:
        self._same_shape(other)
        acc = Counter(self.coeffs)
        acc.update(other.coeffs)
        return JacobiPolynomial(self.t, self.n, acc)

    def __sub__(self, other: JacobiPolynomial) -> JacobiPolynomial:
        self._same_shape(other)
        acc = Counter(self.coeffs)
        acc.subtract(other.coeffs)
        return JacobiPolynomial(self.t, self.n, acc)

    def __eq__(self, other):
        return (
            isinstance(other, JacobiPolynomial)
            and (self.t, self.n) == (other.t, other.n)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.t, self.n, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"JacobiPolynomial(t={self.t}, n={self.n}, terms={len(self.coeffs)})"

    def to_text(self) -> str:
        lines = []
        for c, exps in self.terms():
            parts = [str(c)]
            for var, e in zip("wzxy", exps):
                if e:
                    parts.append(f"{var}^{e}" if e > 1 else var)
            lines.append(" ".join(parts))
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json(self) -> list[dict]:
        return [dict(m0=e[0], m1=e[1], n0=e[2], n1=e[3], coeff=c) for c, e in self.terms()]

    @classmethod
    def from_terms(cls, terms, t: int | None = None, n: int | None = None) -> JacobiPolynomial:
        """Build from (coeff, (m0, m1, n0, n1)) pairs; t and n inferred when omitted."""
        terms = list(terms)
        if terms:
            _, (m0, m1, n0, n1) = terms[0]
            t = m0 + m1 if t is None else t
            n = m0 + m1 + n0 + n1 if n is None else n
        if t is None or n is None:
            raise FormatError("empty polynomial needs explicit t and n")
        acc: Counter = Counter()
        for c, (m0, m1, n0, n1) in terms:
            if m0 + m1 != t or n0 + n1 != n - t:
                raise FormatError(f"monomial exponents {(m0, m1, n0, n1)} inconsistent with t={t}, n={n}")
            acc[(m1, n1)] += c
        return cls(t, n, acc)

    @classmethod
    def from_json(cls, data, t: int | None = None, n: int | None = None) -> JacobiPolynomial:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            terms = [(d["coeff"], (d["m0"], d["m1"], d["n0"], d["n1"])) for d in data]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad Jacobi JSON: {exc}") from exc
        return cls.from_terms(terms, t, n)

    @classmethod
    def from_text(cls, text: str, t: int | None = None, n: int | None = None) -> JacobiPolynomial:
        terms = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            head, *monos = line.split()
            exps = dict.fromkeys("wzxy", 0)
            for mono in monos:
                mt = re.fullmatch(r"([wzxy])(?:\^(\d+))?", mono)
                if not mt:
                    raise FormatError(f"bad monomial {mono!r}")
                exps[mt.group(1)] += int(mt.group(2) or 1)
            terms.append((int(head), (exps["w"], exps["z"], exps["x"], exps["y"])))
        return cls.from_terms(terms, t, n)


def jacobi(code, T, cap: int | None = None) -> JacobiPolynomial:
    """J_{C,T} by one pass over all codewords (zero/nonzero split per entry)."""
    S = _supports(code, cap)
    T = tuple(sorted(set(T)))
    if any(not 0 <= i < S.n for i in T):
        raise ValueError("T must be a set of coordinates")
    t, n = len(T), S.n
    inside = np.bitwise_count(S.masks & mask_of(T)).astype(np.int64)
    key = inside * (n + 1) + (S.weights - inside)
    counts = np.bincount(key, minlength=(t + 1) * (n + 1))
    return JacobiPolynomial(t, n, {
        (int(k) // (n + 1), int(k) % (n + 1)): int(counts[k]) for k in np.flatnonzero(counts)
    })


def _inverse_images(perm, s: int):
    inv = perm.inverse()
    out = [inv ** 0]
    for _ in range(1, s):
        out.append(out[-1] * inv)
    return out


def jacobi_conjugate_sum(code, perm, s: int, T, direct: bool = False, cache=None) -> JacobiPolynomial:
    """J_{C,T} + J_{C^perm,T} + ... + J_{C^(perm^(s-1)),T}.

    By default uses J_{C^g,T} = J_{C,g^-1(T)}, so C is enumerated once.
    ``direct=True`` builds and enumerates each permuted code instead.
    """
    T = tuple(sorted(T))
    if direct:
        total = None
        g = perm ** 0
        for _ in range(s):
            j = jacobi(permute_code(code, g), T)
            total = j if total is None else total + j
            g = g * perm
        return total
    S = _supports(code)
    total = None
    for g in _inverse_images(perm, s):
        Tg = g.apply_set(T)
        if cache is not None:
            j = cache.get(Tg)
            if j is None:
                j = cache[Tg] = jacobi(S, Tg)
        else:
            j = jacobi(S, Tg)
        total = j if total is None else total + j
    return total


@dataclass
class IndependenceReport:
    independent: bool
    t: int
    subsets_checked: int
    reference: JacobiPolynomial | None
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    mode: str = "all"
    per_subset: dict = field(default_factory=dict, repr=False)

    def __bool__(self):
        return self.independent


def independence_check(code, perm, s: int, t: int, orbits=None, group=None,
                       exhaustive: bool = True) -> IndependenceReport:
    """Whether the conjugate Jacobi sum is the same for every t-subset T.

    ``exhaustive=False`` stops at the first T whose sum differs.

    With ``orbits`` (an OrbitPartition) and ``group``, only one T per orbit
    is summed; this is sound once every generator of ``group`` is checked
    to fix the code, which makes J_{C,T} constant along each orbit.
    """
    S = _supports(code)
    cache: dict = {}
    if orbits is not None:
        if group is None:
            raise ValueError("orbit mode needs the group whose orbits are given")
        if not all(permute_code(code, h).same_code(code) for h in group.generators):
            raise NotIndependent("group does not fix the code; orbit representatives are not enough")
        subsets = list(orbits.representatives)
        mode = "orbits"
    else:
        subsets = list(combinations(range(S.n), t))
        mode = "all"
    sums = {}
    ref, ref_T, witness = None, None, None
    for T in subsets:
        total = jacobi_conjugate_sum(S, perm, s, T, cache=cache)
        sums[T] = total
        if ref is None:
            ref, ref_T = total, T
        elif witness is None and total != ref:
            witness = (ref_T, T)
            if not exhaustive:
                break
    return IndependenceReport(witness is None, t, len(sums), ref, witness, mode, sums)


def lambda_from_jacobi(poly, ell: int, t: int | None = None) -> int:
    """Coefficient of z^t x^(n-ell) y^(ell-t): the design's lambda for blocks of size ell.

    Accepts a JacobiPolynomial or an IndependenceReport; a report that
    found the sum to depend on T raises NotIndependent.
    """
    if isinstance(poly, IndependenceReport):
        if not poly.independent:
            raise NotIndependent(f"conjugate sum depends on T, witness {poly.witness}")
        poly = poly.reference
    t = poly.t if t is None else t
    if t != poly.t:
        raise ValueError(f"polynomial has t={poly.t}, asked for t={t}")
    if ell < t:
        return 0
    return poly.coeffs.get((t, ell - t), 0)


def codeword_union_jacobi(p: int, m: int, q: int, T) -> JacobiPolynomial:
    """Jacobi polynomial of the union (as a set of vectors) of the m conjugate codes.

    Inclusion-exclusion over the codes whose zeros are unions of residue
    cosets: the conjugates are the one-coset codes and the intersection of
    several conjugates is the code on the union of their cosets.
    """
    from .prcode import coset_code

    total = None
    for r in range(1, m + 1):
        for cosets in combinations(range(m), r):
            j = jacobi(coset_code(p, m, q, cosets), T)
            if total is None:
                total = j
            elif r % 2:
                total = total + j
            else:
                total = total - j
    return total


def weight_enumerator_from_jacobi(poly: JacobiPolynomial) -> list[int]:
    """Collapse to the ordinary weight distribution A_0..A_n."""
    out = [0] * (poly.n + 1)
    for (m1, n1), c in poly.coeffs.items():
        out[m1 + n1] += c
    return out
