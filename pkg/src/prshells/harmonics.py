"""Discrete harmonic analysis on k-subsets and harmonic weight enumerators.

A :class:`SubsetFunction` is a sparse rational-valued function on the
k-subsets of {0, ..., v-1}. Groups act on them through their action on
points: ``f.permuted(g)`` is the function z -> f(g^-1(z)).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .blocks import BlockMultiset, mask_of
from .designs import subset_counts
from .errors import DegreeZero, FormatError, GroupNotAutomorphism
from .groups import OrbitPartition, PermGroup, orbits_on_ksubsets
from .linalg import bareiss_echelon, in_span, nullspace_rational, primitive_vector
from .prcode import _supports


def _key(subset) -> tuple[int, ...]:
    return tuple(sorted(subset))


class SubsetFunction:
    def __init__(self, v: int, k: int, values=None):
        self.v = v
        self.k = k
        self.values: dict[tuple[int, ...], Fraction] = {}
        for z, x in (values or {}).items():
            z = _key(z)
            if len(z) != k or (z and not (0 <= z[0] and z[-1] < v)) or len(set(z)) != k:
                raise ValueError(f"{z} is not a {k}-subset of 0..{v - 1}")
            x = Fraction(x)
            if x:
                self.values[z] = self.values.get(z, Fraction(0)) + x
        self.values = {z: x for z, x in self.values.items() if x}

    @classmethod
    def indicator(cls, v: int, subsets) -> SubsetFunction:
        subsets = [_key(s) for s in subsets]
        k = len(subsets[0])
        return cls(v, k, {s: 1 for s in subsets})

    @classmethod
    def uniform(cls, v: int, k: int, value=1) -> SubsetFunction:
        return cls(v, k, {z: value for z in combinations(range(v), k)})

    def __call__(self, subset) -> Fraction:
        return self.values.get(_key(subset), Fraction(0))

    def is_zero(self) -> bool:
        return not self.values

    def _check(self, other):
        if (self.v, self.k) != (other.v, other.k):
            raise ValueError("functions on different subset spaces")

    def __add__(self, other: SubsetFunction) -> SubsetFunction:
        self._check(other)
        out = dict(self.values)
        for z, x in other.values.items():
            out[z] = out.get(z, 0) + x
        return SubsetFunction(self.v, self.k, out)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c) -> SubsetFunction:
        c = Fraction(c)
        return SubsetFunction(self.v, self.k, {z: c * x for z, x in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SubsetFunction) and (self.v, self.k) == (other.v, other.k) and self.values == other.values

    def __hash__(self):
        return hash((self.v, self.k, frozenset(self.values.items())))

    def __repr__(self):
        return f"SubsetFunction(v={self.v}, k={self.k}, support={len(self.values)})"

    def permuted(self, perm) -> SubsetFunction:
        """f^g, the function with f^g(g(z)) = f(z)."""
        return SubsetFunction(self.v, self.k, {perm.apply_set(z): x for z, x in self.values.items()})

    def vector(self, subsets) -> list[Fraction]:
        return [self(z) for z in subsets]

    def primitive(self) -> SubsetFunction:
        """Rescaled to coprime integer values, first nonzero value (in subset order) positive."""
        keys = sorted(self.values)
        ints = primitive_vector([self.values[z] for z in keys])
        return SubsetFunction(self.v, self.k, dict(zip(keys, ints)))

    def to_text(self) -> str:
        lines = []
        for z in sorted(self.values):
            x = self.values[z]
            lines.append(" ".join(map(str, z)) + (" " if z else "") + f"{x.numerator}/{x.denominator}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str, v: int, k: int | None = None) -> SubsetFunction:
        vals = {}
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            try:
                z = tuple(int(x) for x in parts[:-1])
                x = Fraction(parts[-1])
            except ValueError as exc:
                raise FormatError(f"bad subset-function line {line!r}") from exc
            if k is None:
                k = len(z)
            vals[z] = x
        if k is None:
            raise FormatError("empty function needs an explicit degree")
        return cls(v, k, vals)


def gamma(f: SubsetFunction) -> SubsetFunction:
    """Send each k-subset to the sum of its (k-1)-subsets, extended linearly."""
    if f.k == 0:
        raise DegreeZero("gamma is not defined on degree 0")
    out: dict = defaultdict(Fraction)
    for z, x in f.values.items():
        for y in combinations(z, f.k - 1):
            out[y] += x
    return SubsetFunction(f.v, f.k - 1, out)


def gamma_adjoint(f: SubsetFunction) -> SubsetFunction:
    """Transpose of gamma: a (k-1)-subset goes to the sum of the k-subsets above it."""
    out: dict = defaultdict(Fraction)
    for y, x in f.values.items():
        ys = set(y)
        for i in range(f.v):
            if i not in ys:
                out[_key(y + (i,))] += x
    return SubsetFunction(f.v, f.k + 1, out)


def tilde_extend(f: SubsetFunction, u) -> Fraction:
    """Sum of f over the k-subsets of u."""
    u = _key(u)
    if len(u) < f.k:
        return Fraction(0)
    if len(f.values) < comb(len(u), f.k):
        us = set(u)
        return sum((x for z, x in f.values.items() if us.issuperset(z)), Fraction(0))
    return sum((f(z) for z in combinations(u, f.k)), Fraction(0))


def reynolds_average(group: PermGroup, T) -> SubsetFunction:
    """(1/|G|) sum over g in G of g(T), computed element by element."""
    T = _key(T)
    acc: dict = defaultdict(int)
    for g in group.elements:
        acc[g.apply_set(T)] += 1
    order = group.order
    return SubsetFunction(group.degree, len(T), {z: Fraction(c, order) for z, c in acc.items()})


@dataclass
class HarmonicBasis:
    k: int
    v: int
    functions: list[SubsetFunction]
    group: PermGroup | None
    orbits: OrbitPartition | None = None
    coefficients: list[list[int]] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __len__(self):
        return len(self.functions)


def _symmetric_orbits(v: int, k: int) -> OrbitPartition:
    return OrbitPartition(k, v, (frozenset(combinations(range(v), k)),))


def invariant_harmonic_basis(group: PermGroup | None, k: int, v: int | None = None,
                             orbits: OrbitPartition | None = None) -> HarmonicBasis:
    """Basis of the group-invariant functions of degree k killed by gamma.

    The invariant functions are spanned by the orbit averages g_i; the
    basis comes from the exact kernel of (a_1..a_r) -> gamma(sum a_i g_i).
    ``group=None`` stands for the full symmetric group on v points.
    """
    if k < 1:
        raise DegreeZero("harmonic bases start at degree 1")
    if group is None:
        if v is None:
            raise ValueError("v is required for the symmetric group")
        orbits = _symmetric_orbits(v, k)
    else:
        v = group.degree
        orbits = orbits_on_ksubsets(group, k) if orbits is None else orbits
    averages = [SubsetFunction(v, k, {z: Fraction(1, len(o)) for z in o}) for o in orbits.orbits]
    images = [gamma(g) for g in averages]
    rows_index = sorted({y for im in images for y in im.values})
    matrix = [[im(y) for im in images] for y in rows_index]
    kernel = nullspace_rational(matrix, len(averages))
    functions = []
    for a in kernel:
        f = SubsetFunction(v, k, {})
        for ai, g in zip(a, averages):
            if ai:
                f = f + g * ai
        functions.append(f.primitive())
    return HarmonicBasis(k, v, functions, group, orbits, kernel)


@dataclass
class WeightEnumeratorVector:
    n: int
    coefficients: list[Fraction]

    def __post_init__(self):
        self.coefficients = [Fraction(c) for c in self.coefficients]
        if len(self.coefficients) != self.n + 1:
            raise ValueError("need one coefficient per weight 0..n")

    @classmethod
    def zero(cls, n: int) -> WeightEnumeratorVector:
        return cls(n, [0] * (n + 1))

    def __add__(self, other):
        return WeightEnumeratorVector(self.n, [a + b for a, b in zip(self.coefficients, other.coefficients)])

    def __mul__(self, c):
        return WeightEnumeratorVector(self.n, [a * c for a in self.coefficients])

    __rmul__ = __mul__

    def __getitem__(self, w):
        return self.coefficients[w]

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def nonzero_weights(self) -> list[int]:
        return [w for w, c in enumerate(self.coefficients) if c]

    def to_text(self) -> str:
        return "".join(f"{w} {c.numerator}/{c.denominator}\n" for w, c in enumerate(self.coefficients))

    @classmethod
    def from_text(cls, text: str) -> WeightEnumeratorVector:
        pairs = []
        try:
            for line in text.splitlines():
                if line.strip():
                    w, c = line.split()
                    pairs.append((int(w), Fraction(c)))
        except ValueError as exc:
            raise FormatError(f"bad enumerator line: {exc}") from exc
        if not pairs:
            raise FormatError("empty enumerator")
        n = max(w for w, _ in pairs)
        coeffs = [Fraction(0)] * (n + 1)
        for w, c in pairs:
            coeffs[w] = c
        return cls(n, coeffs)


def harmonic_weight_enumerator(code, f: SubsetFunction, cap: int | None = None) -> WeightEnumeratorVector:
    """Coefficient at weight w: sum of f~(supp c) over weight-w codewords.

    Regrouped as sum over z of f(z) times the number of weight-w codewords
    whose support contains z; those counts are cached on the enumeration.
    """
    S = _supports(code, cap)
    if f.v != S.n:
        raise ValueError("function and code live on different coordinate sets")
    acc = [Fraction(0)] * (S.n + 1)
    for z, x in f.values.items():
        hist = S.containment_histogram(mask_of(z))
        for w in np.flatnonzero(hist):
            acc[w] += x * int(hist[w])
    return WeightEnumeratorVector(S.n, acc)


@dataclass
class VanishingReport:
    vanishes: bool
    sums: list[WeightEnumeratorVector]
    failing: list[tuple[int, int]] = field(default_factory=list)

    def __bool__(self):
        return self.vanishes


def conjugate_enumerator_sum(code, perm, s: int, f: SubsetFunction) -> WeightEnumeratorVector:
    """w_{C,f} + w_{C^perm,f} + ..., via w_{C^g,f} = w_{C, f^(g^-1)}."""
    S = _supports(code)
    inv = perm.inverse()
    total = WeightEnumeratorVector.zero(S.n)
    g = inv ** 0
    for _ in range(s):
        total = total + harmonic_weight_enumerator(S, f.permuted(g))
        g = g * inv
    return total


def conjugate_vanishing_check(code, perm, s: int, basis) -> VanishingReport:
    """Whether every basis function's conjugate enumerator sum is exactly zero.

    ``failing`` lists (basis index, weight) for each nonzero coefficient.
    """
    sums, failing = [], []
    for i, f in enumerate(basis):
        total = conjugate_enumerator_sum(code, perm, s, f)
        sums.append(total)
        failing += [(i, w) for w in total.nonzero_weights()]
    return VanishingReport(not failing, sums, failing)


@lru_cache(maxsize=16)
def _harmonic_spanning_matrix(v: int, k: int):
    """Integer rows spanning Harm_k: projections of e_z - e_{z0} onto ker(gamma).

    The projection is I - gamma^T (gamma gamma^T)^-1 gamma; the small Gram
    matrix on (k-1)-subsets is inverted exactly.
    """
    subsets = list(combinations(range(v), k))
    lower = list(combinations(range(v), k - 1))
    lidx = {y: i for i, y in enumerate(lower)}
    L = len(lower)
    # (gamma gamma^T)(y, y') = number of k-subsets containing y and y'
    gram = [[Fraction(0)] * L for _ in range(L)]
    for i, y in enumerate(lower):
        for j, y2 in enumerate(lower):
            u = set(y) | set(y2)
            gram[i][j] = Fraction(v - k + 1 if i == j else (1 if len(u) == k else 0))
    inv = _invert(gram)
    rows = []
    z0 = subsets[0]
    for z in subsets[1:]:
        diff = SubsetFunction(v, k, {z: 1, z0: -1})
        gd = gamma(diff)
        x = [sum((inv[i][lidx[y]] * c for y, c in gd.values.items()), Fraction(0)) for i in range(L)]
        corr = gamma_adjoint(SubsetFunction(v, k - 1, {lower[i]: x[i] for i in range(L)}))
        proj = diff - corr
        rows.append(primitive_vector(proj.vector(subsets)))
    return subsets, np.array(rows, dtype=object).reshape(len(rows), len(subsets))


def _invert(M):
    n = len(M)
    A = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c])
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


def harmonic_spanning_set(v: int, k: int) -> list[SubsetFunction]:
    subsets, rows = _harmonic_spanning_matrix(v, k)
    return [SubsetFunction(v, k, {z: int(x) for z, x in zip(subsets, row) if x}) for row in rows]


def block_sum(B: BlockMultiset, f: SubsetFunction, counts=None) -> Fraction:
    """Sum over blocks (with multiplicity) of f~(block)."""
    if counts is None:
        counts = subset_counts(B, f.k)
    index = {z: i for i, z in enumerate(combinations(range(B.v), f.k))}
    return sum((x * int(counts[index[z]]) for z, x in f.values.items()), Fraction(0))


def _check_automorphisms(B: BlockMultiset, group: PermGroup):
    for g in group.generators:
        if B.permuted(g.images) != B:
            raise GroupNotAutomorphism(f"generator {g.images} does not preserve the blocks")


def delsarte_design_check(B: BlockMultiset, t: int, group: PermGroup | None = None) -> bool:
    """Harmonic criterion: B is a t-design iff every harmonic f of degree 1..t sums to 0 over B.

    Without a group a spanning set of each full harmonic space is used;
    with a group (which must preserve B) the invariant basis suffices.
    """
    if B.is_empty():
        return True
    if group is not None:
        _check_automorphisms(B, group)
    for k in range(1, t + 1):
        counts = subset_counts(B, k)
        if group is None:
            _, rows = _harmonic_spanning_matrix(B.v, k)
            vals = rows.dot(np.array([int(c) for c in counts], dtype=object))
            if any(vals):
                return False
        else:
            for f in invariant_harmonic_basis(group, k).functions:
                if block_sum(B, f, counts) != 0:
                    return False
    return True


@dataclass
class SpanReport:
    dimension: int
    in_span: list[bool]
    rank_with_targets: int


def enumerator_span_report(enumerators, targets) -> SpanReport:
    """Check each target weight vector against the span of the enumerators."""
    vecs = [e.coefficients if isinstance(e, WeightEnumeratorVector) else list(e) for e in enumerators]
    targets = [t.coefficients if isinstance(t, WeightEnumeratorVector) else list(t) for t in targets]
    dim = len(bareiss_echelon(vecs)[1]) if vecs else 0
    flags = [in_span(vecs, t) for t in targets]
    full = len(bareiss_echelon(vecs + targets)[1]) if vecs or targets else 0
    return SpanReport(dim, flags, full)
