"""Exact linear algebra: row reduction over F_q and over the rationals.

Matrices are lists of row lists. Rational kernels use fraction-free
(Bareiss) elimination on integer matrices; rational inputs are scaled
row-wise to integers first.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .arith import field_inverse


# -- F_q -------------------------------------------------------------------


def rref_mod(rows, q: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_q; returns (nonzero rows, pivot columns)."""
    A = [[x % q for x in row] for row in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field_inverse(A[r][c], q)
        A[r] = [x * inv % q for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % q for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank_mod(rows, q: int) -> int:
    return len(rref_mod(rows, q)[1])


def nullspace_mod(rows, q: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of {x : A x = 0} over F_q."""
    if ncols is None:
        ncols = len(rows[0])
    R, pivots = rref_mod(rows, q)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc] % q
        basis.append(v)
    return basis


def solve_mod(rows, target, q: int) -> list[int] | None:
    """Some x with x A = target (row combination), or None."""
    k = len(rows)
    aug = [list(col) for col in zip(*rows)]
    for i, t in enumerate(target):
        aug[i].append(t)
    R, pivots = rref_mod(aug, q)
    if k in pivots:
        return None
    x = [0] * k
    for row, pc in zip(R, pivots):
        x[pc] = row[k]
    return x


# -- rationals ---------------------------------------------------------------


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def primitive_vector(v) -> list[int]:
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    v = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return [-x for x in ints] if lead < 0 else ints


def bareiss_echelon(rows) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of a rational matrix.

    Returns integer rows (nonzero only) and their pivot columns. Every
    division performed is exact.
    """
    A = _integer_rows(rows)
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            A[i] = [(A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev for j in range(n)]
        prev = A[r][c]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_rational(rows) -> int:
    return len(bareiss_echelon(rows)[1])


def nullspace_rational(rows, ncols: int | None = None) -> list[list[int]]:
    """Integer basis of the right kernel {a : A a = 0}.

    Each basis vector is primitive with first nonzero entry positive, and
    vector i is the one whose free-variable coordinate i is set, so the
    output is reproducible.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    E, pivots = bareiss_echelon(rows) if rows else ([], [])
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        # back-substitution on the echelon rows
        for row, pc in reversed(list(zip(E, pivots))):
            s = sum(row[j] * x[j] for j in range(pc + 1, ncols))
            x[pc] = Fraction(-s, row[pc])
        basis.append(primitive_vector(x))
    return basis


def in_span(vectors, target) -> bool:
    """Whether target lies in the rational span of vectors."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return all(Fraction(x) == 0 for x in target)
    return rank_rational(vectors + [list(target)]) == rank_rational(vectors)
