"""t-design verification on block multisets, and the shell-union tables."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .blocks import BlockMultiset, mask_of, permute_masks
from .errors import BlockSmallerThanT, NonUniformBlocks

__all__ = [
    "BlockMultiset",
    "DesignReport",
    "TableRow",
    "check_design",
    "subset_counts",
    "shells_union",
    "reproduce_table",
]


@dataclass(frozen=True)
class DesignReport:
    t: int
    v: int
    block_size: int | None
    blocks: int
    is_design: bool
    lam: int | None
    min_count: int
    max_count: int
    witness: tuple[int, ...] | None = None

    @property
    def vacuous(self) -> bool:
        """An empty multiset: every t-subset lies in zero blocks."""
        return self.blocks == 0


def subset_counts(B: BlockMultiset, t: int) -> np.ndarray:
    """Total multiplicity of blocks containing each t-subset.

    Entry r belongs to the r-th t-subset in ``itertools.combinations``
    order. Blocks are filtered point by point, so each level only scans the
    blocks that contain the current prefix.
    """
    v = B.v
    out = np.zeros(comb(v, t), dtype=np.int64)
    if t == 0:
        out[0] = B.count
        return out
    pos = 0

    def walk(masks, mults, start, depth):
        nonlocal pos
        if depth == t - 1:
            for j in range(start, v):
                out[pos] = int(mults[((masks >> j) & 1).astype(bool)].sum())
                pos += 1
            return
        for i in range(start, v - (t - 1 - depth)):
            hit = ((masks >> i) & 1).astype(bool)
            walk(masks[hit], mults[hit], i + 1, depth + 1)

    walk(B.masks, B.mults, 0, 0)
    assert pos == len(out)
    return out


def check_design(B: BlockMultiset, t: int) -> DesignReport:
    """Decide whether every t-subset of points lies in the same number of blocks."""
    if B.is_empty():
        return DesignReport(t, B.v, None, 0, True, 0, 0, 0)
    h = B.block_size
    if h is None:
        raise NonUniformBlocks("blocks have different sizes")
    if h < t:
        raise BlockSmallerThanT(f"block size {h} < t={t}")
    counts = subset_counts(B, t)
    lo, hi = int(counts.min()), int(counts.max())
    witness = None
    if lo != hi:
        r = int(np.argmin(counts))
        witness = next(s for i, s in enumerate(combinations(range(B.v), t)) if i == r)
    return DesignReport(
        t=t,
        v=B.v,
        block_size=h,
        blocks=B.count,
        is_design=lo == hi,
        lam=lo if lo == hi else None,
        min_count=lo,
        max_count=hi,
        witness=witness,
    )


def count_containing(B: BlockMultiset, subset) -> int:
    """Blocks (with multiplicity) containing a given point set."""
    m = mask_of(subset)
    return int(B.mults[(B.masks & m) == m].sum())


UNION_MODES = ("codewords", "multiset")


def conjugate_union(supports, perm, s: int, ell: int, union: str = "codewords") -> BlockMultiset:
    """Blocks of the weight-ell shells of C, C^perm, ..., C^(perm^(s-1)).

    ``union="codewords"`` takes the union of the shells as sets of
    codewords, so a vector lying in two conjugate codes contributes its
    support once. ``union="multiset"`` adds the s shells with
    multiplicity, which is the quantity a sum of Jacobi polynomials over
    the conjugates counts. Only C is enumerated; conjugate shells are
    images of C's shell.
    """
    if union not in UNION_MODES:
        raise ValueError(f"union must be one of {UNION_MODES}")
    powers = [perm ** i for i in range(s)]
    sel = supports.weights == ell
    if union == "multiset":
        base = BlockMultiset(supports.n, supports.masks[sel])
        out = base
        for g in powers[1:]:
            out = out + base.permuted(g.images)
        return out
    if supports.keys is None:
        raise ValueError("codeword keys unavailable: q**n too large for int64 packing")
    from .prcode import masks_of_keys, permute_keys

    keys = supports.keys[sel]
    q, n = supports.q, supports.n
    if q == 2:
        images = [permute_masks(keys, g.images) for g in powers]
        return BlockMultiset(n, np.unique(np.concatenate(images)))
    images = [permute_keys(keys, g.images, q) for g in powers]
    return BlockMultiset(n, masks_of_keys(np.unique(np.concatenate(images)), n, q))


def shells_union(p: int, m: int, q: int, ell: int, code=None, union: str = "multiset") -> BlockMultiset:
    """Weight-ell shells of the m conjugate codes, merged per ``union``.

    The default adds the shells with multiplicity; ``reproduce_table``
    defaults to the codeword union, which is what the published tables count.
    """
    from .groups import conjugating_permutation
    from .prcode import build_code

    code = build_code(p, m, q) if code is None else code
    sigma = conjugating_permutation(p, m)
    return conjugate_union(code.supports, sigma, m, ell, union)


@dataclass(frozen=True)
class TableRow:
    ell: int
    lam: int | None
    blocks: int
    is_design: bool

    @property
    def empty(self) -> bool:
        return self.blocks == 0


def reproduce_table(p: int, m: int, q: int, ell_range, t: int = 2, code=None,
                    union: str = "codewords", progress=None) -> list[TableRow]:
    """One row per shell weight: lambda of the conjugate shell union, or empty."""
    from .groups import conjugating_permutation
    from .prcode import build_code

    code = build_code(p, m, q) if code is None else code
    sigma = conjugating_permutation(p, m)
    lo, hi = ell_range
    rows = []
    for ell in range(lo, hi + 1):
        B = conjugate_union(code.supports, sigma, m, ell, union)
        if B.is_empty():
            rows.append(TableRow(ell, None, 0, True))
        else:
            rep = check_design(B, t)
            rows.append(TableRow(ell, rep.lam, rep.blocks, rep.is_design))
        if progress:
            progress(rows[-1])
    return rows
