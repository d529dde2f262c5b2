"""Block multisets: supports of codewords, stored as bitmasks with multiplicities."""

from __future__ import annotations

from collections.abc import Iterable, Mapping

import numpy as np

from .errors import FormatError


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for i in points:
        m |= 1 << i
    return m


def points_of(mask: int) -> tuple[int, ...]:
    mask = int(mask)
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def permute_masks(masks: np.ndarray, images) -> np.ndarray:
    """Apply the point map i -> images[i] to every mask in the array."""
    masks = np.asarray(masks, dtype=np.int64)
    out = np.zeros_like(masks)
    for i, j in enumerate(images):
        out |= ((masks >> i) & 1) << j
    return out


class BlockMultiset:
    """Blocks on the points 0..v-1, each with a positive multiplicity.

    Internally a sorted array of distinct block masks and a parallel array
    of multiplicities. Two multisets compare equal when they hold the same
    blocks with the same multiplicities.
    """

    def __init__(self, v: int, masks=(), mults=None):
        if v > 62:
            raise ValueError("at most 62 points are supported")
        masks = np.asarray(masks, dtype=np.int64).ravel()
        if mults is None:
            mults = np.ones(len(masks), dtype=np.int64)
        mults = np.asarray(mults, dtype=np.int64).ravel()
        if len(masks) != len(mults):
            raise ValueError("masks and multiplicities differ in length")
        if len(masks) and (masks.min() < 0 or int(masks.max()) >> v):
            raise ValueError(f"block outside the point set 0..{v - 1}")
        if len(mults) and mults.min() < 0:
            raise ValueError("negative multiplicity")
        keep = mults > 0
        uniq, inverse = np.unique(masks[keep], return_inverse=True)
        self.v = v
        self.masks = uniq
        self.mults = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(self.mults, inverse, mults[keep])

    @classmethod
    def from_blocks(cls, v: int, blocks: Mapping[tuple[int, ...], int] | Iterable[Iterable[int]]):
        if isinstance(blocks, Mapping):
            items = list(blocks.items())
            return cls(v, [mask_of(b) for b, _ in items], [m for _, m in items])
        return cls(v, [mask_of(b) for b in blocks])

    @property
    def blocks(self) -> dict[tuple[int, ...], int]:
        return {points_of(m): int(c) for m, c in zip(self.masks, self.mults)}

    @property
    def sizes(self) -> np.ndarray:
        return np.bitwise_count(self.masks).astype(np.int64)

    @property
    def block_size(self) -> int | None:
        """Common block size, or None if empty or mixed."""
        sizes = np.unique(self.sizes)
        return int(sizes[0]) if len(sizes) == 1 else None

    @property
    def count(self) -> int:
        """Number of blocks counted with multiplicity."""
        return int(self.mults.sum())

    def __len__(self):
        return self.count

    def is_empty(self) -> bool:
        return self.count == 0

    def __eq__(self, other):
        return (
            isinstance(other, BlockMultiset)
            and self.v == other.v
            and np.array_equal(self.masks, other.masks)
            and np.array_equal(self.mults, other.mults)
        )

    def __add__(self, other: BlockMultiset) -> BlockMultiset:
        if self.v != other.v:
            raise ValueError("different point sets")
        return BlockMultiset(
            self.v,
            np.concatenate([self.masks, other.masks]),
            np.concatenate([self.mults, other.mults]),
        )

    def permuted(self, images) -> BlockMultiset:
        return BlockMultiset(self.v, permute_masks(self.masks, images), self.mults)

    def __repr__(self):
        return f"BlockMultiset(v={self.v}, distinct={len(self.masks)}, count={self.count})"


def dumps_blocks(B: BlockMultiset) -> str:
    """Header ``v h``, then ``p1 p2 ... * multiplicity`` per distinct block."""
    h = B.block_size
    lines = [f"{B.v} {h if h is not None else 0}"]
    for pts, c in sorted(B.blocks.items()):
        lines.append(" ".join(map(str, pts)) + f" * {c}")
    return "\n".join(lines) + "\n"


def loads_blocks(text: str) -> BlockMultiset:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    try:
        v, h = map(int, lines[0].split())
        masks, mults = [], []
        for ln in lines[1:]:
            pts, _, mult = ln.partition("*")
            pts = [int(x) for x in pts.split()]
            if h and len(pts) != h:
                raise FormatError(f"block {pts} does not have size {h}")
            masks.append(mask_of(pts))
            mults.append(int(mult) if mult.strip() else 1)
    except (ValueError, IndexError) as exc:
        raise FormatError(f"malformed block file: {exc}") from exc
    return BlockMultiset(v, masks, mults)
