"""Power residue codes: construction, enumeration, shells, conjugates and duals.

Coordinates are the residues 0..p-1, coordinate i matching the monomial
x^i. A codeword's support is kept as an int bitmask (bit i set when entry
i is nonzero); everything downstream of enumeration works on those masks.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .arith import Polynomial, primitive_pth_root, primitive_root, require_prime
from .blocks import BlockMultiset, permute_masks, points_of
from .errors import CapExceeded, CoefficientOutsideBaseField, FormatError, NotDivisor, NotResidue
from .linalg import nullspace_mod, rank_mod, rref_mod

DEFAULT_CAP = 2**26

# rows folded into the precomputed low table of each enumeration chunk
_CHUNK_WORDS = 1 << 16


@dataclass(frozen=True)
class ResidueCosets:
    p: int
    m: int
    generator: int
    cosets: tuple[frozenset[int], ...]

    def index_of(self, a: int) -> int:
        a %= self.p
        for i, A in enumerate(self.cosets):
            if a in A:
                return i
        raise ValueError(f"{a} is not a unit mod {self.p}")


def residue_cosets(p: int, m: int) -> ResidueCosets:
    """Split F_p^* into the m cosets A_i = g^i * A_0 of the m-th powers."""
    require_prime(p, "p")
    if m < 1 or (p - 1) % m:
        raise NotDivisor(f"m={m} does not divide p-1={p - 1}")
    g = primitive_root(p)
    A0 = frozenset(pow(x, m, p) for x in range(1, p))
    cosets = tuple(frozenset(pow(g, i, p) * a % p for a in A0) for i in range(m))
    return ResidueCosets(p, m, g, cosets)


def generator_polynomial(p: int, m: int, q: int, coset: int = 0) -> Polynomial:
    """prod_{a in A_coset} (x - alpha^a), projected from F_{q^d} to F_q."""
    require_prime(q)
    rc = residue_cosets(p, m)
    if q % p not in rc.cosets[0]:
        raise NotResidue(f"q={q} is not a power residue of order m={m} mod {p}")
    _, alpha = primitive_pth_root(q, p)
    F = alpha.field
    prod = [F.one]  # low-first coefficients in F_{q^d}
    for a in sorted(rc.cosets[coset % m]):
        root = alpha ** a
        nxt = [F.zero] * (len(prod) + 1)
        for i, c in enumerate(prod):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - root * c
        prod = nxt
    if not all(c.is_base() for c in prod):
        raise CoefficientOutsideBaseField(f"generator polynomial of PR_{q}^{m}({p}) left F_{q}")
    return Polynomial(tuple(c.to_base() for c in prod), q)


@dataclass(frozen=True)
class Codeword:
    entries: tuple[int, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.entries) if x)

    @property
    def weight(self) -> int:
        return sum(1 for x in self.entries if x)

    @property
    def mask(self) -> int:
        return sum(1 << i for i, x in enumerate(self.entries) if x)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A linear code over F_q given by a generator matrix with independent rows."""

    q: int
    rows: tuple[tuple[int, ...], ...]
    n: int = field(default=0)

    def __post_init__(self):
        rows = tuple(tuple(int(x) % self.q for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not self.n:
            if not rows:
                raise ValueError("length must be given for the zero code")
            object.__setattr__(self, "n", len(rows[0]))
        if any(len(r) != self.n for r in rows):
            raise ValueError("ragged generator matrix")
        if self.n > 62:
            raise ValueError("support masks need n <= 62")

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return self.q ** self.k

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.k, self.n)

    @cached_property
    def parity_check(self) -> np.ndarray:
        H = nullspace_mod(self.rows, self.q, self.n) if self.rows else np.eye(self.n, dtype=np.int64).tolist()
        return np.array(H, dtype=np.int64).reshape(-1, self.n)

    def contains(self, word: Sequence[int]) -> bool:
        w = np.asarray(word, dtype=np.int64) % self.q
        return not np.any((self.parity_check @ w) % self.q)

    def encode(self, message: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) for x in (np.asarray(message, dtype=np.int64) @ self.generator_matrix) % self.q)

    def same_code(self, other: LinearCode) -> bool:
        """Equal codeword sets, decided by comparing reduced echelon forms."""
        if (self.q, self.n, self.k) != (other.q, other.n, other.k):
            return False
        return rref_mod(self.rows, self.q)[0] == rref_mod(other.rows, other.q)[0]

    @cached_property
    def supports(self) -> CodewordSupports:
        return codeword_supports(self)

    def enumerate(self, cap: int | None = None, workers: int = 1) -> CodewordSupports:
        """Enumerate now with explicit limits; later ``supports`` lookups reuse the result."""
        S = codeword_supports(self, cap=cap, workers=workers)
        self.__dict__["supports"] = S
        return S


@dataclass(frozen=True, eq=False)
class PowerResidueCode(LinearCode):
    """PR_q^m(p): the cyclic code generated by prod_{a in A_0} (x - alpha^a)."""

    p: int = 0
    m: int = 0
    generator_poly: Polynomial | None = None

    def __repr__(self):
        return f"PowerResidueCode(p={self.p}, m={self.m}, q={self.q}, k={self.k})"


def _shift_rows(g: Polynomial, n: int) -> tuple[tuple[int, ...], ...]:
    """Rows x^i g(x) for i = 0..n-deg(g)-1."""
    rows = []
    for i in range(n - g.degree):
        row = [0] * n
        for j, c in enumerate(g.coeffs):
            row[i + j] = c
        rows.append(tuple(row))
    return tuple(rows)


def build_code(p: int, m: int, q: int) -> PowerResidueCode:
    g = generator_polynomial(p, m, q)
    return PowerResidueCode(q=q, rows=_shift_rows(g, p), n=p, p=p, m=m, generator_poly=g)


def coset_code(p: int, m: int, q: int, cosets) -> PowerResidueCode:
    """Cyclic code whose zeros are alpha^a for a in the union of the given cosets.

    With one coset i this is a conjugate of PR_q^m(p); with several it is
    the intersection of those conjugates.
    """
    cosets = sorted({c % m for c in cosets})
    if not cosets:
        raise ValueError("at least one coset is required")
    g = Polynomial((1,), q)
    for c in cosets:
        g = g * generator_polynomial(p, m, q, coset=c)
    return PowerResidueCode(q=q, rows=_shift_rows(g, p), n=p, p=p, m=m, generator_poly=g)


def permute_code(code: LinearCode, perm) -> LinearCode:
    """The code obtained by moving coordinate i to position perm[i].

    Supports map as S -> perm(S), so the weight distribution is unchanged.
    """
    images = list(getattr(perm, "images", perm))
    if sorted(images) != list(range(code.n)):
        raise ValueError("not a permutation of the coordinates")
    G = code.generator_matrix
    out = np.zeros_like(G)
    out[:, images] = G
    return LinearCode(q=code.q, rows=tuple(map(tuple, out.tolist())), n=code.n)


def dual(code: LinearCode) -> LinearCode:
    """C^perp under the standard inner product sum x_i y_i."""
    rows = nullspace_mod(code.rows, code.q, code.n) if code.rows else [
        [int(i == j) for j in range(code.n)] for i in range(code.n)
    ]
    return LinearCode(q=code.q, rows=tuple(map(tuple, rows)), n=code.n)


# -- enumeration ---------------------------------------------------------------


def _check_cap(code: LinearCode, cap: int | None):
    cap = DEFAULT_CAP if cap is None else cap
    if code.size > cap:
        raise CapExceeded(code.size, cap)


class _Enumerator:
    """Splits the message space into a precomputed low part and a high part.

    Message index u = sum_i u_i q^i encodes to sum_i u_i * row_i, row 0
    being the least significant digit. Chunk h covers indices
    [h * q^L, (h+1) * q^L).
    """

    def __init__(self, code: LinearCode):
        self.code = code
        q, k = code.q, code.k
        L = 0
        while L < k and q ** (L + 1) <= _CHUNK_WORDS:
            L += 1
        self.L = L
        self.chunk = q ** L
        self.n_chunks = q ** (k - L)
        G = code.generator_matrix
        low = np.zeros((1, code.n), dtype=np.int64)
        for i in range(L):
            low = np.concatenate([(low + c * G[i]) % q for c in range(q)])
        self.low_words = low
        self.powers = np.int64(1) << np.arange(code.n, dtype=np.int64)
        self.low_masks = (low != 0).astype(np.int64) @ self.powers
        self.high = G[L:]
        self.key_weights = _key_weights(code.n, code.q)

    def offset(self, h: int) -> np.ndarray:
        q = self.code.q
        digits = []
        for _ in range(len(self.high)):
            digits.append(h % q)
            h //= q
        return (np.asarray(digits, dtype=np.int64) @ self.high) % q if digits else np.zeros(self.code.n, dtype=np.int64)

    def words(self, h: int) -> np.ndarray:
        return (self.low_words + self.offset(h)) % self.code.q

    def masks(self, h: int) -> np.ndarray:
        if self.code.q == 2:
            return self.low_masks ^ int(self.offset(h) @ self.powers)
        return (self.words(h) != 0).astype(np.int64) @ self.powers

    def masks_and_keys(self, h: int) -> tuple[np.ndarray, np.ndarray | None]:
        if self.code.q == 2:
            return self.masks(h), None
        w = self.words(h)
        keys = w @ self.key_weights if self.key_weights is not None else None
        return (w != 0).astype(np.int64) @ self.powers, keys


def _key_weights(n: int, q: int) -> np.ndarray | None:
    """Base-q place values for packing a codeword into one int64, if it fits."""
    if q == 2 or q ** n >= 2**63:
        return None
    return np.int64(q) ** np.arange(n, dtype=np.int64)


def permute_keys(keys: np.ndarray, images, q: int) -> np.ndarray:
    """Move digit i of every base-q packed codeword to position images[i]."""
    n = len(images)
    place = np.int64(q) ** np.arange(n, dtype=np.int64)
    out = np.zeros_like(keys)
    for i, j in enumerate(images):
        out += ((keys // place[i]) % q) * place[j]
    return out


def masks_of_keys(keys: np.ndarray, n: int, q: int) -> np.ndarray:
    place = np.int64(q) ** np.arange(n, dtype=np.int64)
    out = np.zeros_like(keys)
    for i in range(n):
        out |= (((keys // place[i]) % q) != 0).astype(np.int64) << i
    return out


def enumerate_codewords(code: LinearCode, start: int = 0, stop: int | None = None,
                        cap: int | None = None) -> Iterator[Codeword]:
    """Yield codewords with message indices in [start, stop), in index order.

    Disjoint index ranges give disjoint streams, so a caller can hand
    ranges to separate workers.
    """
    _check_cap(code, cap)
    stop = code.size if stop is None else min(stop, code.size)
    en = _Enumerator(code)
    h = start // en.chunk
    while h * en.chunk < stop:
        block = en.words(h)
        lo = max(start - h * en.chunk, 0)
        hi = min(stop - h * en.chunk, en.chunk)
        for row in block[lo:hi]:
            yield Codeword(tuple(int(x) for x in row))
        h += 1


class CodewordSupports:
    """Support masks of every codeword of a code, in message-index order.

    ``keys`` packs each whole codeword into an int64 (base q) so distinct
    codewords with equal support can be told apart; for binary codes the
    mask already is the codeword and ``keys`` is the mask array.
    """

    def __init__(self, n: int, q: int, masks: np.ndarray, keys: np.ndarray | None = None):
        self.n = n
        self.q = q
        self.masks = np.asarray(masks, dtype=np.int64)
        self.keys = self.masks if q == 2 else keys
        self.weights = np.bitwise_count(self.masks).astype(np.int64)
        self._containment: dict[int, np.ndarray] = {}

    def __len__(self):
        return len(self.masks)

    def permuted(self, perm) -> CodewordSupports:
        images = list(getattr(perm, "images", perm))
        keys = None if self.q == 2 or self.keys is None else permute_keys(self.keys, images, self.q)
        return CodewordSupports(self.n, self.q, permute_masks(self.masks, images), keys)

    def weight_distribution(self) -> list[int]:
        return np.bincount(self.weights, minlength=self.n + 1).tolist()

    def containment_histogram(self, mask: int) -> np.ndarray:
        """Number of codewords of each weight whose support contains ``mask``."""
        mask = int(mask)
        hist = self._containment.get(mask)
        if hist is None:
            hit = (self.masks & mask) == mask
            hist = np.bincount(self.weights[hit], minlength=self.n + 1)
            self._containment[mask] = hist
        return hist

    def shell(self, ell: int) -> BlockMultiset:
        return BlockMultiset(self.n, self.masks[self.weights == ell])


def codeword_supports(code: LinearCode, cap: int | None = None, workers: int = 1) -> CodewordSupports:
    """Enumerate the whole code into support masks.

    Chunks are farmed out to ``workers`` threads and concatenated in index
    order, so the result does not depend on the worker count.
    """
    _check_cap(code, cap)
    en = _Enumerator(code)
    if workers <= 1 or en.n_chunks == 1:
        parts = [en.masks_and_keys(h) for h in range(en.n_chunks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(en.masks_and_keys, range(en.n_chunks)))
    masks = np.concatenate([m for m, _ in parts])
    keys = None if parts[0][1] is None else np.concatenate([k for _, k in parts])
    return CodewordSupports(code.n, code.q, masks, keys)


def _supports(obj, cap=None) -> CodewordSupports:
    if isinstance(obj, CodewordSupports):
        return obj
    if cap is not None:
        return codeword_supports(obj, cap=cap)
    return obj.supports


def weight_distribution(code, cap: int | None = None) -> list[int]:
    return _supports(code, cap).weight_distribution()


def shell(code, ell: int, cap: int | None = None) -> BlockMultiset:
    """Supports of the weight-ell codewords, repeated supports kept."""
    return _supports(code, cap).shell(ell)


def is_cyclic_code(code: LinearCode) -> bool:
    shift = [(i + 1) % code.n for i in range(code.n)]
    return permute_code(code, shift).same_code(code)


# -- text export -----------------------------------------------------------------


def dumps_code(code: PowerResidueCode) -> str:
    lines = [f"{code.p} {code.m} {code.q} {code.k}", " ".join(map(str, code.generator_poly.coeffs))]
    lines += [" ".join(map(str, row)) for row in code.rows]
    return "\n".join(lines) + "\n"


def loads_code(text: str) -> PowerResidueCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    try:
        p, m, q, k = map(int, lines[0].split())
        g = Polynomial(tuple(map(int, lines[1].split())), q)
        rows = tuple(tuple(map(int, ln.split())) for ln in lines[2:])
    except (ValueError, IndexError) as exc:
        raise FormatError(f"malformed code file: {exc}") from exc
    if len(rows) != k or any(len(r) != p for r in rows):
        raise FormatError(f"expected {k} rows of length {p}")
    if rank_mod(rows, q) != k:
        raise FormatError("generator rows are dependent")
    return PowerResidueCode(q=q, rows=rows, n=p, p=p, m=m, generator_poly=g)
