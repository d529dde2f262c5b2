"""Affine permutation groups on Z/pZ and their orbits on k-subsets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

from .arith import primitive_root, require_prime
from .blocks import mask_of, points_of
from .errors import CyclicActionFailed, NotDivisor, NotSubgroup, TooManySubsets

MAX_SUBSETS = 10**7


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., n-1}; ``images[i]`` is the image of i.

    Composition reads right to left: ``(a * b)(i) == a(b(i))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images do not form a bijection")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def shift(cls, p: int, b: int = 1) -> Permutation:
        """sigma^b : i -> i + b (mod p)."""
        return cls(tuple((i + b) % p for i in range(p)))

    @classmethod
    def multiplier(cls, p: int, a: int) -> Permutation:
        """tau_a : i -> a i (mod p)."""
        if a % p == 0:
            raise ValueError("multiplier must be a unit")
        return cls(tuple(a * i % p for i in range(p)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, e: int) -> Permutation:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = Permutation.identity(self.degree)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        k, x = 1, self
        while not x.is_identity():
            x = x * self
            k += 1
        return k

    def apply_set(self, points) -> tuple[int, ...]:
        return tuple(sorted(self.images[i] for i in points))

    def apply_mask(self, mask: int) -> int:
        out, i = 0, 0
        while mask:
            if mask & 1:
                out |= 1 << self.images[i]
            mask >>= 1
            i += 1
        return out


class PermGroup:
    """Permutation group given by generators; elements are closed lazily."""

    def __init__(self, generators, degree: int | None = None):
        gens = tuple(g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in generators)
        if degree is None:
            if not gens:
                raise ValueError("degree needed for a group without generators")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators act on different point sets")
        self.generators = gens
        self.degree = degree

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"

    @cached_property
    def elements(self) -> frozenset[Permutation]:
        ident = Permutation.identity(self.degree)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g * x
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self.elements

    def __iter__(self):
        return iter(sorted(self.elements, key=lambda g: g.images))

    def orbit(self, points) -> frozenset[tuple[int, ...]]:
        """Orbit of a point set (given as an iterable of points)."""
        return frozenset(points_of(m) for m in self._mask_orbit(mask_of(points)))

    def _mask_orbit(self, start: int) -> set[int]:
        seen = {start}
        todo = deque([start])
        while todo:
            x = todo.popleft()
            for g in self.generators:
                y = g.apply_mask(x)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return seen


@dataclass(frozen=True)
class OrbitPartition:
    k: int
    degree: int
    orbits: tuple[frozenset[tuple[int, ...]], ...]

    @cached_property
    def representatives(self) -> tuple[tuple[int, ...], ...]:
        return tuple(min(o) for o in self.orbits)

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {s: i for i, o in enumerate(self.orbits) for s in o}

    def orbit_index(self, subset) -> int:
        return self._index[tuple(sorted(subset))]

    def orbit_of(self, subset) -> frozenset[tuple[int, ...]]:
        return self.orbits[self.orbit_index(subset)]

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def __len__(self):
        return len(self.orbits)


def orbits_on_ksubsets(group: PermGroup, k: int) -> OrbitPartition:
    """Partition all k-subsets into group orbits by breadth-first closure.

    Orbits are listed in order of their lexicographically smallest member,
    which is also the orbit's representative.
    """
    n = group.degree
    if comb(n, k) > MAX_SUBSETS:
        raise TooManySubsets(f"C({n},{k}) = {comb(n, k)} exceeds {MAX_SUBSETS}")
    assigned: set[int] = set()
    orbits = []
    for subset in combinations(range(n), k):
        m = mask_of(subset)
        if m in assigned:
            continue
        orb = group._mask_orbit(m)
        assigned |= orb
        orbits.append(frozenset(points_of(x) for x in orb))
    return OrbitPartition(k, n, tuple(orbits))


def affine_group(p: int, m: int) -> tuple[PermGroup, PermGroup]:
    """(H, G): H = <sigma, tau_{g^m}> and G = <sigma, tau_g>, g the least primitive root."""
    require_prime(p, "p")
    if m < 1 or (p - 1) % m:
        raise NotDivisor(f"m={m} does not divide p-1={p - 1}")
    g = primitive_root(p)
    sigma = Permutation.shift(p)
    H = PermGroup([sigma, Permutation.multiplier(p, pow(g, m, p))])
    G = PermGroup([sigma, Permutation.multiplier(p, g)])
    return H, G


def is_normal(H: PermGroup, G: PermGroup) -> bool:
    if not H.elements <= G.elements:
        raise NotSubgroup("H is not contained in G")
    for g in G.generators:
        gi = g.inverse()
        if any(g * h * gi not in H.elements for h in H.generators):
            return False
    return True


def stabilizer_order(group: PermGroup, points) -> int:
    """Number of group elements fixing ``points`` (an int, or a set setwise)."""
    if isinstance(points, int):
        return sum(1 for g in group.elements if g(points) == points)
    target = tuple(sorted(points))
    return sum(1 for g in group.elements if g.apply_set(target) == target)


def orbit_image(perm: Permutation, partition: OrbitPartition) -> list[int]:
    """Index of the orbit containing perm(O_i), for each orbit O_i.

    Raises ValueError if some orbit is not mapped onto a single orbit.
    """
    out = []
    for orb in partition.orbits:
        idx = {partition.orbit_index(perm.apply_set(s)) for s in orb}
        if len(idx) != 1:
            raise ValueError("permutation splits an orbit")
        out.append(idx.pop())
    return out


def conjugating_permutation(p: int, m: int, code=None) -> Permutation:
    """tau_g for the least primitive root g, checked to cycle the H-orbits on pairs.

    The check demands that tau_g permutes the m orbits as one m-cycle. When
    a power residue code is passed, it also checks that tau_g carries the
    code onto the power residue code built from another coset.
    """
    H, _ = affine_group(p, m)
    g = primitive_root(p)
    tau = Permutation.multiplier(p, g)
    part = orbits_on_ksubsets(H, 2)
    try:
        img = orbit_image(tau, part)
    except ValueError as exc:
        raise CyclicActionFailed(str(exc)) from exc
    cycle, i = [0], img[0]
    while i != 0:
        cycle.append(i)
        i = img[i]
    if len(part) != m or len(cycle) != m:
        raise CyclicActionFailed(f"tau_{g} does not cycle the {len(part)} orbits with length {m}")
    if code is not None and not maps_to_conjugate(code, tau):
        raise CyclicActionFailed(f"tau_{g} does not map the code onto a conjugate")
    return tau


def maps_to_conjugate(code, tau: Permutation) -> bool:
    """Whether tau(code) is the power residue code whose zeros are some other coset.

    Moving coordinate i to g*i turns c(x) into c'(x) with c'(a^b) = c(a^(bg)),
    so the image has zeros exactly at g^-1 * A_0 = A_{m-1}.
    """
    from .prcode import generator_polynomial, permute_code
    from .arith import Polynomial

    image = permute_code(code, tau)
    g_other = generator_polynomial(code.p, code.m, code.q, coset=code.m - 1)
    if image.k != code.k:
        return False
    return all(g_other.divides(Polynomial(row, code.q)) for row in image.rows)


def orbit_cycle_length(perm: Permutation, partition: OrbitPartition) -> int:
    """Order of the permutation induced on the orbits."""
    img = orbit_image(perm, partition)
    cur = list(range(len(img)))
    k = 0
    while True:
        cur = [img[i] for i in cur]
        k += 1
        if cur == list(range(len(img))):
            return k
