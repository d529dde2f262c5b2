"""Exact arithmetic over prime fields, their polynomial rings and extensions.

Everything here is integer arithmetic. Elements of F_q are plain ``int``
values in ``range(q)`` wherever speed matters; :class:`PrimeFieldElement`
wraps one for callers that want operator syntax.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import NotPrime, ZeroInverse

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(n: int, name: str = "q") -> None:
    if not is_prime(n):
        raise NotPrime(f"{name}={n} is not prime")


def multiplicative_order(a: int, n: int) -> int:
    """Smallest d >= 1 with a**d == 1 (mod n). Requires gcd(a, n) == 1."""
    a %= n
    if n == 1:
        return 1
    x, d = a, 1
    while x != 1:
        x = x * a % n
        d += 1
        if d > n:
            raise ValueError(f"{a} is not invertible mod {n}")
    return d


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod the prime p."""
    require_prime(p, "p")
    if p == 2:
        return 1
    for g in range(2, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise AssertionError("unreachable for prime p")


def field_inverse(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {q}")
    return pow(a, -1, q)


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    q: int

    def __post_init__(self):
        require_prime(self.q)
        if not 0 <= self.value < self.q:
            object.__setattr__(self, "value", self.value % self.q)

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.q != self.q:
                raise ValueError("elements of different fields")
            return other.value
        return other % self.q

    def __add__(self, other):
        return PrimeFieldElement((self.value + self._coerce(other)) % self.q, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement((self.value - self._coerce(other)) % self.q, self.q)

    def __neg__(self):
        return PrimeFieldElement(-self.value % self.q, self.q)

    def __mul__(self, other):
        return PrimeFieldElement(self.value * self._coerce(other) % self.q, self.q)

    __rmul__ = __mul__

    def inverse(self) -> PrimeFieldElement:
        return PrimeFieldElement(field_inverse(self.value, self.q), self.q)

    def __truediv__(self, other):
        return self * PrimeFieldElement(self._coerce(other), self.q).inverse()

    def __int__(self):
        return self.value


def _strip(coeffs) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial over F_q, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1
    (standing in for minus infinity).
    """

    coeffs: tuple[int, ...]
    q: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(c % self.q for c in self.coeffs))

    @classmethod
    def x_power(cls, n: int, q: int, coeff: int = 1) -> Polynomial:
        return cls((0,) * n + (coeff,), q)

    @classmethod
    def constant(cls, c: int, q: int) -> Polynomial:
        return cls((c,), q)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check(self, other: Polynomial):
        if self.q != other.q:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self[i] + other[i] for i in range(n)), self.q)

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coeffs), self.q)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, int):
            return Polynomial(tuple(c * other for c in self.coeffs), self.q)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial((), self.q)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out), self.q)

    __rmul__ = __mul__

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        self._check(other)
        if other.is_zero():
            raise ZeroInverse("polynomial division by zero")
        q = self.q
        rem = list(self.coeffs)
        dq = other.degree
        inv = field_inverse(other.lead, q)
        quot = [0] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] % q
            if c:
                f = c * inv % q
                quot[i - dq] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] = (rem[i - dq + j] - f * b) % q
        return Polynomial(tuple(quot), q), Polynomial(tuple(rem[:dq]), q)

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def divides(self, other: Polynomial) -> bool:
        return (other % self).is_zero()

    def monic(self) -> Polynomial:
        return self * field_inverse(self.lead, self.q)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.q
        return acc

    def powmod(self, e: int, mod: Polynomial) -> Polynomial:
        result = Polynomial((1,), self.q) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def is_irreducible(f: Polynomial) -> bool:
    """Ben-Or test: no factor of degree i shares a root with x^(q^i) - x."""
    d, q = f.degree, f.q
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    x = Polynomial((0, 1), q)
    xp = x
    for _ in range(d // 2):
        xp = xp.powmod(q, f)
        if poly_gcd(f, xp - x).degree > 0:
            return False
    return True


def monic_polynomials(q: int, d: int):
    """Monic degree-d polynomials, ordered by (c_{d-1}, ..., c_0) lexicographically."""
    for tail in itertools.product(range(q), repeat=d):
        yield Polynomial(tuple(reversed(tail)) + (1,), q)


def find_irreducible(q: int, d: int) -> Polynomial:
    require_prime(q)
    if d < 1:
        raise ValueError("degree must be positive")
    for f in monic_polynomials(q, d):
        if is_irreducible(f):
            return f
    raise AssertionError("an irreducible polynomial of every degree exists")


class ExtensionField:
    """F_{q^d} realised as F_q[x] / (modulus)."""

    def __init__(self, q: int, modulus: Polynomial):
        require_prime(q)
        if modulus.q != q or not modulus.is_monic():
            raise ValueError("modulus must be monic over F_q")
        self.q = q
        self.modulus = modulus
        self.degree = modulus.degree

    def __repr__(self):
        return f"ExtensionField(q={self.q}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))

    @property
    def order(self) -> int:
        return self.q ** self.degree

    def __call__(self, value) -> ExtFieldElement:
        if isinstance(value, ExtFieldElement):
            return value
        if isinstance(value, int):
            return ExtFieldElement(Polynomial((value,), self.q), self)
        if isinstance(value, Polynomial):
            return ExtFieldElement(value % self.modulus, self)
        return ExtFieldElement(Polynomial(tuple(value), self.q) % self.modulus, self)

    @cached_property
    def zero(self) -> ExtFieldElement:
        return self(0)

    @cached_property
    def one(self) -> ExtFieldElement:
        return self(1)

    def elements(self):
        """All elements, ordered by coefficient tuple (c_{d-1}, ..., c_0)."""
        for tail in itertools.product(range(self.q), repeat=self.degree):
            yield self(tuple(reversed(tail)))


@dataclass(frozen=True, eq=False)
class ExtFieldElement:
    poly: Polynomial
    field: ExtensionField

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return isinstance(other, ExtFieldElement) and self.field == other.field and self.poly == other.poly

    def __hash__(self):
        return hash((self.poly, self.field))

    def _lift(self, other) -> Polynomial:
        if isinstance(other, ExtFieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.poly
        return Polynomial((other,), self.field.q)

    def __add__(self, other):
        return ExtFieldElement(self.poly + self._lift(other), self.field)

    __radd__ = __add__

    def __neg__(self):
        return ExtFieldElement(-self.poly, self.field)

    def __sub__(self, other):
        return ExtFieldElement(self.poly - self._lift(other), self.field)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        return ExtFieldElement((self.poly * self._lift(other)) % self.field.modulus, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ExtFieldElement(self.poly.powmod(e, self.field.modulus), self.field)

    def inverse(self) -> ExtFieldElement:
        if self.poly.is_zero():
            raise ZeroInverse("0 has no inverse")
        return self ** (self.field.order - 2)

    def is_base(self) -> bool:
        """True when the element lies in the prime subfield."""
        return self.poly.degree <= 0

    def to_base(self) -> int:
        if not self.is_base():
            raise ValueError(f"{self} is not in F_{self.field.q}")
        return self.poly[0]

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.poly[i] for i in range(self.field.degree))

    def __repr__(self):
        return f"[{self.poly}]"


def primitive_pth_root(q: int, p: int) -> tuple[int, ExtFieldElement]:
    """Return (d, alpha) with alpha of multiplicative order p in F_{q^d}.

    d is the order of q mod p. alpha is the first non-identity value of
    beta**((q^d - 1) / p) as beta runs over F_{q^d} in coefficient order.
    """
    require_prime(q)
    require_prime(p, "p")
    if p == q:
        raise ValueError("p and q must differ")
    d = multiplicative_order(q, p)
    field = ExtensionField(q, find_irreducible(q, d))
    e = (field.order - 1) // p
    for beta in field.elements():
        if beta.poly.is_zero():
            continue
        alpha = beta ** e
        if alpha != field.one:
            return d, alpha
    raise AssertionError("the multiplicative group is cyclic of order divisible by p")
