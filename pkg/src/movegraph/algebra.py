"""Exact arithmetic on Z_n, m x m matrices over Z_n, and GF(p^2) = GF(p)[w]/(w^2 + 1).

Every stored value is a canonical residue in [0, n). Python integers are
unbounded, so products never overflow; reductions still happen after each
multiply to keep operands small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ContractError, DomainError

ORDER_CAP_LIMIT = 10**7


def check_modulus(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise DomainError(f"modulus must be an integer >= 2, got {n!r}")
    return n


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def odd_primes(upto: int) -> list[int]:
    """Odd primes p with 3 <= p <= upto."""
    return [p for p in range(3, upto + 1, 2) if is_prime(p)]


def check_odd_prime(p: int) -> int:
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise DomainError(f"expected an odd prime, got {p!r}")
    return p


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class ModVector:
    coords: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        if any(not 0 <= c < self.modulus for c in self.coords):
            raise ContractError(f"non-canonical coordinates {self.coords} mod {self.modulus}")

    @classmethod
    def of(cls, coords: Iterable[int], n: int) -> ModVector:
        check_modulus(n)
        return cls(tuple(int(c) % n for c in coords), n)

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: ModVector) -> ModVector:
        if self.modulus != other.modulus or len(self) != len(other):
            raise ContractError("vector dimension/modulus mismatch")
        n = self.modulus
        return ModVector(tuple((a + b) % n for a, b in zip(self.coords, other.coords)), n)

    def scale(self, s: int) -> ModVector:
        return ModVector.of((s * c for c in self.coords), self.modulus)


@dataclass(frozen=True)
class ModMatrix:
    """Square integer matrix reduced modulo n. Row-major tuple of tuples."""

    entries: tuple[tuple[int, ...], ...]
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        m = len(self.entries)
        if m < 1 or any(len(row) != m for row in self.entries):
            raise ContractError("move matrix must be square with dimension >= 1")
        if any(not 0 <= e < self.modulus for row in self.entries for e in row):
            raise ContractError("non-canonical matrix entries")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], n: int) -> ModMatrix:
        check_modulus(n)
        return cls(tuple(tuple(int(e) % n for e in row) for row in rows), n)

    @classmethod
    def identity(cls, m: int, n: int) -> ModMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(m)) for i in range(m)), check_modulus(n))

    @property
    def m(self) -> int:
        return len(self.entries)

    def is_identity(self) -> bool:
        return all(e == int(i == j) for i, row in enumerate(self.entries) for j, e in enumerate(row))

    def det(self) -> int:
        return int_det(self.entries) % self.modulus

    def __matmul__(self, other: ModMatrix) -> ModMatrix:
        if self.modulus != other.modulus or self.m != other.m:
            raise ContractError("matrix dimension/modulus mismatch")
        n = self.modulus
        cols = list(zip(*other.entries))
        return ModMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) % n for col in cols) for row in self.entries),
            n,
        )

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def mat_apply(M: ModMatrix, x: ModVector) -> ModVector:
    """Return M x^T as a canonical vector."""
    if M.modulus != x.modulus or M.m != len(x):
        raise ContractError(
            f"cannot apply {M.m}x{M.m} matrix mod {M.modulus} to length-{len(x)} vector mod {x.modulus}"
        )
    n = M.modulus
    return ModVector(tuple(sum(a * c for a, c in zip(row, x.coords)) % n for row in M.entries), n)


def mat_pow(M: ModMatrix, e: int) -> ModMatrix:
    if e < 0:
        raise DomainError("exponent must be non-negative")
    result = ModMatrix.identity(M.m, M.modulus)
    base = M
    while e:
        if e & 1:
            result = result @ base
        base = base @ base
        e >>= 1
    return result


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    a = [list(map(int, row)) for row in rows]
    m = len(a)
    sign, prev = 1, 1
    for k in range(m - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, m) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def int_adjugate(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    m = len(rows)
    if m == 1:
        return [[1]]
    adj = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            minor = [[rows[r][c] for c in range(m) if c != j] for r in range(m) if r != i]
            # adj is the transposed cofactor matrix
            adj[j][i] = (-1) ** (i + j) * int_det(minor)
    return adj


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def _default_cap(m: int, n: int) -> int:
    # n ** (m*m) can be astronomically large; compare in log space
    if m * m * math.log10(n) >= 7:
        return ORDER_CAP_LIMIT
    return min(n ** (m * m), ORDER_CAP_LIMIT)


def _is_subadd(M: ModMatrix) -> bool:
    n = M.modulus
    return M.entries == ((1, (n - 1) % n), (1, 1))


def zn_order(M: ModMatrix, cap: int | None = None) -> int | None:
    """Least k <= cap with M^k = I mod n, or None.

    Returns None straight away when det M is not a unit mod n, since no power
    can then be the identity. For the sub-add matrix with n odd the search is
    restricted to divisors of 4 * ord(-4 mod n), because M^4 = -4 I.
    """
    if cap is None:
        cap = _default_cap(M.m, M.modulus)
    if cap < 1:
        raise DomainError("cap must be >= 1")
    n = M.modulus
    if math.gcd(M.det(), n) != 1:
        return None
    if _is_subadd(M) and n % 2 == 1:
        bound = 4 * mult_order(-4, n)
        for d in divisors(bound):
            if d > cap:
                return None
            if mat_pow(M, d).is_identity():
                return d
        raise AssertionError("M^(4 ord(-4)) must be the identity")
    power = M
    for k in range(1, cap + 1):
        if power.is_identity():
            return k
        power = power @ M
    return None


def mult_order(a: int, n: int) -> int:
    """Multiplicative order of a modulo n by direct iteration."""
    check_modulus(n)
    a %= n
    if math.gcd(a, n) != 1:
        raise DomainError(f"{a} is not a unit modulo {n}")
    x, t = a, 1
    while x != 1 % n:
        x = x * a % n
        t += 1
    return t


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError("euler_phi needs n >= 1")
    result, rest, f = n, n, 2
    while f * f <= rest:
        if rest % f == 0:
            while rest % f == 0:
                rest //= f
            result -= result // f
        f += 1
    if rest > 1:
        result -= result // rest
    return result


def sqrt_minus_one(p: int) -> int | None:
    """Smaller square root of -1 mod p, or None when p = 3 (mod 4).

    Tries g^((p-1)/4) for g = 2, 3, ...; any quadratic non-residue g yields a
    root, so the loop ends at the least non-residue.
    """
    check_odd_prime(p)
    if p % 4 == 3:
        return None
    quarter = (p - 1) // 4
    for g in range(2, p):
        c = pow(g, quarter, p)
        if c * c % p == p - 1:
            return min(c, p - c)
    raise AssertionError(f"no square root of -1 found mod {p}")


@dataclass(frozen=True)
class Gf2Element:
    """a + b*w in GF(p)[w]/(w^2 + 1).

    For p = 1 (mod 4) this ring is not a field, but elements with b = 0 form
    GF(p) itself; substituting a concrete root i of -1 keeps b = 0 throughout.
    """

    a: int
    b: int
    p: int

    def __post_init__(self):
        check_odd_prime(self.p)
        if not (0 <= self.a < self.p and 0 <= self.b < self.p):
            raise ContractError("non-canonical GF(p^2) element")

    @classmethod
    def of(cls, a: int, b: int, p: int) -> Gf2Element:
        return cls(a % p, b % p, p)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def __mul__(self, other: Gf2Element) -> Gf2Element:
        return gf2_mul(self, other)

    def __pow__(self, e: int) -> Gf2Element:
        return gf2_pow(self, e)

    def __neg__(self) -> Gf2Element:
        return Gf2Element.of(-self.a, -self.b, self.p)


def gf2_mul(x: Gf2Element, y: Gf2Element) -> Gf2Element:
    if x.p != y.p:
        raise ContractError("operands over different primes")
    p = x.p
    # (a + bw)(c + dw) = (ac - bd) + (ad + bc)w
    return Gf2Element((x.a * y.a - x.b * y.b) % p, (x.a * y.b + x.b * y.a) % p, p)


def gf2_pow(x: Gf2Element, e: int) -> Gf2Element:
    if e < 0:
        raise DomainError("negative exponents are not supported")
    result = Gf2Element(1, 0, x.p)
    base = x
    while e:
        if e & 1:
            result = gf2_mul(result, base)
        base = gf2_mul(base, base)
        e >>= 1
    return result


def gf2_order(x: Gf2Element) -> int:
    """Least e >= 1 with x^e = 1.

    The unit group has exponent p^2 - 1 when p = 3 (mod 4) and p - 1
    otherwise; both divide p^2 - 1, so scanning its divisors suffices.
    """
    if x.is_zero():
        raise DomainError("zero has no multiplicative order")
    group = x.p * x.p - 1
    for d in divisors(group):
        if gf2_pow(x, d).is_one():
            return d
    raise DomainError(f"{x} is not a unit")
