"""Exact small-scale number theory: primality, primitive roots, CRT flattening.

Everything here is plain integer arithmetic with no probabilistic behavior.
All functions are pure, so they are safe under concurrent callers.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "NotPrime",
    "NotGenerator",
    "PrimeNotFound",
    "RangeError",
    "PrimeField",
    "GeneratorPair",
    "is_prime",
    "prime_factors",
    "is_primitive_root",
    "primitive_root",
    "crt_flatten",
    "find_decomposition_prime",
]


class NotPrime(ValueError):
    """Argument required to be prime is not."""


class NotGenerator(ValueError):
    """Element is not a generator of the multiplicative group mod p."""


class PrimeNotFound(LookupError):
    """No prime exists in the requested bracket."""


class RangeError(ValueError):
    """Residue or parameter outside its documented range."""


# Fixed witness set proven deterministic for every n < 3.3e24, which covers
# the full 2**63 contract of is_prime with a wide margin.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Exact primality test for 0 <= n < 2**63 (deterministic Miller-Rabin)."""
    if n < 0 or n >= 1 << 63:
        raise RangeError(f"is_prime is specified for 0 <= n < 2**63, got {n}")
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1, ascending (trial division)."""
    if n < 1:
        raise RangeError(f"need n >= 1, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_primitive_root(g: int, p: int) -> bool:
    """True iff g generates the full multiplicative group mod prime p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    g %= p
    if g == 0:
        return False
    if p == 2:
        return g == 1
    return all(pow(g, (p - 1) // q, p) != 1 for q in prime_factors(p - 1))


def primitive_root(p: int) -> int:
    """Smallest primitive root mod prime p (p = 2 gives 1)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


def crt_flatten(u: int, v: int, p: int) -> int:
    """Unique t mod (p-1)p with t = u mod (p-1) and t = v mod p.

    This is the isomorphism Z_(p-1) x Z_p -> Z_((p-1)p) used to flatten
    (discrete log, value) pairs into a single cyclic group; gcd(p-1, p) = 1
    makes it well defined. Addition is componentwise, so the map is an
    additive homomorphism in both coordinates.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not (0 <= u < p - 1):
        raise RangeError(f"u must lie in [0, {p - 1}), got {u}")
    if not (0 <= v < p):
        raise RangeError(f"v must lie in [0, {p}), got {v}")
    m = (p - 1) * p
    # t = u + (p-1) * k with k chosen so t = v (mod p); p-1 = -1 (mod p).
    k = (u - v) % p
    t = u + (p - 1) * k
    assert 0 <= t < m and t % (p - 1) == u and t % p == v
    return t


def find_decomposition_prime(N: int) -> int:
    """Smallest prime p >= 7 with p = 1 (mod 3) and 4p**2 < N < 5p**2.

    This is the modulus bracket required by the order-3 decomposition
    pipeline over Z_N: the Sidon set construction at p then fits inside an
    interval of length 5p**2 covering every residue of N.
    """
    if N < 2:
        raise RangeError(f"need N >= 2, got {N}")
    # 4p^2 < N < 5p^2  <=>  N/5 < p^2 < N/4, exact integer comparisons below.
    p = max(7, _isqrt_ceil((N + 4) // 5))
    while 4 * p * p < N:
        if 5 * p * p > N and p % 3 == 1 and is_prime(p):
            return p
        p += 1
    raise PrimeNotFound(
        f"no prime p = 1 (mod 3), p >= 7 with 4p^2 < {N} < 5p^2"
    )


def _isqrt_ceil(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else r + 1


@dataclass(frozen=True)
class PrimeField:
    """A prime modulus, validated once at construction."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")


@dataclass(frozen=True)
class GeneratorPair:
    """A prime p together with a primitive root g mod p."""

    p: int
    g: int

    def __post_init__(self):
        if not is_primitive_root(self.g, self.p):
            raise NotGenerator(f"{self.g} does not generate Z_{self.p}^*")
