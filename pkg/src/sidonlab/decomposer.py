"""Write residues as sums of 3 (or 4) Sidon set elements, with certificates.

Two pipelines:

* In the Ruzsa group Z_{p-1} x Z_p, a target (a, b) is decomposed into three
  set elements by enumerating exponents (x1, x2) and solving for x3; the
  curve identity in `curveoracle` guarantees roughly p solutions per target,
  at most 9 of which repeat a coordinate. A 4-term variant fixes the fourth
  part at (0, 1) and decomposes the shifted target.

* Over Z_N with 4p^2 < N < 5p^2, p = 1 (mod 3), a target n is lifted to an
  integer r1 + r2 * 2p with K <= r1, r2 <= (5p-1)/2 + K, K = ceil(p/4);
  quadric solutions mod p are then screened against the two exact integer
  identities x1+x2+x3 = r1 and (x1^2)_p + (x2^2)_p + (x3^2)_p = r2, which
  turn a mod-p solution into three genuine Erdos-Turan elements summing to
  the lift. Box mode additionally requires the solution's torus point to lie
  in a small cube around (r1/3p, r1/3p, r2/3p, r2/3p), which at desk scale
  almost never happens; exhaustive mode searches every quadric point.

Every returned decomposition carries enough data to replay the defining
identities exactly; `Decomposition.replay()` does so.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .numbertheory import (
    NotGenerator,
    NotPrime,
    RangeError,
    crt_flatten,
    find_decomposition_prime,
    is_prime,
    is_primitive_root,
    primitive_root,
)
from .curveoracle import QuadricParams, enumerate_quadric
from .sidoncore import erdos_turan_set, ruzsa_set

__all__ = [
    "NoRepresentation",
    "LiftTarget",
    "Decomposition",
    "decompose3_ruzsa",
    "decompose4_ruzsa",
    "lift_to_interval",
    "decompose3_zn",
]


class NoRepresentation(LookupError):
    """No decomposition exists (or was found) for the requested target."""


@dataclass(frozen=True)
class LiftTarget:
    """Integer lift r1 + r2 * 2p of n mod N, with both digits in [K, U]."""

    n: int
    N: int
    p: int
    K: int
    U: int
    r1: int
    r2: int

    def __post_init__(self):
        if not (self.K <= self.r1 <= self.U and self.K <= self.r2 <= self.U):
            raise RangeError("lift digits outside [K, U]")
        if (self.r1 + 2 * self.p * self.r2) % self.N != self.n % self.N:
            raise RangeError("lift does not reduce to the target")

    @property
    def value(self) -> int:
        return self.r1 + 2 * self.p * self.r2


@dataclass
class Decomposition:
    """Parts of a target as elements of a named Sidon construction."""

    target: object  # residue n, or [a, b] pair for the Ruzsa group
    modulus: object  # N, or [p-1, p]
    parts: list[int]
    construction: str  # "erdos_turan" or "ruzsa"
    p: int
    mode: Optional[str] = None  # "box" or "exhaustive" for Z_N targets
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "target": self.target,
                "modulus": self.modulus,
                "parts": self.parts,
                "construction": self.construction,
                "p": self.p,
                "mode": self.mode,
                "certificate": self.certificate,
            },
            sort_keys=True,
        )

    def replay(self) -> bool:
        """Re-verify every defining identity with exact integer arithmetic."""
        p = self.p
        if self.construction == "ruzsa":
            a, b = self.target
            g = self.certificate.get("g")
            elems = set(ruzsa_set(p, g).elements)
            if any(part not in elems for part in self.parts):
                return False
            return sum(self.parts) % ((p - 1) * p) == crt_flatten(a, b, p)
        if self.construction == "erdos_turan":
            n, N = self.target, self.modulus
            elems = set(erdos_turan_set(p).elements)
            if any(part not in elems for part in self.parts):
                return False
            r1, r2 = self.certificate["r1"], self.certificate["r2"]
            xs = self.certificate["xs"]
            if [x + (x * x % p) * 2 * p for x in xs] != self.parts:
                return False
            if sum(xs) != r1 or sum((x * x) % p for x in xs) != r2:
                return False
            return sum(self.parts) % N == n % N
        return False


def _log_power_tables(p: int, g: int):
    if not is_primitive_root(g, p):
        raise NotGenerator(f"{g} does not generate Z_{p}^*")
    pw = [1] * (p - 1)
    for x in range(1, p - 1):
        pw[x] = pw[x - 1] * g % p
    return pw


def decompose3_ruzsa(p: int, a: int, b: int, g: Optional[int] = None,
                     require_distinct: bool = False) -> Decomposition:
    """First (x1, x2) in lexicographic order with x3 = a - x1 - x2 mod p-1
    and g^x1 + g^x2 + g^x3 = b mod p; parts are the flattened set elements."""
    if p == 2 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if g is None:
        g = primitive_root(p)
    if not (0 <= a < p - 1 and 0 <= b < p):
        raise RangeError("target (a, b) out of range")
    pw = _log_power_tables(p, g)
    for x1 in range(p - 1):
        for x2 in range(p - 1):
            x3 = (a - x1 - x2) % (p - 1)
            if (pw[x1] + pw[x2] + pw[x3]) % p != b:
                continue
            if require_distinct and (x1 == x2 or x1 == x3 or x2 == x3):
                continue
            logs = [x1, x2, x3]
            parts = [crt_flatten(x, pw[x], p) for x in logs]
            return Decomposition(
                target=[a, b],
                modulus=[p - 1, p],
                parts=parts,
                construction="ruzsa",
                p=p,
                certificate={"g": g, "logs": logs,
                             "powers": [pw[x] for x in logs]},
            )
    raise NoRepresentation(f"no 3-term representation of ({a}, {b}) mod ({p - 1}, {p})")


def decompose4_ruzsa(p: int, a: int, b: int, g: Optional[int] = None) -> Decomposition:
    """Four pairwise-distinct parts for (a, b): fix the part (0, 1), then
    write the shifted target (a, b-1) as three distinct parts avoiding
    exponent 0. Falls back to an exhaustive distinct 4-tuple search."""
    if p == 2 or not is_prime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if g is None:
        g = primitive_root(p)
    if not (0 <= a < p - 1 and 0 <= b < p):
        raise RangeError("target (a, b) out of range")
    pw = _log_power_tables(p, g)
    fixed = crt_flatten(0, 1, p)
    bb = (b - 1) % p
    for x1 in range(1, p - 1):
        for x2 in range(1, p - 1):
            x3 = (a - x1 - x2) % (p - 1)
            if x3 == 0 or (pw[x1] + pw[x2] + pw[x3]) % p != bb:
                continue
            if x1 == x2 or x1 == x3 or x2 == x3:
                continue
            logs = [x1, x2, x3]
            parts = [crt_flatten(x, pw[x], p) for x in logs] + [fixed]
            return Decomposition(
                target=[a, b],
                modulus=[p - 1, p],
                parts=parts,
                construction="ruzsa",
                p=p,
                certificate={"g": g, "logs": logs, "fixed_part": [0, 1],
                             "shifted_target": [a, bb]},
            )
    # exhaustive pairwise-distinct 4-tuple search
    for x1 in range(p - 1):
        for x2 in range(x1 + 1, p - 1):
            for x3 in range(x2 + 1, p - 1):
                x4 = (a - x1 - x2 - x3) % (p - 1)
                if x4 in (x1, x2, x3):
                    continue
                if (pw[x1] + pw[x2] + pw[x3] + pw[x4]) % p != b:
                    continue
                logs = [x1, x2, x3, x4]
                parts = [crt_flatten(x, pw[x], p) for x in logs]
                return Decomposition(
                    target=[a, b],
                    modulus=[p - 1, p],
                    parts=parts,
                    construction="ruzsa",
                    p=p,
                    certificate={"g": g, "logs": logs},
                )
    raise NoRepresentation(
        f"no 4-term pairwise-distinct representation of ({a}, {b})"
    )


def lift_to_interval(n: int, N: int, p: Optional[int] = None) -> LiftTarget:
    """Deterministic lift of n mod N to r1 + r2 * 2p with digits in [K, U].

    K = ceil(p/4), U = (5p-1)/2 + K. The representable integers cover the
    interval [K(2p+1), U(2p+1)], whose length exceeds 5p^2 > N, so the lift
    is total: take the smallest representable integer congruent to n, then
    the smallest valid row index r2.
    """
    if p is None:
        p = find_decomposition_prime(N)
    else:
        if not is_prime(p) or p % 3 != 1 or p < 7:
            raise RangeError(f"p must be a prime >= 7 with p = 1 mod 3, got {p}")
        if not (4 * p * p < N < 5 * p * p):
            raise RangeError(f"need 4p^2 < N < 5p^2, got p={p}, N={N}")
    K = -(-p // 4)
    U = (5 * p - 1) // 2 + K
    lo = K * (2 * p + 1)
    M = lo + ((n - lo) % N)
    r2 = max(K, -((U - M) // (2 * p)))  # smallest r2 with r1 = M - 2p r2 <= U
    r1 = M - 2 * p * r2
    return LiftTarget(n=n % N, N=N, p=p, K=K, U=U, r1=r1, r2=r2)


def decompose3_zn(n: int, N: int, mode: str = "exhaustive") -> Decomposition:
    """Write n mod N as a sum of three Erdos-Turan elements via the quadric.

    Lift n, enumerate the quadric at (r1 mod p, r2 mod p), fill in x3 from
    the linear relation, and accept only solutions passing both exact
    integer identities. mode="box" additionally requires every torus
    coordinate within K/(12p) of the box center. The first accepting
    (x1, x2) in lexicographic order wins.
    """
    if mode not in ("box", "exhaustive"):
        raise RangeError(f"unknown mode {mode!r}")
    p = find_decomposition_prime(N)
    lift = lift_to_interval(n, N, p)
    r1, r2, K = lift.r1, lift.r2, lift.K
    q = QuadricParams(p, r1 % p, r2 % p)
    for x1, x2 in enumerate_quadric(q):
        x3 = (r1 - x1 - x2) % p
        if mode == "box":
            # |x_i/p - r1/(3p)| <= K/(12p)  <=>  |12 x_i - 4 r1| <= K, and
            # likewise |12 (x_i^2)_p - 4 r2| <= K on the square coordinates.
            coords = [x1, x2, x3]
            sq = [(x * x) % p for x in coords]
            if any(abs(12 * c - 4 * r1) > K for c in coords):
                continue
            if any(abs(12 * s - 4 * r2) > K for s in sq):
                continue
        if x1 + x2 + x3 != r1:
            continue
        if (x1 * x1) % p + (x2 * x2) % p + (x3 * x3) % p != r2:
            continue
        xs = [x1, x2, x3]
        parts = [x + (x * x % p) * 2 * p for x in xs]
        return Decomposition(
            target=n % N,
            modulus=N,
            parts=parts,
            construction="erdos_turan",
            p=p,
            mode=mode,
            certificate={"r1": r1, "r2": r2, "K": K, "xs": xs,
                         "lift_value": lift.value},
        )
    raise NoRepresentation(
        f"no {mode} decomposition of {n} mod {N}: lift (r1={r1}, r2={r2}) failed"
    )
