"""Exact point counts linking 3-term representations to a plane curve mod p.

For a primitive root g mod p and a target (a, b), the ordered solutions of

    x1 + x2 + x3 = a  (mod p-1),   g^x1 + g^x2 + g^x3 = b  (mod p)

are in bijection with the points (U, V), V != 0, of the curve

    U^2 = 4 V^3 + (b V + lam)^2   (mod p),   lam = g^a,

so their number is p + O(sqrt(p)). Solutions with a repeated coordinate
reduce to a cubic and number at most 9 per target, which keeps
pairwise-distinct representations plentiful for every target once p is
moderately large.

The module also enumerates the quadric x1^2 + x2^2 + (x1 + x2 - r1)^2 = r2
used by the integer decomposition pipeline, maps its solutions to the unit
4-torus, and measures dyadic box coverage of the resulting cloud.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

from .numbertheory import NotGenerator, NotPrime, RangeError, is_prime, is_primitive_root

__all__ = [
    "CurveParams",
    "QuadricParams",
    "QuadricSolutions",
    "TorusCloud",
    "curve_point_count",
    "triple_rep_count",
    "triple_rep_table",
    "repeated_coordinate_count",
    "special_rep4_count",
    "hasse_gap",
    "hasse_slack",
    "enumerate_quadric",
    "torus_points",
    "dyadic_box_coverage",
]


@dataclass(frozen=True)
class CurveParams:
    """Parameters (p, b, lam) of U^2 = 4V^3 + (bV + lam)^2 over F_p, lam != 0."""

    p: int
    b: int
    lam: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 3:
            raise NotPrime(f"{self.p} is not an odd prime")
        if not (0 <= self.b < self.p):
            raise RangeError(f"b must lie in [0, p), got {self.b}")
        if not (1 <= self.lam < self.p):
            raise RangeError(f"lam must lie in [1, p), got {self.lam}")


@dataclass(frozen=True)
class QuadricParams:
    """Parameters (p, r1, r2) of x1^2 + x2^2 + (x1 + x2 - r1)^2 = r2 over F_p.

    The quadric splits into two lines exactly when 6 r2 = 2 r1^2 (mod p) and
    p = 1 (mod 3) (a primitive cube root of unity is needed); the
    `reducible` / `splits_into_lines` flags report this.
    """

    p: int
    r1: int
    r2: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 3:
            raise NotPrime(f"{self.p} is not an odd prime")
        if not (0 <= self.r1 < self.p and 0 <= self.r2 < self.p):
            raise RangeError("r1, r2 must lie in [0, p)")

    @property
    def degenerate_rhs(self) -> bool:
        return (6 * self.r2 - 2 * self.r1 * self.r1) % self.p == 0

    @property
    def splits_into_lines(self) -> bool:
        return self.degenerate_rhs and self.p % 3 == 1


class QuadricSolutions(list):
    """List of (x1, x2) quadric points plus reducibility metadata."""

    def __init__(self, points, params: QuadricParams):
        super().__init__(points)
        self.params = params
        self.reducible = params.splits_into_lines


def _qr_set(p: int) -> frozenset:
    return frozenset((x * x) % p for x in range((p // 2) + 1))


def curve_point_count(params: CurveParams) -> int:
    """Number of (U, V) with V != 0 and U^2 = 4V^3 + (bV + lam)^2 mod p."""
    p, b, lam = params.p, params.b, params.lam
    qr = _qr_set(p)
    count = 0
    for v in range(1, p):
        rhs = (4 * v * v * v + (b * v + lam) ** 2) % p
        if rhs == 0:
            count += 1
        elif rhs in qr:
            count += 2
    return count


def _power_table(p: int, g: int) -> list[int]:
    if not is_primitive_root(g, p):
        raise NotGenerator(f"{g} does not generate Z_{p}^*")
    table = [1] * (p - 1)
    for x in range(1, p - 1):
        table[x] = table[x - 1] * g % p
    return table


def triple_rep_count(p: int, g: int, a: int, b: int,
                     distinct: str = "none") -> int:
    """Ordered triples (x1, x2, x3) in [0, p-1)^3 with exponent sum a mod p-1
    and power sum b mod p. distinct="pairwise" requires x1, x2, x3 pairwise
    different."""
    if not (0 <= a < p - 1 and 0 <= b < p):
        raise RangeError("target (a, b) out of range")
    pw = _power_table(p, g)
    count = 0
    for x1 in range(p - 1):
        for x2 in range(p - 1):
            x3 = (a - x1 - x2) % (p - 1)
            if (pw[x1] + pw[x2] + pw[x3]) % p != b:
                continue
            if distinct == "pairwise" and (x1 == x2 or x1 == x3 or x2 == x3):
                continue
            count += 1
    return count


def triple_rep_table(p: int, g: int, distinct: str = "none") -> dict:
    """Counts for every target (a, b) in one sweep over all triples."""
    pw = _power_table(p, g)
    table: dict[tuple[int, int], int] = {}
    for x1 in range(p - 1):
        for x2 in range(p - 1):
            s12 = x1 + x2
            p12 = pw[x1] + pw[x2]
            for x3 in range(p - 1):
                if distinct == "pairwise" and (x1 == x2 or x1 == x3 or x2 == x3):
                    continue
                key = ((s12 + x3) % (p - 1), (p12 + pw[x3]) % p)
                table[key] = table.get(key, 0) + 1
    return table


def repeated_coordinate_count(p: int, g: int, a: int, b: int) -> int:
    """Ordered solutions with x_i = x_j for some i != j; at most 9 per target."""
    pw = _power_table(p, g)
    count = 0
    for x1 in range(p - 1):
        for x2 in range(p - 1):
            x3 = (a - x1 - x2) % (p - 1)
            if (pw[x1] + pw[x2] + pw[x3]) % p != b:
                continue
            if x1 == x2 or x1 == x3 or x2 == x3:
                count += 1
    return count


def special_rep4_count(p: int, g: int, a: int, b: int) -> int:
    """Pairwise-distinct triples hitting the shifted target (a, b-1) that use
    the exponent 0; these are the only 4-term decompositions through the
    fixed fourth part (0, 1) that break full distinctness. At most 6 per
    target: fixing x3 = 0 forces X + Y = b - 1, XY = g^a, a quadratic."""
    pw = _power_table(p, g)
    bb = (b - 1) % p
    count = 0
    for x1 in range(p - 1):
        for x2 in range(p - 1):
            x3 = (a - x1 - x2) % (p - 1)
            if (pw[x1] + pw[x2] + pw[x3]) % p != bb:
                continue
            if x1 == x2 or x1 == x3 or x2 == x3:
                continue
            if x1 == 0 or x2 == 0 or x3 == 0:
                count += 1
    return count


def hasse_gap(params: CurveParams) -> int:
    """curve_point_count - p; small by the Hasse bound."""
    return curve_point_count(params) - params.p


def hasse_slack(p: int) -> int:
    """Testing tolerance for |hasse_gap|: 2*ceil(sqrt(p)) + 4."""
    r = isqrt(p)
    if r * r != p:
        r += 1
    return 2 * r + 4


def enumerate_quadric(params: QuadricParams) -> QuadricSolutions:
    """All (x1, x2) in [0,p)^2 with x1^2 + x2^2 + (x1+x2-r1)^2 = r2 mod p.

    Solutions come out in lexicographic order; the set is symmetric under
    swapping x1 and x2.
    """
    p, r1, r2 = params.p, params.r1, params.r2
    points = []
    sq = [(x * x) % p for x in range(p)]
    for x1 in range(p):
        base = sq[x1]
        for x2 in range(p):
            t = (x1 + x2 - r1) % p
            if (base + sq[x2] + sq[t]) % p == r2 % p:
                points.append((x1, x2))
    return QuadricSolutions(points, params)


@dataclass(frozen=True)
class TorusCloud:
    """Quadric solutions mapped to exact rational points of [0,1)^4.

    Each solution (x1, x2) maps to
    (x1/p, x2/p, (x1^2 mod p)/p, (x2^2 mod p)/p).
    """

    params: QuadricParams
    points: tuple[tuple[Fraction, Fraction, Fraction, Fraction], ...]

    def to_csv(self) -> str:
        meta = {
            "p": self.params.p,
            "r1": self.params.r1,
            "r2": self.params.r2,
            "splits_into_lines": self.params.splits_into_lines,
            "count": len(self.points),
        }
        lines = ["# " + json.dumps(meta, sort_keys=True)]
        lines.append(
            "x1_num,x1_den,x2_num,x2_den,x1sq_num,x1sq_den,x2sq_num,x2sq_den"
        )
        for pt in self.points:
            cells = []
            for c in pt:
                cells += [str(c.numerator), str(c.denominator)]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def torus_points(params: QuadricParams) -> TorusCloud:
    """Map every quadric solution to the unit 4-torus with exact fractions."""
    p = params.p
    pts = []
    for x1, x2 in enumerate_quadric(params):
        pts.append(
            (
                Fraction(x1, p),
                Fraction(x2, p),
                Fraction((x1 * x1) % p, p),
                Fraction((x2 * x2) % p, p),
            )
        )
    return TorusCloud(params=params, points=tuple(pts))


def dyadic_box_coverage(cloud: TorusCloud, k: int) -> tuple[int, int]:
    """(empty, total) count of dyadic boxes of side 2^-k in [0,1)^4.

    A box is the product of four dyadic intervals; a point lands in the box
    whose index is floor(coord * 2^k) on each axis (exact rational floor).
    """
    if k < 0:
        raise RangeError(f"need k >= 0, got {k}")
    scale = 1 << k
    total = scale**4
    occupied = set()
    for pt in cloud.points:
        occupied.add(tuple((c.numerator * scale) // c.denominator for c in pt))
    return (total - len(occupied), total)
