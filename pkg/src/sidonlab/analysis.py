"""Numeric audit of the weighted representation sums behind the random model.

Two families of finite/infinite sums drive every expectation estimate:

    sigma(n; m) = sum over x, y > m, x + y = n of x^-alpha y^-beta
    tau(n; m)   = sum over x, y > m, x - y = n of x^-alpha y^-beta

sigma is a finite sum; tau is an infinite one and is evaluated with a
certified tail: partial sum to a cutoff plus an integral sandwich whose
width is guaranteed below the requested tolerance. The half-width of the
sandwich is the reported error bound, and the crude closed-form majorant
X^(1-alpha-beta)/(alpha+beta-1) for the discarded tail is reported
alongside the cutoff.

The asymptotic inequalities these sums obey (everything of the shape
f <= C (n+m)^e with an unspecified constant) are operationalized as
bounded-ratio reports: compute f over a grid, normalize by the claimed
power, record the sup, and compare reruns against a pinned constant
stored with the package. The pins are measurements, not theorems.

Expected counts of the triple family used by the deletion audit are
computed exactly, by a quadratic reference loop and by a linear-time
convolution engine (inclusion-exclusion over forbidden congruences),
and the clustering term controlling lower-tail concentration is computed
the same two ways. Monte Carlo shadows of the remaining families reuse
the counter-based sampler, so every table is reproducible from a seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources

import mpmath
import numpy as np

from .deletionlab import FamilySpec, enumerate_family
from .numbertheory import RangeError
from .randommodel import SampleConfig, _as_fraction, sample_sequence

__all__ = [
    "NonConvergent",
    "SumSpec",
    "TauResult",
    "RatioReport",
    "sigma",
    "tau",
    "check_lemma_ab",
    "check_lemma_abab",
    "gamma_from_epsilon",
    "exact_expectation_Q",
    "exact_delta_Q",
    "janson_threshold",
    "monte_carlo_family_mean",
    "load_pins",
    "get_pin",
]


class NonConvergent(ArithmeticError):
    """The requested infinite sum has a divergent tail."""


@dataclass(frozen=True)
class SumSpec:
    """Exponent pair, target, floor, and (for tau) a tail tolerance."""

    alpha: Fraction
    beta: Fraction
    n: int
    m: int = 0
    tail_tolerance: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_fraction(self.alpha))
        object.__setattr__(self, "beta", _as_fraction(self.beta))
        if self.n < 1:
            raise RangeError("n must be positive")
        if self.m < 0:
            raise RangeError("m must be nonnegative")
        if self.tail_tolerance is not None:
            tol = _as_fraction(self.tail_tolerance)
            if tol <= 0:
                raise RangeError("tail tolerance must be positive")
            object.__setattr__(self, "tail_tolerance", tol)


def sigma(spec: SumSpec, *, dps: int | None = None) -> float:
    """Direct evaluation of the finite split sum; 0 on an empty range."""
    a, b, n, m = float(spec.alpha), float(spec.beta), spec.n, spec.m
    lo, hi = m + 1, n - m - 1
    if hi < lo:
        return 0.0
    if dps is None:
        return math.fsum(x ** -a * (n - x) ** -b for x in range(lo, hi + 1))
    with mpmath.workdps(dps):
        am = mpmath.mpf(spec.alpha.numerator) / spec.alpha.denominator
        bm = mpmath.mpf(spec.beta.numerator) / spec.beta.denominator
        total = mpmath.fsum(
            mpmath.power(x, -am) * mpmath.power(n - x, -bm)
            for x in range(lo, hi + 1))
        return float(total)


@dataclass(frozen=True)
class TauResult:
    """Certified evaluation: value, tail half-width, crude majorant, cutoff."""

    value: float
    error_bound: float
    majorant_bound: float
    cutoff: int


def _tau_tail_integral(n: int, a: float, b: float, c: float) -> float:
    # integral over t > c of t^-b (t+n)^-a, via an incomplete Beta form
    s = n / (c + n)
    val = mpmath.betainc(a + b - 1, 1 - b, 0, s)
    return float(n ** (1 - a - b) * val)


def tau(spec: SumSpec, *, dps: int | None = None) -> TauResult:
    """Partial sum plus an integral sandwich for the tail.

    The summand f(y) = (n+y)^-alpha y^-beta is positive, decreasing and
    convex, so the tail beyond a cutoff X sits between the trapezoid
    minorant (integral from X+1, plus half of f(X+1)) and the midpoint
    majorant (integral from X+1/2); both integrals have a closed
    incomplete-Beta form. The sandwich width shrinks like f(X)/X, so the
    cutoff stays small even for tight tolerances.
    """
    a, b = spec.alpha, spec.beta
    if a + b <= 1:
        raise NonConvergent("tail exponent alpha+beta must exceed 1")
    if a >= 1 or b >= 1:
        raise RangeError("exponents must be below 1")
    tol = float(spec.tail_tolerance if spec.tail_tolerance is not None
                else Fraction(1, 10 ** 9))
    af, bf, n, m = float(a), float(b), spec.n, spec.m

    def term(y: float) -> float:
        return (n + y) ** -af * y ** -bf

    cut = max(m + 1, n, 1 << 10)
    lower = upper = 0.0
    for _ in range(200):
        upper = _tau_tail_integral(n, af, bf, cut + 0.5)
        lower = _tau_tail_integral(n, af, bf, cut + 1) + term(cut + 1) / 2
        if max(upper - lower, 0.0) <= tol:
            break
        cut *= 2
    if dps is None:
        ys = np.arange(m + 1, cut + 1, dtype=np.float64)
        partial = float(np.power(ys + n, -af) @ np.power(ys, -bf))
    else:
        with mpmath.workdps(dps):
            am = mpmath.mpf(a.numerator) / a.denominator
            bm = mpmath.mpf(b.numerator) / b.denominator
            partial = float(mpmath.fsum(
                mpmath.power(n + y, -am) * mpmath.power(y, -bm)
                for y in range(m + 1, cut + 1)))
    value = partial + (upper + lower) / 2
    error = max(upper - lower, 0.0) / 2 + 8e-16 * partial
    excess = float(af + bf - 1)
    majorant = cut ** -excess / excess
    return TauResult(value=value, error_bound=error,
                     majorant_bound=majorant, cutoff=cut)


@dataclass(frozen=True)
class RatioReport:
    """Normalized-ratio table with its sup and an optional pinned constant."""

    exponent: float
    rows: tuple[tuple[str, float, float], ...]
    sup_ratio: float
    pinned: float | None = None

    def with_pin(self, pinned: float) -> "RatioReport":
        return replace(self, pinned=float(pinned))

    def holds(self, slack: float = 1.01) -> bool:
        return self.pinned is not None and self.sup_ratio <= self.pinned * slack

    def to_csv(self) -> str:
        lines = ["target,value,normalized"]
        lines += [f"{label},{value!r},{norm!r}" for label, value, norm in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "exponent": self.exponent,
                "rows": [list(r) for r in self.rows],
                "supRatio": self.sup_ratio,
                "pinned": self.pinned,
            },
            sort_keys=True,
        )


def check_lemma_ab(alpha, beta, grid, *,
                   tail_tolerance=Fraction(1, 10 ** 6)) -> RatioReport:
    """Normalize sigma and tau by (n+m)^(alpha+beta-1) over the grid.

    Both sums are claimed O((n+m)^(1-alpha-beta)); the report's sup is the
    largest normalized value seen, to be pinned and monitored.
    """
    a, b = _as_fraction(alpha), _as_fraction(beta)
    if a >= 1 or b >= 1:
        raise RangeError("exponents must be below 1")
    if a + b <= 1:
        raise NonConvergent("hypotheses need alpha+beta > 1")
    excess = float(a + b - 1)
    rows = []
    for n, m in grid:
        norm = float(n + m) ** excess
        s = sigma(SumSpec(a, b, n, m))
        t = tau(SumSpec(a, b, n, m, tail_tolerance))
        rows.append((f"sigma n={n} m={m}", s, s * norm))
        rows.append((f"tau n={n} m={m}", t.value, t.value * norm))
    if not rows:
        raise RangeError("grid must be nonempty")
    return RatioReport(exponent=-excess, rows=tuple(rows),
                       sup_ratio=max(r[2] for r in rows))


def _abab_series(g: float, a: int, b: int, tol: float) -> float:
    # The summand is x^(1-4g) h(x) with h(x) = (1+a/x)^-g (1+b/x)^(1-2g);
    # h increases to 1, so the tail beyond X lies between h(X+1) J and J,
    # where J = sum over x > X of x^(1-4g) is a Hurwitz zeta value.
    s = 4 * g - 1
    cut = max(a, b, 1 << 10)
    envelope = gap = 0.0
    for _ in range(200):
        envelope = float(mpmath.zeta(s, cut + 1))
        floor_ratio = ((1 + a / (cut + 1)) ** -g
                       * (1 + b / (cut + 1)) ** (1 - 2 * g))
        gap = (1 - floor_ratio) * envelope
        if gap <= tol:
            break
        cut *= 2
    xs = np.arange(1, cut + 1, dtype=np.float64)
    partial = float(np.power(xs, -g)
                    @ (np.power(xs + a, -g) * np.power(xs + b, 1 - 2 * g)))
    return partial + envelope - gap / 2


def check_lemma_abab(gamma, pairs, *,
                     tail_tolerance=Fraction(1, 10 ** 6)) -> RatioReport:
    """Ratio of the three-factor series against (ab)^(1-2 gamma).

    The series is not symmetric in (a, b), so the report records both
    orientations of every pair.
    """
    g = _as_fraction(gamma)
    if g >= 1:
        raise RangeError("gamma must be below 1")
    if 4 * g - 1 <= 1:
        raise NonConvergent("series needs gamma > 1/2")
    gf = float(g)
    tol = float(_as_fraction(tail_tolerance))
    rows, seen = [], set()
    for a, b in pairs:
        for u, v in ((int(a), int(b)), (int(b), int(a))):
            if u < 1 or v < 1:
                raise RangeError("pair entries must be positive")
            if (u, v) in seen:
                continue
            seen.add((u, v))
            val = _abab_series(gf, u, v, tol)
            rows.append((f"a={u} b={v}", val, val * (u * v) ** (2 * gf - 1)))
    if not rows:
        raise RangeError("pairs must be nonempty")
    return RatioReport(exponent=float(1 - 2 * g), rows=tuple(rows),
                       sup_ratio=max(r[2] for r in rows))


def gamma_from_epsilon(epsilon) -> Fraction:
    """Model exponent used for the short-element splits: 2/3 + e/(9+9e)."""
    eps = _as_fraction(epsilon)
    if not 0 < eps < 1:
        raise RangeError("epsilon must lie in (0, 1)")
    return Fraction(2, 3) + eps / (9 * (1 + eps))


# --- exact expectation and clustering term for the triple family ---------


def _prob_array(cfg: SampleConfig, top: int) -> np.ndarray:
    """q[x] = inclusion probability for x in [0, top]."""
    xs = np.arange(top + 1, dtype=np.int64)
    mask = xs > cfg.m
    mask &= np.isin(xs % cfg.modulus, np.asarray(cfg.residues, dtype=np.int64))
    q = np.zeros(top + 1)
    idx = np.nonzero(mask)[0]
    q[idx] = np.power(idx.astype(np.float64), -float(cfg.gamma))
    return q


def _linconv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    nout = len(a) + len(b) - 1
    if nout <= 0:
        return np.zeros(0)
    if nout < 256:
        return np.convolve(a, b)
    size = 1 << (nout - 1).bit_length()
    return np.fft.irfft(np.fft.rfft(a, size) * np.fft.rfft(b, size),
                        size)[:nout]


def _pair_sum_arrays(q: np.ndarray, modulus: int, top: int):
    """C2[u] = unrestricted pair weight at sum u; G2[u] = congruent-pair
    weight (x equal to y mod modulus), both truncated to u <= top."""
    c2 = _linconv(q, q)[:top + 1]
    g2 = np.zeros(top + 1)
    if modulus == 1:
        even = np.arange(0, top + 1, 2)
        g2[even] = q[even // 2] ** 2
    else:
        for s in range(modulus):
            qs = q[s::modulus]
            if not qs.any():
                continue
            conv = _linconv(qs, qs)
            jmax = (top - 2 * s) // modulus
            if jmax >= 0:
                sl = min(jmax + 1, len(conv))
                g2[2 * s + modulus * np.arange(sl)] += conv[:sl]
    return c2, g2


def exact_expectation_Q(n: int, cfg: SampleConfig,
                        engine: str = "auto") -> float:
    """Expected number of admissible triples x1+x2+x3 = n, pairwise
    incongruent mod the config modulus (pairwise distinct when it is 1),
    counted unordered. Exact inclusion-exclusion; no sampling."""
    if engine == "auto":
        engine = "loop" if n <= 4096 else "transform"
    if engine not in ("loop", "transform"):
        raise RangeError("engine must be auto, loop, or transform")
    if n <= 3 * cfg.m or n < 6:
        return 0.0
    q = _prob_array(cfg, n)
    if engine == "loop":
        return _expectation_loop(n, cfg.modulus, q)
    return _expectation_transform(n, cfg.modulus, q)


def _expectation_loop(n: int, modulus: int, q: np.ndarray) -> float:
    res = np.arange(n + 1, dtype=np.int64) % modulus
    parts = []
    for x1 in range(1, n - 1):
        if q[x1] == 0.0:
            continue
        u = n - x1
        if u < 2:
            continue
        prod = q[1:u] * q[u - 1:0:-1]
        if modulus > 1:
            r2, r3, r1 = res[1:u], res[u - 1:0:-1], res[x1]
            mask = (r2 != r3) & (r2 != r1) & (r3 != r1)
        else:
            x2 = np.arange(1, u)
            x3 = u - x2
            mask = (x2 != x3) & (x2 != x1) & (x3 != x1)
        parts.append(q[x1] * float(prod @ mask))
    return math.fsum(parts) / 6.0


def _expectation_transform(n: int, modulus: int, q: np.ndarray) -> float:
    c2, g2 = _pair_sum_arrays(q, modulus, n)
    qrev = q[::-1]
    total = float(c2 @ qrev)        # ordered triples, no constraint
    paired = float(g2 @ qrev)       # one congruent pair fixed
    triple = 0.0                    # all three congruent
    if modulus == 1:
        if n % 3 == 0:
            triple = float(q[n // 3] ** 3)
    else:
        for s in range(modulus):
            if (n - 3 * s) % modulus:
                continue
            qs = q[s::modulus]
            if not qs.any():
                continue
            j3 = (n - 3 * s) // modulus
            conv = _linconv(_linconv(qs, qs), qs)
            if 0 <= j3 < len(conv):
                triple += float(conv[j3])
    return (total - 3 * paired + 2 * triple) / 6.0


def exact_delta_Q(n: int, cfg: SampleConfig, engine: str = "auto") -> float:
    """Clustering term for the triple family: sum over ordered pairs of
    distinct intersecting triples of the probability that their union is
    sampled. Two distinct triples with one total share exactly one
    element, so the sum splits over the shared element."""
    if engine == "auto":
        engine = "loop" if n <= 4096 else "transform"
    if engine not in ("loop", "transform"):
        raise RangeError("engine must be auto, loop, or transform")
    if n <= 3 * cfg.m or n < 6:
        return 0.0
    q = _prob_array(cfg, n)
    if engine == "loop":
        return _delta_loop(n, cfg.modulus, q)
    return _delta_transform(n, cfg.modulus, q)


def _delta_loop(n: int, modulus: int, q: np.ndarray) -> float:
    res = np.arange(n + 1, dtype=np.int64) % modulus
    parts = []
    for x1 in range(1, n - 1):
        if q[x1] == 0.0:
            continue
        u = n - x1
        if u < 3:
            continue
        prod = q[1:u] * q[u - 1:0:-1]
        if modulus > 1:
            r2, r3, r1 = res[1:u], res[u - 1:0:-1], res[x1]
            mask = (r2 != r3) & (r2 != r1) & (r3 != r1)
        else:
            x2 = np.arange(1, u)
            x3 = u - x2
            mask = (x2 != x3) & (x2 != x1) & (x3 != x1)
        kept = prod[mask]
        pair_sum = float(kept.sum()) / 2.0
        pair_sq = float((kept ** 2).sum()) / 2.0
        parts.append(q[x1] * (pair_sum ** 2 - pair_sq))
    return math.fsum(parts)


def _delta_inner_transform(n: int, modulus: int, q: np.ndarray):
    """For every x1, the ordered weight of pairs (x2, x3), x2+x3 = n-x1,
    with the triple pairwise incongruent: C2 - G2 - 2H + 2K at u = n-x1,
    where H fixes x2 in x1's class and K fixes both."""
    top = n
    c2, g2 = _pair_sum_arrays(q, modulus, top)
    x1s = np.arange(1, n - 2 + 1)
    us = n - x1s
    ordered = np.zeros(len(x1s))
    if modulus == 1:
        free = c2[us]
        eq23 = np.where(us % 2 == 0, q[us // 2] ** 2, 0.0)
        idx3 = us - x1s
        eq12 = np.where((idx3 >= 0) & (idx3 <= top),
                        q[x1s] * q[np.clip(idx3, 0, top)], 0.0)
        eq_all = np.where(us == 2 * x1s, q[x1s] ** 2, 0.0)
        ordered = free - eq23 - 2 * eq12 + 2 * eq_all
        return x1s, ordered
    class_arrays = [q[s::modulus] for s in range(modulus)]
    for s in range(modulus):
        sel = np.nonzero(x1s % modulus == s)[0]
        if not len(sel):
            continue
        qs = class_arrays[s]
        c = (n - 2 * s) % modulus
        conv_sc = _linconv(qs, class_arrays[c])
        uu = us[sel]
        hidx = (uu - s - c) // modulus
        h = np.zeros(len(sel))
        ok = (hidx >= 0) & (hidx < len(conv_sc))
        h[ok] = conv_sc[hidx[ok]]
        k = np.zeros(len(sel))
        if (n - 3 * s) % modulus == 0:
            conv_ss = _linconv(qs, qs)
            kidx = (uu - 2 * s) // modulus
            ok = (kidx >= 0) & (kidx < len(conv_ss))
            k[ok] = conv_ss[kidx[ok]]
        ordered[sel] = c2[uu] - g2[uu] - 2 * h + 2 * k
    return x1s, ordered


def _delta_transform(n: int, modulus: int, q: np.ndarray) -> float:
    x1s, ordered = _delta_inner_transform(n, modulus, q)
    _, ordered_sq = _delta_inner_transform(n, modulus, q ** 2)
    pair_sum = ordered / 2.0
    pair_sq = ordered_sq / 2.0
    contrib = q[x1s] * (pair_sum ** 2 - pair_sq)
    return math.fsum(contrib.tolist())


def janson_threshold(cfg: SampleConfig, targets, engine: str = "auto"):
    """Rows (n, mean, clustering, mean > clustering) over the targets, and
    the smallest target from which the comparison holds onward (None if
    it fails at the last target)."""
    rows = []
    for n in targets:
        mu = exact_expectation_Q(n, cfg, engine)
        delta = exact_delta_Q(n, cfg, engine)
        rows.append((int(n), mu, delta, delta < mu))
    threshold = None
    for n, _, _, ok in reversed(rows):
        if not ok:
            break
        threshold = n
    return threshold, tuple(rows)


_FAMILY_USES_MODULUS = frozenset({"Q", "T", "B"})


def monte_carlo_family_mean(kind, targets, cfg: SampleConfig, horizon: int,
                            trials: int = 50, master_seed: int | None = None,
                            epsilon=None):
    """Sample-mean table (target, mean, stderr) of family sizes across
    trial seeds derived from the master seed by unit offsets."""
    if trials < 2:
        raise RangeError("trials must be at least 2")
    kind = str(kind).upper()
    modulus = cfg.modulus if kind in _FAMILY_USES_MODULUS else 1
    base = cfg.seed if master_seed is None else int(master_seed)
    targets = [int(t) for t in targets]
    counts = np.zeros((trials, len(targets)))
    for i in range(trials):
        conf = replace(cfg, seed=(base + i) % 2 ** 64)
        sample = sample_sequence(conf, horizon)
        for j, target in enumerate(targets):
            spec = FamilySpec(kind=kind, target=target, modulus=modulus,
                              epsilon=epsilon)
            counts[i, j] = len(enumerate_family(sample, spec).members)
    means = counts.mean(axis=0)
    errs = counts.std(axis=0, ddof=1) / math.sqrt(trials)
    return tuple((t, float(mu), float(se))
                 for t, mu, se in zip(targets, means, errs))


def load_pins() -> dict:
    """Regression constants measured at first run and shipped with the
    package; see scripts/refresh_pins.py."""
    text = resources.files("sidonlab").joinpath("pins.json").read_text()
    return json.loads(text)


def get_pin(name: str) -> float:
    pins = load_pins()
    if name not in pins:
        raise KeyError(f"no pinned constant named {name!r}")
    return float(pins[name])
