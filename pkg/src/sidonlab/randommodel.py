"""Random sparse sequences with power-law inclusion, restricted to residues.

The model: x is a candidate only when x > m and x mod N lies in a chosen
residue set S; each candidate joins the sequence independently with
probability x^(-gamma). Draws are counter-based rather than stateful: the
uniform for (seed, x) is the splitmix64 finalizer applied to
seed + x * golden, so membership of x can be decided in isolation, any
subrange can be resampled without replaying a generator, and restricting S
provably filters a fuller sample rather than reshuffling it.

The same rule is implemented twice, as scalar integer arithmetic and as a
vectorized numpy pipeline; tests pin them to each other bit for bit.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .numbertheory import RangeError
from .sidoncore import ModSet

__all__ = [
    "SampleConfig",
    "IntSeq",
    "mix64",
    "uniform_unit",
    "inclusion_probability",
    "contains",
    "sample_sequence",
    "expected_count",
    "count_variance",
]

_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1

GammaLike = Union[Fraction, str, int, tuple]


def _as_fraction(gamma: GammaLike) -> Fraction:
    if isinstance(gamma, Fraction):
        return gamma
    if isinstance(gamma, tuple):
        return Fraction(*gamma)
    return Fraction(gamma)


@dataclass(frozen=True)
class SampleConfig:
    """Full description of one random sequence: model parameters plus seed."""

    gamma: Fraction
    m: int
    modulus: int
    residues: tuple[int, ...]
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gamma", _as_fraction(self.gamma))
        object.__setattr__(self, "residues", tuple(sorted(set(self.residues))))
        if self.gamma <= 0:
            raise RangeError("gamma must be positive")
        if self.m < 0:
            raise RangeError("m must be nonnegative")
        if self.modulus < 1:
            raise RangeError("modulus must be >= 1")
        if not self.residues:
            raise RangeError("residue set must be nonempty")
        if not all(0 <= r < self.modulus for r in self.residues):
            raise RangeError("residues must lie in [0, modulus)")
        if not (0 <= self.seed <= _MASK):
            raise RangeError("seed must fit in 64 bits")

    @classmethod
    def from_modset(cls, modset: ModSet, gamma: GammaLike, m: int,
                    seed: int = 0) -> "SampleConfig":
        return cls(gamma=_as_fraction(gamma), m=m, modulus=modset.modulus,
                   residues=tuple(modset.elements), seed=seed)

    def to_json(self) -> str:
        return json.dumps(
            {
                "gamma": str(self.gamma),
                "m": self.m,
                "modulus": self.modulus,
                "residues": list(self.residues),
                "seed": self.seed,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "SampleConfig":
        blob = json.loads(text)
        return cls(gamma=Fraction(blob["gamma"]), m=blob["m"],
                   modulus=blob["modulus"], residues=tuple(blob["residues"]),
                   seed=blob["seed"])

    def config_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()


def mix64(z: int) -> int:
    """splitmix64 finalizer: a 64-bit bijective scrambler."""
    z &= _MASK
    z ^= z >> 30
    z = (z * _MIX1) & _MASK
    z ^= z >> 27
    z = (z * _MIX2) & _MASK
    z ^= z >> 31
    return z


def uniform_unit(seed: int, x: int) -> float:
    """Deterministic uniform in [0, 1) for the pair (seed, x): top 53 bits
    of the scrambled counter."""
    return (mix64(seed + x * _GOLDEN) >> 11) * 2.0 ** -53


def inclusion_probability(config: SampleConfig, x: int) -> float:
    if x <= config.m or x % config.modulus not in config.residues:
        return 0.0
    return float(x) ** (-float(config.gamma))


def contains(config: SampleConfig, x: int) -> bool:
    """Scalar membership decision; agrees with `sample_sequence` exactly."""
    if x <= config.m or x % config.modulus not in config.residues:
        return False
    return uniform_unit(config.seed, x) < float(x) ** (-float(config.gamma))


def _uniform_array(seed: int, xs: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + xs * np.uint64(_GOLDEN)
        z ^= z >> np.uint64(30)
        z *= np.uint64(_MIX1)
        z ^= z >> np.uint64(27)
        z *= np.uint64(_MIX2)
        z ^= z >> np.uint64(31)
    return (z >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


def _admissible(config: SampleConfig, horizon: int) -> np.ndarray:
    xs = np.arange(1, horizon + 1, dtype=np.uint64)
    mask = xs > np.uint64(config.m)
    res = np.asarray(config.residues, dtype=np.uint64)
    mask &= np.isin(xs % np.uint64(config.modulus), res)
    return xs[mask]


def sample_sequence(config: SampleConfig, horizon: int) -> "IntSeq":
    """All sampled elements in [1, horizon], vectorized."""
    if horizon < 0:
        raise RangeError("horizon must be nonnegative")
    xs = _admissible(config, horizon)
    u = _uniform_array(config.seed, xs)
    thresh = np.power(xs.astype(np.float64), -float(config.gamma))
    keep = xs[u < thresh]
    return IntSeq(elements=tuple(int(v) for v in keep), config=config,
                  horizon=horizon)


def expected_count(config: SampleConfig, horizon: int) -> float:
    """Exact E|A intersect [1, horizon]| = sum of inclusion probabilities."""
    xs = _admissible(config, horizon)
    return float(np.power(xs.astype(np.float64), -float(config.gamma)).sum())


def count_variance(config: SampleConfig, horizon: int) -> float:
    """Sum of q(1-q) over admissible x: exact variance of the count."""
    xs = _admissible(config, horizon)
    q = np.power(xs.astype(np.float64), -float(config.gamma))
    return float((q * (1.0 - q)).sum())


@dataclass(frozen=True)
class IntSeq:
    """A sampled sequence with its provenance, savable as text plus sidecar."""

    elements: tuple[int, ...]
    config: SampleConfig
    horizon: int

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in set(self.elements)

    def as_set(self) -> set[int]:
        return set(self.elements)

    def save(self, path: Union[str, os.PathLike]) -> None:
        """One element per line; config, horizon, and hash in a sidecar."""
        path = os.fspath(path)
        with open(path, "w") as fh:
            fh.write("\n".join(str(x) for x in self.elements))
            if self.elements:
                fh.write("\n")
        sidecar = {
            "config": json.loads(self.config.to_json()),
            "configHash": self.config.config_hash(),
            "horizon": self.horizon,
            "count": len(self.elements),
        }
        with open(path + ".config.json", "w") as fh:
            json.dump(sidecar, fh, sort_keys=True, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path: Union[str, os.PathLike]) -> "IntSeq":
        path = os.fspath(path)
        with open(path) as fh:
            elements = tuple(int(line) for line in fh if line.strip())
        with open(path + ".config.json") as fh:
            sidecar = json.load(fh)
        config = SampleConfig.from_json(json.dumps(sidecar["config"]))
        if config.config_hash() != sidecar["configHash"]:
            raise RangeError("sidecar hash does not match its config")
        return cls(elements=elements, config=config,
                   horizon=sidecar["horizon"])

    def verify(self) -> bool:
        """Resample from the stored config and compare element for element."""
        return sample_sequence(self.config, self.horizon).elements == self.elements
