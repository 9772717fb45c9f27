"""Information accounting for object encodings, and rank statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cluster import Dendrogram
from .errors import InputError, LengthMismatch, NonRankInput, NotAPermutation
from .serialize import dumps
from .wavelet import DendroWavelet, HaarScheme, chain_stats


@dataclass(frozen=True)
class Encoding:
    """Base for encoding descriptors; all parameters must be >= 1."""

    def __post_init__(self):
        for name, value in vars(self).items():
            if value is None:
                continue
            if value < 1:
                raise InputError(f"{type(self).__name__}.{name} must be >= 1, got {value}")

    def bits(self) -> float:
        raise NotImplementedError

    @property
    def kind(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class BagOfWords(Encoding):
    m: int

    def bits(self):
        return float(self.m)


@dataclass(frozen=True)
class BooleanPositional(Encoding):
    L: int
    m: int

    def bits(self):
        return float(self.L * self.m)


@dataclass(frozen=True)
class RankSequence(Encoding):
    """``L`` symbols over ranks ``1..R``.

    Each symbol costs ``bits_per_symbol`` bits, which defaults to
    ``log2(R)``, the uniform value.
    """

    L: int
    R: int
    bits_per_symbol: float | None = field(default=None, compare=False)

    def bits(self):
        c = math.log2(self.R) if self.bits_per_symbol is None else self.bits_per_symbol
        return self.L * c


@dataclass(frozen=True)
class DiscretizedReal(Encoding):
    P: int
    m: int

    def bits(self):
        return float(self.P * self.m)


@dataclass(frozen=True)
class Hierarchical(Encoding):
    n: int

    def bits(self):
        return math.log2(self.n)


def shannon_bits(e: Encoding) -> float:
    """Bits needed to single out one object under encoding ``e`` when all
    objects are equally likely."""
    return e.bits()


def generation_cost(dend: Dendrogram, leaf: int) -> int:
    """Steps to regenerate a leaf from the root smooth: its chain length."""
    return dend.depth(leaf)


def _check_permutation(r, name="ranking"):
    r = np.asarray(r)
    n = r.size
    if r.ndim != 1 or not np.array_equal(np.sort(r), np.arange(1, n + 1)):
        raise NotAPermutation(f"{name} is not a permutation of 1..{n}")
    return r.astype(np.int64)


def spearman_rho(r, r2) -> float:
    """Spearman's rho for two untied rankings:
    ``1 - 6 * sum((r - r2)**2) / (n**3 - n)``."""
    r = np.asarray(r)
    r2 = np.asarray(r2)
    if r.shape != r2.shape:
        raise LengthMismatch(f"rankings have lengths {r.size} and {r2.size}")
    r = _check_permutation(r)
    r2 = _check_permutation(r2)
    n = r.size
    if n < 2:
        raise InputError("need at least two ranked items")
    s = int(np.sum((r - r2) ** 2))
    return 1 - 6 * s / (n**3 - n)


def kendall_w(rankings) -> float:
    """Coefficient of concordance of ``k`` rankings of ``n`` items.

    ``W = 12 S / (k^2 (n^3 - n))`` where ``S`` is the sum of squared
    deviations of the item rank sums from their mean.
    """
    rankings = [_check_permutation(r, f"ranking {i}") for i, r in enumerate(rankings)]
    k = len(rankings)
    if k < 2:
        raise InputError("need at least two rankings")
    n = rankings[0].size
    if any(r.size != n for r in rankings):
        raise LengthMismatch("rankings differ in length")
    sums = np.sum(rankings, axis=0)
    # integer form of sum((R - mean)^2) avoids rounding: k*n*(n+1)/2 / n
    s = float(np.sum(sums.astype(np.float64) ** 2) - k**2 * n * (n + 1) ** 2 / 4)
    return 12 * s / (k**2 * (n**3 - n))


@dataclass(frozen=True)
class EnergyProfile:
    ranks: tuple
    energies: np.ndarray
    total: float

    def to_dict(self):
        return {
            "nodes": {f"q{q}": float(e) for q, e in zip(self.ranks, self.energies)},
            "total": self.total,
        }


def detail_energy_profile(wav: DendroWavelet) -> EnergyProfile:
    """Sum of squared detail components at every internal node.

    Under the lifting schemes a detail is a difference of rank vectors, so a
    node's energy is the squared-difference term of Spearman's rho between
    its two children.
    """
    if wav.scheme is HaarScheme.BASIC:
        raise NonRankInput("energy profile needs a lifting scheme transform")
    d = np.asarray(wav.details, dtype=np.float64)
    if not np.all(d == np.round(d)):
        raise NonRankInput("details are not integral; input was not rank data")
    energies = np.sum(d**2, axis=1)
    ranks = tuple(range(1, len(energies) + 1))
    return EnergyProfile(ranks, energies, float(energies.sum()))


def report(encoding: Encoding, dend: Dendrogram | None = None, rankings=None) -> dict:
    """Summary for JSON output: encoding, bits, chain statistics and an
    optional Spearman matrix between rankings."""
    out = {
        "encoding": {"kind": encoding.kind, **{k: v for k, v in vars(encoding).items() if v is not None}},
        "bits": shannon_bits(encoding),
    }
    if dend is not None:
        stats = chain_stats(dend)
        out["generation_cost_stats"] = {
            "mean": stats.mean,
            "median": stats.median,
            "min": stats.min,
            "max": stats.max,
            "bound": dend.n_leaves - 1,
        }
    if rankings is not None:
        rankings = list(rankings)
        out["rho_matrix"] = [[spearman_rho(a, b) for b in rankings] for a in rankings]
    return out


def report_json(*args, **kwargs) -> str:
    return dumps(report(*args, **kwargs))
