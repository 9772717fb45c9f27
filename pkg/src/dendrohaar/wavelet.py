"""Haar wavelet transform on a dendrogram.

Each internal node combines the vectors of its two children ``a`` (left)
and ``b`` (right) into a smooth and a detail. The detail is oriented so
that the left child is reached by *adding* it and the right child by
subtracting it:

=========  ===========  ==========  =====================================
scheme     smooth       detail      children from parent smooth ``s``
=========  ===========  ==========  =====================================
basic      (a + b) / 2  (a - b) / 2  a = s + d,       b = s - d
lifting1   (a + b) / 2  a - b        a = s + d/2,     b = s - d/2
lifting2   a + b        a - b        a = (s + d)/2,   b = (s - d)/2
=========  ===========  ==========  =====================================

With ``lifting2`` integer data stays integer throughout, and the root
smooth is the plain sum of all observations.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .cluster import Dendrogram
from .core import DataMatrix
from .errors import DepthOutOfRange, InputError, NonIntegerTransform, ShapeMismatch
from .serialize import dumps


class HaarScheme(enum.Enum):
    BASIC = "basic"
    LIFTING1 = "lifting1"
    LIFTING2 = "lifting2"

    @classmethod
    def parse(cls, value) -> "HaarScheme":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower().replace("-", "").replace("_", ""))
        except ValueError:
            raise InputError(f"unknown Haar scheme {value!r}") from None


def _combine(scheme, a, b):
    if scheme is HaarScheme.BASIC:
        return (a + b) / 2, (a - b) / 2
    if scheme is HaarScheme.LIFTING1:
        return (a + b) / 2, a - b
    return a + b, a - b


def descend(scheme, parent, detail, sign):
    """Vector of a child from its parent's smooth and the parent's detail.

    ``sign`` is +1 for the left child and -1 for the right one.
    """
    scheme = HaarScheme.parse(scheme)
    if scheme is HaarScheme.BASIC:
        return parent + sign * detail
    if scheme is HaarScheme.LIFTING1:
        return parent + sign * detail / 2
    total = parent + sign * detail
    if np.asarray(total).dtype.kind in "iu":
        if np.any(total % 2):
            raise NonIntegerTransform("odd intermediate value under lifting2")
        return total // 2
    return total / 2


@dataclass(frozen=True, eq=False)
class DendroWavelet:
    """Result of :func:`forward`.

    ``details[q - 1]`` belongs to the merge of rank ``q``; ``smooth`` sits at
    the root. ``node_smooths[q - 1]`` caches the smooth of every internal
    node for chain queries; it is derivable from the rest and is not part of
    the stored transform.
    """

    scheme: HaarScheme
    dendrogram: Dendrogram
    smooth: np.ndarray
    details: np.ndarray
    node_smooths: np.ndarray
    row_labels: tuple = ()
    col_labels: tuple = ()

    @property
    def n_values(self) -> int:
        return self.details.size + self.smooth.size

    def detail(self, q: int) -> np.ndarray:
        return self.details[q - 1]

    def node_vector(self, node: int, leaves=None) -> np.ndarray:
        """Smooth of an internal node, or the leaf vector when ``leaves`` is
        given."""
        dend = self.dendrogram
        if dend.is_leaf(node):
            if leaves is None:
                raise InputError("leaf vectors are not cached; pass the data")
            return np.asarray(leaves)[node]
        return self.node_smooths[dend.rank(node) - 1]

    def to_dict(self) -> dict:
        out = {
            "scheme": self.scheme.value,
            "smooth": self.smooth.tolist(),
            "details": {f"d{q}": self.details[q - 1].tolist() for q in range(1, len(self.details) + 1)},
        }
        if self.col_labels:
            out["columns"] = list(self.col_labels)
        return out

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, dendrogram: Dendrogram, row_labels=()) -> "DendroWavelet":
        scheme = HaarScheme.parse(data["scheme"])
        smooth = np.asarray(data["smooth"])
        details = np.array(
            [data["details"][f"d{q}"] for q in range(1, dendrogram.n_leaves)]
        ).reshape(dendrogram.n_leaves - 1, smooth.size)
        if details.dtype.kind in "iu" and smooth.dtype.kind in "iu":
            smooth, details = smooth.astype(np.int64), details.astype(np.int64)
        else:
            smooth, details = smooth.astype(float), details.astype(float)
        wav = cls(scheme, dendrogram, smooth, details, np.empty_like(details),
                  tuple(row_labels), tuple(data.get("columns", ())))
        # rebuild the node smooth cache top-down
        object.__setattr__(wav, "node_smooths", _node_smooths(wav))
        return wav

    @classmethod
    def from_json(cls, text: str, dendrogram: Dendrogram, row_labels=()) -> "DendroWavelet":
        return cls.from_dict(json.loads(text), dendrogram, row_labels)


def _prepare(data, scheme):
    if isinstance(data, DataMatrix):
        x, rows, cols = np.asarray(data.values), data.row_labels, data.col_labels
    else:
        x, rows, cols = np.asarray(data), (), ()
        if x.ndim == 1:
            x = x.reshape(-1, 1)
    if not (scheme is HaarScheme.LIFTING2 and x.dtype.kind in "iu"):
        x = x.astype(np.float64)
    else:
        x = x.astype(np.int64)
    return x, rows, cols


def forward(dend: Dendrogram, data, scheme="basic") -> DendroWavelet:
    """Bottom-up Haar transform of ``data`` (one row per leaf) over ``dend``.

    Integer input under ``lifting2`` yields integer coefficients.
    """
    scheme = HaarScheme.parse(scheme)
    x, rows, cols = _prepare(data, scheme)
    n = dend.n_leaves
    if x.shape[0] != n:
        raise ShapeMismatch(f"dendrogram has {n} leaves but data has {x.shape[0]} rows")
    m = x.shape[1]
    nodes = np.empty((2 * n - 1, m), dtype=x.dtype)
    nodes[:n] = x
    details = np.empty((n - 1, m), dtype=x.dtype)
    for k, mg in enumerate(dend.merges):
        s, d = _combine(scheme, nodes[mg.left], nodes[mg.right])
        nodes[n + k] = s
        details[k] = d
    smooth = nodes[-1].copy()
    if n == 1:
        smooth = x[0].copy()
    return DendroWavelet(scheme, dend, smooth, details, nodes[n:].copy(), rows, cols)


def _all_nodes(wav):
    dend = wav.dendrogram
    n = dend.n_leaves
    m = wav.smooth.size
    nodes = np.empty((2 * n - 1, m), dtype=wav.details.dtype if n > 1 else wav.smooth.dtype)
    nodes[-1] = wav.smooth
    for k in range(n - 2, -1, -1):
        mg = dend.merges[k]
        parent, d = nodes[n + k], wav.details[k]
        nodes[mg.left] = descend(wav.scheme, parent, d, 1)
        nodes[mg.right] = descend(wav.scheme, parent, d, -1)
    return nodes


def _node_smooths(wav):
    return _all_nodes(wav)[wav.dendrogram.n_leaves:]


def inverse(wav: DendroWavelet) -> DataMatrix:
    """Top-down reconstruction of the input from the root smooth and the
    details alone (the node smooth cache is not consulted)."""
    leaves = _all_nodes(wav)[: wav.dendrogram.n_leaves]
    return DataMatrix(leaves, wav.row_labels, wav.col_labels)


@dataclass(frozen=True)
class ApproximationChain:
    """Signed details on the path from the root down to ``leaf``."""

    leaf: int
    steps: tuple  # ((q, sign), ...), root first
    scheme: HaarScheme

    def __len__(self):
        return len(self.steps)

    def __str__(self):
        root = self.steps[0][0] if self.steps else 0
        parts = [f"s{root}"]
        for q, sign in self.steps:
            parts.append(f"{'+' if sign > 0 else '-'} d{q}")
        return " ".join(parts)


def chain(wav: DendroWavelet, leaf: int) -> ApproximationChain:
    """Approximation chain of a leaf (0-based index)."""
    return ApproximationChain(leaf, tuple(wav.dendrogram.path(leaf)), wav.scheme)


def partial_reconstruct(wav: DendroWavelet, leaf: int, depth: int) -> np.ndarray:
    """Apply the first ``depth`` steps of the leaf's chain to the root smooth.

    Depth 0 gives the root smooth; the result at depth ``k`` is the smooth of
    the leaf's ``k``-th ancestor below the root, and at full depth the leaf
    itself.
    """
    steps = wav.dendrogram.path(leaf)
    if not 0 <= depth <= len(steps):
        raise DepthOutOfRange(f"depth {depth} outside 0..{len(steps)}")
    v = wav.smooth.copy()
    for q, sign in steps[:depth]:
        v = descend(wav.scheme, v, wav.details[q - 1], sign)
    return v


@dataclass(frozen=True)
class ChainStats:
    lengths: np.ndarray
    histogram: dict
    mean: float
    median: float
    min: int
    max: int

    def to_dict(self) -> dict:
        return {
            "lengths": self.lengths.tolist(),
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "mean": self.mean,
            "median": self.median,
            "min": self.min,
            "max": self.max,
        }


def chain_lengths(dend: Dendrogram) -> np.ndarray:
    n = dend.n_leaves
    depth = np.zeros(2 * n - 1, dtype=int)
    for k in range(n - 2, -1, -1):
        mg = dend.merges[k]
        depth[mg.left] = depth[mg.right] = depth[n + k] + 1
    return depth[:n]


def chain_stats(dend: Dendrogram) -> ChainStats:
    """Distribution of root-to-leaf chain lengths, one per leaf."""
    lengths = chain_lengths(dend)
    values, counts = np.unique(lengths, return_counts=True)
    return ChainStats(
        lengths=lengths,
        histogram={int(v): int(c) for v, c in zip(values, counts)},
        mean=float(lengths.mean()),
        median=float(np.median(lengths)),
        min=int(lengths.min()),
        max=int(lengths.max()),
    )
