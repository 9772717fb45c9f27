"""Ward minimum-variance agglomeration and the dendrogram it produces.

Node references are plain integers in the scipy convention: leaves are
``0 .. n-1`` and the internal node of merge rank ``q`` (1-based) is
``n + q - 1``. In JSON, leaves are written ``"L<i>"`` with ``i`` 1-based and
internal nodes ``"q<rank>"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import DataMatrix, validate_weights
from .errors import InputError, LeafNotFound, TooFewRows
from .serialize import dumps

# relative slack under which two merge costs count as tied
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class Merge:
    q: int
    left: int
    right: int
    height: float
    members: frozenset


@dataclass(frozen=True, eq=False)
class Dendrogram:
    """Binary, rooted, ranked tree over ``n_leaves`` leaves.

    ``merges[q - 1]`` is the merge of rank ``q``. Construct directly from a
    list of :class:`Merge` records, or more conveniently with
    :meth:`from_pairs`.
    """

    n_leaves: int
    merges: tuple

    def __post_init__(self):
        n = self.n_leaves
        merges = tuple(self.merges)
        object.__setattr__(self, "merges", merges)
        if n < 1:
            raise InputError("a dendrogram needs at least one leaf")
        if len(merges) != n - 1:
            raise InputError(f"{n} leaves need {n - 1} merges, got {len(merges)}")
        used = set()
        members = {i: frozenset([i]) for i in range(n)}
        prev = -np.inf
        for k, mg in enumerate(merges):
            node = n + k
            if mg.q != k + 1:
                raise InputError(f"merge {k} carries rank {mg.q}, expected {k + 1}")
            for child in (mg.left, mg.right):
                if child not in members or child in used:
                    raise InputError(f"merge q{mg.q} uses unavailable node {child}")
                used.add(child)
            if mg.left == mg.right:
                raise InputError(f"merge q{mg.q} joins a node with itself")
            if mg.height < prev:
                raise InputError(f"merge q{mg.q} has a height inversion")
            prev = mg.height
            joined = members[mg.left] | members[mg.right]
            if frozenset(mg.members) != joined:
                raise InputError(f"merge q{mg.q} members do not match its children")
            members[node] = joined

    @classmethod
    def from_pairs(cls, n_leaves, pairs, heights=None) -> "Dendrogram":
        """Build from ``(left, right)`` node references in merge order.

        Heights default to the merge rank.
        """
        members = {i: frozenset([i]) for i in range(n_leaves)}
        merges = []
        for k, (a, b) in enumerate(pairs):
            h = float(k + 1) if heights is None else float(heights[k])
            joined = members[a] | members[b]
            members[n_leaves + k] = joined
            merges.append(Merge(k + 1, int(a), int(b), h, joined))
        return cls(n_leaves, tuple(merges))

    # -- structure ---------------------------------------------------------

    @property
    def root(self) -> int:
        return 2 * self.n_leaves - 2

    def node(self, q: int) -> int:
        return self.n_leaves + q - 1

    def rank(self, node: int) -> int:
        return node - self.n_leaves + 1

    def is_leaf(self, node: int) -> bool:
        return node < self.n_leaves

    def children(self, node: int):
        mg = self.merges[node - self.n_leaves]
        return mg.left, mg.right

    def members(self, node: int) -> frozenset:
        if self.is_leaf(node):
            return frozenset([node])
        return self.merges[node - self.n_leaves].members

    @cached_property
    def parent(self) -> dict:
        out = {}
        for k, mg in enumerate(self.merges):
            out[mg.left] = self.n_leaves + k
            out[mg.right] = self.n_leaves + k
        return out

    def path(self, leaf: int):
        """Root-to-leaf edges as ``(q, sign)``; sign +1 when descending left."""
        if not 0 <= leaf < self.n_leaves:
            raise LeafNotFound(f"leaf {leaf} not in 0..{self.n_leaves - 1}")
        steps = []
        node = leaf
        while node != self.root:
            par = self.parent[node]
            left, _ = self.children(par)
            steps.append((self.rank(par), 1 if node == left else -1))
            node = par
        return steps[::-1]

    def depth(self, leaf: int) -> int:
        return len(self.path(leaf))

    def leaf_order(self):
        """Leaves left to right, as drawn."""
        if self.n_leaves == 1:
            return [0]
        order, stack = [], [self.root]
        while stack:
            node = stack.pop()
            if self.is_leaf(node):
                order.append(node)
            else:
                left, right = self.children(node)
                stack.extend((right, left))
        return order

    def swap(self, q: int) -> "Dendrogram":
        """Copy with the two children of merge ``q`` exchanged."""
        merges = list(self.merges)
        mg = merges[q - 1]
        merges[q - 1] = Merge(mg.q, mg.right, mg.left, mg.height, mg.members)
        return Dendrogram(self.n_leaves, tuple(merges))

    @property
    def heights(self) -> np.ndarray:
        return np.array([mg.height for mg in self.merges])

    # -- serialization -----------------------------------------------------

    def ref(self, node: int) -> str:
        return f"L{node + 1}" if self.is_leaf(node) else f"q{self.rank(node)}"

    def parse_ref(self, text: str) -> int:
        return _parse_ref(text, self.n_leaves)

    def to_dict(self) -> dict:
        return {
            "n_leaves": self.n_leaves,
            "merges": [
                {
                    "q": mg.q,
                    "left": self.ref(mg.left),
                    "right": self.ref(mg.right),
                    "height": float(mg.height),
                    "members": sorted(i + 1 for i in mg.members),
                }
                for mg in self.merges
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Dendrogram":
        n = int(data["n_leaves"])
        merges = []
        for rec in data["merges"]:
            merges.append(
                Merge(
                    int(rec["q"]),
                    _parse_ref(rec["left"], n),
                    _parse_ref(rec["right"], n),
                    float(rec["height"]),
                    frozenset(int(i) - 1 for i in rec["members"]),
                )
            )
        return cls(n, tuple(merges))

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Dendrogram":
        return cls.from_dict(json.loads(text))


def _parse_ref(text, n):
    kind, num = text[:1], text[1:]
    if kind == "L" and num.isdigit():
        return int(num) - 1
    if kind == "q" and num.isdigit():
        return n + int(num) - 1
    raise InputError(f"bad node reference {text!r}")


def _as_array(mat):
    if isinstance(mat, DataMatrix):
        return np.asarray(mat.values, dtype=np.float64)
    x = np.asarray(mat, dtype=np.float64)
    return x.reshape(-1, 1) if x.ndim == 1 else x


def ward_cost(m_a, m_b, sq_dist):
    """Variance increase of merging two clusters with masses ``m_a``, ``m_b``
    whose centroids are ``sq_dist`` apart (squared Euclidean)."""
    total = m_a + m_b
    if total == 0:
        return 0.0
    return m_a * m_b / total * sq_dist


def _pick(cost, active, min_leaf):
    """Cheapest active pair, ties broken on the clusters' lowest leaves."""
    best = cost.min()
    slack = TIE_RTOL * abs(best)
    ii, jj = np.nonzero(cost <= best + slack)
    keyed = []
    for i, j in zip(ii, jj):
        if i < j:
            a, b = sorted((min_leaf[i], min_leaf[j]))
            keyed.append(((a, b), i, j))
    _, i, j = min(keyed)
    return int(i), int(j)


def ward_cluster(mat, w=None) -> Dendrogram:
    """Ward minimum-variance agglomerative clustering.

    Merge cost is the increase in weighted within-cluster variance,
    ``m_a m_b / (m_a + m_b) * ||c_a - c_b||**2``, updated with the
    Lance-Williams recurrence. Heights are these raw costs (two unit-mass
    points merge at half their squared distance).

    Parameters
    ----------
    mat : DataMatrix or array_like, shape (n, m)
    w : array_like, shape (n,), optional
        Observation masses; unit masses by default.

    Returns
    -------
    Dendrogram
        The left child of every merge is the one holding the lowest leaf
        index.
    """
    x = _as_array(mat)
    n = x.shape[0]
    if n < 2:
        raise TooFewRows(f"need at least 2 rows to cluster, got {n}")
    mass = validate_weights(w, n).copy()

    sq = np.sum((x[:, None, :] - x[None, :, :]) ** 2, axis=-1)
    total = mass[:, None] + mass[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        cost = np.where(total > 0, np.outer(mass, mass) / total * sq, 0.0)
    np.fill_diagonal(cost, np.inf)

    active = np.ones(n, dtype=bool)
    node_of = list(range(n))  # slot -> node reference
    min_leaf = list(range(n))
    members = [frozenset([i]) for i in range(n)]
    merges = []
    prev = 0.0
    for k in range(n - 1):
        i, j = _pick(cost, active, min_leaf)
        h = max(float(cost[i, j]), prev)  # guards rounding-level inversions
        prev = h
        # keep the merged cluster in slot i (the lower slot)
        mi, mj, dij = mass[i], mass[j], cost[i, j]
        others = active.copy()
        others[[i, j]] = False
        mk = mass[others]
        denom = mi + mj + mk
        with np.errstate(invalid="ignore", divide="ignore"):
            upd = ((mi + mk) * cost[i, others] + (mj + mk) * cost[j, others] - mk * dij) / denom
        cost[i, others] = cost[others, i] = np.where(denom > 0, upd, 0.0)
        cost[j, :] = cost[:, j] = np.inf
        active[j] = False

        a, b = node_of[i], node_of[j]
        if min_leaf[j] < min_leaf[i]:
            a, b = b, a
        joined = members[i] | members[j]
        merges.append(Merge(k + 1, a, b, h, joined))
        node_of[i] = n + k
        members[i] = joined
        min_leaf[i] = min(min_leaf[i], min_leaf[j])
        mass[i] = mi + mj
    return Dendrogram(n, tuple(merges))


def cophenetic(dend: Dendrogram, by: str = "height") -> np.ndarray:
    """Tree distance: the height (or rank, with ``by="rank"``) of the lowest
    node containing both leaves."""
    if by not in ("height", "rank"):
        raise InputError(f"by must be 'height' or 'rank', not {by!r}")
    n = dend.n_leaves
    d = np.zeros((n, n))
    for mg in dend.merges:
        level = mg.height if by == "height" else float(mg.q)
        left = sorted(dend.members(mg.left))
        right = sorted(dend.members(mg.right))
        d[np.ix_(left, right)] = level
        d[np.ix_(right, left)] = level
    return d


def is_ultrametric(d, tol: float = 1e-9):
    """Check the strong triangle inequality on a distance matrix.

    Returns
    -------
    ok : bool
    witness : tuple of int or None
        ``(i, j, k)`` with ``d[i, j] > max(d[i, k], d[j, k]) + tol`` when the
        check fails.
    """
    d = np.asarray(d, dtype=np.float64)
    n = d.shape[0]
    for k in range(n):
        bound = np.maximum(d[:, k][:, None], d[k, :][None, :])
        bad = d > bound + tol
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return False, (int(i), int(j), k)
    return True, None
