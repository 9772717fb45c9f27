"""Correspondence analysis of frequency tables.

Rows are embedded so that Euclidean distances between their principal
coordinates equal the chi-squared distances between their profiles.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .core import DataMatrix, format_number
from .errors import DegenerateTable, InputError, ZeroMassRow
from .serialize import dumps

EIG_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Non-negative frequencies with row and column labels.

    All-zero columns are removed on construction; all-zero rows are an
    error.
    """

    values: np.ndarray
    row_labels: tuple = ()
    col_labels: tuple = ()

    def __post_init__(self):
        x = np.asarray(self.values, dtype=np.float64)
        if x.ndim != 2 or x.size == 0:
            raise InputError("a contingency table must be a non-empty 2-d array")
        if not np.all(np.isfinite(x)) or np.any(x < 0):
            raise InputError("frequencies must be finite and non-negative")
        rows = tuple(self.row_labels) or tuple(str(i + 1) for i in range(x.shape[0]))
        cols = tuple(self.col_labels) or tuple(str(j + 1) for j in range(x.shape[1]))
        keep = x.sum(axis=0) > 0
        x, cols = x[:, keep], tuple(c for c, k in zip(cols, keep) if k)
        if x.size == 0:
            raise ZeroMassRow("table has no positive entries")
        empty = np.flatnonzero(x.sum(axis=1) == 0)
        if empty.size:
            raise ZeroMassRow(f"row {rows[empty[0]]!r} has zero mass")
        x.setflags(write=False)
        object.__setattr__(self, "values", x)
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)

    @classmethod
    def from_matrix(cls, mat: DataMatrix) -> "ContingencyTable":
        return cls(mat.values, mat.row_labels, mat.col_labels)

    @property
    def total(self) -> float:
        return float(self.values.sum())

    @property
    def row_masses(self) -> np.ndarray:
        return self.values.sum(axis=1) / self.total

    @property
    def col_masses(self) -> np.ndarray:
        return self.values.sum(axis=0) / self.total

    def profiles(self) -> np.ndarray:
        return self.values / self.values.sum(axis=1, keepdims=True)


def chi2_distance(t: ContingencyTable, i: int, j: int) -> float:
    """Chi-squared distance between the profiles of rows ``i`` and ``j``.

    ``d^2 = sum_c (p_ic / r_i - p_jc / r_j)^2 / c_c`` with ``p`` the table
    scaled to unit total, ``r`` the row masses and ``c`` the column masses.
    The square root is returned.
    """
    x = t.values
    for k in (i, j):
        if x[k].sum() <= 0:
            raise ZeroMassRow(f"row {k} has zero mass")
    p = x / t.total
    r = p.sum(axis=1)
    c = p.sum(axis=0)
    diff = p[i] / r[i] - p[j] / r[j]
    return float(np.sqrt(np.sum(diff**2 / c)))


def double(mat, complement: str = "column-max") -> DataMatrix:
    """Pair every column with its complement and drop all-zero columns.

    Column ``c`` becomes ``(c, c')`` with ``c' = max - c``, where ``max`` is
    the column's own maximum (``"column-max"``) or the maximum of the whole
    table (``"table-max"``). Either way every row of the result has the same
    total, so all rows carry equal mass. Columns that are zero everywhere
    (for instance a segment in which no selected term occurs, together with
    its complement) are removed afterwards.
    """
    if not isinstance(mat, DataMatrix):
        mat = DataMatrix(mat)
    x = np.asarray(mat.values, dtype=np.float64)
    if complement == "column-max":
        top = x.max(axis=0)
    elif complement == "table-max":
        top = np.full(x.shape[1], x.max())
    else:
        raise InputError(f"unknown complement {complement!r}")
    comp = top - x
    out = np.empty((x.shape[0], 2 * x.shape[1]))
    out[:, 0::2] = x
    out[:, 1::2] = comp
    labels = []
    for c in mat.col_labels:
        labels.extend((c, f"{c}'"))
    keep = np.any(out != 0, axis=0)
    return DataMatrix(out[:, keep], mat.row_labels, tuple(l for l, k in zip(labels, keep) if k))


def doubled_shape(mat, complement: str = "column-max"):
    """Shape before and after zero-column removal, e.g. ``((8, 48), (8, 46))``."""
    n, m = np.shape(mat.values if isinstance(mat, DataMatrix) else mat)
    return (n, 2 * m), double(mat, complement).shape


@dataclass(frozen=True, eq=False)
class FactorEmbedding:
    eigenvalues: np.ndarray
    rows: np.ndarray
    cols: np.ndarray
    row_labels: tuple = ()
    col_labels: tuple = ()

    @property
    def k(self) -> int:
        return self.eigenvalues.size

    def as_matrix(self) -> DataMatrix:
        """Row principal coordinates, ready for clustering."""
        return DataMatrix(
            self.rows, self.row_labels, tuple(f"F{j + 1}" for j in range(self.k))
        )

    def to_dict(self) -> dict:
        return {
            "eigenvalues": self.eigenvalues.tolist(),
            "rows": self.rows.tolist(),
            "cols": self.cols.tolist(),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eigenvalue"] + [format_number(v) for v in self.eigenvalues])
        w.writerow([""] + [f"F{j + 1}" for j in range(self.k)])
        for label, row in zip(self.row_labels, self.rows):
            w.writerow([label] + [format_number(v) for v in row])
        return buf.getvalue()


def correspondence_analysis(t, allow_empty: bool = False) -> FactorEmbedding:
    """Eigen-embedding of a contingency table under the chi-squared metric.

    The standardized residual matrix ``(P - r c^T) / sqrt(r c^T)`` is
    decomposed by SVD; squared singular values are the eigenvalues. Factors
    with eigenvalue at most ``1e-12 * max`` are dropped, which removes the
    null dimension introduced by centering. Each factor's sign is fixed so
    its largest-magnitude row coordinate is positive.

    Raises
    ------
    DegenerateTable
        If all rows are proportional (no factors), unless ``allow_empty``.
    """
    if not isinstance(t, ContingencyTable):
        t = ContingencyTable.from_matrix(t) if isinstance(t, DataMatrix) else ContingencyTable(t)
    p = t.values / t.total
    r = p.sum(axis=1)
    c = p.sum(axis=0)
    expected = np.outer(r, c)
    resid = (p - expected) / np.sqrt(expected)
    u, sv, vt = np.linalg.svd(resid, full_matrices=False)
    eig = sv**2
    top = eig.max() if eig.size else 0.0
    keep = eig > EIG_RTOL * top if top > 0 else np.zeros_like(eig, dtype=bool)
    k = int(keep.sum())
    if k == 0 and not allow_empty:
        raise DegenerateTable("all row profiles are identical; no factors")
    u, sv, v = u[:, :k], sv[:k], vt[:k].T
    rows = u * sv / np.sqrt(r)[:, None]
    cols = v * sv / np.sqrt(c)[:, None]
    for j in range(k):
        if rows[np.argmax(np.abs(rows[:, j])), j] < 0:
            rows[:, j] *= -1
            cols[:, j] *= -1
    return FactorEmbedding(eig[:k], rows, cols, t.row_labels, t.col_labels)
