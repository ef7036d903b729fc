"""Membership bookkeeping shared by all three model families.

A point's membership is a pair (z1, z2). ``JointCounts`` maintains the dense
K1 x K2 co-occurrence table together with its row marginals, column marginals
and grand total, compacting emptied components so that the "previously used"
sums in the samplers stay dense loops.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

WEIGHT_SUM_TOL = 1e-12


@dataclass
class Assignment2D:
    """Per-point membership: component index in each of the two dimensions."""

    z1: int
    z2: int


@dataclass(frozen=True)
class Concentration:
    """Concentration parameter of the Dirichlet-process dimensions."""

    alpha: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"concentration must be positive, got {self.alpha}")


@dataclass(frozen=True)
class ShareWeights:
    """Coupling weights (omega, omega1, omega2) between the two dimensions.

    ``omega`` interpolates between fully coupled dimensions (omega=1, both
    memberships always equal) and decoupled ones; ``omega1`` and ``omega2``
    tune the relative innovation rate of each dimension. The triple must sum
    to one.
    """

    omega: float
    omega1: float
    omega2: float

    def __post_init__(self):
        for name in ("omega", "omega1", "omega2"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        s = self.omega + self.omega1 + self.omega2
        if abs(s - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(
                f"omega + omega1 + omega2 must equal 1 (got {s!r}); "
                f"weights {self.omega}, {self.omega1}, {self.omega2}"
            )

    @classmethod
    def balanced(cls, omega: float) -> "ShareWeights":
        """Split the non-shared mass evenly between the two dimensions."""
        rest = (1.0 - omega) / 2.0
        return cls(omega, rest, rest)


@dataclass(frozen=True)
class Relabeling:
    """Index compaction produced by a decrement that emptied a row/column.

    ``row_map`` / ``col_map`` list only the indices that moved (old -> new).
    """

    removed_row: int | None = None
    removed_col: int | None = None
    row_map: dict[int, int] = field(default_factory=dict)
    col_map: dict[int, int] = field(default_factory=dict)

    @property
    def identity(self) -> bool:
        return self.removed_row is None and self.removed_col is None


class JointCounts:
    """Dense K1 x K2 table of membership co-occurrence counts.

    Maintains ``counts[c, d]`` = number of points with memberships (c, d),
    plus row marginals, column marginals and the total, all kept mutually
    consistent by ``increment`` / ``decrement``. Rows (and, unless
    ``compact_cols=False``, columns) whose marginal reaches zero are removed
    and the remaining indices compacted; the hybrid model disables column
    compaction because its second dimension has a fixed component count.
    """

    def __init__(self, k1: int = 0, k2: int = 0, *, compact_rows: bool = True,
                 compact_cols: bool = True):
        self.counts = np.zeros((k1, k2), dtype=np.int64)
        self.row_marginals = np.zeros(k1, dtype=np.int64)
        self.col_marginals = np.zeros(k2, dtype=np.int64)
        self.total = 0
        self.compact_rows = compact_rows
        self.compact_cols = compact_cols

    @property
    def k1(self) -> int:
        return self.counts.shape[0]

    @property
    def k2(self) -> int:
        return self.counts.shape[1]

    @classmethod
    def from_assignments(cls, z1, z2, k1: int | None = None, k2: int | None = None,
                         **kwargs) -> "JointCounts":
        z1 = np.asarray(z1, dtype=np.int64)
        z2 = np.asarray(z2, dtype=np.int64)
        if z1.shape != z2.shape:
            raise ValueError("z1 and z2 must have equal length")
        k1 = int(z1.max()) + 1 if k1 is None and z1.size else (k1 or 0)
        k2 = int(z2.max()) + 1 if k2 is None and z2.size else (k2 or 0)
        jc = cls(k1, k2, **kwargs)
        np.add.at(jc.counts, (z1, z2), 1)
        jc.row_marginals = jc.counts.sum(axis=1)
        jc.col_marginals = jc.counts.sum(axis=0)
        jc.total = int(z1.size)
        return jc

    def increment(self, c: int, d: int) -> None:
        """Add one observation at cell (c, d), growing the table if either
        index is exactly one past the current end (a new component)."""
        if not 0 <= c <= self.k1 or not 0 <= d <= self.k2:
            raise IndexError(
                f"cell ({c}, {d}) more than one past the end of a "
                f"{self.k1}x{self.k2} table"
            )
        if c == self.k1:
            self.counts = np.vstack([self.counts,
                                     np.zeros((1, self.k2), dtype=np.int64)])
            self.row_marginals = np.append(self.row_marginals, 0)
        if d == self.k2:
            self.counts = np.hstack([self.counts,
                                     np.zeros((self.k1, 1), dtype=np.int64)])
            self.col_marginals = np.append(self.col_marginals, 0)
        self.counts[c, d] += 1
        self.row_marginals[c] += 1
        self.col_marginals[d] += 1
        self.total += 1

    def decrement(self, c: int, d: int) -> Relabeling:
        """Remove one observation from cell (c, d).

        Emptied rows/columns are dropped and the surviving indices compacted;
        the returned :class:`Relabeling` lets callers remap stored
        assignments and parameter lists.
        """
        if not (0 <= c < self.k1 and 0 <= d < self.k2):
            raise IndexError(f"cell ({c}, {d}) out of bounds")
        if self.counts[c, d] < 1:
            raise ValueError(f"decrement of zero cell ({c}, {d})")
        self.counts[c, d] -= 1
        self.row_marginals[c] -= 1
        self.col_marginals[d] -= 1
        self.total -= 1

        removed_row = removed_col = None
        row_map: dict[int, int] = {}
        col_map: dict[int, int] = {}
        if self.compact_rows and self.row_marginals[c] == 0:
            k1_before = self.k1
            self.counts = np.delete(self.counts, c, axis=0)
            self.row_marginals = np.delete(self.row_marginals, c)
            removed_row = c
            row_map = {old: old - 1 for old in range(c + 1, k1_before)}
        if self.compact_cols and self.col_marginals[d] == 0:
            k2_before = self.k2
            self.counts = np.delete(self.counts, d, axis=1)
            self.col_marginals = np.delete(self.col_marginals, d)
            removed_col = d
            col_map = {old: old - 1 for old in range(d + 1, k2_before)}
        return Relabeling(removed_row, removed_col, row_map, col_map)

    def consistent(self) -> bool:
        """True iff the four stored summaries agree with the matrix."""
        return (
            np.array_equal(self.row_marginals, self.counts.sum(axis=1))
            and np.array_equal(self.col_marginals, self.counts.sum(axis=0))
            and self.total == int(self.counts.sum())
            and bool((self.counts >= 0).all())
        )

    def copy(self) -> "JointCounts":
        jc = JointCounts(compact_rows=self.compact_rows,
                         compact_cols=self.compact_cols)
        jc.counts = self.counts.copy()
        jc.row_marginals = self.row_marginals.copy()
        jc.col_marginals = self.col_marginals.copy()
        jc.total = self.total
        return jc

    def __repr__(self) -> str:
        return (f"JointCounts(k1={self.k1}, k2={self.k2}, total={self.total})")
