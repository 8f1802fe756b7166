"""Binary incidence matrices and cover-free family (CFF) machinery.

A set system on ground set {1..t} with n blocks is stored as the t x n
binary incidence matrix whose column j is the characteristic vector of
block j.  The matrix is d-cover-free (d-CFF) when no column is covered by
the union of any d other columns; equivalently every d+1 columns contain
a (d+1) x (d+1) permutation submatrix.

The checkers enumerate column subsets exhaustively.  They are exact and
meant for desk-scale certification (hundreds of columns), guarded by a
configurable work budget.  Two growth constructions are provided: the
Kronecker product of two d-CFFs, and ``const1``, which stacks a Kronecker
part over appended columns and trades rows for a weaker third ingredient.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

#: Default ceiling on row-scan operations for the exhaustive CFF checkers.
DEFAULT_WORK_BUDGET = 10**9

#: Default ceiling on rows*cols for constructed matrices.
DEFAULT_MAX_BITS = 2**28


class WorkBudgetExceeded(Exception):
    """An exhaustive check or construction would exceed its work budget."""


class MatrixSizeError(Exception):
    """A constructed matrix would exceed the allowed number of bits."""


class BinaryMatrix:
    """Immutable t x n matrix with entries in {0, 1}.

    Rows and columns are 1-indexed in all public accessors, matching the
    usual incidence-matrix convention.  Equality is entrywise.
    """

    __slots__ = ("_bits",)

    def __init__(self, bits) -> None:
        a = np.asarray(bits, dtype=np.uint8)
        if a.ndim != 2:
            raise ValueError(f"matrix must be 2-dimensional, got shape {a.shape}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"matrix must have at least one row and column, got {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("matrix entries must be 0 or 1")
        a = a.copy()
        a.flags.writeable = False
        self._bits = a

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "BinaryMatrix":
        return cls(np.array([list(r) for r in rows], dtype=np.uint8))

    @classmethod
    def identity(cls, k: int) -> "BinaryMatrix":
        return cls(np.eye(k, dtype=np.uint8))

    @property
    def bits(self) -> np.ndarray:
        """Read-only uint8 view of the underlying entries."""
        return self._bits

    @property
    def rows(self) -> int:
        return self._bits.shape[0]

    @property
    def cols(self) -> int:
        return self._bits.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._bits.shape

    def entry(self, i: int, j: int) -> int:
        """Entry at row i, column j (1-indexed)."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols} matrix")
        return int(self._bits[i - 1, j - 1])

    def row(self, i: int) -> tuple[int, ...]:
        """Row i (1-indexed) as a tuple of bits."""
        return tuple(int(x) for x in self._bits[i - 1])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self._bits[:, j - 1])

    def row_weights(self) -> tuple[int, ...]:
        return tuple(int(w) for w in self._bits.sum(axis=1))

    def column_masks(self) -> list[int]:
        """Each column as an integer bitmask (bit k set <=> entry in row k+1)."""
        out = []
        for j in range(self.cols):
            m = 0
            for i in np.flatnonzero(self._bits[:, j]):
                m |= 1 << int(i)
            out.append(m)
        return out

    def first_columns(self, n: int) -> "BinaryMatrix":
        if not (1 <= n <= self.cols):
            raise ValueError(f"cannot take first {n} of {self.cols} columns")
        return BinaryMatrix(self._bits[:, :n])

    def select_columns(self, js: Sequence[int]) -> "BinaryMatrix":
        """Submatrix of the given columns (1-indexed, order preserved)."""
        return BinaryMatrix(self._bits[:, [j - 1 for j in js]])

    def select_rows(self, idx: Sequence[int]) -> "BinaryMatrix":
        return BinaryMatrix(self._bits[[i - 1 for i in idx], :])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash((self.shape, self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows}x{self.cols})"

    def to_text(self) -> str:
        """Serialize to the plain text format (dims line, then bit rows)."""
        lines = [f"{self.rows} {self.cols}"]
        for i in range(self.rows):
            lines.append("".join("1" if b else "0" for b in self._bits[i]))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SetSystem:
    """Ordered family of blocks over the ground set {1..ground_size}."""

    ground_size: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.ground_size < 1:
            raise ValueError("ground_size must be positive")
        for b in self.blocks:
            if not b <= set(range(1, self.ground_size + 1)):
                raise ValueError(f"block {sorted(b)} not contained in ground set")

    @classmethod
    def from_matrix(cls, m: BinaryMatrix) -> "SetSystem":
        blocks = tuple(
            frozenset(int(i) + 1 for i in np.flatnonzero(m.bits[:, j]))
            for j in range(m.cols)
        )
        return cls(m.rows, blocks)

    def to_matrix(self) -> BinaryMatrix:
        a = np.zeros((self.ground_size, len(self.blocks)), dtype=np.uint8)
        for j, b in enumerate(self.blocks):
            for i in b:
                a[i - 1, j] = 1
        return BinaryMatrix(a)


def parse_matrix_text(text: str) -> BinaryMatrix:
    """Parse the plain text matrix format.

    Leading lines starting with '#' are skipped, so nested-level files
    (which carry header comments) parse as bare matrices too.
    """
    lines = text.splitlines()
    k = 0
    while k < len(lines) and lines[k].startswith("#"):
        k += 1
    if k >= len(lines):
        raise ValueError("matrix text has no dimension line")
    parts = lines[k].split()
    if len(parts) != 2:
        raise ValueError(f"bad dimension line: {lines[k]!r}")
    try:
        t, n = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValueError(f"bad dimension line: {lines[k]!r}") from exc
    if t < 1 or n < 1:
        raise ValueError(f"bad dimensions {t}x{n}")
    body = lines[k + 1 : k + 1 + t]
    if len(body) != t:
        raise ValueError(f"expected {t} rows, found {len(body)}")
    rows = []
    for ln in body:
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise ValueError(f"bad matrix row: {ln!r}")
        rows.append([1 if ch == "1" else 0 for ch in ln])
    return BinaryMatrix.from_rows(rows)


def write_matrix_file(m: BinaryMatrix, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(m.to_text())


def read_matrix_file(path) -> BinaryMatrix:
    with open(path) as fh:
        return parse_matrix_text(fh.read())


# ---------------------------------------------------------------------------
# CFF property checkers
# ---------------------------------------------------------------------------


def cff_check_work(n: int, t: int, d: int) -> int:
    """Row-scan count of the exhaustive checker: C(n,k) * k * t, k = min(d+1, n)."""
    k = min(d + 1, n)
    return comb(n, k) * k * t


def _check_args(m: BinaryMatrix, d: int, work_budget: int | None) -> int:
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    k = min(d + 1, m.cols)
    if work_budget is not None:
        work = cff_check_work(m.cols, m.rows, d)
        if work > work_budget:
            raise WorkBudgetExceeded(
                f"checking {m.rows}x{m.cols} at d={d} needs ~{work} row scans "
                f"(budget {work_budget}); raise work_budget or pass None to override"
            )
    return k


def find_cff_violation(
    m: BinaryMatrix, d: int, *, work_budget: int | None = DEFAULT_WORK_BUDGET
) -> tuple[int, tuple[int, ...]] | None:
    """Search for a column covered by d others.

    Returns (column, covering columns), 1-indexed, or None when the matrix
    is d-CFF.  When the matrix has fewer than d+1 columns the strongest
    available check is applied: each column is tested against the union of
    all the others.
    """
    k = _check_args(m, d, work_budget)
    masks = m.column_masks()
    for subset in combinations(range(m.cols), k):
        for c in subset:
            union = 0
            for x in subset:
                if x != c:
                    union |= masks[x]
            if masks[c] & ~union == 0:
                return (c + 1, tuple(x + 1 for x in subset if x != c))
    return None


def is_d_cff(
    m: BinaryMatrix, d: int, *, work_budget: int | None = DEFAULT_WORK_BUDGET
) -> bool:
    """True iff every d+1 columns of m contain a permutation submatrix."""
    return find_cff_violation(m, d, work_budget=work_budget) is None


def find_lambda_violation(
    m: BinaryMatrix,
    d: int,
    lam: int,
    *,
    work_budget: int | None = DEFAULT_WORK_BUDGET,
) -> tuple[int, tuple[int, ...], int] | None:
    """Search for a column with fewer than lam rows private against d others.

    Returns (column, other columns, residual count) or None when the matrix
    is (d; lam)-CFF.
    """
    if lam < 1:
        raise ValueError(f"lambda must be >= 1, got {lam}")
    k = _check_args(m, d, work_budget)
    masks = m.column_masks()
    for subset in combinations(range(m.cols), k):
        for c in subset:
            union = 0
            for x in subset:
                if x != c:
                    union |= masks[x]
            residual = (masks[c] & ~union).bit_count()
            if residual < lam:
                return (c + 1, tuple(x + 1 for x in subset if x != c), residual)
    return None


def is_d_lambda_cff(
    m: BinaryMatrix,
    d: int,
    lam: int,
    *,
    work_budget: int | None = DEFAULT_WORK_BUDGET,
) -> bool:
    """True iff every column keeps >= lam private rows against any d others."""
    return find_lambda_violation(m, d, lam, work_budget=work_budget) is None


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def _guard_size(rows: int, cols: int, max_bits: int | None) -> None:
    if rows < 1 or cols < 1:
        raise MatrixSizeError(f"degenerate dimensions {rows}x{cols}")
    if max_bits is not None and rows * cols > max_bits:
        raise MatrixSizeError(
            f"{rows}x{cols} matrix needs {rows * cols} bits (limit {max_bits})"
        )


def kronecker(
    a1: BinaryMatrix, a2: BinaryMatrix, *, max_bits: int | None = DEFAULT_MAX_BITS
) -> BinaryMatrix:
    """Kronecker product: block (i,j) is a2 where a1(i,j)=1, else zero.

    If a1 is d-CFF(t1,n1) and a2 is d-CFF(t2,n2) the product is a
    d-CFF(t1*t2, n1*n2); with (d;lam1)- and (d;lam2)-CFF inputs the
    product is (d; lam1*lam2)-CFF.
    """
    _guard_size(a1.rows * a2.rows, a1.cols * a2.cols, max_bits)
    return BinaryMatrix(np.kron(a1.bits, a2.bits))


def const1(
    a1: BinaryMatrix,
    a2: BinaryMatrix,
    b: BinaryMatrix,
    *,
    max_bits: int | None = DEFAULT_MAX_BITS,
) -> BinaryMatrix:
    """Stack b (x) a1 over a row block that appends column i of a2 to block i.

    b must have exactly a2.cols columns.  The output has
    b.rows*a1.rows + a2.rows rows and a1.cols*a2.cols columns; for a1, a2
    d-CFF and b (d-1)-CFF it is d-CFF, and with (d;lam1), (d;lam2),
    (d-1;lam3) inputs it is (d; min(lam1*lam3, lam2))-CFF.
    """
    if b.cols != a2.cols:
        raise ValueError(
            f"ingredient column count {b.cols} != {a2.cols} (must match second factor)"
        )
    _guard_size(b.rows * a1.rows + a2.rows, a1.cols * a2.cols, max_bits)
    top = np.kron(b.bits, a1.bits)
    bottom = np.repeat(a2.bits, a1.cols, axis=1)
    return BinaryMatrix(np.vstack([top, bottom]))


def min_t_sperner(n: int) -> int:
    """Smallest s >= 1 with C(s, floor(s/2)) >= n: optimal 1-CFF row count."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s = 1
    while comb(s, s // 2) < n:
        s += 1
    return s


def k_subsets_lex(ground: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-subsets of {1..ground} in lexicographic order of sorted tuples."""
    return combinations(range(1, ground + 1), k)


def sperner_matrix(n: int) -> BinaryMatrix:
    """Optimal 1-CFF(t, n): columns are the first n floor(t/2)-subsets of {1..t}.

    Subsets are taken in lexicographic order, so column 1 always contains
    element 1.  For n=1 the all-ones 1x1 matrix is returned instead of the
    degenerate empty-subset column, keeping the single column usable.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return BinaryMatrix([[1]])
    t = min_t_sperner(n)
    a = np.zeros((t, n), dtype=np.uint8)
    for j, subset in enumerate(islice(k_subsets_lex(t, t // 2), n)):
        for i in subset:
            a[i - 1, j] = 1
    return BinaryMatrix(a)


#: Reference 2-CFF(9,12): the smallest product seed used throughout the
#: tests and demos.  Columns 1-3 are the three row triples; columns 4-12
#: pick one row from each triple.
REF_2CFF_9_12 = BinaryMatrix.from_rows(
    [
        [1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0],
        [1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1],
        [0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0],
        [0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0],
        [0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1],
        [0, 0, 1, 0, 1, 0, 0, 0, 1, 1, 0, 0],
        [0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0],
    ]
)
