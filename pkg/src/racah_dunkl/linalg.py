"""Exact rational linear algebra.

Two representations are used.  RationalMatrix stores an integer matrix
plus a single positive denominator, which keeps matrix products (the hot
path of the commutator-identity sweeps) in plain integer arithmetic with
a single gcd normalization at the end.  The Gaussian-elimination helpers
work directly with Fraction vectors and are used for basis solves and
rank computations, where sizes are small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class InconsistentSystem(ValueError):
    """Raised when a linear system has no exact solution."""


class RationalMatrix:
    """Immutable matrix of rationals stored as integers over a common denominator."""

    __slots__ = ("rows", "den", "nrows", "ncols")

    def __init__(self, rows: list[list[int]], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            rows = [[-x for x in row] for row in rows]
            den = -den
        self.rows = rows
        self.den = den
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @classmethod
    def from_fractions(cls, entries: list[list[Fraction]]) -> "RationalMatrix":
        den = 1
        for row in entries:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        rows = [[int(x * den) for x in row] for row in entries]
        return cls(rows, den)

    @classmethod
    def identity(cls, m: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(m)] for i in range(m)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def diagonal(cls, values: list[Fraction]) -> "RationalMatrix":
        den = 1
        for x in values:
            den = den * x.denominator // gcd(den, x.denominator)
        m = len(values)
        rows = [[0] * m for _ in range(m)]
        for i, x in enumerate(values):
            rows[i][i] = int(x * den)
        return cls(rows, den)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def at(self, i: int, j: int) -> Fraction:
        return Fraction(self.rows[i][j], self.den)

    def to_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in row] for row in self.rows]

    def normalized(self) -> "RationalMatrix":
        g = self.den
        for row in self.rows:
            for x in row:
                g = gcd(g, x)
                if g == 1:
                    return self
        return RationalMatrix(
            [[x // g for x in row] for row in self.rows], self.den // g
        )

    def _require_same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._require_same_shape(other)
        g = gcd(self.den, other.den)
        a = other.den // g
        b = self.den // g
        rows = [
            [x * a + y * b for x, y in zip(r1, r2)]
            for r1, r2 in zip(self.rows, other.rows)
        ]
        return RationalMatrix(rows, self.den * a).normalized()

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-x for x in row] for row in self.rows], self.den)

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            bt = list(zip(*other.rows))
            rows = [
                [sum(x * y for x, y in zip(row, col)) for col in bt]
                for row in self.rows
            ]
            return RationalMatrix(rows, self.den * other.den).normalized()
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        rows = [[x * c.numerator for x in row] for row in self.rows]
        return RationalMatrix(rows, self.den * c.denominator).normalized()

    def commutator(self, other: "RationalMatrix") -> "RationalMatrix":
        return self * other - other * self

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        # cross-multiplied comparison avoids a full normalization
        return all(
            x * other.den == y * self.den
            for r1, r2 in zip(self.rows, other.rows)
            for x, y in zip(r1, r2)
        )

    def __hash__(self):
        norm = self.normalized()
        return hash((norm.den, tuple(tuple(r) for r in norm.rows)))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([list(col) for col in zip(*self.rows)], self.den)

    def mul_diag_right(self, values: list[Fraction]) -> "RationalMatrix":
        """Product with diag(values) on the right: column j scaled by values[j]."""
        if len(values) != self.ncols:
            raise ValueError("diagonal length does not match column count")
        den = 1
        for v in values:
            den = den * v.denominator // gcd(den, v.denominator)
        nums = [int(v * den) for v in values]
        rows = [[x * v for x, v in zip(row, nums)] for row in self.rows]
        return RationalMatrix(rows, self.den * den).normalized()

    def mul_diag_left(self, values: list[Fraction]) -> "RationalMatrix":
        """Product with diag(values) on the left: row i scaled by values[i]."""
        if len(values) != self.nrows:
            raise ValueError("diagonal length does not match row count")
        den = 1
        for v in values:
            den = den * v.denominator // gcd(den, v.denominator)
        nums = [int(v * den) for v in values]
        rows = [[x * v for x in row] for row, v in zip(self.rows, nums)]
        return RationalMatrix(rows, self.den * den).normalized()

    def first_nonzero_column(self) -> int | None:
        """Index of the first column containing a nonzero entry, if any."""
        for j in range(self.ncols):
            if any(row[j] for row in self.rows):
                return j
        return None

    def __repr__(self) -> str:
        return f"RationalMatrix({self.nrows}x{self.ncols}, den={self.den})"


def solve_in_span(
    columns: list[list[Fraction]], targets: list[list[Fraction]]
) -> list[list[Fraction]]:
    """Solve sum_j c_j * columns[j] = target for each target, exactly.

    Returns one coefficient list per target.  Raises InconsistentSystem if
    some target is outside the span, and ValueError if the columns are
    linearly dependent (the solves here always expect a basis).
    """
    ncols = len(columns)
    nrows = len(columns[0]) if columns else len(targets[0]) if targets else 0
    ntargets = len(targets)
    for col in columns:
        if len(col) != nrows:
            raise ValueError("ragged column lengths")
    for t in targets:
        if len(t) != nrows:
            raise ValueError("target length does not match column length")

    # augmented rows: [columns | targets]
    aug = [
        [columns[j][i] for j in range(ncols)] + [targets[t][i] for t in range(ntargets)]
        for i in range(nrows)
    ]
    pivot_rows: list[int] = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("columns are linearly dependent")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[row])]
        pivot_rows.append(row)
        row += 1

    # rows below the pivots must have vanished entirely, else inconsistent
    for r in range(row, nrows):
        if any(aug[r][ncols + t] != 0 for t in range(ntargets)):
            raise InconsistentSystem("target outside the span of the given columns")

    return [
        [aug[j][ncols + t] for j in range(ncols)]
        for t in range(ntargets)
    ]


def matrix_rank(vectors: list[list[Fraction]]) -> int:
    """Rank of the matrix whose rows are the given vectors."""
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def fraction_matmul(
    a: list[list[Fraction]], b: list[list[Fraction]]
) -> list[list[Fraction]]:
    """Plain Fraction matrix product for small matrices."""
    if a and b and len(a[0]) != len(b):
        raise ValueError("inner dimension mismatch")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def leading_principal_minors(entries: list[list[Fraction]]) -> list[Fraction]:
    """Determinants of the leading principal submatrices, by exact elimination."""
    m = len(entries)
    minors: list[Fraction] = []
    for size in range(1, m + 1):
        sub = [row[:size] for row in entries[:size]]
        det = Fraction(1)
        for col in range(size):
            pivot = next((r for r in range(col, size) if sub[r][col] != 0), None)
            if pivot is None:
                det = Fraction(0)
                break
            if pivot != col:
                sub[col], sub[pivot] = sub[pivot], sub[col]
                det = -det
            det *= sub[col][col]
            inv = 1 / sub[col][col]
            for r in range(col + 1, size):
                if sub[r][col] != 0:
                    factor = sub[r][col] * inv
                    sub[r] = [x - factor * y for x, y in zip(sub[r], sub[col])]
        minors.append(det)
    return minors
