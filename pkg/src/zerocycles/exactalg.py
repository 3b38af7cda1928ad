"""Exact integer linear algebra: Smith normal form and what follows from it.

Everything here works on Python ints, so there is no overflow however large
the intermediate coefficients get during elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major integer matrix. Empty shapes (0 x n, n x 0) are allowed."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat: list[int] = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(int(x) for x in r)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls.from_rows([list(c) for c in columns], cols=rows).transpose()

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in ocols)
        return IntMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)


def hstack(blocks: Iterable[IntMatrix], rows: int | None = None) -> IntMatrix:
    """Concatenate matrices side by side; ``rows`` fixes the height when ``blocks`` is empty."""
    blocks = list(blocks)
    if rows is None:
        if not blocks:
            raise ValueError("need rows= for an empty hstack")
        rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ValueError("hstack height mismatch")
    out = [[] for _ in range(rows)]
    for b in blocks:
        for i in range(rows):
            out[i].extend(b.row(i))
    return IntMatrix.from_rows(out, cols=sum(b.cols for b in blocks))


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


@dataclass(frozen=True)
class CokernelShape:
    free_rank: int
    torsion: tuple[int, ...]


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    m, n = a.shape
    A = a.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    # row op: row[dst] += k * row[src], mirrored on U
    def add_row(dst: int, src: int, k: int) -> None:
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, k: int) -> None:
        for r in A:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        pivot = _smallest_entry(A, t, m, n)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            # leftover remainders are strictly smaller than |p|: re-pivot
            rem = _smallest_in_cross(A, t, m, n)
            if rem is not None:
                swap_rows(t, rem[0])
                swap_cols(t, rem[1])
                continue
            # divisibility: any entry not divisible by p gets folded into row t
            for i in range(t + 1, m):
                bad = next((j for j in range(t + 1, n) if A[i][j] % p), None)
                if bad is not None:
                    add_row(t, i, 1)
                    done = False
                    break
            if done:
                break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    factors = tuple(A[i][i] for i in range(min(m, n)) if A[i][i])
    return SmithDecomposition(
        U=IntMatrix.from_rows(U, cols=m),
        D=IntMatrix.from_rows(A, cols=n),
        V=IntMatrix.from_rows(V, cols=n),
        invariant_factors=factors,
    )


def _smallest_entry(A: list[list[int]], t: int, m: int, n: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, m):
        for j in range(t, n):
            x = abs(A[i][j])
            if x and (best is None or x < best[0]):
                best = (x, i, j)
    return None if best is None else (best[1], best[2])


def _smallest_in_cross(A: list[list[int]], t: int, m: int, n: int) -> tuple[int, int] | None:
    # scanned in (row, col) order so the first minimum wins ties
    cells = [(t, j) for j in range(t + 1, n)] + [(i, t) for i in range(t + 1, m)]
    best = None
    for i, j in cells:
        x = abs(A[i][j])
        if x and (best is None or x < best[0]):
            best = (x, i, j)
    return None if best is None else (best[1], best[2])


def rank(a: IntMatrix) -> int:
    return smith_normal_form(a).rank


def kernel_basis(a: IntMatrix) -> list[tuple[int, ...]]:
    """Saturated basis of ``{v in Z^cols : a v = 0}``.

    Taken from the trailing columns of the right unimodular factor, so the
    basis extends to a basis of Z^cols.
    """
    snf = smith_normal_form(a)
    return [snf.V.column(j) for j in range(snf.rank, a.cols)]


def kernel_matrix(a: IntMatrix) -> IntMatrix:
    """Kernel basis as the columns of a ``cols x nullity`` matrix."""
    return IntMatrix.from_columns(kernel_basis(a), rows=a.cols)


def cokernel_shape(a: IntMatrix) -> CokernelShape:
    snf = smith_normal_form(a)
    return CokernelShape(
        free_rank=a.rows - snf.rank,
        torsion=tuple(d for d in snf.invariant_factors if d > 1),
    )


def spans_full_lattice(columns: IntMatrix) -> bool:
    """True iff the columns generate all of Z^rows."""
    snf = smith_normal_form(columns)
    return snf.rank == columns.rows and all(d == 1 for d in snf.invariant_factors)


def determinant(a: IntMatrix) -> int:
    """Bareiss fraction-free determinant of a square matrix."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    M = a.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def rational_rank(a: IntMatrix) -> int:
    """Rank over Q by Gaussian elimination on Fractions."""
    M = [[Fraction(x) for x in a.row(i)] for i in range(a.rows)]
    r = 0
    for c in range(a.cols):
        piv = next((i for i in range(r, a.rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, a.rows):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    return r
