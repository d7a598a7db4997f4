"""Exact dense linear algebra over the rationals.

The scalar carrier is plain ``int`` / ``fractions.Fraction``, so every
identity checked downstream holds exactly; floats are rejected at the
validated constructors and never enter. Matrices are immutable after
construction and all operations are pure, which makes concurrent read-only
use safe.

Index convention, fixed project-wide: the Kronecker product ``kron(A, B)``
uses the composite index ``(i, k) -> i * dim_B + k``, i.e. leg order is
left-to-right and the leftmost leg is the most significant digit.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "Matrix",
    "NotInvariant",
    "kron",
    "kron_all",
    "direct_sum",
    "basis_projection",
    "complement_projection",
    "matrix_power_entry",
    "state_moments",
    "subspace_restrict",
    "flip23_permutation",
    "tensor_index",
    "sparse_columns",
    "sparse_apply",
]

_SCALARS = (int, Fraction)


class NotInvariant(Exception):
    """An operator mapped a sub-basis vector outside the spanned subspace."""


def _is_exact(x) -> bool:
    return isinstance(x, _SCALARS) and not isinstance(x, bool)


class Matrix:
    """Immutable dense matrix with exact rational entries (row-major).

    ``Matrix(rows, cols, data)`` is the trusted fast path used internally;
    ``Matrix.from_rows`` validates shape and entry types.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: tuple):
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(rows[0])
        flat = []
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged rows")
            for x in r:
                if not _is_exact(x):
                    raise ValueError(f"entry {x!r} is not an exact rational")
            flat.extend(r)
        return cls(len(rows), width, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        data = [0] * (n * n)
        for i in range(n):
            data[i * n + i] = 1
        return cls(n, n, tuple(data))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int):
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.data[j :: self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        return all(
            self.entry(i, j) == self.entry(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def transpose(self) -> "Matrix":
        data = tuple(
            self.data[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return Matrix(self.cols, self.rows, data)

    def apply(self, vec) -> list:
        """Matrix-vector product with a dense list."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        d = self.data
        c = self.cols
        for i in range(self.rows):
            base = i * c
            out.append(sum(d[base + j] * vec[j] for j in range(c) if vec[j]))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(a == b for a, b in zip(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return Matrix(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.data, other.data)),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in subtraction")
        return Matrix(
            self.rows,
            self.cols,
            tuple(a - b for a, b in zip(self.data, other.data)),
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.data))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in multiplication")
            bT = other.transpose()
            n, m, k = self.rows, other.cols, self.cols
            data = []
            for i in range(n):
                arow = self.row(i)
                for j in range(m):
                    bcol = bT.row(j)
                    data.append(sum(arow[t] * bcol[t] for t in range(k) if arow[t]))
            return Matrix(n, m, tuple(data))
        if _is_exact(other):
            return Matrix(self.rows, self.cols, tuple(a * other for a in self.data))
        return NotImplemented

    def __rmul__(self, other):
        if _is_exact(other):
            return Matrix(self.rows, self.cols, tuple(other * a for a in self.data))
        return NotImplemented

    def __pow__(self, n: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            raise ValueError("negative matrix power")
        result = Matrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} {self.to_rows()!r})"


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; composite index (i, k) -> i * b.rows + k."""
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    data = []
    for i in range(a.rows):
        arow = a.row(i)
        for k in range(b.rows):
            brow = b.row(k)
            for j in range(a.cols):
                aij = arow[j]
                if aij:
                    data.extend(aij * brow[l] for l in range(b.cols))
                else:
                    data.extend([0] * b.cols)
    return Matrix(rows, cols, tuple(data))


def kron_all(*mats: Matrix) -> Matrix:
    if not mats:
        raise ValueError("empty Kronecker product")
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


def direct_sum(*mats: Matrix) -> Matrix:
    """Block-diagonal sum; block order follows the argument order."""
    if not mats:
        raise ValueError("empty direct sum")
    for m in mats:
        if not m.is_square:
            raise ValueError("direct_sum requires square matrices")
    dim = sum(m.rows for m in mats)
    data = [0] * (dim * dim)
    off = 0
    for m in mats:
        for i in range(m.rows):
            base = (off + i) * dim + off
            data[base : base + m.cols] = m.row(i)
        off += m.rows
    return Matrix(dim, dim, tuple(data))


def basis_projection(dim: int, i: int) -> Matrix:
    """Rank-one projection onto the i-th coordinate axis."""
    if not 0 <= i < dim:
        raise IndexError(f"index {i} out of range for dimension {dim}")
    data = [0] * (dim * dim)
    data[i * dim + i] = 1
    return Matrix(dim, dim, tuple(data))


def complement_projection(dim: int, i: int) -> Matrix:
    """Identity minus the coordinate projection."""
    return Matrix.identity(dim) - basis_projection(dim, i)


def sparse_columns(a: Matrix) -> list:
    """Column-sparse view: per column, the list of (row, value) nonzeros."""
    cols = []
    for j in range(a.cols):
        col = a.column(j)
        cols.append([(r, v) for r, v in enumerate(col) if v])
    return cols


def sparse_apply(cols: list, vec: dict) -> dict:
    """Apply a column-sparse matrix to a sparse vector {index: value}."""
    out: dict = {}
    for c, x in vec.items():
        for r, v in cols[c]:
            out[r] = out.get(r, 0) + v * x
    return {k: v for k, v in out.items() if v}


def matrix_power_entry(a: Matrix, n: int, i: int, j: int):
    """Entry (i, j) of the n-th power, by iterated exact multiplication."""
    if not a.is_square:
        raise ValueError("matrix_power_entry requires a square matrix")
    if not (0 <= i < a.rows and 0 <= j < a.rows):
        raise IndexError("index out of range")
    if n < 0:
        raise ValueError("negative power")
    cols = sparse_columns(a)
    vec = {j: 1}
    for _ in range(n):
        vec = sparse_apply(cols, vec)
    return vec.get(i, 0)


def state_moments(a: Matrix, order: int, at: int) -> tuple:
    """The sequence <delta_at, a^n delta_at> for n = 0..order."""
    if not a.is_square:
        raise ValueError("state_moments requires a square matrix")
    if not 0 <= at < a.rows:
        raise IndexError("state index out of range")
    cols = sparse_columns(a)
    vec = {at: 1}
    out = [1]
    for _ in range(order):
        vec = sparse_apply(cols, vec)
        out.append(vec.get(at, 0))
    return tuple(out)


def subspace_restrict(a: Matrix, basis) -> Matrix:
    """Matrix of `a` in the ordered sub-basis of coordinate vectors.

    Raises NotInvariant if `a` maps any basis vector outside the span,
    which signals a wrong embedding rather than a recoverable condition.
    """
    basis = list(basis)
    if not a.is_square:
        raise ValueError("subspace_restrict requires a square matrix")
    if len(set(basis)) != len(basis):
        raise ValueError("basis indices must be distinct")
    for b in basis:
        if not 0 <= b < a.rows:
            raise IndexError(f"basis index {b} out of range")
    pos = {b: k for k, b in enumerate(basis)}
    n = len(basis)
    data = [0] * (n * n)
    for k, b in enumerate(basis):
        col = a.column(b)
        for r, v in enumerate(col):
            if not v:
                continue
            if r not in pos:
                raise NotInvariant(
                    f"image of basis vector {b} has weight on ambient index {r}"
                )
            data[pos[r] * n + k] = v
    return Matrix(n, n, tuple(data))


def tensor_index(dims, coords) -> int:
    """Composite index of per-leg coordinates, leftmost leg most significant."""
    if len(dims) != len(coords):
        raise ValueError("dims/coords length mismatch")
    idx = 0
    for d, c in zip(dims, coords):
        if not 0 <= c < d:
            raise IndexError(f"coordinate {c} out of range for leg of size {d}")
        idx = idx * d + c
    return idx


def flip23_permutation(d1: int, d2: int, d3: int) -> Matrix:
    """Permutation matrix swapping the second and third tensor legs.

    Sends the basis vector with coordinates (i, j, k) to (i, k, j); it is
    an involution, and conjugating kron(A, B, C) by it yields kron(A, C, B).
    """
    dim = d1 * d2 * d3
    data = [0] * (dim * dim)
    for i in range(d1):
        for j in range(d2):
            for k in range(d3):
                src = tensor_index((d1, d2, d3), (i, j, k))
                dst = tensor_index((d1, d3, d2), (i, k, j))
                data[dst * dim + src] = 1
    return Matrix(dim, dim, tuple(data))
