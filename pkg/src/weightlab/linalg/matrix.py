"""Dense exact matrices and the elimination-based solvers built on them."""

from .fields import QQ, PrimeField
from .kernels import rref_mod_p, rref_rational


class DimensionError(ValueError):
    pass


class Matrix:
    """Immutable dense matrix over an exact field.

    ``rows`` is a tuple of row tuples.  Zero-row and zero-column shapes are
    allowed and keep their declared sizes.
    """

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field, rows, nrows=None, ncols=None):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise DimensionError(f"entry grid does not match declared shape {nrows}x{ncols}")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, field, rows, nrows, ncols):
        m = object.__new__(cls)
        m.field = field
        m.nrows = nrows
        m.ncols = ncols
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, field, cols, nrows):
        if not cols:
            return cls.zeros(field, nrows, 0)
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], nrows, len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self):
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        red = self.field.reduce
        rows = tuple(tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix._raw(self.field, rows, self.nrows, self.ncols)

    def __sub__(self, other):
        self._check_same(other)
        red = self.field.reduce
        rows = tuple(tuple(red(a - b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        return Matrix._raw(self.field, rows, self.nrows, self.ncols)

    def __neg__(self):
        red = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(red(-a) for a in r) for r in self.rows), self.nrows, self.ncols)

    def scale(self, c):
        red = self.field.reduce
        c = self.field(c)
        return Matrix._raw(self.field, tuple(tuple(red(c * a) for a in r) for r in self.rows), self.nrows, self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        red = self.field.reduce
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(red(sum(a * c[k] for k, a in nz)) if nz else self.field.zero for c in cols))
        return Matrix._raw(self.field, tuple(out), self.nrows, other.ncols)

    def transpose(self):
        rows = tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix._raw(self.field, tuple(tuple(r) for r in rows), self.ncols, self.nrows)

    T = property(transpose)

    def submatrix(self, row_idx, col_idx):
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        rows = tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx)
        return Matrix._raw(self.field, rows, len(row_idx), len(col_idx))

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise DimensionError("row count mismatch in hstack")
        return Matrix._raw(self.field, tuple(a + b for a, b in zip(self.rows, other.rows)), self.nrows, self.ncols + other.ncols)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionError("column count mismatch in vstack")
        return Matrix._raw(self.field, self.rows + other.rows, self.nrows + other.nrows, self.ncols)

    def to_json(self):
        return [[self.field.to_str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, field, data, nrows=None, ncols=None):
        return cls(field, [[field(x) for x in r] for r in data], nrows, ncols)


def block(field, blocks, row_sizes, col_sizes):
    """Assemble a block matrix; ``None`` entries are zero blocks."""
    rows = []
    for bi, rs in enumerate(row_sizes):
        for i in range(rs):
            row = []
            for bj, cs in enumerate(col_sizes):
                b = blocks[bi][bj]
                if b is None:
                    row.extend([field.zero] * cs)
                else:
                    if b.shape != (rs, cs):
                        raise DimensionError(f"block ({bi},{bj}) has shape {b.shape}, expected {(rs, cs)}")
                    row.extend(b.rows[i])
            rows.append(tuple(row))
    return Matrix._raw(field, tuple(rows), sum(row_sizes), sum(col_sizes))


def rref(m):
    """Return ``(R, pivots)`` with R the nonzero rows of the reduced echelon form."""
    if isinstance(m.field, PrimeField):
        rows, piv = rref_mod_p([list(r) for r in m.rows], m.ncols, m.field.p)
    else:
        rows, piv = rref_rational(m.rows, m.ncols)
    return Matrix._raw(m.field, tuple(tuple(r) for r in rows), len(rows), m.ncols), piv


def rank(m):
    """Rank by exact Gaussian elimination."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m):
    """Columns spanning the right kernel of ``m``.

    The basis is the standard one read off the reduced echelon form: one
    vector per free column, with a 1 in that column.
    """
    f = m.field
    n = m.ncols
    if m.nrows == 0:
        return Matrix.identity(f, n)
    r, piv = rref(m)
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    cols = []
    for fj in free:
        v = [f.zero] * n
        v[fj] = f.one
        for i, pj in enumerate(piv):
            v[pj] = f.reduce(-r.rows[i][fj])
        cols.append(v)
    return Matrix.from_columns(f, cols, n)


def solve(a, b):
    """Return x with ``a @ x == b``, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if a.nrows != b.nrows:
        raise DimensionError(f"solve: a has {a.nrows} rows, b has {b.nrows}")
    f = a.field
    n, k = a.ncols, b.ncols
    if a.nrows == 0:
        return Matrix.zeros(f, n, k)
    aug = a.hstack(b)
    r, piv = rref(aug)
    if any(p >= n for p in piv):
        return None
    x = [[f.zero] * k for _ in range(n)]
    for i, pj in enumerate(piv):
        x[pj] = list(r.rows[i][n:])
    return Matrix._raw(f, tuple(tuple(row) for row in x), n, k)


def inverse(m):
    if m.nrows != m.ncols:
        raise DimensionError("inverse of a non-square matrix")
    x = solve(m, Matrix.identity(m.field, m.nrows))
    if x is None:
        raise ZeroDivisionError("matrix is singular")
    return x


def column_space_basis(m):
    """Pivot columns of ``m`` (a basis of its column space, in order)."""
    if m.nrows == 0 or m.ncols == 0:
        return []
    _, piv = rref(m)
    return piv


def rank_factorization(m):
    """Return ``(C, R)`` with ``m == C @ R``, C full column rank, R full row rank."""
    r, piv = rref(m)
    c = m.submatrix(range(m.nrows), piv)
    return c, r


__all__ = [
    "Matrix", "DimensionError", "block", "rref", "rank", "kernel_basis", "solve",
    "inverse", "column_space_basis", "rank_factorization", "QQ",
]
