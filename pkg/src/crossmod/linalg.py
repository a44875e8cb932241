"""Dense exact matrices, row spaces, and graded/tensor space bookkeeping.

Everything here is field-agnostic: entries are raw scalar values and all
arithmetic goes through the attached field object. Zero-dimensional shapes
(0xn, nx0) are first-class, since graded algebras routinely have empty grades.
"""

from __future__ import annotations

from dataclasses import dataclass


class SingularMatrixError(ValueError):
    """Raised when inverting a singular (or non-square) matrix."""


class Matrix:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data, cols: int | None = None):
        # cols must be given explicitly when there are no rows
        self.field = field
        rows = tuple(tuple(row) for row in data)
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else (cols or 0)
        if any(len(row) != self.cols for row in rows):
            raise ValueError("ragged matrix data")
        self.data = rows

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_ints(cls, field, data) -> "Matrix":
        return cls(field, [[field.of(x) for x in row] for row in data])

    @classmethod
    def column(cls, field, vec) -> "Matrix":
        return cls(field, [[x] for x in vec])

    @classmethod
    def row(cls, field, vec) -> "Matrix":
        m = cls(field, [tuple(vec)])
        return m

    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape() == other.shape()
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.shape(), self.data))

    def __repr__(self):
        fmt = self.field.format
        body = "; ".join(" ".join(fmt(x) for x in row) for row in self.data)
        return f"Matrix[{self.rows}x{self.cols}]({body})"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape() != other.shape():
            raise ValueError("shape mismatch in matrix addition")
        f = self.field
        return Matrix(f, [
            [f.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)
        ])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape() != other.shape():
            raise ValueError("shape mismatch in matrix subtraction")
        f = self.field
        return Matrix(f, [
            [f.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)
        ])

    def scale(self, scalar) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.mul(scalar, x) for x in row] for row in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in matrix product: {self.shape()} @ {other.shape()}"
            )
        f = self.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = f.zero
                for k in range(self.cols):
                    acc = f.add(acc, f.mul(self.data[i][k], other.data[k][j]))
                row.append(acc)
            out.append(row)
        return Matrix(f, out, cols=other.cols)

    def apply(self, vec):
        """Matrix times column vector, given and returned as plain tuples."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        out = []
        for i in range(self.rows):
            acc = f.zero
            for k in range(self.cols):
                acc = f.add(acc, f.mul(self.data[i][k], vec[k]))
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [[self.data[i][j] for i in range(self.rows)]
                                   for j in range(self.cols)], cols=self.rows)

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        f = self.field
        acc = f.zero
        for i in range(self.rows):
            acc = f.add(acc, self.data[i][i])
        return acc

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise SingularMatrixError("cannot invert non-square matrix")
        n = self.rows
        f = self.field
        work = [list(row) + list(ident_row)
                for row, ident_row in zip(self.data, Matrix.identity(f, n).data)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if not f.is_zero(work[r][col])), None)
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            inv_p = f.div(f.one, work[col][col])
            work[col] = [f.mul(inv_p, x) for x in work[col]]
            for r in range(n):
                if r != col and not f.is_zero(work[r][col]):
                    factor = work[r][col]
                    work[r] = [f.sub(x, f.mul(factor, y))
                               for x, y in zip(work[r], work[col])]
        return Matrix(f, [row[n:] for row in work])

    def solve(self, b):
        """One solution x of A x = b, or None if the system is inconsistent."""
        f = self.field
        if len(b) != self.rows:
            raise ValueError("right-hand side length mismatch")
        work = [list(row) + [b[i]] for i, row in enumerate(self.data)]
        pivots = []
        r = 0
        for col in range(self.cols):
            pivot = next((k for k in range(r, self.rows)
                          if not f.is_zero(work[k][col])), None)
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            inv_p = f.div(f.one, work[r][col])
            work[r] = [f.mul(inv_p, x) for x in work[r]]
            for k in range(self.rows):
                if k != r and not f.is_zero(work[k][col]):
                    factor = work[k][col]
                    work[k] = [f.sub(x, f.mul(factor, y))
                               for x, y in zip(work[k], work[r])]
            pivots.append(col)
            r += 1
        for k in range(r, self.rows):
            if not f.is_zero(work[k][self.cols]):
                return None
        x = [f.zero] * self.cols
        for k, col in enumerate(pivots):
            x[col] = work[k][self.cols]
        return tuple(x)

    def nullspace(self):
        """A basis of the right kernel {x : A x = 0}."""
        f = self.field
        work = [list(row) for row in self.data]
        pivots = []
        r = 0
        for col in range(self.cols):
            pivot = next((k for k in range(r, self.rows)
                          if not f.is_zero(work[k][col])), None)
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            inv_p = f.div(f.one, work[r][col])
            work[r] = [f.mul(inv_p, x) for x in work[r]]
            for k in range(self.rows):
                if k != r and not f.is_zero(work[k][col]):
                    factor = work[k][col]
                    work[k] = [f.sub(x, f.mul(factor, y))
                               for x, y in zip(work[k], work[r])]
            pivots.append(col)
            r += 1
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            vec = [f.zero] * self.cols
            vec[fc] = f.one
            for k, pc in enumerate(pivots):
                vec[pc] = f.neg(work[k][fc])
            basis.append(tuple(vec))
        return basis

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; the left factor is the most significant index."""
        f = self.field
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        if rows == 0 or cols == 0:
            return Matrix.zeros(f, rows, cols)
        out = [[f.zero] * cols for _ in range(rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.data[i][j]
                for k in range(other.rows):
                    for l in range(other.cols):
                        out[i * other.rows + k][j * other.cols + l] = f.mul(a, other.data[k][l])
        return Matrix(f, out)

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(x) for row in self.data for x in row)

    def to_json(self):
        fmt = self.field.format
        return [[fmt(x) for x in row] for row in self.data]

    @classmethod
    def from_json(cls, field, data, rows=None, cols=None) -> "Matrix":
        m = cls(field, [[field.parse(x) for x in row] for row in data], cols=cols)
        if rows is not None and m.rows != rows:
            raise ValueError(f"expected {rows} rows, got {m.rows}")
        if cols is not None and m.cols != cols:
            raise ValueError(f"expected {cols} cols, got {m.cols}")
        return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def mat_trace(m: Matrix):
    return m.trace()


def mat_inverse(m: Matrix) -> Matrix:
    return m.inverse()


def dual_basis(pairing: Matrix) -> Matrix:
    """Copairing matrix of a nondegenerate pairing: columns express the dual
    basis, so ``pairing @ dual_basis(pairing)`` is the identity."""
    return pairing.inverse()


def vec_add(field, a, b):
    return tuple(field.add(x, y) for x, y in zip(a, b, strict=True))

def vec_sub(field, a, b):
    return tuple(field.sub(x, y) for x, y in zip(a, b, strict=True))

def vec_scale(field, s, a):
    return tuple(field.mul(s, x) for x in a)

def vec_is_zero(field, a) -> bool:
    return all(field.is_zero(x) for x in a)

def unit_vector(field, n: int, i: int):
    return tuple(field.one if j == i else field.zero for j in range(n))

def zero_vector(field, n: int):
    return (field.zero,) * n


class RowSpace:
    """A subspace of K^n kept in reduced row-echelon form.

    Supports incremental insertion, membership, and quotient bookkeeping
    (pivot columns vs. free columns).
    """

    def __init__(self, field, n: int):
        self.field = field
        self.n = n
        self.basis: list[tuple] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vec):
        f = self.field
        vec = tuple(vec)
        if len(vec) != self.n:
            raise ValueError("vector length mismatch")
        for row, piv in zip(self.basis, self.pivots):
            c = vec[piv]
            if not f.is_zero(c):
                vec = tuple(f.sub(x, f.mul(c, y)) for x, y in zip(vec, row))
        return vec

    def contains(self, vec) -> bool:
        return vec_is_zero(self.field, self.reduce(vec))

    def add(self, vec) -> bool:
        """Insert a vector; returns True if the space grew."""
        f = self.field
        residual = self.reduce(vec)
        piv = next((i for i, x in enumerate(residual) if not f.is_zero(x)), None)
        if piv is None:
            return False
        inv = f.div(f.one, residual[piv])
        residual = tuple(f.mul(inv, x) for x in residual)
        for k, (row, p) in enumerate(zip(self.basis, self.pivots)):
            c = row[piv]
            if not f.is_zero(c):
                self.basis[k] = tuple(f.sub(x, f.mul(c, y)) for x, y in zip(row, residual))
        self.basis.append(residual)
        self.pivots.append(piv)
        order = sorted(range(len(self.pivots)), key=lambda k: self.pivots[k])
        self.basis = [self.basis[k] for k in order]
        self.pivots = [self.pivots[k] for k in order]
        return True

    def free_columns(self) -> list[int]:
        pivot_set = set(self.pivots)
        return [j for j in range(self.n) if j not in pivot_set]

    def quotient_coords(self, vec):
        """Coordinates of vec + W in the basis {e_j + W : j free}."""
        residual = self.reduce(vec)
        return tuple(residual[j] for j in self.free_columns())

    def quotient_lift(self, coords):
        """Canonical representative of a quotient coordinate vector."""
        free = self.free_columns()
        if len(coords) != len(free):
            raise ValueError("quotient coordinate length mismatch")
        vec = [self.field.zero] * self.n
        for j, c in zip(free, coords):
            vec[j] = c
        return tuple(vec)


@dataclass(frozen=True)
class GradedSpace:
    """Finite-dimensional space split into summands indexed by group elements."""

    group_order: int
    dims: tuple[int, ...]
    basis_names: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if len(self.dims) != self.group_order or len(self.basis_names) != self.group_order:
            raise ValueError("dims/basis_names must have one entry per group element")
        for g, names in enumerate(self.basis_names):
            if len(names) != self.dims[g]:
                raise ValueError(f"grade {g}: {len(names)} names for dim {self.dims[g]}")
            if len(set(names)) != len(names):
                raise ValueError(f"grade {g}: duplicate basis names")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def summand(self, g: int) -> "TensorSpace":
        return TensorSpace(((g, self.dims[g]),))


@dataclass(frozen=True)
class TensorSpace:
    """Ordered tensor product of graded summands; empty product is the field."""

    factors: tuple[tuple[int, int], ...]  # (grade, dim) per factor

    @property
    def dim(self) -> int:
        d = 1
        for _, k in self.factors:
            d *= k
        return d

    def grades(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.factors)

    def dims(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.factors)


def tensor(a: TensorSpace, b: TensorSpace) -> TensorSpace:
    """Tensor product: factors concatenate, basis is lexicographic pairs."""
    return TensorSpace(a.factors + b.factors)


def tensor_graded(a, b) -> TensorSpace:
    """Tensor of graded summands under product-of-grades bookkeeping: the
    result carries the ordered grade list; dimensions multiply and the basis
    is ordered (lexicographic) pairs. Accepts summands or tensor products."""
    if isinstance(a, GradedSpace) or isinstance(b, GradedSpace):
        raise ValueError("pick a summand first: tensor_graded(x.summand(g), ...)")
    return tensor(a, b)
