"""Exact dense linear algebra over a :class:`~quasihopf.fields.Field`.

Vectors are plain tuples of scalars.  Tensor products of coordinate spaces
use the left-factor-major convention throughout the package: the basis
vector ``e_i (x) e_j`` of ``U (x) V`` sits at flat index ``i * dim V + j``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from .fields import Field

CoordVector = tuple


class NoSolution(ArithmeticError):
    """The linear system is inconsistent."""


class NotInvertible(ArithmeticError):
    """A matrix or algebra element has no two-sided inverse."""


class LinearMap:
    """Matrix of a linear map ``k^src_dim -> k^dst_dim`` (entries are ``dst x src``)."""

    __slots__ = ("field", "src_dim", "dst_dim", "rows", "__dict__")

    def __init__(self, rows: Sequence[Sequence], field: Field, src_dim: int | None = None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in row) for row in rows)
        self.dst_dim = len(self.rows)
        if src_dim is None:
            if not self.rows:
                raise ValueError("src_dim required for a map with no rows")
            src_dim = len(self.rows[0])
        self.src_dim = src_dim
        for row in self.rows:
            if len(row) != src_dim:
                raise ValueError("ragged matrix")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: Field, dst_dim: int) -> LinearMap:
        cols = [tuple(c) for c in columns]
        for c in cols:
            if len(c) != dst_dim:
                raise ValueError("column length does not match dst_dim")
        rows = [[c[r] for c in cols] for r in range(dst_dim)]
        return cls(rows, field, src_dim=len(cols))

    @classmethod
    def identity(cls, n: int, field: Field) -> LinearMap:
        one, zero = field.one, field.zero
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], field, n)

    @classmethod
    def zeros(cls, dst_dim: int, src_dim: int, field: Field) -> LinearMap:
        return cls([[field.zero] * src_dim for _ in range(dst_dim)], field, src_dim)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.dst_dim, self.src_dim)

    @cached_property
    def sparse_columns(self) -> tuple[tuple[tuple[int, object], ...], ...]:
        """Nonzero ``(row, value)`` pairs of each column."""
        return tuple(
            tuple((r, self.rows[r][c]) for r in range(self.dst_dim) if self.rows[r][c])
            for c in range(self.src_dim)
        )

    def column(self, j: int) -> CoordVector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[CoordVector]:
        return [self.column(j) for j in range(self.src_dim)]

    @property
    def T(self) -> LinearMap:
        return LinearMap([list(c) for c in self.columns()], self.field, self.dst_dim)

    def apply(self, vec: Sequence) -> CoordVector:
        if len(vec) != self.src_dim:
            raise ValueError(f"vector of length {len(vec)} applied to {self.shape} map")
        zero = self.field.zero
        out = [zero] * self.dst_dim
        for c, x in enumerate(vec):
            if x:
                for r, a in self.sparse_columns[c]:
                    out[r] = out[r] + a * x
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, LinearMap):
            if other.dst_dim != self.src_dim:
                raise ValueError(f"cannot compose {self.shape} with {other.shape}")
            cols = [self.apply(other.column(j)) for j in range(other.src_dim)]
            return LinearMap.from_columns(cols, self.field, self.dst_dim)
        return self.apply(other)

    def __call__(self, vec: Sequence) -> CoordVector:
        return self.apply(vec)

    def __add__(self, other: LinearMap) -> LinearMap:
        self._same_shape(other)
        return LinearMap([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                         self.field, self.src_dim)

    def __sub__(self, other: LinearMap) -> LinearMap:
        self._same_shape(other)
        return LinearMap([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                         self.field, self.src_dim)

    def scale(self, c) -> LinearMap:
        return LinearMap([[c * a for a in r] for r in self.rows], self.field, self.src_dim)

    def _same_shape(self, other: LinearMap):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"LinearMap({self.dst_dim}x{self.src_dim}, {self.field.spec})"

    @property
    def rank(self) -> int:
        return rank(self)


def _rref(rows: list[list], field: Field, ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (in place), leftmost-nonzero pivoting.

    Only the first ``ncols`` columns are eligible as pivot columns.
    """
    if not rows:
        return rows, []
    width = len(rows[0])
    ncols = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = field.one / prow[c]
        if inv != 1:
            prow = rows[r] = [x * inv for x in prow]
        nz = [j for j in range(c, width) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(f: LinearMap) -> int:
    _, pivots = _rref([list(r) for r in f.rows], f.field, f.src_dim)
    return len(pivots)


def solve_linear(f: LinearMap, rhs: Sequence) -> CoordVector:
    """Return the leftmost-pivot particular solution of ``f x = rhs``.

    Free variables are set to zero.  Raises :class:`NoSolution` when the
    system is inconsistent.
    """
    if len(rhs) != f.dst_dim:
        raise ValueError(f"rhs of length {len(rhs)} for a {f.shape} map")
    field = f.field
    aug = [list(row) + [field(b)] for row, b in zip(f.rows, rhs)]
    aug, pivots = _rref(aug, field, f.src_dim)
    for row in aug[len(pivots):]:
        if row[-1]:
            raise NoSolution("inconsistent linear system")
    x = [field.zero] * f.src_dim
    for i, c in enumerate(pivots):
        x[c] = aug[i][-1]
    return tuple(x)


def image_basis(f: LinearMap) -> list[CoordVector]:
    """Reduced column-echelon basis of the column space of ``f``."""
    if f.src_dim == 0 or f.dst_dim == 0:
        return []
    rows, pivots = _rref([list(c) for c in f.columns()], f.field)
    return [tuple(rows[i]) for i in range(len(pivots))]


def kernel_basis(f: LinearMap) -> list[CoordVector]:
    """Basis of the null space, one vector per free column (free entry = 1)."""
    field = f.field
    if f.dst_dim == 0:
        return [tuple(field.one if i == j else field.zero for i in range(f.src_dim))
                for j in range(f.src_dim)]
    rows, pivots = _rref([list(r) for r in f.rows], field, f.src_dim)
    pivset = set(pivots)
    basis = []
    for free in range(f.src_dim):
        if free in pivset:
            continue
        x = [field.zero] * f.src_dim
        x[free] = field.one
        for i, c in enumerate(pivots):
            x[c] = -rows[i][free]
        basis.append(tuple(x))
    return basis


def inverse(f: LinearMap) -> LinearMap:
    if f.src_dim != f.dst_dim:
        raise NotInvertible(f"non-square {f.shape} map")
    n = f.src_dim
    field = f.field
    one, zero = field.one, field.zero
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(f.rows)]
    aug, pivots = _rref(aug, field, n)
    if len(pivots) != n:
        raise NotInvertible("singular matrix")
    return LinearMap([row[n:] for row in aug], field, n)


def kron(f: LinearMap, g: LinearMap) -> LinearMap:
    """Kronecker product; row/column ``(i, j)`` of the result is ``i * dim_g + j``."""
    if f.field != g.field:
        raise ValueError("field mismatch")
    rows = []
    for frow in f.rows:
        for grow in g.rows:
            rows.append([a * b for a in frow for b in grow])
    return LinearMap(rows, f.field, f.src_dim * g.src_dim)


def same_span(us: Sequence[Sequence], ws: Sequence[Sequence], field: Field, dim: int) -> bool:
    """Whether two finite families span the same subspace of ``k^dim``."""
    def echelon(vs):
        if not vs:
            return []
        return image_basis(LinearMap.from_columns(vs, field, dim))
    return echelon(list(us)) == echelon(list(ws))
