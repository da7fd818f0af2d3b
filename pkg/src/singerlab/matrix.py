"""Dense exact linear algebra over F_q.

Matrices are immutable n x n arrays of integer-encoded field elements,
stored row-major, with value equality and hashing (required by the
subgroup-closure sets).  Vectors are rows; matrices act on column vectors
(A.apply(v) computes A*v), which reproduces companion matrices exactly as
conventionally displayed.

Text form: rows separated by ';', entries comma-separated encodings,
e.g. "0,1;1,2" for [[0,1],[1,2]].
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .errors import BudgetExceededError
from .ff import FieldSpec, _multiplicative_order
from .poly import Poly

ENUMERATION_BUDGET = 10**8


def mul_entries(a: tuple, b: tuple, n: int, field: FieldSpec) -> tuple:
    """Row-major flat product of two n x n entry tuples."""
    if field.k == 1:
        p = field.p
        rng = range(n)
        return tuple(
            sum(a[i * n + k] * b[k * n + j] for k in rng) % p
            for i in rng for j in rng
        )
    fmul, fadd = field.mul, field.add
    out = []
    for i in range(n):
        row = a[i * n:(i + 1) * n]
        for j in range(n):
            s = 0
            for k in range(n):
                c = row[k]
                if c:
                    s = fadd(s, fmul(c, b[k * n + j]))
            out.append(s)
    return tuple(out)


class Matrix:
    """Immutable n x n matrix over a FieldSpec."""

    __slots__ = ("field", "n", "entries", "_hash")

    def __init__(self, field: FieldSpec, n: int, entries: Sequence[int]):
        entries = tuple(int(e) for e in entries)
        if len(entries) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(entries)}")
        if any(not 0 <= e < field.q for e in entries):
            raise ValueError("entry encoding out of range")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", hash((n, field, entries)))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "Matrix":
        n = len(rows)
        return cls(field, n, [e for row in rows for e in row])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def from_text(cls, field: FieldSpec, text: str) -> "Matrix":
        rows = [[int(v) for v in row.split(",")] for row in text.split(";")]
        if any(len(r) != len(rows) for r in rows):
            raise ValueError(f"matrix literal {text!r} is not square")
        return cls.from_rows(field, rows)

    def to_text(self) -> str:
        n = self.n
        return ";".join(
            ",".join(str(v) for v in self.entries[i * n:(i + 1) * n]) for i in range(n)
        )

    # -- access ----------------------------------------------------------------

    def rows(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        return tuple(self.entries[i * n:(i + 1) * n] for i in range(n))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.n + j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.n == other.n
                and self.field == other.field and self.entries == other.entries)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.to_text()!r})"

    @property
    def is_identity(self) -> bool:
        n = self.n
        return all(self.entries[i * n + j] == (1 if i == j else 0)
                   for i in range(n) for j in range(n))

    # -- arithmetic --------------------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        assert self.field == other.field and self.n == other.n, "incompatible matrices"
        return Matrix(self.field, self.n, mul_entries(self.entries, other.entries, self.n, self.field))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """A*v for a column vector given (and returned) as a coordinate tuple."""
        n, fld = self.n, self.field
        if fld.k == 1:
            p = fld.p
            return tuple(sum(self.entries[i * n + j] * vec[j] for j in range(n)) % p
                         for i in range(n))
        out = []
        for i in range(n):
            s = 0
            for j in range(n):
                c = self.entries[i * n + j]
                if c and vec[j]:
                    s = fld.add(s, fld.mul(c, vec[j]))
            out.append(s)
        return tuple(out)

    def det(self) -> int:
        n, fld = self.n, self.field
        rows = [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]
        det = 1
        for col in range(n):
            piv = next((i for i in range(col, n) if rows[i][col]), None)
            if piv is None:
                return 0
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = fld.neg(det)
            pivot = rows[col][col]
            det = fld.mul(det, pivot)
            inv = fld.inv(pivot)
            for i in range(col + 1, n):
                f = fld.mul(rows[i][col], inv)
                if f:
                    rows[i] = [fld.sub(a, fld.mul(f, b)) for a, b in zip(rows[i], rows[col])]
        return det

    def inverse(self) -> "Matrix":
        n, fld = self.n, self.field
        aug = [list(self.entries[i * n:(i + 1) * n]) + [1 if i == j else 0 for j in range(n)]
               for i in range(n)]
        for col in range(n):
            piv = next((i for i in range(col, n) if aug[i][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = fld.inv(aug[col][col])
            aug[col] = [fld.mul(inv, v) for v in aug[col]]
            for i in range(n):
                if i != col and aug[i][col]:
                    f = aug[i][col]
                    aug[i] = [fld.sub(a, fld.mul(f, b)) for a, b in zip(aug[i], aug[col])]
        return Matrix(fld, n, [aug[i][n + j] for i in range(n) for j in range(n)])

    def __pow__(self, e: int) -> "Matrix":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Matrix.identity(self.field, self.n)
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result


# --- reduced row echelon form and subspaces -----------------------------------


def _rref(rows: list[list[int]], field: FieldSpec) -> tuple[list[list[int]], list[int]]:
    """In-place RREF of a list of row vectors; returns (nonzero rows, pivot columns)."""
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


class Subspace:
    """A subspace of F_q^n held as a canonical RREF basis.

    Two Subspace values are equal iff they are the same subspace: the RREF
    rows with strictly increasing pivot columns are a canonical form.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, basis, pivots):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(tuple(row) for row in basis))
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, field: FieldSpec, ambient_dim: int, vectors) -> "Subspace":
        rows = [list(v) for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise ValueError("vector length does not match ambient dimension")
        basis, pivots = _rref(rows, field)
        return cls(field, ambient_dim, basis, pivots)

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, [], [])

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        eye = [[1 if i == j else 0 for j in range(ambient_dim)] for i in range(ambient_dim)]
        return cls(field, ambient_dim, eye, list(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, vec: Sequence[int]) -> bool:
        fld = self.field
        v = list(vec)
        for row, piv in zip(self.basis, self.pivots):
            c = v[piv]
            if c:
                v = [fld.sub(a, fld.mul(c, b)) for a, b in zip(v, row)]
        return not any(v)

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of a member vector in the RREF basis (pivot reads)."""
        if not self.contains(vec):
            raise ValueError("vector is not in the subspace")
        return tuple(vec[p] for p in self.pivots)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient_dim == other.ambient_dim and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        rows = " ; ".join(",".join(map(str, r)) for r in self.basis)
        return f"Subspace(dim={self.dim} of F^{self.ambient_dim}: {rows})"


def kernel_of_rows(field: FieldSpec, rows: list[list[int]], ncols: int) -> Subspace:
    """Solution space {v : R v = 0} of a (possibly rectangular) system."""
    reduced, pivots = _rref([list(r) for r in rows], field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, piv in zip(reduced, pivots):
            v[piv] = field.neg(row[fc])
        basis.append(v)
    return Subspace.from_vectors(field, ncols, basis)


def kernel(a: Matrix) -> Subspace:
    """Canonical basis of {v : A v = 0}."""
    return kernel_of_rows(a.field, [list(r) for r in a.rows()], a.n)


def fixed_space(a: Matrix) -> Subspace:
    """fix(A) = ker(A - I)."""
    n, fld = a.n, a.field
    rows = [[fld.sub(a.entries[i * n + j], 1 if i == j else 0) for j in range(n)]
            for i in range(n)]
    return kernel_of_rows(fld, rows, n)


def common_fixed_space(mats: Sequence[Matrix]) -> Subspace:
    """Intersection of the fixed spaces of the given matrices."""
    if not mats:
        raise ValueError("need at least one matrix")
    n, fld = mats[0].n, mats[0].field
    rows = []
    for a in mats:
        rows.extend([fld.sub(a.entries[i * n + j], 1 if i == j else 0) for j in range(n)]
                    for i in range(n))
    return kernel_of_rows(fld, rows, n)


def stabilizes(a: Matrix, w: Subspace) -> bool:
    """True iff A maps every basis vector of W back into W."""
    if a.n != w.ambient_dim:
        raise ValueError("dimension mismatch")
    return all(w.contains(a.apply(row)) for row in w.basis)


def char_poly(a: Matrix) -> Poly:
    """Monic characteristic polynomial det(xI - A).

    Hessenberg reduction by exact similarity transforms, then the standard
    leading-minor recurrence.
    """
    n, fld = a.n, a.field
    h = [list(a.entries[i * n:(i + 1) * n]) for i in range(n)]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[j + 1], h[piv] = h[piv], h[j + 1]
            for row in h:
                row[j + 1], row[piv] = row[piv], row[j + 1]
        inv = fld.inv(h[j + 1][j])
        for i in range(j + 2, n):
            f = fld.mul(h[i][j], inv)
            if f:
                # row op R_i -= f*R_{j+1}, inverse column op C_{j+1} += f*C_i
                h[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] = fld.add(row[j + 1], fld.mul(f, row[i]))
    # p_m = (x - h[m-1][m-1]) p_{m-1} - sum_r h[r-1][m-1] (prod subdiag) p_{r-1}
    polys = [Poly.one(fld)]
    x = Poly.x(fld)
    for m in range(1, n + 1):
        term = (x - Poly(fld, (h[m - 1][m - 1],))) * polys[m - 1]
        beta = 1
        for r in range(m - 1, 0, -1):
            beta = fld.mul(beta, h[r][r - 1])
            coef = fld.mul(h[r - 1][m - 1], beta)
            if coef:
                term = term - polys[r - 1].scale(coef)
        polys.append(term)
    return polys[n]


def matrix_order(a: Matrix) -> int:
    """Least m >= 1 with A^m = I, via the factored order of GL_n(F_q)."""
    if a.det() == 0:
        raise ZeroDivisionError("singular matrices have no multiplicative order")
    q, n = a.field.q, a.n
    bound = 1
    for i in range(n):
        bound *= q**n - q**i
    ident = Matrix.identity(a.field, a.n)
    return _multiplicative_order(lambda e: a**e, ident, bound)


def enumerate_subspaces(n: int, field: FieldSpec, dim: int | None = None) -> Iterator[Subspace]:
    """All subspaces of F_q^n of the given dimension (or all), each once.

    Subspaces are produced directly in RREF canonical form: choose pivot
    columns, then fill the free positions (right of a pivot, not above
    another pivot) with arbitrary field values.
    """
    dims = range(n + 1) if dim is None else [dim]
    q = field.q
    for r in dims:
        if not 0 <= r <= n:
            raise ValueError("dimension out of range")
        for pivots in itertools.combinations(range(n), r):
            free = [(i, j) for i in range(r) for j in range(pivots[i] + 1, n)
                    if j not in pivots]
            if q ** len(free) > ENUMERATION_BUDGET:
                raise BudgetExceededError("subspace enumeration exceeds budget")
            for values in itertools.product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(r)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, j), v in zip(free, values):
                    rows[i][j] = v
                yield Subspace(field, n, rows, pivots)


def enumerate_gl(n: int, field: FieldSpec) -> Iterator[Matrix]:
    """All invertible n x n matrices over F_q, in entry-lex order."""
    q = field.q
    if q ** (n * n) > ENUMERATION_BUDGET:
        raise BudgetExceededError("GL enumeration exceeds budget")
    for entries in itertools.product(range(q), repeat=n * n):
        m = Matrix(field, n, entries)
        if m.det() != 0:
            yield m
