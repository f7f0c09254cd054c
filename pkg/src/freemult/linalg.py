"""Exact dense/sparse linear algebra over Q and GF(p), plus polynomial matrices."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .field import Field
from .poly import Polynomial, PolynomialError


class LinearAlgebraError(ValueError):
    pass


class EchelonBasis:
    """Row space kept in reduced row echelon form, built one vector at a time.

    Vectors are sparse ``{column: value}`` dicts.  Every stored row has a
    leading 1 at its smallest column and zeros in every other pivot column,
    so the stored rows are exactly the RREF of everything added so far.
    """

    def __init__(self, field: Field):
        self.field = field
        self.pivot_rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` modulo the span (zero dict if it lies in it)."""
        F = self.field
        sub, mul = F.sub, F.mul
        out = {c: v for c, v in vec.items() if v}
        for col in [c for c in out if c in self.pivot_rows]:
            coef = out.get(col)
            if not coef:
                continue
            for c, v in self.pivot_rows[col].items():
                nv = sub(out.get(c, F.zero), mul(coef, v))
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
        return out

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        F = self.field
        r = self.reduce(vec)
        if not r:
            return False
        lead = min(r)
        inv = F.inv(r[lead])
        r = {c: F.mul(v, inv) for c, v in r.items()}
        sub, mul = F.sub, F.mul
        for row in self.pivot_rows.values():
            coef = row.get(lead)
            if not coef:
                continue
            for c, v in r.items():
                nv = sub(row.get(c, F.zero), mul(coef, v))
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        self.pivot_rows[lead] = r
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def rows(self) -> list[dict]:
        return [self.pivot_rows[c] for c in sorted(self.pivot_rows)]

    def pivots(self) -> list[int]:
        return sorted(self.pivot_rows)


def _sparse(row) -> dict:
    return {i: v for i, v in enumerate(row) if v}


def _dense(vec: dict, n: int, field: Field) -> list:
    out = [field.zero] * n
    for c, v in vec.items():
        out[c] = v
    return out


def rref(M, field: Field):
    """Reduced row echelon form of a scalar matrix; returns ``(rows, pivots)``."""
    M = [[field(c) for c in row] for row in M]
    ncols = len(M[0]) if M else 0
    eb = EchelonBasis(field)
    for row in M:
        eb.add(_sparse(row))
    return [_dense(r, ncols, field) for r in eb.rows()], eb.pivots()


def rank(M, field: Field) -> int:
    eb = EchelonBasis(field)
    for row in M:
        eb.add(_sparse([field(c) for c in row]))
    return eb.rank


def sparse_kernel(rows: list[dict], ncols: int, field: Field) -> list[dict]:
    """Right kernel of the matrix whose rows are the sparse dicts ``rows``.

    The result is itself in reduced row echelon form (leading entries 1),
    which makes it independent of how the constraint rows were ordered.
    """
    eb = EchelonBasis(field)
    for r in rows:
        eb.add(r)
    pivots = eb.pivot_rows
    free = [c for c in range(ncols) if c not in pivots]
    F = field
    raw = []
    for f in free:
        v = {f: F.one}
        for p, prow in pivots.items():
            a = prow.get(f)
            if a:
                v[p] = F.neg(a)
        raw.append(v)
    kb = EchelonBasis(field)
    for v in raw:
        kb.add(v)
    return kb.rows()


def kernel_basis(M, field: Field, ncols: int | None = None) -> list[list]:
    """Reduced-echelon basis of ``{v : M v = 0}``; empty list for an injective map."""
    M = [[field(c) for c in row] for row in M]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    return [_dense(v, ncols, field) for v in sparse_kernel([_sparse(r) for r in M], ncols, field)]


def scalar_det(M, field: Field):
    """Determinant of a square scalar matrix by Gaussian elimination."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise LinearAlgebraError("determinant of a non-square matrix")
    A = [[field(c) for c in row] for row in M]
    F = field
    det = F.one
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return F.zero
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = F.neg(det)
        det = F.mul(det, A[k][k])
        inv = F.inv(A[k][k])
        for i in range(k + 1, n):
            if A[i][k]:
                f = F.mul(A[i][k], inv)
                A[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(A[i], A[k])]
    return det


def mat_mul(A, B, field: Field):
    F = field
    inner = len(B)
    return [
        [
            _sum(F, (F.mul(A[i][k], B[k][j]) for k in range(inner)))
            for j in range(len(B[0]))
        ]
        for i in range(len(A))
    ]


def _sum(F, values):
    total = F.zero
    for v in values:
        total = F.add(total, v)
    return total


def inverse(M, field: Field):
    n = len(M)
    aug = [[field(c) for c in row] + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(M)]
    R, piv = rref(aug, field)
    if piv[:n] != list(range(n)):
        raise LinearAlgebraError("matrix is singular")
    return [row[n:] for row in R[:n]]


# -- polynomial matrices -------------------------------------------------------

@dataclass(frozen=True)
class PolyMatrix:
    """Rectangular matrix of polynomials, optionally graded.

    With degree labels present every nonzero entry ``(i, j)`` is homogeneous
    of degree ``col_degrees[j] - row_degrees[i]``.
    """

    entries: tuple
    row_degrees: tuple | None = None
    col_degrees: tuple | None = None

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if entries and len({len(r) for r in entries}) != 1:
            raise LinearAlgebraError("ragged matrix")
        if (self.row_degrees is None) != (self.col_degrees is None):
            raise LinearAlgebraError("give both row and column degree labels or neither")
        if self.row_degrees is not None:
            rd, cd = tuple(self.row_degrees), tuple(self.col_degrees)
            object.__setattr__(self, "row_degrees", rd)
            object.__setattr__(self, "col_degrees", cd)
            if len(rd) != self.nrows or len(cd) != self.ncols:
                raise LinearAlgebraError("degree labels do not match the shape")
            for i, row in enumerate(entries):
                for j, e in enumerate(row):
                    if e and (not e.is_homogeneous() or e.degree != cd[j] - rd[i]):
                        raise LinearAlgebraError(
                            f"entry ({i},{j}) = {e} is not homogeneous of degree {cd[j] - rd[i]}"
                        )

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def submatrix(self, rows, cols) -> "PolyMatrix":
        entries = [[self.entries[i][j] for j in cols] for i in rows]
        if self.row_degrees is None:
            return PolyMatrix(entries)
        return PolyMatrix(
            entries,
            tuple(self.row_degrees[i] for i in rows),
            tuple(self.col_degrees[j] for j in cols),
        )

    def det(self) -> Polynomial:
        return det(self.entries)

    def minors(self, k: int):
        """Yield ``(row_indices, col_indices, determinant)`` for all k x k minors."""
        for rows in combinations(range(self.nrows), k):
            for cols in combinations(range(self.ncols), k):
                yield rows, cols, det([[self.entries[i][j] for j in cols] for i in rows])

    def __str__(self):
        body = [[str(e) for e in row] for row in self.entries]
        width = max((len(s) for row in body for s in row), default=1)
        return "\n".join("[ " + "  ".join(s.rjust(width) for s in row) + " ]" for row in body)

    def to_json(self):
        out = {"entries": [[str(e) for e in row] for row in self.entries]}
        if self.row_degrees is not None:
            out["row_degrees"] = list(self.row_degrees)
            out["col_degrees"] = list(self.col_degrees)
        return out


def det(M) -> Polynomial:
    """Exact determinant of a square polynomial matrix (Laplace expansion with memo)."""
    M = [list(row) for row in M]
    n = len(M)
    if n == 0:
        raise LinearAlgebraError("empty matrix")
    if any(len(row) != n for row in M):
        raise LinearAlgebraError(f"determinant of a non-square {n}x{len(M[0])} matrix")
    proto = next((e for row in M for e in row if isinstance(e, Polynomial)), None)
    if proto is None:
        raise PolynomialError("det() expects Polynomial entries; use scalar_det for scalars")
    memo: dict = {}

    def minor(row: int, cols: tuple) -> Polynomial:
        # determinant of rows row..n-1 restricted to cols
        if row == n:
            return proto.one_like()
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = proto.zero_like()
        for pos, c in enumerate(cols):
            e = M[row][c]
            if not e:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = e * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))
