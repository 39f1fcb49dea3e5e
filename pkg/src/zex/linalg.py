"""Exact dense linear algebra over the rationals.

All scalars are `fractions.Fraction`; nothing here ever rounds.  Subspaces
are stored through their reduced row echelon basis, so two equal subspaces
have identical representations and compare equal structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class LinalgError(ValueError):
    pass


def vec(entries: Iterable) -> Vector:
    return tuple(Fraction(e) for e in entries)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: Fraction, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def is_zero_vec(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple[Vector, ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [vec(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise LinalgError("ragged rows")
        else:
            if cols is None:
                raise LinalgError("empty matrix needs an explicit column count")
            ncols = cols
        return Matrix(len(rows), ncols, tuple(rows))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(unit_vec(n, i) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, tuple(zero_vec(cols) for _ in range(rows)))

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(tuple(self.entries[i][j] for i in range(self.rows))
                            for j in range(self.cols)))

    def mul_vec(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise LinalgError("dimension mismatch in matrix-vector product")
        out = []
        for r in self.entries:
            s = ZERO
            for a, x in zip(r, v):
                if a and x:
                    s += a * x
            out.append(s)
        return tuple(out)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinalgError("dimension mismatch in matrix product")
        bt = other.transpose()
        rows = []
        for r in self.entries:
            row = []
            for c in bt.entries:
                s = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        s += a * b
                row.append(s)
            rows.append(tuple(row))
        return Matrix(self.rows, other.cols, tuple(rows))

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise LinalgError("only square matrices invert")
        n = self.rows
        aug = [list(self.entries[i]) + list(unit_vec(n, i)) for i in range(n)]
        red, pivots = _rref_rows(aug, 2 * n)
        if list(pivots) != list(range(n)):
            raise LinalgError("matrix is singular")
        return Matrix(n, n, tuple(tuple(red[i][n:]) for i in range(n)))

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise LinalgError("determinant of non-square matrix")
        a = [list(r) for r in self.entries]
        n = self.rows
        det = ONE
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return ZERO
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det *= a[c][c]
            inv = ONE / a[c][c]
            for i in range(c + 1, n):
                if a[i][c]:
                    f = a[i][c] * inv
                    for k in range(c, n):
                        if a[c][k]:
                            a[i][k] -= f * a[c][k]
        return det


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            inv = ONE / lead
            row = rows[r]
            for k in range(c, ncols):
                if row[k]:
                    row[k] *= inv
        src = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                dst = rows[i]
                for k in range(c, ncols):
                    if src[k]:
                        dst[k] -= f * src[k]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Unique reduced row echelon form of `m` plus its pivot columns."""
    rows = [list(r) for r in m.entries]
    red, pivots = _rref_rows(rows, m.cols)
    return Matrix(m.rows, m.cols, tuple(tuple(r) for r in red)), tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient with canonical (RREF, zero-rows stripped) basis."""

    ambient: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]

    @staticmethod
    def from_vectors(ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [list(vec(v)) for v in vectors]
        for r in rows:
            if len(r) != ambient:
                raise LinalgError("vector length does not match ambient dimension")
        red, pivots = _rref_rows(rows, ambient)
        basis = tuple(tuple(red[i]) for i in range(len(pivots)))
        return Subspace(ambient, basis, tuple(pivots))

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(ambient, (), ())

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(ambient, tuple(unit_vec(ambient, i) for i in range(ambient)),
                        tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def coords(self, v: Sequence[Fraction]) -> Optional[Vector]:
        """Coordinates of v in the canonical basis, or None if v is outside."""
        v = vec(v)
        if len(v) != self.ambient:
            raise LinalgError("vector length does not match ambient dimension")
        cs = tuple(v[p] for p in self.pivots)
        residual = list(v)
        for c, b in zip(cs, self.basis):
            if c:
                for k in range(self.ambient):
                    if b[k]:
                        residual[k] -= c * b[k]
        if any(residual):
            return None
        return cs

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.coords(v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise LinalgError("ambient dimension mismatch")
        return Subspace.from_vectors(self.ambient, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise LinalgError("ambient dimension mismatch")
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient)
        # Solve sum a_i u_i = sum b_j v_j via the kernel of [U^T | -V^T].
        p, q = self.dim, other.dim
        rows = []
        for k in range(self.ambient):
            rows.append([self.basis[i][k] for i in range(p)]
                        + [-other.basis[j][k] for j in range(q)])
        ker = kernel_basis(Matrix.from_rows(rows, p + q))
        vectors = []
        for coeffs in ker.basis:
            w = [ZERO] * self.ambient
            for i in range(p):
                if coeffs[i]:
                    for k in range(self.ambient):
                        if self.basis[i][k]:
                            w[k] += coeffs[i] * self.basis[i][k]
            vectors.append(w)
        return Subspace.from_vectors(self.ambient, vectors)

    def perp(self) -> "Subspace":
        """Orthogonal complement for the standard bilinear pairing."""
        if self.is_zero():
            return Subspace.full(self.ambient)
        return kernel_basis(Matrix.from_rows(self.basis, self.ambient))


def kernel_basis(m: Matrix) -> Subspace:
    """Canonical basis of the right kernel {v : m v = 0}."""
    rows = [list(r) for r in m.entries]
    red, pivots = _rref_rows(rows, m.cols)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return Subspace.from_vectors(m.cols, basis)


def solve_exact(m: Matrix, rhs: Sequence[Fraction]) -> Optional[Vector]:
    """One solution of m x = rhs, or None when inconsistent."""
    rhs = vec(rhs)
    if len(rhs) != m.rows:
        raise LinalgError("right-hand side length mismatch")
    aug = [list(m.entries[i]) + [rhs[i]] for i in range(m.rows)]
    red, pivots = _rref_rows(aug, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red[r][m.cols]
    return tuple(x)
