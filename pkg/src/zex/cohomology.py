"""Bilinear forms, cocycles, coboundaries and second cohomology.

Forms are flattened row-major into n^2-vectors for all subspace work; the
basis form with a one at position (i, j) sits at flat index (i-1)*n + (j-1)
in 0-based terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Algebra, unit
from .linalg import (Matrix, Subspace, Vector, ZERO, kernel_basis, vec,
                     vec_add, zero_vec)


class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class BilinearForm:
    """n x n exact matrix m with m[i][j] = theta(e_{i+1}, e_{j+1})."""

    ambient: int
    m: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.m) != self.ambient or any(len(r) != self.ambient for r in self.m):
            raise CocycleError("form shape mismatch")

    @staticmethod
    def delta(n: int, i: int, j: int) -> "BilinearForm":
        """The basis form Delta_{i,j} (1-based indices, as in reports)."""
        rows = [[ZERO] * n for _ in range(n)]
        rows[i - 1][j - 1] = Fraction(1)
        return BilinearForm(n, tuple(tuple(r) for r in rows))

    @staticmethod
    def zero(n: int) -> "BilinearForm":
        return BilinearForm(n, tuple(zero_vec(n) for _ in range(n)))

    @staticmethod
    def from_flat(n: int, flat: Sequence[Fraction]) -> "BilinearForm":
        if len(flat) != n * n:
            raise CocycleError("flat vector has wrong length")
        flat = vec(flat)
        return BilinearForm(n, tuple(flat[i * n:(i + 1) * n] for i in range(n)))

    def flat(self) -> Vector:
        return tuple(x for row in self.m for x in row)

    def apply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        s = ZERO
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.m[i]
            for j, yj in enumerate(y):
                if yj and row[j]:
                    s += xi * yj * row[j]
        return s

    def add(self, other: "BilinearForm") -> "BilinearForm":
        return BilinearForm(self.ambient, tuple(vec_add(a, b) for a, b in zip(self.m, other.m)))

    def scale(self, c: Fraction) -> "BilinearForm":
        c = Fraction(c)
        return BilinearForm(self.ambient, tuple(tuple(c * x for x in row) for row in self.m))


def form_combination(n: int, terms: Sequence[tuple[Fraction, BilinearForm]]) -> BilinearForm:
    out = BilinearForm.zero(n)
    for c, f in terms:
        if c:
            out = out.add(f.scale(c))
    return out


def is_cocycle(a: Algebra, theta: BilinearForm) -> Optional[tuple[int, int, int]]:
    """None if theta(x.y, z) = theta(x, y.z + z.y) on all basis triples,
    otherwise the first violating triple (1-based)."""
    n = a.dim
    for i in range(n):
        for j in range(n):
            pij = a.c[i][j]
            for k in range(n):
                lhs = theta.apply(pij, unit(n, k))
                rhs = theta.apply(unit(n, i), vec_add(a.c[j][k], a.c[k][j]))
                if lhs != rhs:
                    return (i + 1, j + 1, k + 1)
    return None


def cocycle_space(a: Algebra) -> Subspace:
    """Canonical basis of Z^2(a, C) as a subspace of n^2-space.

    One exact linear system over all basis triples; rows are deduplicated
    before elimination.
    """
    n = a.dim
    rows = set()
    for i in range(n):
        for j in range(n):
            cij = a.c[i][j]
            for k in range(n):
                row = [ZERO] * (n * n)
                for l in range(n):
                    if cij[l]:
                        row[l * n + k] += cij[l]
                sym = vec_add(a.c[j][k], a.c[k][j])
                for m in range(n):
                    if sym[m]:
                        row[i * n + m] -= sym[m]
                if any(row):
                    rows.add(tuple(row))
    if not rows:
        return Subspace.full(n * n)
    return kernel_basis(Matrix.from_rows(sorted(rows), n * n))


def coboundary_of(a: Algebra, f: Sequence[Fraction]) -> BilinearForm:
    """delta f with (delta f)(x, y) = f(x . y)."""
    if len(f) != a.dim:
        raise CocycleError("functional has wrong length")
    f = vec(f)
    rows = []
    for i in range(a.dim):
        row = []
        for j in range(a.dim):
            s = ZERO
            for k, ck in enumerate(a.c[i][j]):
                if ck and f[k]:
                    s += f[k] * ck
            row.append(s)
        rows.append(tuple(row))
    return BilinearForm(a.dim, tuple(rows))


def coboundary_space(a: Algebra) -> Subspace:
    """Image of delta: span of delta(e_s^*) over the basis functionals."""
    vectors = []
    for s in range(a.dim):
        form = coboundary_of(a, unit(a.dim, s))
        flat = form.flat()
        if any(flat):
            vectors.append(flat)
    return Subspace.from_vectors(a.dim * a.dim, vectors)


def cocycle_annihilator(a: Algebra, thetas: Sequence[BilinearForm]) -> Subspace:
    """Common annihilator {x : theta(x, A) + theta(A, x) = 0} of cocycles."""
    for t in thetas:
        bad = is_cocycle(a, t)
        if bad is not None:
            raise CocycleError(f"form is not a cocycle; identity fails at triple {bad}")
    rows = []
    for t in thetas:
        for r in t.m:              # theta(e_j, x) = 0: rows of the matrix
            if any(r):
                rows.append(r)
        for j in range(t.ambient):  # theta(x, e_j) = 0: columns
            col = tuple(t.m[i][j] for i in range(t.ambient))
            if any(col):
                rows.append(col)
    if not rows:
        return Subspace.full(a.dim)
    return kernel_basis(Matrix.from_rows(rows, a.dim))


@dataclass(frozen=True)
class CohomologySpaces:
    """Z^2, B^2, chosen H^2 representatives and the projection to H^2 coords.

    project() is linear, vanishes exactly on B^2, and sends the i-th
    representative to the i-th unit vector.
    """

    algebra: Algebra
    z2: Subspace
    b2: Subspace
    reps: tuple[BilinearForm, ...]
    _coord_inv: Matrix          # inverse of the rep/B2 coordinate matrix

    @property
    def h2_dim(self) -> int:
        return len(self.reps)

    def project_flat(self, flat: Sequence[Fraction]) -> Vector:
        coords = self.z2.coords(flat)
        if coords is None:
            raise CocycleError("form is not a cocycle")
        full = self._coord_inv.mul_vec(coords)
        return tuple(full[: self.h2_dim])

    def project(self, theta: BilinearForm) -> Vector:
        return self.project_flat(theta.flat())

    def class_matrix(self, thetas: Sequence[BilinearForm]) -> Matrix:
        return Matrix.from_rows([self.project(t) for t in thetas], self.h2_dim)


def cohomology(a: Algebra, preferred_reps: Optional[Sequence[BilinearForm]] = None) -> CohomologySpaces:
    """Assemble Z^2 / B^2 data, preferring the supplied representatives when
    they form a valid complement of B^2 inside Z^2 (catalog algebras pass the
    published basis here); otherwise canonical RREF complement vectors.
    """
    z2 = cocycle_space(a)
    b2 = coboundary_space(a)
    if not z2.contains_subspace(b2):
        raise CocycleError("coboundaries escaped the cocycle space")
    h = z2.dim - b2.dim
    reps: Optional[tuple[BilinearForm, ...]] = None
    if preferred_reps is not None and len(preferred_reps) == h:
        if _valid_complement(z2, b2, preferred_reps):
            reps = tuple(preferred_reps)
    if reps is None:
        reps = _canonical_reps(a.dim, z2, b2)
    cols = [f.flat() for f in reps] + list(b2.basis)
    coord = Matrix.from_rows([[col[p] for col in cols] for p in z2.pivots], len(cols))
    return CohomologySpaces(a, z2, b2, reps, coord.inverse())


def _valid_complement(z2: Subspace, b2: Subspace, reps: Sequence[BilinearForm]) -> bool:
    flats = [f.flat() for f in reps]
    if any(not z2.contains(f) for f in flats):
        return False
    span = Subspace.from_vectors(z2.ambient, flats + list(b2.basis))
    return span.dim == len(flats) + b2.dim


def _canonical_reps(n: int, z2: Subspace, b2: Subspace) -> tuple[BilinearForm, ...]:
    reps = []
    span = b2
    for row in z2.basis:
        if span.dim == z2.dim:
            break
        if not span.contains(row):
            reps.append(BilinearForm.from_flat(n, row))
            span = span.add(Subspace.from_vectors(z2.ambient, [row]))
    return tuple(reps)
