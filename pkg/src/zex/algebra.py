"""Structure-constant algebras and their basic invariant subspaces.

An algebra is its dimension plus the exact tensor c[i][j] = e_i . e_j
(a vector of Fractions).  Indices are 0-based internally; every file
format and report uses 1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .linalg import (Matrix, Subspace, Vector, ZERO, is_zero_vec, vec,
                     vec_add, zero_vec)


class AlgebraError(ValueError):
    pass


Violation = tuple[tuple[int, int, int], Vector]


@dataclass(frozen=True)
class Algebra:
    dim: int
    c: tuple[tuple[Vector, ...], ...]
    label: str = ""
    params: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        if len(self.c) != self.dim or any(len(row) != self.dim for row in self.c):
            raise AlgebraError("structure tensor shape mismatch")
        for row in self.c:
            for v in row:
                if len(v) != self.dim:
                    raise AlgebraError("structure tensor shape mismatch")

    @staticmethod
    def from_products(dim: int, products: dict[tuple[int, int], Sequence],
                      label: str = "", params: Sequence[tuple[str, Fraction]] = ()) -> "Algebra":
        """Build from a sparse {(i,j) -> vector} map, 0-based, rest zero."""
        table = [[zero_vec(dim)] * dim for _ in range(dim)]
        for (i, j), v in products.items():
            table[i][j] = vec(v)
        return Algebra(dim, tuple(tuple(row) for row in table), label, tuple(params))

    def product(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        """Bilinear extension of the basis products."""
        if len(x) != self.dim or len(y) != self.dim:
            raise AlgebraError("dimension mismatch in product")
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.c[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                cij = row[j]
                f = xi * yj
                for k, ck in enumerate(cij):
                    if ck:
                        out[k] += f * ck
        return tuple(out)

    def basis_product(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def param(self, name: str) -> Optional[Fraction]:
        for k, v in self.params:
            if k == name:
                return v
        return None


def check_zinbiel(a: Algebra) -> list[Violation]:
    """All basis triples violating (x.y).z = x.(y.z + z.y); empty means holds.

    Checking on basis triples is complete by multilinearity.  Triples in the
    returned list are 1-based.
    """
    violations = []
    n = a.dim
    for i in range(n):
        for j in range(n):
            left_ij = a.c[i][j]
            for k in range(n):
                lhs = a.product(left_ij, unit(n, k))
                sym = vec_add(a.c[j][k], a.c[k][j])
                rhs = a.product(unit(n, i), sym)
                defect = tuple(p - q for p, q in zip(lhs, rhs))
                if not is_zero_vec(defect):
                    violations.append(((i + 1, j + 1, k + 1), defect))
    return violations


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else ZERO for k in range(n))


def subspace_product(a: Algebra, u: Subspace, v: Subspace) -> Subspace:
    """span{ x.y : x in u, y in v }."""
    vectors = []
    for x in u.basis:
        for y in v.basis:
            p = a.product(x, y)
            if not is_zero_vec(p):
                vectors.append(p)
    return Subspace.from_vectors(a.dim, vectors)


@dataclass(frozen=True)
class PowerSeries:
    """Descending chain A^1 = A, A^{i+1} = sum_k A^k A^{i+1-k}."""

    chain: tuple[Subspace, ...]
    stabilized_nonzero: bool

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.chain)


def power_series(a: Algebra) -> PowerSeries:
    """Power series with the full nonassociative sum over all splittings."""
    chain = [Subspace.full(a.dim)]
    while True:
        i = len(chain)  # computing A^{i+1}
        nxt = Subspace.zero(a.dim)
        for k in range(1, i + 1):
            nxt = nxt.add(subspace_product(a, chain[k - 1], chain[i - k]))
        if nxt.is_zero():
            chain.append(nxt)
            return PowerSeries(tuple(chain), False)
        if nxt == chain[-1]:
            return PowerSeries(tuple(chain), True)
        chain.append(nxt)


def nilpotency_index(a: Algebra) -> Optional[int]:
    """Smallest i with A^i = 0, or None when the chain stabilizes nonzero."""
    ps = power_series(a)
    if ps.stabilized_nonzero:
        return None
    return len(ps.chain)


def left_annihilator(a: Algebra) -> Subspace:
    """{x : x . A = 0}."""
    rows = []
    for j in range(a.dim):
        for k in range(a.dim):
            rows.append([a.c[i][j][k] for i in range(a.dim)])
    return _kernel_of_rows(rows, a.dim)


def right_annihilator(a: Algebra) -> Subspace:
    """{x : A . x = 0}."""
    rows = []
    for i in range(a.dim):
        for k in range(a.dim):
            rows.append([a.c[i][j][k] for j in range(a.dim)])
    return _kernel_of_rows(rows, a.dim)


def annihilator(a: Algebra) -> Subspace:
    """{x : x . A + A . x = 0}."""
    return left_annihilator(a).intersect(right_annihilator(a))


def _kernel_of_rows(rows, ambient):
    from .linalg import kernel_basis
    nonzero = [r for r in rows if any(r)]
    return kernel_basis(Matrix.from_rows(nonzero, ambient))


def is_null_filiform(a: Algebra) -> bool:
    """dim A^i = (n+1) - i for 1 <= i <= n+1."""
    ps = power_series(a)
    if ps.stabilized_nonzero:
        return False
    expected = tuple(range(a.dim, -1, -1))
    return ps.dims == expected


def is_filiform(a: Algebra) -> bool:
    """dim A^i = n - i for 2 <= i <= n (and A^1 = A)."""
    ps = power_series(a)
    if ps.stabilized_nonzero:
        return False
    expected = (a.dim,) + tuple(a.dim - i for i in range(2, a.dim + 1))
    return ps.dims == expected


def generator_count(a: Algebra) -> int:
    """Minimal generator count of a nilpotent algebra: dim A - dim A^2."""
    ps = power_series(a)
    if ps.stabilized_nonzero:
        raise AlgebraError("generator_count requires a nilpotent algebra")
    asq = ps.chain[1] if len(ps.chain) > 1 else Subspace.zero(a.dim)
    return a.dim - asq.dim


def is_ideal(a: Algebra, s: Subspace) -> bool:
    for v in s.basis:
        for j in range(a.dim):
            if not s.contains(a.product(v, unit(a.dim, j))):
                return False
            if not s.contains(a.product(unit(a.dim, j), v)):
                return False
    return True


def quotient_algebra(a: Algebra, ideal: Subspace) -> tuple[Algebra, Matrix]:
    """Quotient by a two-sided ideal, with the projection map onto the
    complement spanned by the non-pivot coordinates of the ideal basis.
    """
    if ideal.ambient != a.dim:
        raise AlgebraError("ideal lives in the wrong space")
    if not is_ideal(a, ideal):
        raise AlgebraError("subspace is not a two-sided ideal")
    pivset = set(ideal.pivots)
    comp = [i for i in range(a.dim) if i not in pivset]
    q = len(comp)

    def project(v: Sequence[Fraction]) -> Vector:
        # subtract the unique ideal element matching v on pivot coordinates
        w = list(v)
        for b, p in zip(ideal.basis, ideal.pivots):
            c = w[p]
            if c:
                for k in range(a.dim):
                    if b[k]:
                        w[k] -= c * b[k]
        return tuple(w[i] for i in comp)

    table = {}
    for qi, i in enumerate(comp):
        for qj, j in enumerate(comp):
            p = project(a.c[i][j])
            if any(p):
                table[(qi, qj)] = p
    proj_rows = [project(unit(a.dim, i)) for i in range(a.dim)]
    proj = Matrix.from_rows([[proj_rows[i][k] for i in range(a.dim)] for k in range(q)], a.dim)
    label = f"{a.label}/ideal" if a.label else "quotient"
    return Algebra.from_products(q, table, label, a.params), proj


def transport(a: Algebra, m: Matrix) -> Algebra:
    """Structure constants in the new basis f_j = sum_i m[i][j] e_i.

    Requires m invertible; this is the table an isomorphic copy of `a`
    carries after the change of basis.
    """
    if m.rows != a.dim or m.cols != a.dim:
        raise AlgebraError("basis-change matrix has wrong shape")
    minv = m.inverse()
    cols = [m.col(j) for j in range(a.dim)]
    table = {}
    for i in range(a.dim):
        for j in range(a.dim):
            p = a.product(cols[i], cols[j])
            coords = minv.mul_vec(p)
            if any(coords):
                table[(i, j)] = coords
    return Algebra.from_products(a.dim, table, a.label, a.params)


def permutation_matrix(n: int, sigma: Sequence[int]) -> Matrix:
    """Matrix sending e_i to e_{sigma[i]} (0-based slots)."""
    if sorted(sigma) != list(range(n)):
        raise AlgebraError("not a permutation")
    rows = [[ZERO] * n for _ in range(n)]
    for i, s in enumerate(sigma):
        rows[s][i] = Fraction(1)
    return Matrix.from_rows(rows, n)
