"""Isomorphism-invariant fingerprints, explicit isomorphism verification,
and construction of the basis-change witnesses used by the extension
theorem checks.

No general isomorphism decision is attempted: the module offers exact
invariants, witness verification, and bounded witness searches.  A failed
search is reported as "no witness found", never as non-isomorphism.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mpf, workprec

from .algebra import (Algebra, AlgebraError, annihilator, left_annihilator,
                      permutation_matrix, power_series, right_annihilator,
                      subspace_product, transport, unit)
from .linalg import Matrix, Subspace, ZERO, kernel_basis
from .action import _numeric_rank, _prod_generic
from .expressions import eval_exact, eval_numeric, parse


@dataclass(frozen=True)
class Fingerprint:
    power_dims: tuple[int, ...]
    ann_dim: int
    left_ann_dim: int
    right_ann_dim: int
    graded_dims: tuple[int, ...]
    w_chain_dims: tuple[int, ...]
    char_products: tuple[tuple[tuple[str, str], int], ...]

    def first_difference(self, other: "Fingerprint") -> Optional[str]:
        for name in ("power_dims", "ann_dim", "left_ann_dim", "right_ann_dim",
                     "graded_dims", "w_chain_dims"):
            if getattr(self, name) != getattr(other, name):
                return name
        mine, theirs = dict(self.char_products), dict(other.char_products)
        for key in sorted(set(mine) | set(theirs)):
            if mine.get(key) != theirs.get(key):
                return f"dim({key[0]} . {key[1]})"
        return None


def w_subspace(a: Algebra, target: Subspace) -> Subspace:
    """{x : x.A + A.x is contained in `target`}."""
    if target.dim == a.dim:
        return Subspace.full(a.dim)
    perp = target.perp()
    rows = []
    for j in range(a.dim):
        for w in perp.basis:
            rows.append([sum(w[k] * a.c[i][j][k] for k in range(a.dim) if a.c[i][j][k])
                         for i in range(a.dim)])
            rows.append([sum(w[k] * a.c[j][i][k] for k in range(a.dim) if a.c[j][i][k])
                         for i in range(a.dim)])
    rows = [r for r in rows if any(r)]
    if not rows:
        return Subspace.full(a.dim)
    return kernel_basis(Matrix.from_rows(rows, a.dim))


def _sym_product(a: Algebra, u: Subspace, v: Subspace, sign: int) -> Subspace:
    """span{ x.y + sign * y.x : x in u, y in v }."""
    vectors = []
    for x in u.basis:
        for y in v.basis:
            p = a.product(x, y)
            q = a.product(y, x)
            w = tuple(pi + sign * qi for pi, qi in zip(p, q))
            if any(w):
                vectors.append(w)
    return Subspace.from_vectors(a.dim, vectors)


def upper_annihilator_series(a: Algebra, ann: Subspace) -> list[Subspace]:
    """Z_1 = ann, Z_{k+1} = {x : x.A + A.x inside Z_k}, until stabilization."""
    series = [ann]
    while True:
        nxt = w_subspace(a, series[-1])
        if nxt == series[-1] or nxt.dim == a.dim:
            if nxt.dim == a.dim and nxt != series[-1]:
                series.append(nxt)
            return series
        series.append(nxt)


def twisted_center_dim(a: Algebra, u: Subspace, lam: Fraction) -> int:
    """dim{z in u : lam * (z.y) = y.z for all basis y}; an exact
    isomorphism invariant for each lambda, sensitive to the parametric
    moduli of the appendix families."""
    n = a.dim
    constraints = []
    for j in range(n):
        for k in range(n):
            row = [lam * a.c[i][j][k] - a.c[j][i][k] for i in range(n)]
            if any(row):
                constraints.append(row)
    if not constraints:
        inside = Subspace.full(n)
    else:
        inside = kernel_basis(Matrix.from_rows(constraints, n))
    return inside.intersect(u).dim


def fingerprint(a: Algebra, rich: bool = False) -> Fingerprint:
    """Basis-independent invariants computed from characteristic subspaces.

    `rich` adds symmetrized/antisymmetrized product dims, intersection
    patterns of derived subspaces and twisted-center dims: slower, used by
    the pairwise distinctness reports.
    """
    ps = power_series(a)
    if ps.stabilized_nonzero:
        raise AlgebraError("fingerprint requires a nilpotent algebra")
    chain = ps.chain
    ann = annihilator(a)
    lann = left_annihilator(a)
    rann = right_annihilator(a)
    named: dict[str, Subspace] = {f"A^{i + 1}": s for i, s in enumerate(chain)}
    named["ann"] = ann
    named["lann"] = lann
    named["rann"] = rann
    w_dims = []
    for k in range(2, len(chain) + 1):
        w = w_subspace(a, chain[k - 1])
        named[f"W^{k}"] = w
        w_dims.append(w.dim)
    zseries = upper_annihilator_series(a, ann)
    for k, z in enumerate(zseries, start=1):
        named[f"Z_{k}"] = z
    products = []
    for (nu, u), (nv, v) in itertools.product(sorted(named.items()), repeat=2):
        products.append(((nu, nv), subspace_product(a, u, v).dim))
    if rich:
        derived: dict[str, Subspace] = {}
        core = [("A", Subspace.full(a.dim))] + [
            (f"Z_{k}", zseries[k - 1]) for k in (2, 3) if len(zseries) >= k]
        for (nu, u), (nv, v) in itertools.product(core, repeat=2):
            derived[f"{nu}.{nv}"] = subspace_product(a, u, v)
            derived[f"sym({nu},{nv})"] = _sym_product(a, u, v, 1)
            derived[f"alt({nu},{nv})"] = _sym_product(a, u, v, -1)
        for nd, d in sorted(derived.items()):
            products.append(((nd, "dim"), d.dim))
            for nb, b in sorted(named.items()):
                products.append(((nd, f"meet {nb}"), d.intersect(b).dim))
        for (nd, d), (ne, e) in itertools.combinations(sorted(derived.items()), 2):
            products.append(((nd, f"meet {ne}"), d.intersect(e).dim))
        lams = sorted({Fraction(0), Fraction(1), Fraction(-1), Fraction(2)}
                      | {Fraction(1, j) for j in range(2, a.dim + 1)})
        for lam in lams:
            for nu, u in core:
                products.append(((f"twist({lam})", nu),
                                 twisted_center_dim(a, u, lam)))
    graded = tuple(chain[i].dim - chain[i + 1].dim for i in range(len(chain) - 1))
    return Fingerprint(ps.dims, ann.dim, lann.dim, rann.dim, graded,
                       tuple(w_dims), tuple(sorted(products)))


def verify_isomorphism(a: Algebra, b: Algebra, m: Matrix) -> bool:
    """True iff m is invertible and m(x .a y) = m(x) .b m(y) on basis pairs."""
    if a.dim != b.dim or m.rows != a.dim or m.cols != a.dim:
        raise AlgebraError("dimension mismatch")
    if m.det() == 0:
        return False
    cols = [list(m.col(j)) for j in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = b.product(cols[i], cols[j])
            rhs = m.mul_vec(a.c[i][j])
            if lhs != rhs:
                return False
    return True


def verify_isomorphism_numeric(a: Algebra, b: Algebra, rows: Sequence[Sequence],
                               tol) -> bool:
    n = a.dim
    is_zero = lambda v: abs(v) <= tol
    if _numeric_rank([list(r) for r in rows], is_zero) < n:
        return False
    cols = [[rows[i][j] for i in range(n)] for j in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = _prod_generic(b, cols[i], cols[j], mpf(0))
            rhs = [mpf(0)] * n
            for k, c in enumerate(a.c[i][j]):
                if c:
                    cf = mpf(c.numerator) / mpf(c.denominator)
                    for t in range(n):
                        if cols[k][t] != 0:
                            rhs[t] += cf * cols[k][t]
            scale = max([abs(v) for v in lhs + rhs] + [mpf(1)])
            if any(abs(x - y) > tol * scale for x, y in zip(lhs, rhs)):
                return False
    return True


# ---------------------------------------------------------------------------
# witness construction for the extension-theorem rows
# ---------------------------------------------------------------------------

def _eval_hint(spec, m: int, n: int, alpha, numeric: bool):
    env = {"n": Fraction(n), "m": Fraction(m)}
    if alpha is not None:
        env["alpha"] = alpha
    vecs = [ZERO] * m if not numeric else [mpf(0)] * m
    vecs = list(vecs)
    for slot_expr, coeff_expr in spec:
        slot = int(eval_exact(parse(slot_expr), env))
        if numeric:
            vecs[slot - 1] = vecs[slot - 1] + eval_numeric(parse(coeff_expr), env)
        else:
            vecs[slot - 1] = vecs[slot - 1] + eval_exact(parse(coeff_expr), env)
    return vecs


def _detect_chain(x: Algebra):
    """Longest run e_k . e_1 = c e_{k+1} (single component, c != 0)."""
    reach = [0]
    k = 0
    while k + 1 < x.dim:
        v = x.c[k][0]
        nz = [t for t, c in enumerate(v) if c]
        if nz != [k + 1]:
            break
        reach.append(k + 1)
        k += 1
    return reach


def _solve_homomorphism(xalg: Algebra, y: Algebra, img1, imgm, numeric: bool, tol):
    """Multiplicative map xalg -> y from generator images with the remaining
    (central) images solved from one exact linear system."""
    m = xalg.dim
    zero = mpf(0) if numeric else ZERO
    images: dict[int, list] = {0: list(img1)}
    chain = _detect_chain(xalg)
    for k in chain[1:]:
        coeff = xalg.c[k - 1][0][k]
        prev = images[k - 1]
        prod = _prod_generic(y, prev, images[0], zero)
        inv = Fraction(1) / coeff
        images[k] = [inv * v for v in prod]
    if m - 1 not in images and imgm is not None:
        images[m - 1] = list(imgm)
    unknown = sorted(set(range(m)) - set(images))
    if unknown:
        a_rows, b_rows = [], []
        for p in images:
            for q in images:
                cpq = xalg.c[p][q]
                if not any(cpq[k] for k in unknown):
                    continue
                lhs = _prod_generic(y, images[p], images[q], zero)
                for k, c in enumerate(cpq):
                    if c and k in images:
                        img = images[k]
                        for t in range(m):
                            if img[t] != 0:
                                lhs[t] = lhs[t] - c * img[t]
                a_rows.append([cpq[k] for k in unknown])
                b_rows.append(lhs)
        sol = _solve_multi(a_rows, b_rows, numeric, tol)
        if sol is None:
            return None
        for idx, k in enumerate(unknown):
            images[k] = sol[idx]
    # full multiplicativity check
    is_zero = (lambda v: abs(v) <= tol) if numeric else (lambda v: v == 0)
    cols = [images[k] for k in range(m)]
    for i in range(m):
        for j in range(m):
            lhs = _prod_generic(y, cols[i], cols[j], zero)
            rhs = [zero] * m
            for k, c in enumerate(xalg.c[i][j]):
                if c:
                    for t in range(m):
                        if cols[k][t] != 0:
                            rhs[t] = rhs[t] + c * cols[k][t]
            scale = 1
            if numeric:
                scale = max([abs(v) for v in lhs + rhs] + [mpf(1)])
            for aa, bb in zip(lhs, rhs):
                if numeric:
                    if abs(aa - bb) > tol * scale:
                        return None
                elif aa != bb:
                    return None
    rows = [[cols[j][i] for j in range(m)] for i in range(m)]
    if numeric:
        if _numeric_rank(rows, lambda v: abs(v) <= tol) < m:
            return None
        return rows
    mat = Matrix.from_rows(rows, m)
    if mat.det() == 0:
        return None
    return mat


def _solve_multi(a_rows, b_rows, numeric: bool, tol):
    """Solve A X = B (several right-hand columns at once); None if
    inconsistent; free unknowns are set to zero."""
    if not a_rows:
        return None
    cols = len(a_rows[0])
    width = len(b_rows[0])
    aug = [list(map(_to_num, a_rows[i])) if numeric else list(a_rows[i]) for i in range(len(a_rows))]
    rhs = [list(b_rows[i]) for i in range(len(b_rows))]
    is_zero = (lambda v: abs(v) <= tol) if numeric else (lambda v: v == 0)
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        best = None
        for i in range(r, len(aug)):
            if not is_zero(aug[i][c]):
                mag = abs(aug[i][c])
                if best is None or (numeric and mag > best):
                    piv, best = i, mag
                    if not numeric:
                        break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        rhs[r], rhs[piv] = rhs[piv], rhs[r]
        lead = aug[r][c]
        for i in range(len(aug)):
            if i != r and not is_zero(aug[i][c]):
                f = aug[i][c] / lead
                for k in range(c, cols):
                    aug[i][k] = aug[i][k] - f * aug[r][k]
                for k in range(width):
                    rhs[i][k] = rhs[i][k] - f * rhs[r][k]
        pivots.append(c)
        r += 1
    scale = 1
    if numeric:
        scale = max([abs(v) for row in rhs for v in row] + [mpf(1)])
    for i in range(r, len(aug)):
        for k in range(width):
            v = rhs[i][k]
            if (numeric and abs(v) > tol * scale) or (not numeric and v != 0):
                return None
    zero = mpf(0) if numeric else ZERO
    sol = [[zero] * width for _ in range(cols)]
    for row_idx, c in enumerate(pivots):
        lead = aug[row_idx][c]
        for k in range(width):
            sol[c][k] = rhs[row_idx][k] / lead
    return sol


def _to_num(v):
    if isinstance(v, Fraction):
        return mpf(v.numerator) / mpf(v.denominator)
    return v


def _is_permutation(mat: Matrix) -> bool:
    seen = set()
    for i in range(mat.rows):
        nz = [j for j in range(mat.cols) if mat.entries[i][j]]
        if len(nz) != 1 or mat.entries[i][nz[0]] != 1 or nz[0] in seen:
            return False
        seen.add(nz[0])
    return True


def find_extension_witness(ext: Algebra, target: Algebra, row, n: int,
                           alpha, tol: Fraction):
    """Search for a recorded-form isomorphism ext -> target.

    Tries each witness hint over every permutation of the top slots; exact
    hints run over Q, numeric ones at the working precision with `tol`.
    Returns (kind, matrix) or None; kind is "permutation", "matrix" or
    "numeric".
    """
    m = ext.dim
    s = row.sdim
    top = list(range(n - 1, m))  # 0-based slots that may move
    for hint in row.hints:
        if hint.exact_when:
            parity = "even" if n % 2 == 0 else "odd"
            if hint.exact_when != parity:
                continue
        numeric = hint.numeric
        with workprec(128):
            tolf = mpf(tol.numerator) / mpf(tol.denominator)
            img1 = _eval_hint(hint.img_e1, m, n, alpha, numeric)
            imgm = _eval_hint(hint.img_em, m, n, alpha, numeric)
            for perm in itertools.permutations(top):
                sigma = list(range(m))
                for slot, old in zip(top, perm):
                    sigma[slot] = old
                pm = permutation_matrix(m, _inverse_perm(sigma))
                xprime = transport(ext, pm)
                if numeric:
                    psi = _solve_homomorphism(xprime, target, img1, imgm, True, tolf)
                else:
                    psi = _solve_homomorphism(xprime, target, img1, imgm, False, None)
                if psi is None:
                    continue
                if numeric:
                    total_rows = _compose_numeric(psi, sigma, m)
                    if verify_isomorphism_numeric(ext, target, total_rows, tolf):
                        return ("numeric", total_rows)
                    continue
                total = psi.matmul(pm.inverse())
                if verify_isomorphism(ext, target, total):
                    kind = "permutation" if _is_permutation(total) else "matrix"
                    return (kind, total)
    return None


def _inverse_perm(sigma):
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return inv


def _compose_numeric(psi_rows, sigma, m):
    # columns of the total witness: ext basis e_i sits at X' slot sigma^{-1}[i]
    inv = _inverse_perm(sigma)
    cols = [[psi_rows[t][inv[i]] for t in range(m)] for i in range(m)]
    return [[cols[j][i] for j in range(m)] for i in range(m)]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def distinguish_report(algebras: Sequence[Algebra], rich: bool = True) -> dict:
    """Pairwise fingerprint comparison; collisions are labeled, never
    claimed isomorphic."""
    prints = [(a.label or f"#{i}", fingerprint(a, rich)) for i, a in enumerate(algebras)]
    rows = []
    collisions = []
    for (la, fa), (lb, fb) in itertools.combinations(prints, 2):
        diff = fa.first_difference(fb)
        if diff is None:
            rows.append((la, lb, "collision", "not separated by implemented invariants"))
            collisions.append((la, lb))
        else:
            rows.append((la, lb, "distinguished", diff))
    return {"rows": rows, "collisions": collisions,
            "fingerprints": {l: f for l, f in prints}}


def random_invertible(rng: random.Random, n: int, bound: int = 3) -> Matrix:
    while True:
        rows = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        m = Matrix.from_rows(rows, n)
        if m.det() != 0:
            return m


def fingerprint_invariance(a: Algebra, trials: int, seed: int = 0) -> bool:
    """Fingerprint equality under random invertible basis changes."""
    rng = random.Random(seed ^ (a.dim * 7919))
    base = fingerprint(a)
    for _ in range(trials):
        m = random_invertible(rng, a.dim)
        if fingerprint(transport(a, m)) != base:
            return False
    return True


def generator_image_sweep(a: Algebra, b: Algebra, bound: int = 3,
                          limit: int = 4000, seed: int = 0) -> Optional[Matrix]:
    """Bounded random search for an isomorphism a -> b via generator images.

    Coordinates are rationals with numerator and denominator in [-bound,
    bound]; failure means "no witness found", nothing more.
    """
    from .action import extend_morphism
    rng = random.Random(seed ^ (a.dim * 31337))
    n = a.dim
    for _ in range(limit):
        img1 = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)]
        imgn = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)]
        phi = extend_morphism(a, b, {0: img1, n - 1: imgn})
        if phi is not None:
            return phi
    return None
