"""Constructors and machine-readable data for every named algebra, cocycle
basis, reduction case and orbit list used by the verification suite.

Index conventions follow the published tables: products are written on
basis vectors e_1..e_n and a table entry `e_i . e_j = C(i+j-1, j) e_{i+j}`
is the "core" shared by all families.  Appendix products written without an
explicit target are read as e_{i+j} (forced by dimension bookkeeping).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import Algebra
from .cohomology import BilinearForm, form_combination


class CatalogError(ValueError):
    pass


def binomial(i: int, j: int) -> Fraction:
    """Exact binomial coefficient; j > i or j < 0 gives 0."""
    if j < 0 or j > i:
        return Fraction(0)
    return Fraction(math.comb(i, j))


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

F_KINDS = ("F0", "F1", "F2", "F3")
MU_ALPHA = frozenset({2, 10, 11})


@dataclass(frozen=True)
class FamilyId:
    kind: str                      # "F0".."F3" or "MU"
    n: int
    index: Optional[int] = None    # mu index 1..16
    alpha: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind == "MU":
            if self.index is None or not 1 <= self.index <= 16:
                raise CatalogError("mu index must be 1..16")
            if (self.index in MU_ALPHA) != (self.alpha is not None):
                raise CatalogError(f"mu_{self.index} takes alpha exactly when in {sorted(MU_ALPHA)}")
            if self.n < 5:
                raise CatalogError("appendix algebras are built for n >= 5")
        elif self.kind in F_KINDS:
            if self.index is not None or self.alpha is not None:
                raise CatalogError("F families take no extra data")
            if self.kind == "F0":
                if self.n < 1:
                    raise CatalogError("F0 needs n >= 1")
            elif self.n < 5:
                raise CatalogError(f"{self.kind} needs n >= 5")
        else:
            raise CatalogError(f"unknown family kind {self.kind!r}")

    @property
    def label(self) -> str:
        if self.kind in F_KINDS:
            return f"F_{self.n}^{self.kind[1]}"
        base = f"mu_{self.index}^{self.n}"
        return f"{base}({self.alpha})" if self.alpha is not None else base


def F0(n: int) -> FamilyId:
    return FamilyId("F0", n)


def F1(n: int) -> FamilyId:
    return FamilyId("F1", n)


def F2(n: int) -> FamilyId:
    return FamilyId("F2", n)


def F3(n: int) -> FamilyId:
    return FamilyId("F3", n)


def MU(index: int, n: int, alpha=None) -> FamilyId:
    return FamilyId("MU", n, index, Fraction(alpha) if alpha is not None else None)


def _core_products(n: int, bound: int) -> dict[tuple[int, int], list[Fraction]]:
    """e_i . e_j = C(i+j-1, j) e_{i+j} for 2 <= i+j <= bound (all 1-based)."""
    table: dict[tuple[int, int], list[Fraction]] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            s = i + j
            if 2 <= s <= bound and s <= n:
                v = [Fraction(0)] * n
                v[s - 1] = binomial(s - 1, j)
                table[(i - 1, j - 1)] = v
    return table


# extra products of the appendix families: (i, j, [(coeff(n, alpha), target_offset)])
# with target e_{n-offset};  i, j given as "1" or "n".
_ONE = lambda n, a: Fraction(1)
_ALPHA = lambda n, a: a
_MU_SPECS: dict[int, tuple[int, list]] = {
    1:  (2, [("1n", [(_ONE, 1)])]),
    2:  (2, [("1n", [(_ALPHA, 1)]), ("n1", [(_ONE, 1)])]),
    3:  (2, [("nn", [(_ONE, 1)])]),
    4:  (2, [("1n", [(_ONE, 1)]), ("nn", [(_ONE, 1)])]),
    5:  (3, [("1n", [(_ONE, 1)]), ("n1", [(_ONE, 2)])]),
    6:  (3, [("1n", [(_ONE, 1)]), ("nn", [(_ONE, 2)])]),
    7:  (2, [("1n", [(_ONE, 1)]), ("nn", [(_ONE, 2)])]),
    8:  (2, [("1n", [(lambda n, a: Fraction(1, n - 3), 1)]), ("n1", [(_ONE, 2), (_ONE, 1)])]),
    9:  (3, [("1n", [(_ONE, 2), (_ONE, 1)]), ("n1", [(_ONE, 1)]), ("nn", [(_ONE, 2)])]),
    10: (3, [("1n", [(_ALPHA, 1)]), ("n1", [(_ONE, 1)]), ("nn", [(_ONE, 2)])]),
    11: (2, [("1n", [(_ALPHA, 1)]), ("n1", [(_ONE, 1)]), ("nn", [(_ONE, 2)])]),
    12: (2, [("n1", [(_ONE, 2), (_ONE, 1)]), ("nn", [(_ONE, 1)])]),
    13: (2, [("n1", [(_ONE, 2)]), ("nn", [(_ONE, 1)])]),
    14: (4, [("1n", [(_ONE, 2)]), ("n1", [(_ONE, 1)]), ("nn", [(_ONE, 3)])]),
    15: (3, [("1n", [(_ONE, 2)]), ("n1", [(_ONE, 1)]), ("nn", [(_ONE, 3)])]),
    16: (3, [("1n", [(lambda n, a: Fraction(1, n - 4), 1)]),
             ("n1", [(_ONE, 3), (_ONE, 1)]), ("nn", [(_ONE, 2)])]),
}


def make(fam: FamilyId) -> Algebra:
    """Exact structure-constant table of a named algebra."""
    n = fam.n
    if fam.kind == "F0":
        table = _core_products(n, n)
        return Algebra.from_products(n, table, fam.label)
    if fam.kind in ("F1", "F2", "F3"):
        table = _core_products(n, n - 1)
        if fam.kind == "F2":
            v = [Fraction(0)] * n
            v[n - 2] = Fraction(1)
            table[(n - 1, 0)] = v
        elif fam.kind == "F3":
            v = [Fraction(0)] * n
            v[n - 2] = Fraction(1)
            table[(n - 1, n - 1)] = v
        return Algebra.from_products(n, table, fam.label)
    bound_off, extras = _MU_SPECS[fam.index]
    table = _core_products(n, n - bound_off)
    for pos, parts in extras:
        i = 0 if pos[0] == "1" else n - 1
        j = 0 if pos[1] == "1" else n - 1
        v = list(table.get((i, j), [Fraction(0)] * n))
        for coeff, off in parts:
            v[n - 1 - off] += coeff(n, fam.alpha)
        table[(i, j)] = v
    params = (("alpha", fam.alpha),) if fam.alpha is not None else ()
    return Algebra.from_products(n, table, fam.label, params)


# ---------------------------------------------------------------------------
# published cocycle bases
# ---------------------------------------------------------------------------

def nabla_sum(n: int, s: int) -> BilinearForm:
    """sum_{i=1}^{s-1} C(s-1, i-1) Delta_{i, s-i} as a form on dim n."""
    terms = []
    for i in range(1, s):
        j = s - i
        if 1 <= j <= n and i <= n:
            terms.append((binomial(s - 1, i - 1), BilinearForm.delta(n, i, j)))
    return form_combination(n, terms)


def nabla_basis(family: str, n: int) -> list[BilinearForm]:
    """Published H^2 representatives: 4 forms for F1, 3 for F2/F3."""
    if n < 5:
        raise CatalogError("nabla basis defined for n >= 5")
    forms = [BilinearForm.delta(n, 1, n), BilinearForm.delta(n, n, 1),
             BilinearForm.delta(n, n, n)]
    if family == "F1":
        forms.append(nabla_sum(n, n))
        return forms
    if family in ("F2", "F3"):
        return forms
    raise CatalogError(f"no nabla basis for family {family!r}")


def paper_z2_basis(family: str, n: int) -> list[BilinearForm]:
    top = n if family == "F1" else n - 1
    forms = [BilinearForm.delta(n, 1, 1), BilinearForm.delta(n, 1, n),
             BilinearForm.delta(n, n, 1), BilinearForm.delta(n, n, n)]
    forms += [nabla_sum(n, s) for s in range(3, top + 1)]
    return forms


def paper_b2_basis(family: str, n: int) -> list[BilinearForm]:
    forms = [BilinearForm.delta(n, 1, 1)]
    if family == "F1":
        forms += [nabla_sum(n, s) for s in range(3, n)]
        return forms
    forms += [nabla_sum(n, s) for s in range(3, n - 1)]
    if family == "F2":
        forms.append(nabla_sum(n, n - 1).add(BilinearForm.delta(n, n, 1)))
    elif family == "F3":
        forms.append(nabla_sum(n, n - 1).add(BilinearForm.delta(n, n, n)))
    else:
        raise CatalogError(f"no published B^2 basis for {family!r}")
    return forms


def h2_dim(family: str) -> int:
    return 4 if family == "F1" else 3


def f0_extension_class(n: int) -> BilinearForm:
    """The cocycle sum_{i+j=n+1} C(n, j) Delta_{i,j} extending F_n^0 to F_{n+1}^0."""
    return nabla_sum(n, n + 1)


# ---------------------------------------------------------------------------
# reduction cases (sections 2.1.1 - 2.3.3)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionCase:
    """One leaf case of the orbit-reduction analysis.

    `assigns` are the equality constraints in solve order (normalizations
    the case prose establishes are included and flagged in `note`);
    `frees` are sampled; `neqs` must be nonzero, exactly, over Q.
    `subst` are the printed parameter substitutions; `subst_fix` overrides
    entries whose printed form fails verification (each such override is a
    documented correction, see `note`).  `target` spans the case's
    representative in published-basis coordinates.
    """

    family: str
    sdim: int
    case_id: str
    frees: tuple[str, ...]
    assigns: tuple[tuple[str, str], ...] = ()
    neqs: tuple[str, ...] = ()
    subst: tuple[tuple[str, str], ...] = ()
    subst_fix: tuple[tuple[str, str], ...] = ()
    target: tuple[tuple[str, ...], ...] = ()
    note: str = ""

    @property
    def effective_subst(self) -> tuple[tuple[str, str], ...]:
        fixes = dict(self.subst_fix)
        return tuple((k, fixes.get(k, v)) for k, v in self.subst) + tuple(
            (k, v) for k, v in self.subst_fix if k not in dict(self.subst))

    def generator_params(self) -> tuple[tuple[str, ...], ...]:
        return generator_layout(self.family, self.sdim)


def generator_layout(family: str, sdim: int) -> tuple[tuple[str, ...], ...]:
    """Coordinates of the generic generators theta_1..theta_s over the
    published representatives ("0" entries are structural zeros)."""
    if family == "F1":
        rows = [("a1", "a2", "a3", "a4"), ("b1", "b2", "b3", "0"),
                ("g1", "g2", "0", "0"), ("d1", "0", "0", "0")]
    else:
        rows = [("a1", "a2", "a3"), ("b1", "b2", "0"), ("g1", "0", "0")]
    if sdim > len(rows):
        raise CatalogError("subspace dimension too large for this family")
    return tuple(rows[:sdim])


def _c(family, sdim, case_id, frees, assigns=(), neqs=(), subst=(), fix=(), target=(), note=""):
    return ReductionCase(family, sdim, case_id, tuple(frees), tuple(assigns),
                         tuple(neqs), tuple(subst), tuple(fix),
                         tuple(tuple(row) for row in target), note)


_F1_CASES = [
    # ---- one-dimensional (2.1.1) -------------------------------------------
    _c("F1", 1, "2.1.1(1)", ["a1"], [("a2", "0"), ("a3", "0"), ("a4", "0")], ["a1"],
       [("x", "1"), ("y", "1/a1")], target=[["1", "0", "0", "0"]]),
    _c("F1", 1, "2.1.1(2)", ["a1", "a2"], [("a3", "0"), ("a4", "0")], ["a2"],
       [("x", "1"), ("y", "1/a2")], target=[["a1/a2", "1", "0", "0"]]),
    _c("F1", 1, "2.1.1(3)", ["a1", "a3"], [("a2", "a1"), ("a4", "0")], ["a3"],
       [("x", "1"), ("y", "1/root(a3, 2)"), ("w", "-(a2/a3)")],
       target=[["0", "0", "1", "0"]]),
    _c("F1", 1, "2.1.1(4)", ["a1", "a2", "a3"], [("a4", "0")], ["a3", "a1 - a2"],
       [("x", "root(a3, 2)/(a1 - a2)"), ("y", "1/root(a3, 2)"),
        ("w", "a2/(root(a3, 2)*(a2 - a1))")],
       target=[["1", "0", "1", "0"]]),
    _c("F1", 1, "2.1.1(5)", ["a1", "a4"], [("a2", "(n - 1)*a1"), ("a3", "0")], ["a4"],
       [("x", "1/root(a4, n)"), ("y", "1"), ("z", "-(a1/a4)")],
       target=[["0", "0", "0", "1"]]),
    _c("F1", 1, "2.1.1(6)", ["a1", "a2", "a4"], [("a3", "0")],
       ["a4", "a2 - (n - 1)*a1"],
       [("x", "1/root(a4, n)"), ("y", "root(a4, n)/(a2 - (n - 1)*a1)"),
        ("z", "-(root(a4, n)/(a2 - (n - 1)*a1))")],
       fix=[("z", "-((a1*root(a4, n))/(a4*(a2 - (n - 1)*a1)))")],
       target=[["0", "1", "0", "1"]],
       note="printed z drops the factor a1/a4; corrected z = -a1*y/a4"),
    _c("F1", 1, "2.1.1(7)", ["a1", "a2", "a3", "a4"], [], ["a3", "a4"],
       [("x", "1/root(a4, n)"), ("y", "1/root(a3, 2)"),
        ("z", "(a1 - a2)/((n - 2)*root(a3, 2)*a4)"),
        ("w", "(a2 - (n - 1)*a1)/((n - 2)*root(a4, n)*a3)")],
       target=[["0", "0", "1", "1"]]),
    # ---- two-dimensional (2.1.2) -------------------------------------------
    _c("F1", 2, "2.1.2(1a)", ["a1", "a2", "a4", "b1", "b2", "b3"], [("a3", "0")],
       ["a4", "b3", "a2 - (n - 1)*a1", "b1 - b2"],
       [("x", "pow(((a2 - (n - 1)*a1)*(b2 - b1))/a4, 1/(n - 2))"),
        ("y", "((b2 - b1)/b3)*x"), ("z", "((a1*(b1 - b2))/(a4*b3))*x"),
        ("w", "-((b1*x)/b3)")],
       fix=[("x", "pow(((a2 - (n - 1)*a1)*(b2 - b1))/(a4*b3), 1/(n - 2))")],
       target=[["0", "1", "1", "0"], ["0", "1", "0", "1"]],
       note="printed x drops b3 from the radicand"),
    _c("F1", 2, "2.1.2(1b)", ["a1", "a2", "a4", "b1", "b3"],
       [("a3", "0"), ("b2", "b1")], ["a4", "b3", "a2 - (n - 1)*a1"],
       [("x", "pow((a2 - (n - 1)*a1)/(a4*root(b3, 2)), 1/(n - 1))"),
        ("y", "1/root(b3, 2)"), ("z", "-(a1/(a4*root(b3, 2)))"),
        ("w", "-((b1*x)/b3)")],
       target=[["0", "0", "1", "0"], ["0", "1", "0", "1"]]),
    _c("F1", 2, "2.1.2(1c)", ["a1", "a4", "b1", "b2", "b3"],
       [("a3", "0"), ("a2", "(n - 1)*a1")], ["a4", "b3", "b1 - b2"],
       [("x", "1/root(a4, n)"), ("y", "((b2 - b1)/b3)*x"),
        ("z", "((a1*(b1 - b2))/(a4*b3))*x"), ("w", "-((b1*x)/b3)")],
       target=[["0", "1", "1", "0"], ["0", "0", "0", "1"]]),
    _c("F1", 2, "2.1.2(1d)", ["a1", "a4", "b1", "b3"],
       [("a3", "0"), ("a2", "(n - 1)*a1"), ("b2", "b1")], ["a4", "b3"],
       [("x", "1/root(a4, n)"), ("y", "1/root(b3, 2)"),
        ("z", "-((a1*y)/a4)"), ("w", "-((b1*x)/b3)")],
       target=[["0", "0", "1", "0"], ["0", "0", "0", "1"]]),
    _c("F1", 2, "2.1.2(2a)", ["a1", "a3", "a4", "b1", "b2"],
       [("a2", "0"), ("b3", "0")], ["a4", "b2", "a3"],
       [("x", "1/root(a4, n)"), ("y", "1/root(a3, 2)"),
        ("z", "a1/((n - 2)*root(a3, 2)*a4)"),
        ("w", "-(((n - 1)*a1)/((n - 2)*root(a4, n)*a3))")],
       target=[["b1/b2", "1", "0", "0"], ["0", "0", "1", "1"]]),
    _c("F1", 2, "2.1.2(2b)", ["a1", "a4", "b1", "b2"],
       [("a2", "0"), ("b3", "0"), ("a3", "0")],
       ["a4", "b2", "(n - 1)*b1 - b2"],
       [("x", "1/root(a4, n)"), ("y", "1"),
        ("z", "-((a1*b2)/(a4*((n - 1)*b1 - b2)))")],
       fix=[("z", "(a1*b2)/(a4*((n - 1)*b1 - b2))")],
       target=[["b1/b2", "1", "0", "0"], ["0", "0", "0", "1"]],
       note="printed z has the wrong sign"),
    _c("F1", 2, "2.1.2(2c)", ["a4", "b1"],
       [("a2", "0"), ("b3", "0"), ("a3", "0"), ("a1", "0"), ("b2", "(n - 1)*b1")],
       ["a4", "b1"],
       [("x", "1/root(a4, n)"), ("y", "1"), ("z", "0")],
       target=[["1/(n - 1)", "1", "0", "0"], ["0", "0", "0", "1"]]),
    _c("F1", 2, "2.1.2(2d)", ["a1", "a4", "b1"],
       [("a2", "0"), ("b3", "0"), ("a3", "0"), ("b2", "(n - 1)*b1")],
       ["a4", "b1", "a1"],
       [("x", "1/root(a4, n)"), ("y", "-(root(a4, n)/((n - 1)*a1))"),
        ("z", "root(a4, n)/((n - 1)*a4)")],
       target=[["1/(n - 1)", "1", "0", "0"], ["0", "1", "0", "1"]]),
    _c("F1", 2, "2.1.2(3a)", ["a1", "a2", "a3", "a4", "b1"],
       [("b2", "0"), ("b3", "0")], ["a4", "b1", "a3"],
       [("x", "1/root(a4, n)"), ("y", "1/root(a3, 2)"),
        ("z", "(a1 - a2)/((n - 2)*root(a3, 2)*a4)"),
        ("w", "(a2 - (n - 1)*a1)/((n - 2)*root(a4, n)*a3)")],
       target=[["1", "0", "0", "0"], ["0", "0", "1", "1"]]),
    _c("F1", 2, "2.1.2(3b)", ["a1", "a4", "b1"],
       [("b2", "0"), ("b3", "0"), ("a3", "0"), ("a2", "(n - 1)*a1")],
       ["a4", "b1"],
       [("x", "1/root(a4, n)"), ("y", "1"), ("z", "-(a1/a4)")],
       target=[["1", "0", "0", "0"], ["0", "0", "0", "1"]]),
    _c("F1", 2, "2.1.2(4a)", ["a1", "a3", "b1", "b2"],
       [("a4", "0"), ("b3", "0"), ("a2", "a1")], ["a3", "b2", "b1 - b2"],
       [("y", "1/root(a3, 2)"), ("w", "-(a2/a3)"), ("x", "1")],
       target=[["b1/b2", "1", "0", "0"], ["0", "0", "1", "0"]],
       note="b3 = 0 normalization (mixing with theta_1) is implicit in alpha = b1/b2"),
    _c("F1", 2, "2.1.2(4b)", ["a1", "a3", "b1"],
       [("a4", "0"), ("b3", "0"), ("a2", "a1"), ("b2", "b1")], ["a3", "b1"],
       target=[["1", "1", "0", "0"], ["0", "0", "1", "0"]]),
    _c("F1", 2, "2.1.2(4c)", ["a1", "a2", "a3", "b1"],
       [("a4", "0"), ("b3", "0"), ("b2", "b1")], ["a3", "b1", "a1 - a2"],
       [("x", "root(a3, 2)/(a1 - a2)"), ("y", "1/root(a3, 2)"),
        ("w", "a2/(root(a3, 2)*(a2 - a1))")],
       target=[["1", "1", "0", "0"], ["1", "0", "1", "0"]],
       note="b3 = 0 normalization is implicit"),
    _c("F1", 2, "2.1.2(5)", ["a1", "a3", "b1"],
       [("a4", "0"), ("b2", "0"), ("b3", "0"), ("a2", "a1")], ["a3", "b1"],
       [("y", "1/root(a3, 2)"), ("w", "-(a2/a3)"), ("x", "1")],
       target=[["1", "0", "0", "0"], ["0", "0", "1", "0"]],
       note="the stray alpha = b1/b2 in the printed case is vacuous here"),
    _c("F1", 2, "2.1.2(6)", ["a1", "a2", "b1", "b2"],
       [("a3", "0"), ("a4", "0"), ("b3", "0")], ["a1*b2 - a2*b1"],
       target=[["1", "0", "0", "0"], ["0", "1", "0", "0"]]),
    # ---- three-dimensional (2.1.3) -----------------------------------------
    _c("F1", 3, "2.1.3(1a)", ["a1", "a4", "b1", "b3", "g1", "g2"],
       [("a2", "0"), ("a3", "0"), ("b2", "0")],
       ["a4", "b3", "g2", "g1 - g2", "(n - 1)*g1 - g2"],
       [("x", "1/root(a4, n)"), ("y", "1/root(b3, 2)"),
        ("z", "(a1*g2*y)/(a4*((n - 1)*g1 - g2))"),
        ("w", "(b1*g2*x)/(a4*(g1 - g2))")],
       fix=[("w", "(b1*g2*x)/(b3*(g1 - g2))")],
       target=[["g1/g2", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
       note="printed w has a4 for b3 in the denominator"),
    _c("F1", 3, "2.1.3(1b-i)", ["a1", "a4", "b1", "b3", "g1"],
       [("a2", "0"), ("a3", "0"), ("b2", "0"), ("g2", "g1")],
       ["a4", "b3", "g1", "b1"],
       [("x", "1/root(a4, n)"), ("y", "(b1*x)/b3"),
        ("z", "(a1*y)/((n - 2)*a4)"), ("w", "0")],
       target=[["1", "1", "0", "0"], ["1", "0", "1", "0"], ["0", "0", "0", "1"]]),
    _c("F1", 3, "2.1.3(1b-ii)", ["a1", "a4", "b3", "g1"],
       [("a2", "0"), ("a3", "0"), ("b2", "0"), ("g2", "g1"), ("b1", "0")],
       ["a4", "b3", "g1"],
       [("x", "1/root(a4, n)"), ("y", "1/root(b3, 2)"),
        ("z", "(a1*y)/((n - 2)*a4)"), ("w", "0")],
       target=[["1", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]),
    _c("F1", 3, "2.1.3(1c-i)", ["a1", "a4", "b1", "b3", "g1"],
       [("a2", "0"), ("a3", "0"), ("b2", "0"), ("g2", "(n - 1)*g1")],
       ["a4", "b3", "g1", "a1"],
       [("y", "1/root(b3, 2)"), ("z", "-((a1*y)/a4)"),
        ("x", "root((n - 1)*z, n - 1)"), ("w", "-(((n - 1)*b1*x)/((n - 2)*b3))")],
       target=[["1/(n - 1)", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "1", "0", "1"]]),
    _c("F1", 3, "2.1.3(1c-ii)", ["a4", "b1", "b3", "g1"],
       [("a2", "0"), ("a3", "0"), ("b2", "0"), ("g2", "(n - 1)*g1"), ("a1", "0")],
       ["a4", "b3", "g1"],
       [("x", "1/root(a4, n)"), ("y", "1/root(b3, 2)"), ("z", "0"),
        ("w", "-(((n - 1)*b1*x)/((n - 2)*b3))")],
       target=[["1/(n - 1)", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]),
    _c("F1", 3, "2.1.3(2)", ["a1", "a4", "b1", "b3", "g1"],
       [("a3", "0"), ("a2", "(n - 1)*a1"), ("b2", "b1"), ("g2", "0")],
       ["a4", "b3", "g1"],
       [("x", "1/root(a4, n)"), ("y", "1/root(b3, 2)"),
        ("z", "-((a1*y)/a4)"), ("w", "-((b1*x)/b3)")],
       target=[["1", "0", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]),
    _c("F1", 3, "2.1.3(3a)", ["a3", "a4", "b2", "g1"],
       [("b3", "0"), ("g2", "0"), ("a1", "0"), ("a2", "0"), ("b1", "0")],
       ["a4", "b2", "g1", "a3"],
       [("y", "1/root(a3, 2)"), ("x", "1/root(a4, n)")],
       target=[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "1"]]),
    _c("F1", 3, "2.1.3(3b)", ["a4", "b2", "g1"],
       [("b3", "0"), ("g2", "0"), ("a1", "0"), ("a2", "0"), ("b1", "0"), ("a3", "0")],
       ["a4", "b2", "g1"],
       target=[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "0", "1"]]),
    _c("F1", 3, "2.1.3(4)", ["a1", "a2", "a3", "b1", "b2", "g1"],
       [("a4", "0"), ("b3", "0"), ("g2", "0")], ["a3", "b2", "g1"],
       target=[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"]]),
    # ---- four-dimensional (2.1.4) ------------------------------------------
    _c("F1", 4, "2.1.4", ["a1", "a2", "a3", "a4", "b1", "b2", "b3", "g1", "g2", "d1"],
       [], ["a4", "b3", "g2", "d1"],
       target=[["1", "0", "0", "0"], ["0", "1", "0", "0"],
               ["0", "0", "1", "0"], ["0", "0", "0", "1"]]),
]

_F2_CASES = [
    _c("F2", 1, "2.2.1(1a)", ["a1"], [("a3", "0"), ("a2", "0")], ["a1"],
       target=[["1", "0", "0"]]),
    _c("F2", 1, "2.2.1(1b)", ["a1", "a2"], [("a3", "0")], ["a2"],
       [("x", "pow(a2, -(1/(n - 1)))")], target=[["a1/a2", "1", "0"]]),
    _c("F2", 1, "2.2.1(2a)", ["a1", "a2", "a3"], [], ["a3", "a1 - a2"],
       [("x", "pow((a2 - a1)/a3, 1/(n - 3))"), ("w", "-((x*a1)/a3)")],
       target=[["0", "1", "1"]]),
    _c("F2", 1, "2.2.1(2b)", ["a1", "a3"], [("a2", "a1")], ["a3"],
       [("x", "1"), ("w", "-((x*a1)/a3)")], target=[["0", "0", "1"]]),
    _c("F2", 2, "2.2.2(1a)", ["a1", "a3", "b1", "b2"], [("a2", "a1")],
       ["a3", "b2", "b1 - b2"],
       [("x", "pow(b2, -(1/(n - 1)))"), ("w", "-((x*a1)/a3)")],
       target=[["b1/b2", "1", "0"], ["0", "0", "1"]]),
    _c("F2", 2, "2.2.2(1b)", ["a1", "a3", "b1"], [("a2", "a1"), ("b2", "0")],
       ["a3", "b1"],
       [("x", "pow(b1, -(1/(n - 1)))"), ("w", "-((x*a1)/a3)")],
       target=[["1", "0", "0"], ["0", "0", "1"]]),
    _c("F2", 2, "2.2.2(2a)", ["a1", "a2", "a3", "b1"], [("b2", "b1")],
       ["a3", "b1", "a1 - a2"],
       [("x", "pow((a1 - a2)/a3, 1/(n - 1))"), ("w", "-((x*a2)/a3)")],
       fix=[("x", "pow((a1 - a2)/a3, 1/(n - 3))")],
       target=[["1", "1", "0"], ["1", "0", "1"]],
       note="printed exponent 1/(n-1) should be 1/(n-3), cf. 2.2.1(2a)"),
    _c("F2", 2, "2.2.2(2b)", ["a1", "a3", "b1"], [("b2", "b1"), ("a2", "a1")],
       ["a3", "b1"], target=[["1", "1", "0"], ["0", "0", "1"]]),
    _c("F2", 2, "2.2.2(3)", ["a1", "a2", "b1", "b2"], [("a3", "0")],
       ["a1*b2 - a2*b1"], target=[["1", "0", "0"], ["0", "1", "0"]]),
    _c("F2", 3, "2.2.3", ["a1", "a2", "a3", "b1", "b2", "g1"], [],
       ["a3", "b2", "g1"],
       target=[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]),
]

_F3_CASES = [
    _c("F3", 1, "2.3.1(1a)", ["a1"], [("a3", "0"), ("a2", "0")], ["a1"],
       [("x", "pow(a1, -(2/(n + 1)))")], target=[["1", "0", "0"]]),
    _c("F3", 1, "2.3.1(1b)", ["a1", "a2"], [("a3", "0")], ["a2"],
       [("x", "pow(a2, -(2/(n + 1)))")], target=[["a1/a2", "1", "0"]]),
    _c("F3", 1, "2.3.1(2a)", ["a1", "a2", "a3"], [], ["a3", "a2 - a1"],
       [("x", "pow((a2 - a1)/a3, 2/(n - 3))"), ("w", "-((x*a1)/a3)")],
       target=[["0", "1", "1"]]),
    _c("F3", 1, "2.3.1(2b)", ["a1", "a3"], [("a2", "a1")], ["a3"],
       [("x", "1"), ("w", "-((x*a1)/a3)")], target=[["0", "0", "1"]]),
    _c("F3", 2, "2.3.2(1a)", ["a1", "a3", "b1", "b2"], [("a2", "a1")],
       ["a3", "b2", "b1 - b2"],
       [("x", "pow(b2, -(2/(n + 1)))"), ("w", "-((x*a1)/a3)")],
       target=[["b1/b2", "1", "0"], ["0", "0", "1"]]),
    _c("F3", 2, "2.3.2(1b)", ["a1", "a3", "b1"], [("a2", "a1"), ("b2", "0")],
       ["a3", "b1"],
       [("x", "pow(b1, -(2/(n + 1)))"), ("w", "-((x*a1)/a3)")],
       target=[["1", "0", "0"], ["0", "0", "1"]]),
    _c("F3", 2, "2.3.2(2a)", ["a1", "a2", "a3", "b1"], [("b2", "b1")],
       ["a3", "b1", "a1 - a2"],
       [("x", "pow((a1 - a2)/a3, 2/(n - 3))"), ("w", "-((x*a2)/a3)")],
       target=[["1", "1", "0"], ["1", "0", "1"]]),
    _c("F3", 2, "2.3.2(2b)", ["a1", "a3", "b1"], [("b2", "b1"), ("a2", "a1")],
       ["a3", "b1"], target=[["1", "1", "0"], ["0", "0", "1"]]),
    _c("F3", 2, "2.3.2(3)", ["a1", "a2", "b1", "b2"], [("a3", "0")],
       ["a1*b2 - a2*b1"], target=[["1", "0", "0"], ["0", "1", "0"]]),
    _c("F3", 3, "2.3.3", ["a1", "a2", "a3", "b1", "b2", "g1"], [],
       ["a3", "b2", "g1"],
       target=[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]),
]

_ALL_CASES = {"F1": _F1_CASES, "F2": _F2_CASES, "F3": _F3_CASES}


def reduction_cases(family: str, n: Optional[int] = None) -> list[ReductionCase]:
    """All transcribed leaf cases of the family's reduction analysis.

    The printed case groups split into these leaves; `n` is only validated
    here (cases are n-generic, bound at verification time).
    """
    if family not in _ALL_CASES:
        raise CatalogError(f"no reduction cases for family {family!r}")
    if n is not None and n < 5:
        raise CatalogError("reduction analysis needs n >= 5")
    return list(_ALL_CASES[family])


# ---------------------------------------------------------------------------
# orbit lists (the T_s unions)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitList:
    family: str
    sdim: int
    representatives: tuple[tuple[tuple[str, ...], ...], ...]

    def count(self) -> int:
        return len(self.representatives)


def _reps(rows):
    return tuple(tuple(tuple(r) for r in rep) for rep in rows)


_T_F1 = {
    1: _reps([[["1", "0", "0", "0"]], [["alpha", "1", "0", "0"]],
              [["0", "0", "1", "0"]], [["1", "0", "1", "0"]],
              [["0", "0", "0", "1"]], [["0", "1", "0", "1"]],
              [["0", "0", "1", "1"]]]),
    2: _reps([
        [["1", "0", "0", "0"], ["0", "1", "0", "0"]],
        [["1", "0", "0", "0"], ["0", "0", "1", "0"]],
        [["1", "0", "0", "0"], ["0", "0", "1", "1"]],
        [["1", "0", "0", "0"], ["0", "0", "0", "1"]],
        [["1/(n - 1)", "1", "0", "0"], ["0", "1", "0", "1"]],
        [["1", "1", "0", "0"], ["1", "0", "1", "0"]],
        [["alpha", "1", "0", "0"], ["0", "0", "1", "0"]],
        [["alpha", "1", "0", "0"], ["0", "0", "1", "1"]],
        [["alpha", "1", "0", "0"], ["0", "0", "0", "1"]],
        [["0", "1", "1", "0"], ["0", "1", "0", "1"]],
        [["0", "1", "1", "0"], ["0", "0", "0", "1"]],
        [["0", "0", "1", "0"], ["0", "1", "0", "1"]],
        [["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    ]),
    3: _reps([
        [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"]],
        [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "1"]],
        [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "0", "1"]],
        [["1", "1", "0", "0"], ["1", "0", "1", "0"], ["0", "0", "0", "1"]],
        [["1/(n - 1)", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "1", "0", "1"]],
        [["alpha", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
        [["1", "0", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    ]),
    4: _reps([[["1", "0", "0", "0"], ["0", "1", "0", "0"],
               ["0", "0", "1", "0"], ["0", "0", "0", "1"]]]),
}

_T_F23 = {
    1: _reps([[["1", "0", "0"]], [["alpha", "1", "0"]],
              [["0", "1", "1"]], [["0", "0", "1"]]]),
    2: _reps([
        [["1", "0", "0"], ["0", "1", "0"]],
        [["1", "0", "0"], ["0", "0", "1"]],
        [["1", "1", "0"], ["1", "0", "1"]],
        [["alpha", "1", "0"], ["0", "0", "1"]],
    ]),
    3: _reps([[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]]),
}


def orbit_lists(family: str, n: Optional[int] = None) -> list[OrbitList]:
    if family == "F1":
        data = _T_F1
    elif family in ("F2", "F3"):
        data = _T_F23
    else:
        raise CatalogError(f"no orbit lists for family {family!r}")
    return [OrbitList(family, s, reps) for s, reps in sorted(data.items())]


# ---------------------------------------------------------------------------
# extension theorem table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessHint:
    """Generator images for the isomorphism witness, as sparse slot/coeff
    expression lists over n (dimension of the result) and alpha.  Slots are
    expressions in m = result dimension, 1-based.  `exact_when` restricts an
    exact-rational hint to a parity of the base dimension ("even"/"odd"/"")."""

    img_e1: tuple[tuple[str, str], ...] = (("1", "1"),)
    img_em: tuple[tuple[str, str], ...] = (("m", "1"),)
    numeric: bool = False
    exact_when: str = ""


@dataclass(frozen=True)
class TheoremRow:
    """One row of a non-split-extension theorem: representative -> algebra."""

    family: str                 # base family: F0 | F1 | F2 | F3
    sdim: int
    rep: tuple[tuple[str, ...], ...]
    result_kind: str            # F0..F3 or MU
    result_index: Optional[int] = None
    result_alpha: Optional[str] = None    # expression in alpha
    alpha_constraint: Optional[str] = None  # expression that must be nonzero
    hints: tuple[WitnessHint, ...] = (WitnessHint(),)
    paper_note: str = ""

    def result_family(self, n: int, alpha: Optional[Fraction]) -> FamilyId:
        m = n + self.sdim
        if self.result_kind == "MU":
            res_alpha = None
            if self.result_alpha is not None:
                from .expressions import parse, eval_exact
                res_alpha = eval_exact(parse(self.result_alpha),
                                       {"alpha": alpha, "n": Fraction(n)})
            return MU(self.result_index, m, res_alpha)
        return FamilyId(self.result_kind, m)


def _row(family, sdim, rep, result, note="", alpha_expr=None, constraint=None, hints=None):
    kind, index = (result, None) if isinstance(result, str) else ("MU", result)
    return TheoremRow(family, sdim, _reps([rep])[0], kind, index, alpha_expr,
                      constraint, tuple(hints) if hints else (WitnessHint(),), note)


_F1_ROWS = [
    _row("F1", 1, [["1", "0", "0", "0"]], 1),
    _row("F1", 1, [["alpha", "1", "0", "0"]], 2, alpha_expr="alpha"),
    _row("F1", 1, [["0", "0", "1", "0"]], 3),
    _row("F1", 1, [["1", "0", "1", "0"]], 4),
    _row("F1", 1, [["0", "0", "0", "1"]], "F1"),
    _row("F1", 1, [["0", "1", "0", "1"]], "F2"),
    _row("F1", 1, [["0", "0", "1", "1"]], "F3"),
    _row("F1", 2, [["1", "0", "0", "0"], ["0", "1", "0", "0"]], 5),
    _row("F1", 2, [["1", "0", "0", "0"], ["0", "0", "1", "0"]], 6),
    _row("F1", 2, [["1", "0", "0", "0"], ["0", "0", "1", "1"]], 7),
    _row("F1", 2, [["1", "0", "0", "0"], ["0", "0", "0", "1"]], 1),
    _row("F1", 2, [["1/(n - 1)", "1", "0", "0"], ["0", "1", "0", "1"]], 8),
    _row("F1", 2, [["1", "1", "0", "0"], ["1", "0", "1", "0"]], 9),
    _row("F1", 2, [["alpha", "1", "0", "0"], ["0", "0", "1", "0"]], 10, alpha_expr="alpha"),
    _row("F1", 2, [["alpha", "1", "0", "0"], ["0", "0", "1", "1"]], 11, alpha_expr="alpha"),
    _row("F1", 2, [["alpha", "1", "0", "0"], ["0", "0", "0", "1"]], 2, alpha_expr="alpha"),
    _row("F1", 2, [["0", "1", "1", "0"], ["0", "1", "0", "1"]], 12),
    _row("F1", 2, [["0", "1", "1", "0"], ["0", "0", "0", "1"]], 4,
         hints=[WitnessHint(img_e1=(("1", "1"), ("m", "-1")), img_em=(("m", "-1"),))],
         note="needs the generator shift e_1 -> e_1 - e_m; not a permutation"),
    _row("F1", 2, [["0", "0", "1", "0"], ["0", "1", "0", "1"]], 13),
    _row("F1", 2, [["0", "0", "1", "0"], ["0", "0", "0", "1"]], 3),
    _row("F1", 3, [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"]], 14),
    _row("F1", 3, [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "1"]], 15),
    _row("F1", 3, [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "0", "1"]], 5),
    _row("F1", 3, [["1", "1", "0", "0"], ["1", "0", "1", "0"], ["0", "0", "0", "1"]], 9),
    _row("F1", 3, [["1/(n - 1)", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "1", "0", "1"]], 16),
    _row("F1", 3, [["alpha", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]], 10,
         alpha_expr="alpha"),
    _row("F1", 3, [["1", "0", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]], 6),
    _row("F1", 4, [["1", "0", "0", "0"], ["0", "1", "0", "0"],
                   ["0", "0", "1", "0"], ["0", "0", "0", "1"]], 14),
]

_F2_ROWS = [
    _row("F2", 1, [["1", "0", "0"]], 1,
         hints=[WitnessHint(img_em=(("m", "1"), ("m - 3", "1/(n - 2)")))]),
    _row("F2", 1, [["alpha", "1", "0"]], 2, alpha_expr="alpha",
         constraint="alpha - 1/(n - 2)",
         hints=[WitnessHint(img_em=(("m", "1"), ("m - 3", "alpha/(alpha*(n - 2) - 1)")))],
         note="printed constraint alpha != 1/(n-3); verification gives 1/(n-2), "
              "with the excluded value landing on mu_8"),
    _row("F2", 1, [["1/(n - 2)", "1", "0"]], 8,
         note="the alpha = 1/(n-2) member of the previous family"),
    _row("F2", 1, [["0", "1", "1"]], 12),
    _row("F2", 1, [["0", "0", "1"]], 13,
         note="printed theorem lists mu_16^{n+1}; the computed table is mu_13^{n+1}"),
    _row("F2", 2, [["1", "0", "0"], ["0", "1", "0"]], 5),
    _row("F2", 2, [["1", "0", "0"], ["0", "0", "1"]], 6,
         hints=[WitnessHint(img_em=(("m", "1"), ("m - 4", "1/(n - 2)")))]),
    _row("F2", 2, [["1", "1", "0"], ["1", "0", "1"]], 9,
         hints=[WitnessHint(img_em=(("m", "1"), ("m - 4", "1/(n - 3)")))]),
    _row("F2", 2, [["alpha", "1", "0"], ["0", "0", "1"]], 10, alpha_expr="alpha",
         constraint="alpha - 1/(n - 2)",
         hints=[WitnessHint(img_em=(("m", "1"), ("m - 4", "alpha/(alpha*(n - 2) - 1)")))],
         note="printed constraint alpha != 1/(n-4); verification gives 1/(n-2), "
              "with the excluded value landing on mu_16"),
    _row("F2", 2, [["1/(n - 2)", "1", "0"], ["0", "0", "1"]], 16,
         note="the alpha = 1/(n-2) member of the previous family"),
    _row("F2", 3, [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], 14),
]

_F3_ROWS = [
    _row("F3", 1, [["1", "0", "0"]], 7),
    _row("F3", 1, [["alpha", "1", "0"]], 11, alpha_expr="alpha"),
    _row("F3", 1, [["0", "1", "1"]], 12,
         hints=[WitnessHint(img_e1=(("1", "-1"),), img_em=(("m", "-1"),), exact_when="even"),
                WitnessHint(img_e1=(("1", "pow(-1, 1/(n - 3))"),),
                            img_em=(("m", "pow(-1, 1/(n - 3))"),), numeric=True)],
         note="witness needs x with x^(n-3) = -1: rational (-1) for even n, "
              "a root of unity otherwise"),
    _row("F3", 1, [["0", "0", "1"]], 3),
    _row("F3", 2, [["1", "0", "0"], ["0", "1", "0"]], 15),
    _row("F3", 2, [["1", "0", "0"], ["0", "0", "1"]], 6),
    _row("F3", 2, [["1", "1", "0"], ["1", "0", "1"]], 9,
         hints=[WitnessHint(img_em=(("m", "1"), ("m - 4", "1/(n - 3)")))]),
    _row("F3", 2, [["alpha", "1", "0"], ["0", "0", "1"]], 10, alpha_expr="alpha"),
    _row("F3", 3, [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]], 14),
]

_F0_ROWS = [_row("F0", 1, [["1"]], "F0")]


def extension_theorem_table(family: str) -> list[TheoremRow]:
    """representative -> resulting algebra, with recorded witness hints.

    The result column is fixed by matching extend() output tables; rows
    where the printed theorem text disagrees carry a `paper_note`.
    """
    tables = {"F0": _F0_ROWS, "F1": _F1_ROWS, "F2": _F2_ROWS, "F3": _F3_ROWS}
    if family not in tables:
        raise CatalogError(f"no extension theorem table for {family!r}")
    return list(tables[family])


def mu_recipe(index: int) -> TheoremRow:
    """Canonical construction of mu_index^m as a non-split extension of the
    filiform algebra F_{m-s}^1 (the row whose extension has full annihilator)."""
    dims = {1: 2, 2: 2, 3: 2, 4: 2, 5: 3, 6: 3, 7: 2, 8: 2, 9: 3, 10: 3,
            11: 2, 12: 2, 13: 2, 14: 4, 15: 3, 16: 3}
    s = dims[index]
    for row in _F1_ROWS:
        if row.result_kind == "MU" and row.result_index == index and row.sdim == s:
            return row
    raise CatalogError(f"no recipe for mu_{index}")


ALL_FAMILIES = ("F0", "F1", "F2", "F3")


def appendix_family_ids(n: int, alphas: Sequence[Fraction]) -> list[FamilyId]:
    """All mu_k^n instances, parametric families sampled over `alphas`."""
    out = []
    for k in range(1, 17):
        if k in MU_ALPHA:
            out.extend(MU(k, n, a) for a in alphas)
        else:
            out.append(MU(k, n))
    return out
