"""Text formats: `zalg v1` algebra tables, cocycle form lines, `zext v1`
extension recipes and `zcase v1` reduction-case exports.

All indices in these formats are 1-based.  Printing is canonical (sorted,
reduced fractions), so parse . print . parse = parse holds bit-exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Algebra
from .catalog import ReductionCase
from .cohomology import BilinearForm


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _frac(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad rational {tok!r}", lineno) from None


def _index(tok: str, n: int, lineno: int) -> int:
    try:
        k = int(tok)
    except ValueError:
        raise FormatError(f"bad index {tok!r}", lineno) from None
    if not 1 <= k <= n:
        raise FormatError(f"index {k} out of range 1..{n}", lineno)
    return k - 1


def parse_zalg(text: str) -> Algebra:
    dim = None
    label = ""
    params: list[tuple[str, Fraction]] = []
    products: dict[tuple[int, int], list[Fraction]] = {}
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not saw_header:
            if parts != ["zalg", "1"]:
                raise FormatError("expected header 'zalg 1'", lineno)
            saw_header = True
            continue
        kw = parts[0]
        if kw == "dim":
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise FormatError("dim takes one positive integer", lineno)
            dim = int(parts[1])
        elif kw == "label":
            label = raw.split("#", 1)[0].strip()[len("label"):].strip()
        elif kw == "param":
            if len(parts) != 3:
                raise FormatError("param takes a name and a rational", lineno)
            params.append((parts[1], _frac(parts[2], lineno)))
        elif kw == "mul":
            if dim is None:
                raise FormatError("mul before dim", lineno)
            if len(parts) < 4 or parts[3] != ":":
                raise FormatError("expected 'mul i j : c k [c k ...]'", lineno)
            i = _index(parts[1], dim, lineno)
            j = _index(parts[2], dim, lineno)
            rest = parts[4:]
            if len(rest) % 2 != 0 or not rest:
                raise FormatError("mul needs coefficient/index pairs", lineno)
            v = [Fraction(0)] * dim
            for c_tok, k_tok in zip(rest[::2], rest[1::2]):
                v[_index(k_tok, dim, lineno)] += _frac(c_tok, lineno)
            if (i, j) in products:
                raise FormatError(f"duplicate product {i + 1} {j + 1}", lineno)
            products[(i, j)] = v
        else:
            raise FormatError(f"unknown keyword {kw!r}", lineno)
    if not saw_header:
        raise FormatError("missing 'zalg 1' header")
    if dim is None:
        raise FormatError("missing dim line")
    return Algebra.from_products(dim, products, label, tuple(params))


def print_zalg(a: Algebra) -> str:
    lines = ["zalg 1", f"dim {a.dim}"]
    if a.label:
        lines.append(f"label {a.label}")
    for name, value in a.params:
        lines.append(f"param {name} {value}")
    for i in range(a.dim):
        for j in range(a.dim):
            v = a.c[i][j]
            if any(v):
                terms = " ".join(f"{v[k]} {k + 1}" for k in range(a.dim) if v[k])
                lines.append(f"mul {i + 1} {j + 1} : {terms}")
    return "\n".join(lines) + "\n"


def parse_forms(text: str, ambient: int) -> list[tuple[str, BilinearForm]]:
    """`form <name> : <c> <i> <j> [...]` lines meaning sum c * Delta_{i,j}."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "form" or len(parts) < 3 or parts[2] != ":":
            raise FormatError("expected 'form <name> : c i j [...]'", lineno)
        name = parts[1]
        rest = parts[3:]
        if len(rest) % 3 != 0 or not rest:
            raise FormatError("form needs coefficient/i/j triples", lineno)
        rows = [[Fraction(0)] * ambient for _ in range(ambient)]
        for c_tok, i_tok, j_tok in zip(rest[::3], rest[1::3], rest[2::3]):
            i = _index(i_tok, ambient, lineno)
            j = _index(j_tok, ambient, lineno)
            rows[i][j] += _frac(c_tok, lineno)
        out.append((name, BilinearForm(ambient, tuple(tuple(r) for r in rows))))
    return out


def print_forms(forms: Sequence[tuple[str, BilinearForm]]) -> str:
    lines = []
    for name, f in forms:
        terms = []
        for i in range(f.ambient):
            for j in range(f.ambient):
                if f.m[i][j]:
                    terms.append(f"{f.m[i][j]} {i + 1} {j + 1}")
        lines.append(f"form {name} : {' '.join(terms)}")
    return "\n".join(lines) + "\n"


def parse_zext(text: str) -> tuple[str, list[str]]:
    """Extension recipe: a base reference plus cocycle form lines.

    Returns (base_ref, form_lines); the caller resolves the base reference
    (a file path or family spec) and parses the form lines against it.
    """
    base = None
    form_lines = []
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not saw_header:
            if line.split() != ["zext", "1"]:
                raise FormatError("expected header 'zext 1'", lineno)
            saw_header = True
            continue
        if line.startswith("base "):
            base = line[len("base "):].strip()
        elif line.startswith("form "):
            form_lines.append(line)
        else:
            raise FormatError(f"unexpected line {line!r}", lineno)
    if not saw_header:
        raise FormatError("missing 'zext 1' header")
    if base is None:
        raise FormatError("missing base line")
    return base, form_lines


def print_zext(base_ref: str, forms: Sequence[tuple[str, BilinearForm]]) -> str:
    return "zext 1\n" + f"base {base_ref}\n" + print_forms(forms)


def print_zcase(cases: Sequence[ReductionCase]) -> str:
    """One case per line: family, id, constraints, substitutions, target."""
    lines = ["zcase 1"]
    for c in cases:
        cons = " ; ".join([f"{p} = {e}" for p, e in c.assigns]
                          + [f"{e} != 0" for e in c.neqs])
        subst = " ; ".join(f"{p} = {e}" for p, e in c.effective_subst)
        target = " / ".join(" ; ".join(row) for row in c.target)
        lines.append(f"case {c.family} {c.case_id} s={c.sdim} | {cons} | {subst} | {target}")
    return "\n".join(lines) + "\n"


def parse_zcase(text: str) -> list[dict]:
    """Parse a zcase export back into plain dictionaries (round-trip check)."""
    out = []
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not saw_header:
            if line.split() != ["zcase", "1"]:
                raise FormatError("expected header 'zcase 1'", lineno)
            saw_header = True
            continue
        if not line.startswith("case "):
            raise FormatError("expected a case line", lineno)
        head, cons, subst, target = (part.strip() for part in line[5:].split("|"))
        family, case_id, sdim = head.split()
        constraints = [p.strip() for p in cons.split(";") if p.strip()]
        substitutions = [p.strip() for p in subst.split(";") if p.strip()]
        rows = [[e.strip() for e in row.split(";")] for row in target.split("/") if row.strip()]
        out.append({"family": family, "case_id": case_id, "sdim": int(sdim.split("=")[1]),
                    "constraints": constraints, "substitutions": substitutions,
                    "target": rows})
    return out
