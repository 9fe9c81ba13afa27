"""Exact bivariate polynomial arithmetic and Hilbert-Burch matrices.

Coefficients live in a prime field GF(p) (default p = 32003) or, for
paranoia runs, in the rationals.  Scalars are plain Python ints kept as
canonical representatives in [0, p) (Fractions for the rational backend);
the field object supplies inversion and normalization.  Polynomials are
sparse maps (x-exponent, y-exponent) -> coefficient with no zero
coefficients stored.

A Hilbert-Burch matrix is an m x (m-1) grid of polynomials whose rows are
labeled with generator degrees u_i and columns with syzygy degrees v_j.
Its signed maximal minors generate a height-2 ideal.  Cancellations are
realized on the matrix by replacing a structural zero with a unit entry:
at a slot with v_j = u_i for a zero cancellation (the matrix stays
homogeneous), or with v_j < u_i for a negative one (the matrix becomes a
local-mode matrix and its minors are no longer homogeneous).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .betti import Cancellation
from .errors import NoSlot

__all__ = [
    "DEFAULT_PRIME",
    "PrimeField",
    "RationalField",
    "BiPoly",
    "parse_poly",
    "poly_str",
    "HilbertBurchMatrix",
    "signed_minors",
    "perturb",
    "insert_unit",
    "apply_schedule",
    "matrix_to_json",
    "matrix_from_json",
]

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """GF(p) with scalars as canonical ints in [0, p)."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.p <= 3 or self.p % 2 == 0 or not _is_prime(self.p):
            raise ValueError(f"field characteristic must be an odd prime > 3, got {self.p}")

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    zero = 0
    one = 1

    def normalize(self, c) -> int:
        if isinstance(c, Fraction):
            return c.numerator % self.p * self.inv(c.denominator) % self.p
        return int(c) % self.p

    def inv(self, c) -> int:
        c = int(c) % self.p
        if c == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(c, self.p - 2, self.p)

    def balanced(self, c) -> int:
        """Representative in (-p/2, p/2], for readable printing."""
        c = int(c) % self.p
        return c if c <= self.p // 2 else c - self.p


@dataclass(frozen=True)
class RationalField:
    """Exact rational coefficients, the paranoia backend."""

    @property
    def name(self) -> str:
        return "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def normalize(self, c) -> Fraction:
        return Fraction(c)

    def inv(self, c) -> Fraction:
        return Fraction(1) / Fraction(c)

    def balanced(self, c) -> Fraction:
        return Fraction(c)


class BiPoly:
    """Sparse exact polynomial in x and y over a fixed field.

    terms maps (x-exponent, y-exponent) to a nonzero coefficient.  Treat
    the mapping as read-only; all arithmetic returns new polynomials.
    """

    __slots__ = ("terms", "field")

    def __init__(self, terms, field):
        clean = {}
        for (a, b), c in dict(terms).items():
            c = field.normalize(c)
            if c != field.zero:
                clean[(int(a), int(b))] = c
        self.terms = clean
        self.field = field

    @classmethod
    def zero(cls, field) -> "BiPoly":
        return cls({}, field)

    @classmethod
    def monomial(cls, a: int, b: int, field, c=1) -> "BiPoly":
        return cls({(a, b): c}, field)

    @classmethod
    def constant(cls, c, field) -> "BiPoly":
        return cls({(0, 0): c}, field)

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        return set(self.terms) == {(0, 0)}

    def order(self) -> int:
        """Least total degree of a term; undefined for the zero polynomial."""
        if not self.terms:
            raise ValueError("the zero polynomial has no order")
        return min(a + b for a, b in self.terms)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return max(a + b for a, b in self.terms)

    def initial_form(self) -> "BiPoly":
        """Sum of the terms of least total degree (0 for the zero polynomial)."""
        if not self.terms:
            return self
        o = self.order()
        return BiPoly({k: c for k, c in self.terms.items() if k[0] + k[1] == o},
                      self.field)

    def is_homogeneous(self) -> bool:
        return len({a + b for a, b in self.terms}) <= 1

    def homogeneous_part(self, j: int) -> "BiPoly":
        return BiPoly({k: c for k, c in self.terms.items() if k[0] + k[1] == j},
                      self.field)

    def _check_field(self, other):
        if self.field != other.field:
            raise ValueError(f"mixed fields {self.field.name} and {other.field.name}")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._check_field(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, self.field.zero) + c
        return BiPoly(out, self.field)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self.terms.items()}, self.field)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return self.scale(other)
        self._check_field(other)
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, self.field.zero) + c1 * c2
        return BiPoly(out, self.field)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "BiPoly":
        c = self.field.normalize(c)
        return BiPoly({k: v * c for k, v in self.terms.items()}, self.field)

    def shift(self, da: int, db: int) -> "BiPoly":
        """Multiply by the monomial x^da * y^db."""
        return BiPoly({(a + da, b + db): c for (a, b), c in self.terms.items()},
                      self.field)

    def __eq__(self, other):
        return (isinstance(other, BiPoly) and self.field == other.field
                and self.terms == other.terms)

    def __repr__(self):
        return f"BiPoly({poly_str(self)!r}, {self.field.name})"

    def __str__(self):
        return poly_str(self)


def poly_str(f: BiPoly) -> str:
    """Canonical text form: terms by ascending total degree, then descending
    x-exponent; prime-field coefficients print balanced in (-p/2, p/2]."""
    if f.is_zero():
        return "0"
    items = sorted(f.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))
    pieces = []
    for (a, b), c in items:
        c = f.field.balanced(c)
        neg = c < 0
        c = -c if neg else c
        parts = []
        if c != 1 or (a == 0 and b == 0):
            parts.append(str(c))
        if a:
            parts.append("x" if a == 1 else f"x^{a}")
        if b:
            parts.append("y" if b == 1 else f"y^{b}")
        term = "*".join(parts)
        if not pieces:
            pieces.append(("-" if neg else "") + term)
        else:
            pieces.append(("- " if neg else "+ ") + term)
    return " ".join(pieces)


_TERM_RE = re.compile(
    r"""(?P<coeff>\d+(?:/\d+)?)?
        (?:\*?x(?:\^(?P<xe>\d+))?)?
        (?:\*?y(?:\^(?P<ye>\d+))?)?""",
    re.VERBOSE,
)


def parse_poly(s: str, field) -> BiPoly:
    """Parse the printer's format, tolerating omitted '*' and whitespace."""
    text = s.replace(" ", "")
    if text in ("", "0"):
        return BiPoly.zero(field)
    out = {}
    pos = 0
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        pos = 1
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {s!r} at position {pos}")
        body = text[pos:m.end()]
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else 1
        a = int(m.group("xe")) if m.group("xe") else (1 if "x" in body else 0)
        b = int(m.group("ye")) if m.group("ye") else (1 if "y" in body else 0)
        k = (a, b)
        out[k] = out.get(k, field.zero) + field.normalize(sign) * field.normalize(coeff)
        pos = m.end()
        if pos < len(text):
            if text[pos] not in "+-":
                raise ValueError(f"cannot parse polynomial {s!r} at position {pos}")
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            if pos == len(text):
                raise ValueError(f"trailing sign in polynomial {s!r}")
    return BiPoly(out, field)


@dataclass(frozen=True)
class HilbertBurchMatrix:
    """m x (m-1) degree-labeled matrix of exact polynomials.

    Nonzero entries satisfy order >= max(v_j - u_i, 0); while the matrix is
    homogeneous (no unit below the degree diagonal) every nonzero entry is
    homogeneous of degree exactly v_j - u_i.  unit_slots records, 0-based,
    where cancellation units were inserted; each row and column carries at
    most one.
    """

    entries: tuple[tuple[BiPoly, ...], ...]
    row_degrees: tuple[int, ...]
    col_degrees: tuple[int, ...]
    unit_slots: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        m = len(self.entries)
        if m < 2 or any(len(row) != m - 1 for row in self.entries):
            raise ValueError("matrix must be m x (m-1) with m >= 2")
        if len(self.row_degrees) != m or len(self.col_degrees) != m - 1:
            raise ValueError("degree labels do not match the matrix shape")
        hom = self.mode == "homogeneous"
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                if f.is_zero():
                    continue
                want = self.col_degrees[j] - self.row_degrees[i]
                if hom:
                    if not (f.is_homogeneous() and f.degree() == want):
                        raise ValueError(
                            f"entry ({i},{j}) must be homogeneous of degree {want}"
                        )
                elif f.order() < max(want, 0):
                    raise ValueError(
                        f"entry ({i},{j}) has order {f.order()} < {max(want, 0)}"
                    )

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def field(self):
        return self.entries[0][0].field

    @property
    def mode(self) -> str:
        for i, j in self.unit_slots:
            if self.col_degrees[j] < self.row_degrees[i]:
                return "local"
        return "homogeneous"

    def entry(self, i: int, j: int) -> BiPoly:
        return self.entries[i][j]


def _det(entries, rows, cols, memo):
    """Determinant by cofactor expansion along the sparsest column."""
    if not rows:
        one = entries[0][0].field.one
        return BiPoly.constant(one, entries[0][0].field)
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    best_j, best_nz = None, None
    for jpos, j in enumerate(cols):
        nz = sum(1 for i in rows if not entries[i][j].is_zero())
        if best_nz is None or nz < best_nz:
            best_j, best_nz = jpos, nz
            if nz <= 1:
                break
    field = entries[0][0].field
    result = BiPoly.zero(field)
    if best_nz:
        j = cols[best_j]
        sub_cols = cols[:best_j] + cols[best_j + 1:]
        for ipos, i in enumerate(rows):
            f = entries[i][j]
            if f.is_zero():
                continue
            sub = _det(entries, rows[:ipos] + rows[ipos + 1:], sub_cols, memo)
            term = f * sub
            if (ipos + best_j) % 2:
                term = -term
            result = result + term
    memo[key] = result
    return result


def signed_minors(M: HilbertBurchMatrix) -> list[BiPoly]:
    """The m maximal minors with alternating signs.

    The i-th polynomial (1-based i) is (-1)^(i+1) times the determinant of
    the matrix with row i deleted, so that the columns of the matrix are
    syzygies of the returned generators.  While the matrix is homogeneous,
    minor i is homogeneous of degree u_i or zero.
    """
    memo = {}
    all_cols = tuple(range(M.m - 1))
    out = []
    for i in range(M.m):
        rows = tuple(r for r in range(M.m) if r != i)
        mi = _det(M.entries, rows, all_cols, memo)
        out.append(-mi if i % 2 else mi)
    return out


def _slot_free(M: HilbertBurchMatrix, i: int, j: int) -> bool:
    used_rows = {r for r, _ in M.unit_slots}
    used_cols = {c for _, c in M.unit_slots}
    return (M.entries[i][j].is_zero() and i not in used_rows
            and j not in used_cols)


def insert_unit(M: HilbertBurchMatrix, i: int, j: int) -> HilbertBurchMatrix:
    """Place a unit at the zero entry (i, j); the slot's row and column must
    be unused and must satisfy v_j <= u_i."""
    if M.col_degrees[j] > M.row_degrees[i]:
        raise NoSlot(f"slot ({i},{j}) has v = {M.col_degrees[j]} > u = {M.row_degrees[i]}")
    if not _slot_free(M, i, j):
        raise NoSlot(f"slot ({i},{j}) is occupied or its row/column is already used")
    rows = [list(r) for r in M.entries]
    rows[i][j] = BiPoly.constant(M.field.one, M.field)
    return HilbertBurchMatrix(
        entries=tuple(tuple(r) for r in rows),
        row_degrees=M.row_degrees,
        col_degrees=M.col_degrees,
        unit_slots=M.unit_slots | {(i, j)},
    )


def perturb(M: HilbertBurchMatrix, c: Cancellation) -> HilbertBurchMatrix:
    """Realize a cancellation by a unit insertion.

    A zero cancellation needs a free zero slot with v_j = u_i equal to the
    cancelled degree; a negative cancellation one with v_j = syz degree and
    u_i = gen degree.  Among qualifying slots the smallest (row, col) is
    chosen, which reproduces the published matrices deterministically.
    """
    slots = []
    for i in range(M.m):
        if M.row_degrees[i] != c.gen_degree:
            continue
        for j in range(M.m - 1):
            if M.col_degrees[j] == c.syz_degree and _slot_free(M, i, j):
                slots.append((i, j))
    if not slots:
        raise NoSlot(f"no free matrix slot realizes cancellation {c.to_json()}")
    i, j = min(slots)
    return insert_unit(M, i, j)


def apply_schedule(M: HilbertBurchMatrix, cancellations) -> HilbertBurchMatrix:
    for c in cancellations:
        M = perturb(M, c)
    return M


def matrix_to_json(M: HilbertBurchMatrix) -> dict:
    return {
        "entries": [[poly_str(f) for f in row] for row in M.entries],
        "row_degrees": list(M.row_degrees),
        "col_degrees": list(M.col_degrees),
        "unit_slots": sorted(list(s) for s in M.unit_slots),
    }


def matrix_from_json(obj, field) -> HilbertBurchMatrix:
    return HilbertBurchMatrix(
        entries=tuple(
            tuple(parse_poly(s, field) for s in row) for row in obj["entries"]
        ),
        row_degrees=tuple(obj["row_degrees"]),
        col_degrees=tuple(obj["col_degrees"]),
        unit_slots=frozenset((i, j) for i, j in obj.get("unit_slots", [])),
    )
