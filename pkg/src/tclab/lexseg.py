"""Lex-segment ideals in k[x,y] and their Hilbert-Burch presentation.

For every O-sequence h there is a unique monomial ideal L whose degree-j
piece is spanned by the (j+1) - h(j) lex-largest monomials (x > y).  Its
minimal generators are x^d, x^(d-1) y^(t_1), ..., y^(t_d) with strictly
increasing y-exponents, its minimal free resolution is bidiagonal, and the
associated (d+1) x d matrix with y-power diagonal and -x subdiagonal has
the generators as signed maximal minors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .betti import BettiTable
from .oseq import OSequence
from .poly import BiPoly, HilbertBurchMatrix, PrimeField

__all__ = [
    "MonomialIdeal2",
    "lex_ideal",
    "ek_betti",
    "hb_matrix_lex",
    "graded_degrees",
    "quotient_hilbert_function",
]


@dataclass(frozen=True)
class MonomialIdeal2:
    """Minimal monomial generators (a_i, t_i) for x^a_i y^t_i, by descending a."""

    gens: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for k in range(1, len(self.gens)):
            a0, t0 = self.gens[k - 1]
            a1, t1 = self.gens[k]
            if a1 >= a0 or t1 <= t0:
                raise ValueError(
                    "generators must have strictly decreasing x-exponents and "
                    "strictly increasing y-exponents (minimality)"
                )

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def gen_degrees(self) -> tuple[int, ...]:
        return tuple(a + t for a, t in self.gens)

    def contains_monomial(self, a: int, b: int) -> bool:
        return any(a >= ga and b >= gt for ga, gt in self.gens)

    def to_json(self) -> list[list[int]]:
        return [[a, t] for a, t in self.gens]

    @classmethod
    def from_json(cls, obj) -> "MonomialIdeal2":
        return cls(tuple((int(a), int(t)) for a, t in obj))


def lex_ideal(h: OSequence) -> MonomialIdeal2:
    """The unique lex-segment ideal with Hilbert function h.

    In degree j the ideal contains exactly the monomials with y-exponent at
    most j - h(j); the minimal generator with x-exponent a is therefore
    x^a y^t for the least t with h(a + t) <= a.
    """
    gens = []
    for a in range(h.d, -1, -1):
        t = 0
        while h(a + t) > a:
            t += 1
        gens.append((a, t))
    return MonomialIdeal2(tuple(gens))


def ek_betti(L: MonomialIdeal2) -> BettiTable:
    """Betti table of the bidiagonal minimal free resolution of L:
    one generator per degree a_i + t_i and one syzygy of degree
    (generator degree + 1) for every generator except the pure x-power."""
    degs = L.gen_degrees()
    beta0: dict[int, int] = {}
    beta1: dict[int, int] = {}
    for u in degs:
        beta0[u] = beta0.get(u, 0) + 1
    for u in degs[1:]:
        beta1[u + 1] = beta1.get(u + 1, 0) + 1
    return BettiTable.from_maps(beta0, beta1)


def graded_degrees(L: MonomialIdeal2) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Row and column degree labels (u, v) of the Hilbert-Burch matrix of L:
    u_i is the degree of the i-th generator and v_j = u_(j+1) + 1."""
    u = L.gen_degrees()
    v = tuple(u[j + 1] + 1 for j in range(len(u) - 1))
    return u, v


def hb_matrix_lex(L: MonomialIdeal2, field=None) -> HilbertBurchMatrix:
    """The bidiagonal Hilbert-Burch matrix of a lex ideal.

    Entry (i, i) is y^(t_i - t_(i-1)), entry (i+1, i) is -x, everything else
    is zero; the signed maximal minors reproduce the generators of L up to
    sign.
    """
    field = field or PrimeField()
    m = len(L)
    ts = [t for _, t in L.gens]
    zero = BiPoly.zero(field)
    rows = [[zero] * (m - 1) for _ in range(m)]
    for i in range(1, m):
        rows[i - 1][i - 1] = BiPoly.monomial(0, ts[i] - ts[i - 1], field)
        rows[i][i - 1] = BiPoly.monomial(1, 0, field, c=-1)
    u, v = graded_degrees(L)
    return HilbertBurchMatrix(
        entries=tuple(tuple(r) for r in rows),
        row_degrees=u,
        col_degrees=v,
    )


def quotient_hilbert_function(L: MonomialIdeal2) -> tuple[int, ...]:
    """Hilbert function of P/L by direct monomial counting (trailing zeros
    stripped); the independent oracle for the lex construction."""
    top = max(a + t for a, t in L.gens) + 1
    hf = []
    for j in range(top + 1):
        hf.append(sum(1 for b in range(j + 1)
                      if not L.contains_monomial(j - b, b)))
    while hf and hf[-1] == 0:
        hf.pop()
    return tuple(hf)
