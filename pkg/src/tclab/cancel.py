"""Cancellation calculus on Betti tables and the two-generator invariants.

The minimal free resolution of any height-2 perfect ideal with h-vector h
is obtained from the lex-segment resolution by consecutive zero
cancellations; resolutions over the local ring additionally admit negative
cancellations, which lower the generator count of the ideal below that of
its leading ideal.  This module computes the cancellation-minimal table
directly from the second differences of h, translates complete-intersection
Hilbert functions to and from the (c, e) degree sequences of the leading
ideal's resolution, and exhaustively enumerates cancellation schedules
realizable on the lex Hilbert-Burch matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .betti import BettiTable, Cancellation
from .errors import (
    InvalidSequences,
    MonotonicityViolation,
    NotCIAdmissible,
    Unreachable,
)
from .lexseg import ek_betti, graded_degrees, hb_matrix_lex, lex_ideal
from .oseq import OSequence, diff_profile, iarrobino_lower, is_ci_admissible, validate
from .poly import HilbertBurchMatrix, PrimeField, insert_unit

__all__ = [
    "BettiTable",
    "Cancellation",
    "CISequences",
    "CancellationOutcome",
    "apply",
    "min_star_table",
    "ci_sequences",
    "h_from_sequences",
    "SeriesExpansion",
    "series_from_sequences",
    "multiplicity",
    "a_invariant",
    "di_to_ei",
    "ei_to_di",
    "enumerate_e_choices",
    "enumerate_cancellation_outcomes",
    "ci_schedule",
    "realize_slots",
    "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_ENUMERATION_CAP = 8


def apply(table: BettiTable, c: Cancellation) -> BettiTable:
    """Perform one cancellation, decrementing beta1 at the syzygy degree and
    beta0 at the generator degree."""
    return table.apply(c)


def min_star_table(h: OSequence) -> BettiTable:
    """The cancellation-minimal Betti table of a leading ideal with
    Hilbert function h: |delta2| on set_i as generators, delta2 on set_j as
    syzygies.  Equals the lex table after every possible zero cancellation."""
    prof = diff_profile(h)
    beta0 = {j: -prof.delta2[j] for j in prof.set_i}
    beta1 = {j: prof.delta2[j] for j in prof.set_j}
    return BettiTable.from_maps(beta0, beta1)


# ---------------------------------------------------------------------------
# complete-intersection sequences


def _check(cond: bool, msg: str):
    if not cond:
        raise InvalidSequences(msg)


@dataclass(frozen=True)
class CISequences:
    """Degree data (c_1..c_n) and (0 = e_1, e_2..e_n) of the resolution of
    the leading ideal of a complete intersection.

    c lists the generator degrees (ascending, c_1 = ord f <= c_2 = ord g,
    then gaps of at least 2), e the syzygy degrees interleaved as
    c_i < e_i < c_(i+1) with the excess summing to c_1.
    """

    c: tuple[int, ...]
    e: tuple[int, ...]

    def __post_init__(self):
        c, e = self.c, self.e
        n = len(c)
        _check(n >= 2, f"need at least two generator degrees, got {n}")
        _check(len(e) == n, f"e must have length {n} (including e_1 = 0)")
        _check(e[0] == 0, f"e_1 must be 0, got {e[0]}")
        _check(all(v >= 1 for v in c), "generator degrees must be positive")
        _check(n <= c[0] + 1, f"n = {n} exceeds c_1 + 1 = {c[0] + 1}")
        _check(c[0] <= c[1], f"c_1 = {c[0]} must not exceed c_2 = {c[1]}")
        for i in range(1, n - 1):
            _check(c[i] + 2 <= c[i + 1],
                   f"c_{i + 2} = {c[i + 1]} must be at least c_{i + 1} + 2 = {c[i] + 2}")
        for i in range(1, n - 1):
            _check(c[i] + 1 <= e[i] < c[i + 1],
                   f"e_{i + 1} = {e[i]} must lie in [{c[i] + 1}, {c[i + 1] - 1}]")
        _check(c[n - 1] + 1 <= e[n - 1],
               f"e_n = {e[n - 1]} must be at least c_n + 1 = {c[n - 1] + 1}")
        total = sum(e[i] - c[i] for i in range(1, n))
        _check(total == c[0],
               f"sum (e_i - c_i) = {total} must equal c_1 = {c[0]}")

    @property
    def n(self) -> int:
        return len(self.c)

    @classmethod
    def make(cls, c, e) -> "CISequences":
        """Build from integer iterables; a leading 0 on e may be omitted."""
        c = tuple(int(v) for v in c)
        e = tuple(int(v) for v in e)
        if len(e) == len(c) - 1:
            e = (0,) + e
        return cls(c, e)

    def predicted_table(self) -> BettiTable:
        """Generators at the c-degrees, syzygies at e_2..e_n."""
        beta0: dict[int, int] = {}
        for v in self.c:
            beta0[v] = beta0.get(v, 0) + 1
        return BettiTable.from_maps(beta0, {v: 1 for v in self.e[1:]})

    def to_json(self) -> dict:
        return {"c": list(self.c), "e": list(self.e)}


def ci_sequences(h: OSequence) -> CISequences:
    """Read off (c, e) from the minimal leading-ideal table of a
    CI-admissible h; raises NotCIAdmissible when some jump exceeds 1."""
    if not is_ci_admissible(h):
        raise NotCIAdmissible(
            f"maximal jump p = {diff_profile(h).p} > 1: no complete "
            "intersection has this Hilbert function"
        )
    table = min_star_table(h)
    return CISequences(c=table.degrees0(), e=(0,) + table.degrees1())


def h_from_sequences(seqs: CISequences) -> OSequence:
    """Reconstruct the O-sequence from (c, e) by the double summation of the
    signed indicator of the two degree sequences: the second difference is
    -1 at each c_i (-2 where c_1 = c_2) and +1 at each e_i, i >= 2."""
    q: dict[int, int] = {}
    for v in seqs.c:
        q[v] = q.get(v, 0) - 1
    for v in seqs.e[1:]:
        q[v] = q.get(v, 0) + 1
    top = seqs.e[-1]
    p = 1
    hj = 1
    values = [1]
    for j in range(1, top + 1):
        p += q.get(j, 0)
        hj += p
        values.append(hj)
    # c_1 = c_2 = 1 legitimately reconstructs h = (1), the maximal ideal
    return validate(values, allow_maximal=True)


@dataclass(frozen=True)
class SeriesExpansion:
    """Numerator sum_i (t^e_i - t^c_i) and its expansion over (1-t)^dim.

    For dim = 2 the expansion is the full h-polynomial (exact, trailing
    zeros stripped); for larger dim it is the first requested coefficients
    of the infinite series.
    """

    numerator: tuple[int, ...]
    dim: int
    coefficients: tuple[int, ...]
    exact: bool

    def to_json(self) -> dict:
        return {
            "numerator": list(self.numerator),
            "dim": self.dim,
            "coefficients": list(self.coefficients),
            "exact": self.exact,
        }


def series_from_sequences(seqs: CISequences, dim: int = 2,
                          num_terms: int | None = None) -> SeriesExpansion:
    """Hilbert series of the associated graded ring in ring dimension dim."""
    if dim < 2:
        raise ValueError(f"ring dimension must be at least 2, got {dim}")
    top = seqs.e[-1]
    num = [0] * (top + 1)
    for v in seqs.e:
        num[v] += 1
    for v in seqs.c:
        num[v] -= 1
    if num_terms is None:
        num_terms = top + 1
    coeffs = list(num) + [0] * max(0, num_terms - len(num))
    for _ in range(dim):
        for j in range(1, len(coeffs)):
            coeffs[j] += coeffs[j - 1]
    coeffs = coeffs[:num_terms]
    if dim == 2:
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
    return SeriesExpansion(
        numerator=tuple(num), dim=dim, coefficients=tuple(coeffs),
        exact=dim == 2,
    )


def multiplicity(seqs: CISequences) -> int:
    """Length of the Artinian reduction, sum_i [e_i(e_i-1) - c_i(c_i-1)]/2."""
    total = sum(e * (e - 1) - c * (c - 1) for c, e in zip(seqs.c, seqs.e))
    return total // 2


def a_invariant(seqs: CISequences, dim: int = 2) -> int:
    """Largest degree with nonzero graded piece: e_n - dim."""
    if dim < 2:
        raise ValueError(f"ring dimension must be at least 2, got {dim}")
    return seqs.e[-1] - dim


def di_to_ei(c, dseq) -> tuple[int, ...]:
    """Translate a gcd-degree sequence d_1 = c_1 > d_2 > ... > d_n = 0 into
    the syzygy degrees via e_i = c_i + (d_(i-1) - d_i)."""
    c = tuple(int(v) for v in c)
    d = tuple(int(v) for v in dseq)
    if len(d) != len(c):
        raise MonotonicityViolation(
            f"d-sequence has length {len(d)}, expected {len(c)}")
    if d[0] != c[0]:
        raise MonotonicityViolation(f"d_1 = {d[0]} must equal c_1 = {c[0]}")
    if d[-1] != 0:
        raise MonotonicityViolation(f"d_n = {d[-1]} must be 0")
    for i in range(1, len(d)):
        if d[i] >= d[i - 1]:
            raise MonotonicityViolation(
                f"d_{i + 1} = {d[i]} must be strictly below d_{i} = {d[i - 1]}")
    e = (0,) + tuple(c[i] + d[i - 1] - d[i] for i in range(1, len(c)))
    return CISequences(c, e).e


def ei_to_di(c, e) -> tuple[int, ...]:
    """Inverse translation d_i = d_(i-1) - (e_i - c_i), d_1 = c_1."""
    seqs = CISequences.make(c, e)
    d = [seqs.c[0]]
    for i in range(1, seqs.n):
        d.append(d[-1] - (seqs.e[i] - seqs.c[i]))
    for i in range(1, len(d)):
        if d[i] >= d[i - 1]:
            raise MonotonicityViolation(
                f"derived d_{i + 1} = {d[i]} is not strictly decreasing")
    if d[-1] != 0:
        raise MonotonicityViolation(f"derived d_n = {d[-1]} is not 0")
    return tuple(d)


def enumerate_e_choices(c) -> list[tuple[int, ...]]:
    """All syzygy-degree sequences (e_2, ..., e_n) admissible for the given
    generator degrees: exhaustive product over the windows
    c_i < e_i < c_(i+1) with e_n forced by the excess sum c_1."""
    c = tuple(int(v) for v in c)
    n = len(c)
    _check(n >= 2, "need at least two generator degrees")
    _check(all(v >= 1 for v in c), "generator degrees must be positive")
    _check(n <= c[0] + 1, f"n = {n} exceeds c_1 + 1 = {c[0] + 1}")
    _check(c[0] <= c[1], f"c_1 = {c[0]} must not exceed c_2 = {c[1]}")
    for i in range(1, n - 1):
        _check(c[i] + 2 <= c[i + 1],
               f"c_{i + 2} = {c[i + 1]} must be at least c_{i + 1} + 2 = {c[i] + 2}")
    windows = [range(c[i] + 1, c[i + 1]) for i in range(1, n - 1)]
    out = []
    for middles in itertools.product(*windows):
        e_n = c[0] + c[n - 1] - sum(m - ci for m, ci in zip(middles, c[1:n - 1]))
        if e_n >= c[n - 1] + 1:
            out.append(tuple(middles) + (e_n,))
    return sorted(out)


# ---------------------------------------------------------------------------
# schedule enumeration on the lex matrix


@dataclass(frozen=True)
class CancellationOutcome:
    """One structurally admissible endpoint of a cancellation search.

    nu_star and table describe the leading ideal predicted after the zero
    cancellations of the schedule; slots is a representative unit-insertion
    set on the lex matrix (0-based) realizing the schedule, and schedules
    counts how many distinct slot sets predict this same outcome.
    """

    nu_star: int
    table: BettiTable
    zero_degrees: tuple[int, ...]
    negative_pairs: tuple[tuple[int, int], ...]
    slots: tuple[tuple[int, int], ...]
    schedules: int

    def cancellations(self) -> list[Cancellation]:
        out = [Cancellation.zero(d) for d in self.zero_degrees]
        out.extend(Cancellation.negative(s, g) for s, g in self.negative_pairs)
        return out


def enumerate_cancellation_outcomes(
    h: OSequence, target_nu: int, *, max_d: int = DEFAULT_ENUMERATION_CAP
) -> list[CancellationOutcome]:
    """All distinct (nu_star, table) outcomes of schedules with exactly
    enough cancellations to leave target_nu generators.

    A schedule is a set of unit-insertion slots on the lex Hilbert-Burch
    matrix with pairwise distinct rows and columns; slots with equal row
    and column degree are zero cancellations (the predicted leading-ideal
    table drops there), strictly smaller column degrees are negative ones.
    The search runs over columns with memoization on (column, used rows,
    remaining count); cost grows exponentially with d, hence the cap.
    Raises Unreachable if the target violates the jump bound p + 1 or no
    slot set attains it.
    """
    if h.d > max_d:
        raise ValueError(
            f"order d = {h.d} exceeds the enumeration cap {max_d}; raise max_d "
            "to search anyway"
        )
    m = h.d + 1
    need = m - target_nu
    if target_nu < iarrobino_lower(h):
        raise Unreachable(
            f"target nu = {target_nu} is below the jump bound p + 1 = "
            f"{iarrobino_lower(h)}"
        )
    if need < 0:
        raise Unreachable(
            f"target nu = {target_nu} exceeds the lex generator count {m}")
    L = lex_ideal(h)
    u, v = graded_degrees(L)
    ek = ek_betti(L)
    usable = [
        tuple(i for i in range(j + 2, m) if u[i] >= v[j])
        for j in range(m - 1)
    ]

    memo: dict = {}

    def search(j: int, used: frozenset, need: int):
        """Map zero-degree multiset -> (representative future slots, count)."""
        if need == 0 and j == m - 1:
            return {(): ((), 1)}
        if j == m - 1 or need > m - 1 - j:
            return {}
        key = (j, used, need)
        hit = memo.get(key)
        if hit is not None:
            return hit
        merged: dict = {}

        def absorb(sub, slot, zero_deg):
            for ms, (slots, cnt) in sub.items():
                new_ms = tuple(sorted(ms + (zero_deg,))) if zero_deg is not None else ms
                new_slots = ((slot,) + slots) if slot is not None else slots
                if new_ms in merged:
                    old_slots, old_cnt = merged[new_ms]
                    merged[new_ms] = (old_slots, old_cnt + cnt)
                else:
                    merged[new_ms] = (new_slots, cnt)

        absorb(search(j + 1, used, need), None, None)
        if need > 0:
            for i in usable[j]:
                if i in used:
                    continue
                sub = search(j + 1, used | {i}, need - 1)
                absorb(sub, (i, j), u[i] if u[i] == v[j] else None)
        memo[key] = merged
        return merged

    results = search(0, frozenset(), need)
    if not results:
        raise Unreachable(
            f"no admissible slot set leaves {target_nu} generators for this h")
    outcomes = []
    for zero_ms, (slots, cnt) in results.items():
        table = ek
        for deg in zero_ms:
            table = table.apply(Cancellation.zero(deg))
        negatives = tuple(
            sorted((v[j], u[i]) for i, j in slots if u[i] != v[j]))
        outcomes.append(CancellationOutcome(
            nu_star=m - len(zero_ms),
            table=table,
            zero_degrees=zero_ms,
            negative_pairs=negatives,
            slots=tuple(sorted(slots)),
            schedules=cnt,
        ))
    outcomes.sort(key=lambda o: (o.nu_star, o.zero_degrees, o.negative_pairs))
    return outcomes


def ci_schedule(seqs: CISequences) -> tuple[list[Cancellation], list[Cancellation]]:
    """The forced schedule of the complete-intersection construction: every
    zero cancellation of the lex table, then the negative cancellations
    pairing the syzygy at e_(i-1) with the generator at c_i for i >= 3."""
    h = h_from_sequences(seqs)
    ek = ek_betti(lex_ideal(h))
    minimal = min_star_table(h)
    zeros = []
    for deg, mult in sorted(ek.beta0.items()):
        for _ in range(mult - minimal.beta0.get(deg, 0)):
            zeros.append(Cancellation.zero(deg))
    negatives = [
        Cancellation.negative(seqs.e[i - 1], seqs.c[i])
        for i in range(2, seqs.n)
    ]
    return zeros, negatives


def realize_slots(h: OSequence, slots, field=None) -> HilbertBurchMatrix:
    """Insert units into the lex matrix of h at the given 0-based slots."""
    M = hb_matrix_lex(lex_ideal(h), field or PrimeField())
    for i, j in slots:
        M = insert_unit(M, i, j)
    return M
