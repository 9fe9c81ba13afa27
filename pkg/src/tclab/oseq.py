"""Admissible Hilbert functions of Artinian quotients of k[[x,y]].

An O-sequence is a vector h = (1, 2, ..., d, h_d, ..., h_s) that is weakly
decreasing from its order d onwards and strictly positive through the socle
degree s.  This module validates such vectors, computes the first and second
difference operators with the zero-extension convention h(j) = 0 for j < 0
and j > s, and derives from them the purely numerical generator bounds for
an ideal with this Hilbert function and for its leading ideal.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import JumpTooLarge, NotOSequence, SmallOrderWarning

__all__ = [
    "OSequence",
    "DiffProfile",
    "validate",
    "diff_profile",
    "nu_star_lower",
    "iarrobino_lower",
    "lex_upper",
    "nu3_window",
    "is_ci_admissible",
]


@dataclass(frozen=True)
class OSequence:
    """A validated O-sequence.

    values holds h(0)..h(s) with trailing zeros stripped, d is the order
    (the first j with h(j) < j + 1, i.e. the least order of a generator of
    any ideal with this Hilbert function) and s the socle degree.
    """

    values: tuple[int, ...]
    d: int
    s: int

    def __call__(self, j: int) -> int:
        """h(j), zero-extended outside 0..s."""
        if 0 <= j <= self.s:
            return self.values[j]
        return 0

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    @property
    def total(self) -> int:
        """Length of the Artinian quotient, sum of all values."""
        return sum(self.values)

    def to_json(self) -> list[int]:
        return list(self.values)


def validate(raw, *, allow_maximal: bool = False) -> OSequence:
    """Validate an integer vector as an O-sequence.

    Trailing zeros are stripped first.  The vector must start with 1, grow
    by exactly one up to the order d, and be weakly decreasing and positive
    from there on.  h = (1), the Hilbert function of the maximal ideal
    itself, is rejected unless allow_maximal is set (internal callers that
    wrap engine output use it).  Raises NotOSequence at the first failing
    index.
    """
    vals = [int(v) for v in raw]
    while vals and vals[-1] == 0:
        vals.pop()
    if not vals:
        raise NotOSequence("vector is empty after stripping trailing zeros", 0)
    if vals[0] != 1:
        raise NotOSequence(f"h(0) must be 1, got {vals[0]}", 0)
    d = len(vals)
    for j, v in enumerate(vals):
        if v == j + 1:
            continue
        if v > j + 1:
            raise NotOSequence(f"h({j}) = {v} exceeds the maximal growth {j + 1}", j)
        d = j
        break
    for j in range(max(d, 1), len(vals)):
        if vals[j] <= 0:
            raise NotOSequence(f"h({j}) = {vals[j]} must be positive", j)
        if vals[j] > vals[j - 1]:
            raise NotOSequence(
                f"h({j}) = {vals[j]} increases past the order d = {d}", j
            )
    if len(vals) == 1 and not allow_maximal:
        raise NotOSequence(
            "h = (1) corresponds to the maximal ideal, which is not admitted", 0
        )
    if d == 1 and len(vals) > 1:
        warnings.warn(
            "order d = 1: the ideal is not contained in the square of the "
            "maximal ideal",
            SmallOrderWarning,
            stacklevel=2,
        )
    return OSequence(values=tuple(vals), d=d, s=len(vals) - 1)


@dataclass(frozen=True)
class DiffProfile:
    """First and second differences of an O-sequence, with the index sets.

    delta1[j] = h(j) - h(j-1) for j = 0..s+1 and delta2[j] = delta1[j] -
    delta1[j-1] for j = 0..s+2, both under zero extension.  set_i collects
    the degrees j >= 1 with delta2[j] <= -1 (generator degrees of the
    cancellation-minimal leading-ideal table), set_j those with
    delta2[j] >= 1 (syzygy degrees), and set_h the degrees with
    delta2[j] = 0 and delta1[j] = -1 (the slack degrees entering the
    three-generator window).  p is the maximal jump max_{j>=1} |delta1[j]|.
    """

    delta1: tuple[int, ...]
    delta2: tuple[int, ...]
    set_i: tuple[int, ...]
    set_j: tuple[int, ...]
    set_h: tuple[int, ...]
    p: int

    def weight(self, j: int) -> int:
        """|delta2(j)|."""
        return abs(self.delta2[j]) if 0 <= j < len(self.delta2) else 0


def diff_profile(h: OSequence) -> DiffProfile:
    """Difference calculus of a validated O-sequence.

    Degree 0 is excluded from the index sets: delta2(0) = 1 is a boundary
    artifact and never indexes a generator or a syzygy.
    """
    d1 = tuple(h(j) - h(j - 1) for j in range(h.s + 2))
    ext = lambda j: d1[j] if 0 <= j < len(d1) else 0
    d2 = tuple(ext(j) - ext(j - 1) for j in range(h.s + 3))
    set_i = tuple(j for j in range(1, len(d2)) if d2[j] <= -1)
    set_j = tuple(j for j in range(1, len(d2)) if d2[j] >= 1)
    set_h = tuple(j for j in range(1, len(d1)) if d2[j] == 0 and d1[j] == -1)
    p = max(abs(v) for v in d1[1:])
    return DiffProfile(delta1=d1, delta2=d2, set_i=set_i, set_j=set_j,
                       set_h=set_h, p=p)


def nu_star_lower(h: OSequence) -> int:
    """Lower bound for the generator count of the leading ideal:
    the sum of |delta2| over set_i."""
    prof = diff_profile(h)
    return sum(-prof.delta2[j] for j in prof.set_i)


def iarrobino_lower(h: OSequence) -> int:
    """Lower bound p + 1 for the generator count of the ideal itself,
    from the maximal Hilbert-function jump."""
    return diff_profile(h).p + 1


def lex_upper(h: OSequence) -> int:
    """Upper bound d + 1: the generator count of the lex-segment ideal."""
    return h.d + 1


def nu3_window(h: OSequence) -> tuple[int, int]:
    """Window for the leading-ideal generator count of a 3-generated ideal.

    Returns (lower, lower + |set_h|).  Requires p <= 2, since a
    3-generated ideal cannot have a larger Hilbert-function jump; raises
    JumpTooLarge otherwise.
    """
    prof = diff_profile(h)
    if prof.p > 2:
        raise JumpTooLarge(
            f"maximal jump p = {prof.p} > 2 rules out a 3-generated ideal"
        )
    lower = sum(-prof.delta2[j] for j in prof.set_i)
    return lower, lower + len(prof.set_h)


def is_ci_admissible(h: OSequence) -> bool:
    """Whether some complete intersection has Hilbert function h,
    equivalently |delta1(j)| <= 1 for every j >= 1."""
    return diff_profile(h).p <= 1
