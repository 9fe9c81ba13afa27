"""Betti tables of height-2 perfect ideals and the cancellation rewrite.

A table records two degree -> multiplicity maps: beta0 for generator
degrees and beta1 for first-syzygy degrees.  A cancellation removes one
syzygy summand of degree j together with one generator summand of degree
j'; it is a zero cancellation when j = j' and a negative one when j < j'.
Tables are immutable and cancellations return new tables, so branching
schedule searches can share intermediate states.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MissingEntry

__all__ = ["BettiTable", "Cancellation"]


@dataclass(frozen=True)
class Cancellation:
    syz_degree: int
    gen_degree: int

    def __post_init__(self):
        if self.syz_degree > self.gen_degree:
            raise ValueError(
                f"syzygy degree {self.syz_degree} exceeds generator degree "
                f"{self.gen_degree}; only zero or negative cancellations exist"
            )

    @property
    def kind(self) -> str:
        return "zero" if self.syz_degree == self.gen_degree else "negative"

    @classmethod
    def zero(cls, degree: int) -> "Cancellation":
        return cls(degree, degree)

    @classmethod
    def negative(cls, syz_degree: int, gen_degree: int) -> "Cancellation":
        c = cls(syz_degree, gen_degree)
        if c.kind != "negative":
            raise ValueError("negative cancellation needs syz degree < gen degree")
        return c

    def to_json(self) -> list[int]:
        return [self.syz_degree, self.gen_degree]


def _normalize(m) -> tuple[tuple[int, int], ...]:
    items = []
    for deg, mult in dict(m).items():
        deg, mult = int(deg), int(mult)
        if mult < 0:
            raise ValueError(f"negative multiplicity {mult} at degree {deg}")
        if mult:
            items.append((deg, mult))
    return tuple(sorted(items))


@dataclass(frozen=True)
class BettiTable:
    _b0: tuple[tuple[int, int], ...] = field(default=())
    _b1: tuple[tuple[int, int], ...] = field(default=())

    @classmethod
    def from_maps(cls, beta0, beta1) -> "BettiTable":
        return cls(_normalize(beta0), _normalize(beta1))

    @property
    def beta0(self) -> dict[int, int]:
        return dict(self._b0)

    @property
    def beta1(self) -> dict[int, int]:
        return dict(self._b1)

    @property
    def total0(self) -> int:
        return sum(m for _, m in self._b0)

    @property
    def total1(self) -> int:
        return sum(m for _, m in self._b1)

    def degrees0(self) -> tuple[int, ...]:
        """Generator degrees with multiplicity, ascending."""
        return tuple(d for d, m in self._b0 for _ in range(m))

    def degrees1(self) -> tuple[int, ...]:
        return tuple(d for d, m in self._b1 for _ in range(m))

    def apply(self, c: Cancellation) -> "BettiTable":
        """Remove one syzygy at c.syz_degree and one generator at
        c.gen_degree; raises MissingEntry if either is absent."""
        b0, b1 = self.beta0, self.beta1
        if b1.get(c.syz_degree, 0) < 1:
            raise MissingEntry(("beta1", c.syz_degree))
        if b0.get(c.gen_degree, 0) < 1:
            raise MissingEntry(("beta0", c.gen_degree))
        b1[c.syz_degree] -= 1
        b0[c.gen_degree] -= 1
        return BettiTable.from_maps(b0, b1)

    def k_polynomial(self) -> dict[int, int]:
        """Coefficients of 1 - sum beta0_j t^j + sum beta1_j t^j."""
        out = {0: 1}
        for deg, mult in self._b0:
            out[deg] = out.get(deg, 0) - mult
        for deg, mult in self._b1:
            out[deg] = out.get(deg, 0) + mult
        return {d: c for d, c in sorted(out.items()) if c}

    def resolution_notation(self) -> str:
        """Free-resolution display 0 -> syzygies -> generators -> J -> 0."""
        def side(items):
            if not items:
                return "0"
            parts = []
            for deg, mult in items:
                parts.append(f"P(-{deg})" if mult == 1 else f"P^{mult}(-{deg})")
            return " (+) ".join(parts)

        return f"0 -> {side(self._b1)} -> {side(self._b0)} -> J -> 0"

    def to_json(self) -> dict:
        return {
            "beta0": {str(d): m for d, m in self._b0},
            "beta1": {str(d): m for d, m in self._b1},
        }

    @classmethod
    def from_json(cls, obj) -> "BettiTable":
        return cls.from_maps(
            {int(d): m for d, m in obj["beta0"].items()},
            {int(d): m for d, m in obj["beta1"].items()},
        )
