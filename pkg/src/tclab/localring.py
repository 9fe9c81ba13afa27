"""Exact verification engine for ideals of k[[x,y]] by truncated linear algebra.

Everything here is computed in the finite-dimensional quotient V_N =
k[[x,y]] / n^N, whose basis is the set of monomials of total degree below
the truncation order N.  The span of an ideal inside V_N is the row space
of all monomial multiples of its generators, and one row-echelon pass with
the monomial columns sorted by total degree (x-descending inside a degree)
reads off every invariant at once:

  * the number of basis rows whose leading monomial has degree j is the
    codimension of the Hilbert function at j, so HF(j) = j + 1 - count(j);
  * the degree-j homogeneous parts of the rows of order j form a basis of
    the degree-j piece of the leading ideal;
  * the generator count of the ideal is the rank drop from the span of the
    ideal to the span of its product with the maximal ideal.

For an Artinian quotient with socle degree s the answers are exact as soon
as N >= s + 3, because n^(s+1) is contained in the ideal.  When no
truncation order is supplied, computation starts at N = 2*order + 4 and
doubles until the Hilbert function vanishes inside the window, up to a
configurable cap.  Graded Betti numbers of the leading ideal are then
obtained degree by degree from the pieces: generators as the cokernel of
multiplication by the linear forms, syzygies as kernels of the evaluation
map from shifted free summands, again by exact row reduction.

All of this is independent of the combinatorial predictions made from the
Hilbert function, which is the point: it certifies them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .betti import BettiTable
from .errors import NotArtinian, SmallOrderWarning, TruncationTooSmall
from .oseq import OSequence, validate
from .poly import BiPoly, PrimeField, parse_poly

__all__ = [
    "DEFAULT_TRUNCATION_CAP",
    "LocalPresentation",
    "GradedSubspace",
    "Certification",
    "hilbert_function",
    "leading_ideal_pieces",
    "nu_local",
    "star_betti",
    "certify",
]

DEFAULT_TRUNCATION_CAP = 128


@dataclass(frozen=True)
class LocalPresentation:
    """Ideal generators plus an optional explicit truncation order.

    With N = None the engine chooses the truncation automatically, which
    requires the quotient to be Artinian.  Generators of order < 2 are
    legal but warned about, since the theory assumes the ideal lies in the
    square of the maximal ideal.
    """

    gens: tuple[BiPoly, ...]
    N: int | None = None

    def __post_init__(self):
        if not self.gens:
            raise ValueError("presentation needs at least one generator")
        field = self.gens[0].field
        for g in self.gens:
            if g.is_zero():
                raise ValueError("zero generators are not allowed")
            if g.field != field:
                raise ValueError("generators live over different fields")
        if self.N is not None and self.N < 2:
            raise ValueError(f"truncation order must be at least 2, got {self.N}")
        if any(g.order() < 2 for g in self.gens):
            warnings.warn(
                "a generator has order < 2: the ideal is not inside the "
                "square of the maximal ideal",
                SmallOrderWarning,
                stacklevel=2,
            )

    @property
    def field(self):
        return self.gens[0].field

    @property
    def order(self) -> int:
        return min(g.order() for g in self.gens)

    @classmethod
    def from_strings(cls, strings, N=None, field=None) -> "LocalPresentation":
        field = field or PrimeField()
        return cls(tuple(parse_poly(s, field) for s in strings), N)


class GradedSubspace:
    """Per-degree canonical bases of a graded subspace of k[x,y].

    pieces maps a degree j to the reduced row echelon matrix of its basis
    over the degree-j monomial basis (x-exponent descending, j + 1
    columns).  Degrees without a piece are omitted; RREF makes equality of
    subspaces literal equality of matrices.
    """

    def __init__(self, pieces: dict):
        self.pieces = {int(j): m for j, m in pieces.items() if len(m)}

    def dim(self, j: int) -> int:
        piece = self.pieces.get(j)
        return 0 if piece is None else len(piece)

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.pieces))

    def restrict(self, upto: int) -> "GradedSubspace":
        return GradedSubspace({j: m for j, m in self.pieces.items() if j <= upto})

    def __eq__(self, other):
        if not isinstance(other, GradedSubspace):
            return NotImplemented
        if self.degrees() != other.degrees():
            return False
        return all(
            self.pieces[j].shape == other.pieces[j].shape
            and (np.asarray(self.pieces[j]) == np.asarray(other.pieces[j])).all()
            for j in self.degrees()
        )

    def __repr__(self):
        dims = {j: self.dim(j) for j in self.degrees()}
        return f"GradedSubspace(dims={dims})"


# ---------------------------------------------------------------------------
# exact row reduction, mod p fast path and generic exact path


def _echelon(A, field, reduced=False):
    """Row echelon form; returns (matrix of nonzero rows, pivot columns).

    Pivot entries are normalized to 1; with reduced=True entries above the
    pivots are cleared too (canonical RREF).
    """
    modp = isinstance(field, PrimeField)
    p = field.p if modp else None
    A = np.array(A, dtype=np.int64 if modp else object)
    if A.ndim != 2 or A.shape[0] == 0:
        return A.reshape(0, A.shape[-1] if A.ndim == 2 else 0), []
    if modp:
        A %= p
    m, n = A.shape
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = field.inv(A[r, c])
        A[r, c:] = A[r, c:] * inv % p if modp else A[r, c:] * inv
        if reduced:
            targets = np.nonzero(A[:, c])[0]
            targets = targets[targets != r]
        else:
            targets = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if len(targets):
            update = A[targets, c:] - np.outer(A[targets, c], A[r, c:])
            A[targets, c:] = update % p if modp else update
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rank(A, field) -> int:
    return len(_echelon(A, field)[1])


def _nullspace(A, field):
    """Basis (as rows) of {x : A x = 0}."""
    A = np.asarray(A)
    n = A.shape[1]
    R, pivots = _echelon(A, field, reduced=True)
    free = [c for c in range(n) if c not in set(pivots)]
    modp = isinstance(field, PrimeField)
    out = np.zeros((len(free), n), dtype=np.int64 if modp else object)
    if not modp:
        out[:] = field.zero
    for k, f in enumerate(free):
        out[k, f] = field.one
        for r, c in enumerate(pivots):
            val = -R[r, f]
            out[k, c] = val % field.p if modp else val
    return out


# ---------------------------------------------------------------------------
# the truncated engine


def _monomials_upto(N):
    """(a, b) with a + b < N, ordered by total degree then x descending;
    the index of (a, b) is (a+b)(a+b+1)/2 + b."""
    return [(deg - b, b) for deg in range(N) for b in range(deg + 1)]


class _Engine:
    """One truncated computation: span basis plus everything derived."""

    def __init__(self, pres: LocalPresentation, N: int):
        self.pres = pres
        self.N = N
        self.field = pres.field
        self.mons = _monomials_upto(N)
        self.ncols = len(self.mons)
        self._basis = None
        self._orders = None

    def _index(self, a, b):
        deg = a + b
        return deg * (deg + 1) // 2 + b

    def _row(self, g: BiPoly, ma: int, mb: int):
        modp = isinstance(self.field, PrimeField)
        row = np.zeros(self.ncols, dtype=np.int64 if modp else object)
        if not modp:
            row[:] = self.field.zero
        filled = False
        for (a, b), c in g.terms.items():
            aa, bb = a + ma, b + mb
            if aa + bb < self.N:
                row[self._index(aa, bb)] = c
                filled = True
        return row if filled else None

    def basis(self):
        """Echelon basis of (I + n^N)/n^N and the order of each row."""
        if self._basis is None:
            rows = []
            for g in self.pres.gens:
                og = g.order()
                for ma, mb in _monomials_upto(max(self.N - og, 0)):
                    row = self._row(g, ma, mb)
                    if row is not None:
                        rows.append(row)
            B, pivots = _echelon(rows, self.field)
            self._basis = B
            self._orders = [self.mons[c][0] + self.mons[c][1] for c in pivots]
        return self._basis, self._orders

    def hf_window(self):
        """HF(j) for j = 0..N-2, from the per-degree pivot counts."""
        _, orders = self.basis()
        counts = [0] * self.N
        for o in orders:
            counts[o] += 1
        return [j + 1 - counts[j] for j in range(self.N - 1)]

    def socle_degree(self):
        """s if HF vanishes by N-2, else None (truncation too small)."""
        window = self.hf_window()
        for j, v in enumerate(window):
            if v == 0:
                return j - 1
        return None

    def hilbert_function(self) -> OSequence:
        s = self.socle_degree()
        if s is None:
            raise TruncationTooSmall(
                f"Hilbert function has not vanished by degree {self.N - 2}; "
                "re-run with a larger truncation order"
            )
        return validate(self.hf_window()[: s + 1], allow_maximal=True)

    def pieces(self, upto=None) -> GradedSubspace:
        """Degree-j pieces of the leading ideal for j <= upto (default N-1),
        exact at truncation level regardless of Artinian-ness."""
        B, orders = self.basis()
        upto = self.N - 1 if upto is None else min(upto, self.N - 1)
        by_degree: dict[int, list] = {}
        for i, j in enumerate(orders):
            if j > upto:
                continue
            row = B[i]
            vec = [row[self._index(j - b, b)] for b in range(j + 1)]
            by_degree.setdefault(j, []).append(vec)
        return GradedSubspace({
            j: _echelon(vecs, self.field, reduced=True)[0]
            for j, vecs in by_degree.items()
        })

    def nu(self) -> int:
        """dim I/nI by rank drop; exact once N >= s + 3."""
        if self.socle_degree() is None:
            raise TruncationTooSmall(
                f"cannot certify the generator count at truncation {self.N}")
        B, _ = self.basis()
        shifted = []
        for vec in B:
            for da, db in ((1, 0), (0, 1)):
                row = np.zeros_like(vec)
                filled = False
                for k in np.nonzero(vec)[0]:
                    a, b = self.mons[k]
                    if a + b + 1 < self.N:
                        row[self._index(a + da, b + db)] = vec[k]
                        filled = True
                if filled:
                    shifted.append(row)
        if not shifted:
            return len(B)
        return len(B) - _rank(shifted, self.field)

    # -- graded Betti numbers of the leading ideal ---------------------------

    @staticmethod
    def _times_linear(rows, j):
        """Degree-(j-1) vectors times x and y, as degree-j vectors."""
        out = []
        for vec in rows:
            out.append(list(vec) + [0])   # times x keeps the y-exponent
            out.append([0] + list(vec))   # times y shifts it up
        return out

    def star_betti_and_gens(self):
        """(BettiTable of the leading ideal, minimal generators per degree)."""
        s = self.socle_degree()
        if s is None:
            raise TruncationTooSmall(
                f"cannot resolve the leading ideal at truncation {self.N}")
        top = s + 2
        pieces = self.pieces(upto=top)
        beta0: dict[int, int] = {}
        gens: list[tuple[int, list]] = []
        star_gens: dict[int, list] = {}
        for j in range(top + 1):
            piece = pieces.pieces.get(j)
            if piece is None or not len(piece):
                continue
            prev = pieces.pieces.get(j - 1)
            products = self._times_linear(prev, j) if prev is not None else []
            new = self.dim_quotient_basis(products, piece)
            if new:
                beta0[j] = len(new)
                for vec in new:
                    gens.append((j, list(vec)))
                star_gens[j] = [self._vec_to_form(j, vec) for vec in new]
        # syzygies of the minimal generators; the syzygy module of a
        # height-2 perfect ideal is free, so minimal syzygy generators are
        # again counted as a cokernel of multiplication by linear forms
        beta1: dict[int, int] = {}
        prev_kernel = None
        total0 = sum(beta0.values())
        found = 0
        j = min(beta0) + 1 if beta0 else 0
        while found < total0 - 1 and j <= top + 1:
            kernel, coords = self._syzygy_space(gens, j)
            if prev_kernel is not None and len(prev_kernel):
                lifted = self._lift_syzygies(prev_kernel, prev_coords, coords, gens)
                fresh = len(kernel) - _rank(lifted, self.field) if len(lifted) else len(kernel)
            else:
                fresh = len(kernel)
            if fresh:
                beta1[j] = fresh
                found += fresh
            prev_kernel, prev_coords = kernel, coords
            j += 1
        table = BettiTable.from_maps(beta0, beta1)
        if table.total0 != table.total1 + 1:
            raise RuntimeError(
                "syzygy scan did not close up: "
                f"{table.total0} generators vs {table.total1} syzygies"
            )
        return table, star_gens

    def dim_quotient_basis(self, products, piece):
        """Rows of piece independent from the span of products, reduced."""
        modp = isinstance(self.field, PrimeField)
        base, _ = _echelon(products, self.field) if products else (
            np.zeros((0, len(piece[0])), dtype=np.int64 if modp else object), [])
        out = []
        work = list(base)
        for vec in piece:
            stack = work + [vec]
            reduced, _ = _echelon(stack, self.field)
            if len(reduced) > len(work):
                work = list(reduced)
                out.append(vec)
        return out

    def _syzygy_space(self, gens, j):
        """Kernel basis of the evaluation map at degree j, plus the
        coordinate layout [(k, shift)] of the domain."""
        coords = []
        rows = []
        for k, (ck, vec) in enumerate(gens):
            for shift in range(j - ck + 1):
                coords.append((k, shift))
                row = [0] * (j + 1)
                for i, cval in enumerate(vec):
                    row[i + shift] = cval
                rows.append(row)
        if not rows:
            return np.zeros((0, 0), dtype=np.int64), coords
        A = np.array(rows, dtype=np.int64 if isinstance(self.field, PrimeField)
                     else object).T
        return _nullspace(A, self.field), coords

    def _lift_syzygies(self, kernel, old_coords, new_coords, gens):
        """Images of degree-(j-1) syzygies under multiplication by x and y,
        in the degree-j coordinate layout."""
        pos = {kc: i for i, kc in enumerate(new_coords)}
        out = []
        for vec in kernel:
            for dshift in (0, 1):    # times x keeps the shift, times y bumps it
                row = [0] * len(new_coords)
                for i, (k, shift) in enumerate(old_coords):
                    if vec[i] != 0:
                        row[pos[(k, shift + dshift)]] = vec[i]
                out.append(row)
        return out

    def _vec_to_form(self, j, vec) -> BiPoly:
        terms = {}
        for b, c in enumerate(vec):
            if c:
                terms[(j - b, b)] = c
        return BiPoly(terms, self.field)


def _resolve_engine(pres: LocalPresentation,
                    truncation_cap: int = DEFAULT_TRUNCATION_CAP) -> _Engine:
    """Build an engine at the presentation's N, or auto-double from
    2*order + 4 until the Hilbert function vanishes in the window."""
    if pres.N is not None:
        return _Engine(pres, pres.N)
    N = 2 * pres.order + 4
    while True:
        engine = _Engine(pres, N)
        if engine.socle_degree() is not None:
            return engine
        if N >= truncation_cap:
            window = engine.hf_window()
            if len(window) >= 3 and window[-1] == window[-2] == window[-3] > 0:
                raise NotArtinian(
                    f"Hilbert function stabilizes at {window[-1]} without "
                    f"vanishing by truncation {N}: the quotient appears to "
                    "have positive dimension"
                )
            raise TruncationTooSmall(
                f"Hilbert function still positive at the truncation cap {N}")
        N = min(2 * N, truncation_cap)


def hilbert_function(pres: LocalPresentation,
                     truncation_cap: int = DEFAULT_TRUNCATION_CAP) -> OSequence:
    """Hilbert function of S/I, exact for Artinian quotients."""
    return _resolve_engine(pres, truncation_cap).hilbert_function()


def leading_ideal_pieces(pres: LocalPresentation,
                         upto: int | None = None,
                         truncation_cap: int = DEFAULT_TRUNCATION_CAP) -> GradedSubspace:
    """Graded pieces of the leading ideal, one canonical basis per degree.

    With an explicit truncation order the pieces are returned up to N - 1
    without any Artinian check (initial forms are exact at truncation
    level); with automatic truncation the quotient must be Artinian and
    pieces are returned through the socle degree plus one by default.
    """
    if pres.N is not None:
        return _Engine(pres, pres.N).pieces(upto=upto)
    engine = _resolve_engine(pres, truncation_cap)
    if upto is None:
        upto = engine.socle_degree() + 1
    return engine.pieces(upto=upto)


def nu_local(pres: LocalPresentation,
             truncation_cap: int = DEFAULT_TRUNCATION_CAP) -> int:
    """Minimal number of generators of the ideal."""
    return _resolve_engine(pres, truncation_cap).nu()


def star_betti(pres: LocalPresentation,
               truncation_cap: int = DEFAULT_TRUNCATION_CAP) -> BettiTable:
    """Graded Betti numbers of the leading ideal, from raw generators."""
    return _resolve_engine(pres, truncation_cap).star_betti_and_gens()[0]


@dataclass(frozen=True)
class Certification:
    """Everything the engine certifies about one presentation."""

    hf: OSequence
    nu: int
    table: BettiTable
    pieces: GradedSubspace
    star_gens: dict
    N: int

    @property
    def nu_star(self) -> int:
        return self.table.total0

    def to_json(self) -> dict:
        out = {
            "hf": self.hf.to_json(),
            "nu": self.nu,
            "nu_star": self.nu_star,
            "N": self.N,
        }
        out.update(self.table.to_json())
        out["star_gens"] = {
            str(j): [str(g) for g in gs] for j, gs in sorted(self.star_gens.items())
        }
        return out


def certify(pres: LocalPresentation,
            truncation_cap: int = DEFAULT_TRUNCATION_CAP) -> Certification:
    """Run the whole engine once and bundle the results."""
    engine = _resolve_engine(pres, truncation_cap)
    hf = engine.hilbert_function()
    table, star_gens = engine.star_betti_and_gens()
    nu = engine.nu()
    if nu > table.total0:
        raise RuntimeError(
            f"engine inconsistency: nu = {nu} exceeds nu* = {table.total0}")
    return Certification(
        hf=hf,
        nu=nu,
        table=table,
        pieces=engine.pieces(upto=engine.socle_degree() + 1),
        star_gens=star_gens,
        N=engine.N,
    )
