import random

import numpy as np
import pytest

from tclab.betti import Cancellation
from tclab.cancel import (
    h_from_sequences,
    ci_schedule,
    enumerate_cancellation_outcomes,
    min_star_table,
    realize_slots,
)
from tclab.errors import NotArtinian, TruncationTooSmall
from tclab.lexseg import hb_matrix_lex, lex_ideal
from tclab.localring import (
    LocalPresentation,
    certify,
    hilbert_function,
    leading_ideal_pieces,
    nu_local,
    star_betti,
)
from tclab.oseq import iarrobino_lower, validate
from tclab.poly import (
    BiPoly,
    PrimeField,
    RationalField,
    apply_schedule,
    signed_minors,
)

from seqgen import random_ci_sequences, random_oseq

F = PrimeField()
H14 = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10, 10, 9, 8, 8, 5, 3, 3, 2]
H25 = [1, 2, 3, 4, 4, 3, 3, 3, 2, 2, 2, 1]

I25 = ["xy^6 - x^3y^2 + xy^4", "-2x^2y^4 + y^6 + x^4 - x^2y^2"]
STAR25 = ["-xy^10", "x^2y^6 - y^8", "-x^3y^2 + xy^4", "x^4 - x^2y^2"]


def pres(strings, N=None, field=F):
    return LocalPresentation.from_strings(strings, N=N, field=field)


def built_ex14_matrices():
    M = hb_matrix_lex(lex_ideal(validate(H14)), F)
    star = apply_schedule(M, [Cancellation.zero(d) for d in (13, 16, 16, 19)])
    local = apply_schedule(star, [Cancellation.negative(14, 15),
                                  Cancellation.negative(16, 18),
                                  Cancellation.negative(17, 19)])
    return star, local


def test_hilbert_function_examples():
    assert list(hilbert_function(pres(I25))) == H25
    assert list(hilbert_function(pres(["x", "y"]))) == [1]
    _, local = built_ex14_matrices()
    gens = tuple(f for f in signed_minors(local) if not f.is_zero())
    assert list(hilbert_function(LocalPresentation(gens))) == H14


def test_nu_local_examples():
    assert nu_local(pres(I25)) == 2
    assert nu_local(pres(["x", "y"])) == 2
    _, local = built_ex14_matrices()
    gens = tuple(f for f in signed_minors(local) if not f.is_zero())
    assert nu_local(LocalPresentation(gens)) == 4


def test_star_betti_examples():
    t = star_betti(pres(I25))
    assert t.beta0 == {4: 1, 5: 1, 8: 1, 11: 1}
    assert t.beta1 == {6: 1, 9: 1, 13: 1}
    t = star_betti(pres(["x", "y^2"]))
    assert t.beta0 == {1: 1, 2: 1} and t.beta1 == {3: 1}
    _, local = built_ex14_matrices()
    gens = tuple(f for f in signed_minors(local) if not f.is_zero())
    t = star_betti(LocalPresentation(gens))
    assert t == min_star_table(validate(H14))


def test_pieces_examples():
    # the local ideal and its printed leading ideal have identical pieces
    a = leading_ideal_pieces(pres(I25, N=16))
    b = leading_ideal_pieces(pres(STAR25, N=16))
    assert a == b
    # dim of the degree-j piece is (j + 1) - h(j)
    assert a.dim(4) == 1 and a.dim(5) == 3

    # principal non-Artinian ideal at explicit truncation
    pieces = leading_ideal_pieces(pres(["x^4"], N=9))
    assert pieces.degrees() == (4, 5, 6, 7, 8)
    assert [pieces.dim(j) for j in pieces.degrees()] == [1, 2, 3, 4, 5]
    expect4 = np.zeros((1, 5), dtype=np.int64)
    expect4[0, 0] = 1          # x^4 is the lex-first degree-4 monomial
    assert (pieces.pieces[4] == expect4).all()


def test_pieces_of_homogeneous_ideal_are_its_graded_pieces():
    rng = random.Random(31)
    for _ in range(15):
        h = validate(random_oseq(rng, max_d=6, max_s=14))
        L = lex_ideal(h)
        gens = [BiPoly.monomial(a, t, F) for a, t in L.gens]
        got = leading_ideal_pieces(LocalPresentation(tuple(gens)))
        for j in got.degrees():
            rows = []
            for b in range(j + 1):
                if L.contains_monomial(j - b, b):
                    row = [0] * (j + 1)
                    row[b] = 1
                    rows.append(row)
            assert got.dim(j) == len(rows)
            assert (got.pieces[j] == np.array(rows, dtype=np.int64)).all()


def test_certification_invariants():
    rng = random.Random(37)
    for _ in range(20):
        seqs = random_ci_sequences(rng, max_c1=5)
        zeros, negatives = ci_schedule(seqs)
        h = h_from_sequences(seqs)
        M = hb_matrix_lex(lex_ideal(h), F)
        M = apply_schedule(M, zeros + negatives)
        gens = tuple(f for f in signed_minors(M) if not f.is_zero())
        cert = certify(LocalPresentation(gens, N=max(2 * h.d + 4, h.s + 3)))
        assert cert.table.total0 == cert.table.total1 + 1
        assert cert.nu <= cert.nu_star
        assert list(cert.hf) == list(h)
        # K-polynomial identity against the certified Hilbert function
        lhs = [0] * (cert.hf.s + 3)
        for j, c in enumerate(cert.hf.values):
            lhs[j] += c
            lhs[j + 1] -= 2 * c
            lhs[j + 2] += c
        assert cert.table.k_polynomial() == {j: c for j, c in enumerate(lhs) if c}


def test_oracle_agreement_random_schedules():
    # perturbation-built ideals certify to their schedule-predicted tables
    rng = random.Random(41)
    checked = 0
    while checked < 100:
        h = validate(random_oseq(rng, max_d=6, max_s=16))
        lo = iarrobino_lower(h)
        hi = h.d + 1
        target = rng.randint(lo, hi)
        try:
            outcomes = enumerate_cancellation_outcomes(h, target)
        except Exception:
            continue
        out = outcomes[rng.randrange(len(outcomes))]
        M = realize_slots(h, out.slots, F)
        gens = tuple(f for f in signed_minors(M) if not f.is_zero())
        cert = certify(LocalPresentation(gens, N=max(2 * h.d + 4, h.s + 3)))
        assert list(cert.hf) == list(h)
        assert cert.table == out.table
        assert cert.nu <= cert.nu_star == out.nu_star
        checked += 1


def test_truncation_errors():
    with pytest.raises(TruncationTooSmall):
        hilbert_function(pres(I25, N=6))
    with pytest.raises(NotArtinian):
        hilbert_function(pres(["x^4"]), truncation_cap=32)
    with pytest.raises(ValueError):
        LocalPresentation(())
    with pytest.raises(ValueError):
        LocalPresentation((BiPoly.zero(F),))


def test_certify_bundle():
    cert = certify(pres(I25))
    assert cert.nu == 2 and cert.nu_star == 4
    report = cert.to_json()
    assert report["hf"] == H25
    assert report["beta0"] == {"4": 1, "5": 1, "8": 1, "11": 1}
    assert set(report["star_gens"]) == {"4", "5", "8", "11"}


def test_rational_backend():
    Q = RationalField()
    cert = certify(pres(I25, field=Q))
    assert list(cert.hf) == H25
    assert cert.nu == 2
    assert cert.table.beta0 == {4: 1, 5: 1, 8: 1, 11: 1}
