import random

import pytest

from tclab.lexseg import (
    MonomialIdeal2,
    ek_betti,
    graded_degrees,
    hb_matrix_lex,
    lex_ideal,
    quotient_hilbert_function,
)
from tclab.oseq import validate
from tclab.poly import PrimeField, signed_minors

from seqgen import random_oseq

H14 = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 10, 10, 9, 8, 8, 5, 3, 3, 2]
H25 = [1, 2, 3, 4, 4, 3, 3, 3, 2, 2, 2, 1]


def test_lex_ideal_examples():
    L = lex_ideal(validate(H14))
    assert L.gens == ((10, 0), (9, 3), (8, 5), (7, 8), (6, 9), (5, 10),
                      (4, 12), (3, 13), (2, 16), (1, 18), (0, 19))
    L = lex_ideal(validate(H25))
    assert L.gens == ((4, 0), (3, 2), (2, 6), (1, 10), (0, 12))
    assert lex_ideal(validate([1, 1])).gens == ((1, 0), (0, 2))


def test_minimality_enforced():
    with pytest.raises(ValueError):
        MonomialIdeal2(((2, 0), (1, 0)))       # second divides into first's shadow
    with pytest.raises(ValueError):
        MonomialIdeal2(((2, 1), (1, 1)))       # equal y-exponents


def test_ek_betti_examples():
    t = ek_betti(lex_ideal(validate(H25)))
    assert t.degrees0() == (4, 5, 8, 11, 12)
    assert t.degrees1() == (6, 9, 12, 13)
    t = ek_betti(lex_ideal(validate(H14)))
    assert t.degrees1() == (13, 14, 16, 16, 16, 17, 17, 19, 20, 20)
    assert t.total0 == 11 and t.total1 == 10
    t = ek_betti(MonomialIdeal2(((1, 0), (0, 2))))
    assert t.beta0 == {1: 1, 2: 1} and t.beta1 == {3: 1}


def test_hb_matrix_shape_and_labels():
    h = validate(H14)
    M = hb_matrix_lex(lex_ideal(h))
    assert M.m == 11 and len(M.col_degrees) == 10
    assert M.row_degrees == (10, 12, 13, 15, 15, 15, 16, 16, 18, 19, 19)
    assert M.col_degrees == (13, 14, 16, 16, 16, 17, 17, 19, 20, 20)
    diag = [M.entry(i, i).terms for i in range(10)]
    assert [list(t)[0][1] for t in diag] == [3, 2, 3, 1, 1, 2, 1, 3, 2, 1]
    assert M.mode == "homogeneous"

    M25 = hb_matrix_lex(lex_ideal(validate(H25)))
    assert [list(M25.entry(i, i).terms)[0][1] for i in range(4)] == [2, 4, 4, 2]

    koszul = hb_matrix_lex(lex_ideal(validate([1, 1])))
    assert str(koszul.entry(0, 0)) == "y^2"
    assert str(koszul.entry(1, 0)) == "-x"


def test_graded_degrees_shape():
    u, v = graded_degrees(lex_ideal(validate(H25)))
    assert len(u) == len(v) + 1
    assert u == (4, 5, 8, 11, 12) and v == (6, 9, 12, 13)


def test_minors_reproduce_generators():
    # signed maximal minors of the lex matrix are the monomial generators
    # up to sign, for random h with d <= 12
    rng = random.Random(7)
    field = PrimeField()
    for _ in range(25):
        h = validate(random_oseq(rng, max_d=12))
        L = lex_ideal(h)
        minors = signed_minors(hb_matrix_lex(L, field))
        assert len(minors) == len(L)
        for (a, t), f in zip(L.gens, minors):
            assert set(f.terms) == {(a, t)}
            assert f.terms[(a, t)] in (1, field.p - 1)


def test_quotient_hilbert_function_round_trip():
    rng = random.Random(11)
    for _ in range(40):
        h = validate(random_oseq(rng, max_d=12))
        assert quotient_hilbert_function(lex_ideal(h)) == h.values


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_ek_k_polynomial_identity():
    # (1 - t)^2 h(t) = 1 - sum beta0_j t^j + sum beta1_j t^j
    rng = random.Random(13)
    for _ in range(40):
        h = validate(random_oseq(rng, max_d=10))
        kpoly = ek_betti(lex_ideal(h)).k_polynomial()
        lhs = _poly_mul([1, -2, 1], list(h.values))
        expect = {j: c for j, c in enumerate(lhs) if c}
        assert kpoly == expect
