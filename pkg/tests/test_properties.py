"""Randomized property suites on seeded corpora."""
from mph import strata
from mph.algebra import Field, box_degrees, leq
from mph.frames import frame_of_presentation, homology_frame, minimal_free_resolution
from mph.hilbert import hilbert_function, hs_numerator, numerator_from_resolution
from mph.onepar import barcode, classic_barcode, diagonal_tensor

from conftest import complex_corpus, corpus

F2 = Field(2)


def test_rank_three_ways():
    for P in corpus():
        M = frame_of_presentation(P)
        HF = hilbert_function(M)
        diag = barcode(diagonal_tensor(P))
        assert HF(M.top) == hs_numerator(HF).at_one() == diag.infinite()


def test_resolution_length_and_euler():
    for P in corpus():
        M = frame_of_presentation(P)
        R = minimal_free_resolution(M)
        assert R.length <= P.r
        HF = hilbert_function(M)
        for u in box_degrees(tuple(t + 1 for t in M.top)):
            assert R.hf(u) == HF(u)
        assert numerator_from_resolution(R) == hs_numerator(HF)


def test_brute_force_ass_over_f2():
    checked = 0
    for P in corpus(seed=99, field=F2):
        M = frame_of_presentation(P)
        if M.total_dimension() > 30:
            continue
        assert strata.brute_force_ass(M) == strata.associated_primes(M)
        checked += 1
    assert checked >= 50


def test_rank_drop_implies_associated_prime():
    for P in corpus():
        M = frame_of_presentation(P)
        ass = strata.associated_primes(M)
        degs = list(box_degrees(M.top))
        for u in degs:
            for v in degs:
                if leq(u, v):
                    assert strata.prop_rank_drop_holds(M, ass, u, v)


def test_one_parameter_oracle():
    for K in complex_corpus():
        for i in range(2):
            assert barcode(homology_frame(K, i)) == classic_barcode(K, i)
