import random

import pytest

from mph import filtration, frames, hilbert, presentation
from mph.algebra import Field, QQ, box_degrees, join, leq
from mph.frames import (FrameMap, InvariantError, betti_numbers, cokernel_frame, free_frame, free_map,
                        frame_of_presentation, homology_frame, image_frame, kernel_frame, minimal_free_resolution,
                        minimal_generators, minimal_presentation, simplicial_betti)
from mph.linalg import identity, is_zero_matrix, matmul, rank

from conftest import load_complex, load_pres, pres_frame


def canon(P):
    return presentation.canonical_form(P)


def test_free_module_frame():
    M = frame_of_presentation(presentation.Presentation(2, QQ, [(0, 0)], []), (2, 2))
    assert all(d == 1 for d in M.dims.values())
    assert minimal_generators(M) == [((0, 0), [1])]


def test_quotient_frame():
    P = presentation.Presentation(2, QQ, [(1, 1)], [(3, 1)], [[QQ(1)]])
    M = frame_of_presentation(P, (3, 2)).validate()
    for u in box_degrees((3, 2)):
        assert M.dims[u] == (1 if leq((1, 1), u) and u[0] <= 2 else 0)
    with pytest.raises(ValueError):
        frame_of_presentation(P, (2, 2))


def test_four_strata_dims():
    M = pres_frame("four_strata")
    assert [M.dim(u) for u in [(0, 0), (1, 1), (2, 1), (1, 2), (2, 2), (5, 5)]] == [0, 1, 1, 1, 2, 2]


def test_homology_matches_rank_nullity():
    for name in ("fig2", "coned", "sphere", "triangle_filled", "triangle_open", "rp2"):
        K = load_complex(name)
        for i in range(3):
            H = homology_frame(K, i).validate()
            for u in H.degrees():
                assert H.dims[u] == simplicial_betti(K, u, i)


def test_fig2_h1_table(fig2):
    H = homology_frame(fig2, 1)
    nonzero = {u: d for u, d in H.dims.items() if d}
    assert nonzero == {(1, 1): 1, (2, 1): 1, (1, 2): 2, (2, 2): 2, (3, 2): 1}


def test_high_index_is_zero(fig2):
    assert homology_frame(fig2, 4).is_zero()


def test_sphere_h1_born_at_origin():
    assert homology_frame(load_complex("sphere"), 1).dims[(0, 0)] == 1


def test_kernel_image_cokernel_of_zero_and_identity():
    F = free_frame(QQ, [(0, 0), (1, 0)], (2, 2))
    zero = free_map(F, F, [[QQ(0), QQ(0)], [QQ(0), QQ(0)]])
    assert kernel_frame(zero).dims == F.dims
    assert image_frame(zero).is_zero()
    assert cokernel_frame(zero).dims == F.dims
    ident = free_map(F, F, identity(QQ, 2)).validate()
    assert kernel_frame(ident).is_zero()
    assert cokernel_frame(ident).is_zero()
    assert image_frame(ident).dims == F.dims


def test_cokernel_of_x1():
    src = free_frame(QQ, [(1, 0)], (2, 2))
    tgt = free_frame(QQ, [(0, 0)], (2, 2))
    f = free_map(src, tgt, [[QQ(1)]]).validate()
    C = cokernel_frame(f).validate()
    for u in C.degrees():
        assert C.dims[u] == (1 if u[0] == 0 else 0)


def test_minimal_generators():
    assert [u for u, _ in minimal_generators(homology_frame(load_complex("fig2"), 1))] == [(1, 1), (1, 2), (2, 2)]
    assert minimal_generators(free_frame(QQ, [(1, 2)], (2, 2))) == [((1, 2), [1])]
    assert minimal_generators(frames.zero_frame(QQ, (2, 2))) == []


def test_fig2_presentation(fig2):
    P = minimal_presentation(homology_frame(fig2, 1))
    assert P.is_minimal()
    assert canon(P) == canon(load_pres("fig2_h1"))
    gens, rels, mat = canon(P)
    assert gens == [(1, 1), (1, 2), (2, 2)]
    assert sorted(rels) == [(2, 2), (3, 1)]


def test_sphere_presentation():
    P = minimal_presentation(homology_frame(load_complex("sphere"), 1))
    assert P.gen_degrees == [(0, 0)]
    assert sorted(P.rel_degrees) == [(1, 2), (2, 0)]


def test_open_triangle_presentation():
    P = minimal_presentation(homology_frame(load_complex("triangle_open"), 1))
    assert sorted(P.gen_degrees) == [(0, 1), (1, 0)]
    assert P.rel_degrees == [(1, 1), (1, 1)]


def test_sphere_resolution():
    R = minimal_free_resolution(homology_frame(load_complex("sphere"), 1))
    assert R.degrees[0] == [(0, 0)]
    assert sorted(R.degrees[1]) == [(1, 2), (2, 0)]
    assert R.degrees[2] == [(2, 2)]
    assert R.length == 2


def test_free_resolution_of_free_module():
    R = minimal_free_resolution(load_pres("lw_N"))
    assert R.length == 0
    assert [i for i, _, _ in betti_numbers(R)] == [0, 0]


def test_koszul_shape():
    P = presentation.Presentation(2, QQ, [(1, 2)], [(2, 2), (1, 3)], [[QQ(1), QQ(1)]])
    R = minimal_free_resolution(P)
    assert sorted(R.degrees[1]) == [(1, 3), (2, 2)]
    assert R.degrees[2] == [(2, 3)]


def test_lesnick_wright_betti():
    bM = betti_numbers(minimal_free_resolution(load_pres("lw_M")))
    bN = betti_numbers(minimal_free_resolution(load_pres("lw_N")))
    assert [(d, k) for i, d, k in bM if i == 1] == [((1, 1), 1)]
    assert [(d, k) for i, d, k in bN if i == 1] == []


def test_characteristic_changes_betti():
    K = load_complex("rp2")
    bq = betti_numbers(minimal_free_resolution(homology_frame(K, 1, field=QQ)))
    b2 = betti_numbers(minimal_free_resolution(homology_frame(K, 1, field=Field(2))))
    assert bq != b2


def test_map_is_path_independent():
    H = homology_frame(load_complex("coned"), 1)
    F = H.field
    for u in H.degrees():
        for i in range(2):
            for j in range(2):
                if i == j or u[i] >= H.top[i] or u[j] >= H.top[j]:
                    continue
                ui = u[:i] + (u[i] + 1,) + u[i + 1:]
                uij = ui[:j] + (ui[j] + 1,) + ui[j + 1:]
                via = matmul(F, H.step(ui, j), H.step(u, i), H.dims[ui], H.dims[u])
                assert via == H.map(u, uij)


def test_invalid_frame_detected():
    F = free_frame(QQ, [(0, 0)], (1, 1))
    F.steps[((0, 0), 0)] = [[QQ(2)]]
    with pytest.raises(InvariantError):
        F.validate()


def test_non_natural_map_detected():
    F = free_frame(QQ, [(0, 0)], (1, 1))
    f = free_map(F, F, [[QQ(1)]])
    f.comps[(1, 1)] = [[QQ(3)]]
    with pytest.raises(InvariantError):
        f.validate()


def test_debug_dump():
    text = pres_frame("shifted_x1").dump()
    assert '"(1,2)": 1' in text


def _corpus(seed, n, field=QQ):
    rng = random.Random(seed)
    out = []
    for k in range(n):
        r = 2 if k % 2 == 0 else 3
        out.append(presentation.random_presentation(rng, r, max_deg=4 if r == 2 else 3, field=field))
    return out


def test_round_trip_presentation_dims():
    for P in _corpus(1, 40):
        M = frame_of_presentation(P)
        Q = minimal_presentation(M)
        assert Q.is_minimal()
        M2 = frame_of_presentation(Q, M.top)
        assert M2.dims == M.dims


def test_box_stabilization():
    """Enlarging the box changes nothing: the central correctness argument."""
    for P in _corpus(2, 30):
        M = frame_of_presentation(P)
        big = frame_of_presentation(P, tuple(k + 2 for k in M.top))
        for u in big.degrees():
            assert big.dims[u] == M.dim(u)
            for i in range(M.r):
                if u[i] >= M.top[i] and u[i] < big.top[i]:
                    st = big.steps[(u, i)]
                    assert rank(big.field, st, big.dims[u]) == big.dims[u] == len(st)
        assert canon(minimal_presentation(M)) == canon(minimal_presentation(big))
    rng = random.Random(3)
    for _ in range(15):
        K = filtration.random_complex(rng, 2, multicritical=True)
        s = filtration.stabilization_degree(K)
        for i in range(2):
            H = homology_frame(K, i)
            big = homology_frame(K, i, top=tuple(k + 1 for k in s))
            assert all(big.dims[u] == H.dim(u) for u in big.degrees())
            assert canon(minimal_presentation(H)) == canon(minimal_presentation(big))


def test_resolution_properties():
    for P in _corpus(4, 40):
        M = frame_of_presentation(P)
        R = minimal_free_resolution(M)
        assert R.length <= M.r
        HF = hilbert.hilbert_function(M)
        assert all(R.hf(u) == HF(u) for u in M.degrees())
        for i in range(2, len(R.maps)):
            comp = matmul(R.field, R.maps[i - 1], R.maps[i], len(R.degrees[i - 1]), len(R.degrees[i]))
            assert is_zero_matrix(comp)


def test_threads_give_same_result(monkeypatch):
    H1 = homology_frame(load_complex("coned"), 1)
    monkeypatch.setenv("MPH_THREADS", "4")
    H4 = homology_frame(load_complex("coned"), 1)
    assert H1.dims == H4.dims and H1.steps == H4.steps
