import pytest

from formalseq import grmod
from formalseq import poly as P
from formalseq.ring import GF, QQ, ZZ, PolynomialRingContext


def ctx(n, R=QQ):
    return PolynomialRingContext(n, R)


def t(k, n):
    return P.var(k, n)


def test_hilbert_of_z_t_mod_2t():
    M = grmod.cyclic_module(ctx(1, ZZ), [P.scale(t(0, 1), 2)])
    hf = grmod.hilbert_function(M, 6)
    assert [h.describe(ZZ) for h in hf] == ["Z", "0", "Z/2", "0", "Z/2", "0", "Z/2"]


def test_free_module_ranks():
    F = grmod.free_module(ctx(2), [0, 2])
    assert grmod.hilbert_ranks(F, 6) == [1, 0, 3, 0, 5, 0, 7]


def test_koszul_resolution():
    K = grmod.cyclic_module(ctx(2), [t(0, 2), t(1, 2)])
    res = grmod.minimal_resolution(K, 10)
    assert res.betti_numbers() == [1, 2, 1]
    assert res.betti_table() == {0: {0: 1}, 1: {2: 2}, 2: {4: 1}}
    assert grmod.depth(K, 10).depth == 0
    assert grmod.krull_dim(K, 12).dim == 0
    assert grmod.is_cohen_macaulay(K, 12).is_cm


def test_hypersurface_is_cm():
    M = grmod.cyclic_module(ctx(2), [P.mul(t(0, 2), t(1, 2))])
    rep = grmod.is_cohen_macaulay(M, 14)
    assert (rep.depth, rep.dim, rep.is_cm) == (1, 1, True)


def test_embedded_point_is_not_cm():
    # (t1^2, t1 t2) = (t1) cap (t1, t2)^2
    M = grmod.cyclic_module(ctx(2), [P.power(t(0, 2), 2, 2), P.mul(t(0, 2), t(1, 2))])
    rep = grmod.is_cohen_macaulay(M, 14)
    assert rep.dim == 1 and rep.depth == 0 and rep.is_cm is False


def test_zero_module_conventions():
    Z = grmod.zero_module(ctx(2))
    assert grmod.depth(Z, 8).depth == float("inf")
    assert grmod.krull_dim(Z, 8).dim == float("-inf")
    with pytest.raises(grmod.ZeroModule):
        grmod.is_cohen_macaulay(Z, 8)


def test_dimension_over_integers():
    A = grmod.free_module(ctx(1, ZZ), [0])
    assert grmod.krull_dim(A, 12).dim == 2
    T = grmod.cyclic_module(ctx(1, ZZ), [P.scale(t(0, 1), 2)])
    # Z[t]/(2t): the line t = 0 over Z dominates, the F_2[t] fibre has dim 1
    assert grmod.krull_dim(T, 12).dim == 1


def test_is_free_detects_torsion_and_non_free():
    ok, info = grmod.is_free(grmod.free_module(ctx(1, ZZ), [0, 2]), 10)
    assert ok and info["degrees"] == [0, 2]
    ok, info = grmod.is_free(grmod.cyclic_module(ctx(1, ZZ), [P.scale(t(0, 1), 2)]), 10)
    assert not ok
    ok, _ = grmod.is_free(grmod.cyclic_module(ctx(2, GF(2)), [t(0, 2)]), 10)
    assert not ok


def test_map_kernel_cokernel():
    A = grmod.free_module(ctx(1), [0])
    f = grmod.poly_map(A, A, 2, {(0, 0): t(0, 1)})
    assert grmod.hilbert_ranks(grmod.kernel_module(f), 6) == [0] * 7
    assert grmod.hilbert_ranks(grmod.cokernel_module(f), 6) == [1, 0, 0, 0, 0, 0, 0]


def test_complex_check_and_homology():
    n = 2
    c = ctx(n)
    A0 = grmod.free_module(c, [0])
    A1 = grmod.free_module(c, [2, 2])
    A2 = grmod.free_module(c, [4])
    # Koszul complex A(-4) -> A(-2)^2 -> A
    d2 = grmod.poly_map(A2, A1, 0, {(0, 0): t(1, n), (1, 0): P.scale(t(0, n), -1)})
    d1 = grmod.poly_map(A1, A0, 0, {(0, 0): t(0, n), (0, 1): t(1, n)})
    C = grmod.GradedComplex([A2, A1, A0], [d2, d1])
    C.check(8)
    assert all(h.is_zero for h in grmod.homology_at(C, 0, 8))
    assert all(h.is_zero for h in grmod.homology_at(C, 1, 8))
    top = grmod.homology_at(C, 2, 8)
    assert [h.free_rank for h in top] == [1, 0, 0, 0, 0, 0, 0, 0, 0]

    bad = grmod.poly_map(A2, A1, 0, {(0, 0): t(1, n), (1, 0): t(0, n)})
    with pytest.raises(grmod.NotAComplex):
        grmod.GradedComplex([A2, A1, A0], [bad, d1]).check(8)


def test_degree_bound_too_small():
    A = grmod.free_module(ctx(2), [0])
    with pytest.raises(grmod.DegreeBoundTooSmall):
        grmod.krull_dim(A, 4)


def test_shift_and_direct_sum():
    c = ctx(1)
    A = grmod.free_module(c, [0])
    S = grmod.DirectSum([A, grmod.Shifted(A, 3)], c)
    assert grmod.hilbert_ranks(S, 5) == [1, 0, 1, 1, 1, 1]
    assert grmod.depth(S, 12).depth == 1
