import pytest

from formalseq import grmod
from formalseq import spaces as S
from formalseq.lattice import ClosedSubgroup, decompose_subgroup
from formalseq.ring import GF, QQ, ZZ


def names(strata):
    return sorted(s.name for s in strata)


def test_p1_strata():
    st = S.projective_line().strata()
    assert sorted((s.orbit_dim, decompose_subgroup(s.isotropy)) for s in st) == [
        (0, ((), 1)), (0, ((), 1)), (1, ((), 0))]


def test_speed_two_edge_isotropy():
    st = S.spinning_sphere(2).strata()
    edge = [s for s in st if s.orbit_dim == 1][0]
    assert edge.isotropy.character_matrix == ((2,),)
    assert decompose_subgroup(edge.isotropy) == ((2,), 0)


def test_single_orbit():
    X = S.SingleOrbit(ClosedSubgroup(2, ((2, 0), (0, 2))))
    (s,) = X.strata()
    assert s.orbit_dim == 2
    assert X.min_orbit_dim() == 2
    assert grmod.hilbert_ranks(X.equivariant_cohomology(QQ), 4) == [1, 0, 0, 0, 0]
    assert grmod.hilbert_ranks(X.equivariant_cohomology(GF(2)), 2) == [1, 2, 3]
    with pytest.raises(S.UnsupportedModelRing):
        X.equivariant_cohomology(ZZ)


def test_single_orbit_z2_in_circle():
    X = S.SingleOrbit(ClosedSubgroup(1, ((2,),)))
    H = X.equivariant_cohomology(ZZ)
    assert [h.describe(ZZ) for h in grmod.hilbert_function(H, 4)] == ["Z", "0", "Z/2", "0", "Z/2"]


def test_skeleta_of_p2():
    X = S.projective_plane()
    assert len(S.skeleton(X, 0)) == 3
    assert names(S.skeleton(X, 1)) == sorted(
        ["cone(0,1)", "cone(1,2)", "cone(0,2)", "cone(0)", "cone(1)", "cone(2)"])
    assert len(S.skeleton(X, 2)) == 7
    assert S.skeleton(X, -1) == []
    with pytest.raises(S.IndexOutOfRange):
        S.skeleton(X, 3)


def test_p_skeleton_of_speed_two_sphere():
    X = S.spinning_sphere(2)
    assert len(S.p_skeleton(X, 2, 0)) == 3
    assert len(S.skeleton(X, 0)) == 2
    assert len(S.p_skeleton(X, 3, 0)) == 2


def test_skeleton_inside_p_skeleton():
    for X in [S.projective_plane(), S.hirzebruch(2), S.spinning_sphere(6), S.catalog("FreeCircleTimes:P2")]:
        for p in (2, 3, 5):
            for i in range(-1, X.n + 1):
                assert set(names(S.skeleton(X, i))) <= set(names(S.p_skeleton(X, p, i)))


def test_min_orbit_dim():
    assert S.min_orbit_dim(S.projective_plane()) == 0
    assert S.min_orbit_dim(S.catalog("FreeCircleTimes:P1")) == 1


def test_equivariant_cohomology_of_p1():
    H = S.equivariant_cohomology(S.projective_line(), ZZ)
    assert grmod.hilbert_ranks(H, 6) == [1, 0, 2, 0, 2, 0, 2]
    ok, info = grmod.is_free(H, 12)
    assert ok and info["degrees"] == [0, 2]


def test_speed_two_sphere_mod_two():
    H = S.spinning_sphere(2).equivariant_cohomology(GF(2))
    assert grmod.hilbert_ranks(H, 4) == [1, 0, 2, 0, 2]


def test_relative_terms():
    P1 = S.projective_line()
    rel = S.relative_term(P1, 1, ZZ)
    assert [h.describe(ZZ) for h in grmod.hilbert_function(rel, 4)] == ["0", "Z", "0", "0", "0"]
    P2 = S.projective_plane()
    assert grmod.hilbert_ranks(S.relative_term(P2, 0, QQ), 4) == [3, 0, 6, 0, 9]
    assert grmod.hilbert_ranks(S.relative_term(P2, 1, QQ), 5) == [0, 3, 0, 3, 0, 3]


def test_relative_term_depth_bound():
    for X in [S.projective_plane(), S.p1_times_p1(), S.hirzebruch(1)]:
        for i in range(X.n + 1):
            M = S.relative_term(X, i, QQ)
            assert grmod.depth(M, 16).depth >= X.n - i


def test_fan_validation():
    with pytest.raises(S.InvalidModel):
        S.Fan(2, ((2, 0), (0, 1)), ((0, 1),))
    with pytest.raises(S.InvalidModel):
        S.Fan(2, ((1, 0), (2, 0)), ((0, 1),))
    assert not S.Fan(2, ((1, 0), (0, 1)), ((0, 1),)).is_complete()


def test_weighted_projective_plane_needs_invertible_multiplicity():
    X = S.Fan(2, ((1, 0), (0, 1), (-1, -2)), ((0, 1), (1, 2), (0, 2)))
    assert not X.is_smooth()
    with pytest.raises(S.UnsupportedModelRing):
        X.equivariant_cohomology(ZZ)
    H = X.equivariant_cohomology(QQ)
    assert grmod.hilbert_ranks(H, 4) == [1, 0, 3, 0, 6]
    # orbit isotropy of a fan is always a subtorus
    assert all(decompose_subgroup(s.isotropy)[0] == () for s in X.strata())


def test_gkm_validation():
    with pytest.raises(S.InvalidModel):
        S.GkmGraph(1, ("N",), (("N", "S", (1,)),))
    with pytest.raises(S.InvalidModel):
        S.GkmGraph(1, ("N", "S"), (("N", "S", (0,)),))


def test_catalog_and_json_roundtrip():
    for name in ["P1", "P2", "P1xP1", "Hirzebruch:3", "SpinningSphere:4", "FreeCircleTimes:P2"]:
        X = S.catalog(name)
        Y = S.model_from_json(X.to_json())
        assert Y == X
        assert Y.strata() == X.strata()
    with pytest.raises(KeyError):
        S.catalog("P3")


def test_disjoint_union():
    X = S.DisjointUnion((S.projective_line(), S.spinning_sphere(1)))
    assert len(X.strata()) == 6
    data = X.sequence_data(ZZ)
    assert grmod.hilbert_ranks(data.total, 4) == [2, 0, 4, 0, 4]
