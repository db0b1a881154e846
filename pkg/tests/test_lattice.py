import pytest

from formalseq import grmod
from formalseq.lattice import (
    ClosedSubgroup,
    DimensionMismatch,
    InconsistentStratum,
    StratumDescriptor,
    UnsupportedCoefficients,
    check_conditions,
    check_conditions_algebraic,
    decompose_subgroup,
    dim_classifying,
    full_classifying_cohomology,
    p_rank,
    present_classifying_cohomology,
    strata_from_json,
    strata_to_json,
)
from formalseq.ring import GF, QQ, ZZ, PolynomialRingContext, make_ring


def sub(rows, n=None):
    n = n if n is not None else len(rows[0])
    return ClosedSubgroup(n, tuple(tuple(r) for r in rows))


def test_decompose():
    assert decompose_subgroup(sub([[2, 0], [0, 2]])) == ((2, 2), 0)
    assert decompose_subgroup(sub([[2, 0], [0, 3]])) == ((6,), 0)
    assert decompose_subgroup(sub([[4, 6]])) == ((2,), 1)
    assert decompose_subgroup(ClosedSubgroup.whole_torus(3)) == ((), 3)
    assert decompose_subgroup(ClosedSubgroup.trivial(2)) == ((), 0)


def test_bad_width():
    with pytest.raises(DimensionMismatch):
        ClosedSubgroup(2, ((1, 2, 3),))


def test_dim_classifying_cases():
    z2z2 = sub([[2, 0], [0, 2]])
    assert dim_classifying(z2z2, ZZ) == 2
    assert dim_classifying(z2z2, GF(2)) == 2
    assert dim_classifying(z2z2, GF(3)) == 0
    assert dim_classifying(z2z2, QQ) == 0
    assert dim_classifying(z2z2, make_ring("Z[1/2]")) == 1
    circle = sub([[1, 0]])
    assert dim_classifying(circle, ZZ) == 2
    assert dim_classifying(circle, QQ) == 1
    assert dim_classifying(sub([[2]]), GF(3)) == 0


def test_p_rank():
    assert p_rank(sub([[2, 0], [0, 2]]), 2) == 2
    assert p_rank(sub([[6, 0], [0, 1]]), 3) == 1
    assert p_rank(ClosedSubgroup.whole_torus(2), 5) == 2


def test_classifying_cohomology_of_z2():
    H = present_classifying_cohomology(sub([[2]]), PolynomialRingContext(1, ZZ))
    assert [h.describe(ZZ) for h in grmod.hilbert_function(H, 4)] == ["Z", "0", "Z/2", "0", "Z/2"]
    full = full_classifying_cohomology(sub([[2]]), PolynomialRingContext(1, GF(2)))
    # H*(BZ_2; F_2) has one class in every degree
    assert grmod.hilbert_ranks(full, 6) == [1, 1, 1, 1, 1, 1, 1]
    odd = full_classifying_cohomology(sub([[3]]), PolynomialRingContext(1, GF(2)))
    assert grmod.hilbert_ranks(odd, 4) == [1, 0, 0, 0, 0]


def test_classifying_cohomology_of_subtorus():
    H = present_classifying_cohomology(sub([[1, -1]]), PolynomialRingContext(2, QQ))
    assert grmod.hilbert_ranks(H, 6) == [1, 0, 1, 0, 1, 0, 1]
    assert H.closed_form["dim"] == 1


def test_two_torsion_factors_over_z_rejected():
    with pytest.raises(UnsupportedCoefficients):
        full_classifying_cohomology(sub([[2, 0], [0, 2]]), PolynomialRingContext(2, ZZ))


def test_stratum_validation():
    with pytest.raises(InconsistentStratum):
        StratumDescriptor("x", sub([[1, 0]]), 0).validate()
    with pytest.raises(InconsistentStratum):
        StratumDescriptor("x", sub([[1, 0]]), 3)


TW = {"n": 2, "strata": [
    {"name": "fixed", "character_matrix": [], "orbit_dim": 0},
    {"name": "z2xz2", "character_matrix": [[2, 0], [0, 2]], "orbit_dim": 2},
]}


def test_tolman_weitsman_strata():
    st = strata_from_json(TW)
    rep = check_conditions(st, ZZ, 1)
    assert [(v.stratum, v.i, v.p) for v in rep.violations] == [("z2xz2", 1, 2)]
    assert check_conditions(st, ZZ, 0).holds
    assert check_conditions(st, QQ, 2).holds
    assert check_conditions(st, make_ring("Z[1/2]"), 2).holds
    f2 = check_conditions(st, GF(2), 2)
    assert f2.index_set() == [("z2xz2", 0), ("z2xz2", 1)]
    assert check_conditions_algebraic(st, GF(2), 2).index_set() == f2.index_set()


def test_strata_json_roundtrip():
    st = strata_from_json(TW)
    assert strata_from_json(strata_to_json(st)) == st
