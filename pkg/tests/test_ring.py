import pytest

from formalseq.ring import (
    GF,
    QQ,
    ZZ,
    FinitelyGeneratedRModule,
    InvalidLocalizationSet,
    InvalidPrime,
    PolynomialRingContext,
    base_dimension,
    is_invertible,
    make_ring,
    prime_factors,
)


def test_make_ring_descriptors():
    assert make_ring("Q") == QQ
    assert make_ring("Z") == ZZ
    assert make_ring("Fp:5") == GF(5)
    R = make_ring("Z[1/2,1/3]")
    assert R.inverted == (2, 3)
    assert str(R) == "Z[1/2,1/3]"


def test_bad_descriptors():
    with pytest.raises(InvalidPrime):
        make_ring("Fp:4")
    with pytest.raises(InvalidLocalizationSet):
        make_ring("Z[1/6]")
    with pytest.raises(ValueError):
        make_ring("R")


def test_base_dimension():
    assert base_dimension(ZZ) == 1
    assert base_dimension(make_ring("Z[1/2]")) == 1
    assert base_dimension(QQ) == 0
    assert base_dimension(GF(3)) == 0


def test_invertibility():
    assert not is_invertible(ZZ, 2)
    assert is_invertible(make_ring("Z[1/2]"), 2)
    assert not is_invertible(make_ring("Z[1/2]"), 3)
    assert is_invertible(QQ, 7)
    assert is_invertible(GF(3), 2)
    assert not is_invertible(GF(3), 3)


def test_units_and_localized_factors():
    R = make_ring("Z[1/2]")
    assert R.is_unit(8) and not R.is_unit(6)
    assert R.localize_factors((12, 2)) == (3,)
    assert ZZ.localize_factors((1, 6)) == (6,)


def test_prime_factors():
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(1) == []


def test_fg_module_describe():
    M = FinitelyGeneratedRModule(2, (2, 4))
    assert M.describe(ZZ) == "Z^2 + Z/2 + Z/4"
    assert FinitelyGeneratedRModule(1, ()).describe(GF(2)) == "F2"
    assert FinitelyGeneratedRModule(0, ()).is_zero


def test_monomials():
    ctx = PolynomialRingContext(2, QQ)
    assert ctx.monomials(0) == ((0, 0),)
    assert ctx.monomials(3) == ()
    assert ctx.monomials(4) == ((2, 0), (1, 1), (0, 2))
    assert ctx.monomial_index(4)[(1, 1)] == 1
