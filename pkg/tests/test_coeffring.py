import itertools
from math import factorial

import pytest

from equipart import f2poly
from equipart.coeffring import POINT, AlgebraElement, flag_algebra, flag_monomial_nonzero, grassmann_class
from equipart.errors import InputError, ResourceLimitError, resource_limits

import oracles


def test_small_flag_algebras():
    assert flag_algebra(1).rank == 1
    a2 = flag_algebra(2)
    assert a2.rank == 2
    assert set(a2.labels) == {"1", "t1"}
    t1 = a2.monomial([1])
    assert a2.mul(t1, t1) == 0
    a3 = flag_algebra(3)
    assert a3.rank == 6
    assert a3.top_degree == 3
    assert a3.monomial([2, 1]) != 0
    with pytest.raises(InputError):
        flag_algebra(0)


@pytest.mark.parametrize("d", range(1, 7))
def test_rank_is_factorial(d):
    assert flag_algebra(d).rank == factorial(d)


@pytest.mark.parametrize("d", range(1, 7))
def test_elementary_symmetric_vanish(d):
    alg = flag_algebra(d)
    for r in range(1, d + 1):
        assert alg.from_poly(f2poly.elementary_symmetric(r, d)) == 0


@pytest.mark.parametrize("d", range(2, 6))
def test_unique_top_class(d):
    alg = flag_algebra(d)
    top = [i for i, deg in enumerate(alg.degrees) if deg == alg.top_degree]
    assert len(top) == 1
    assert alg.labels[top[0]] == f2poly.format_monomial(f2poly.pack(range(d - 1, -1, -1)), d, "t")
    # Anything pushed past the top degree dies.
    for v in range(d):
        assert alg.mul(1 << top[0], alg.monomial([1 if i == v else 0 for i in range(d)])) == 0


def test_flag_monomial_examples():
    assert flag_monomial_nonzero(3, [2, 1, 0])
    assert not flag_monomial_nonzero(2, [1, 1])
    assert not flag_monomial_nonzero(3, [2, 2, 0])
    with pytest.raises(InputError):
        flag_monomial_nonzero(2, [1, 0, 0])


@pytest.mark.parametrize("d", range(2, 6))
def test_permutation_invariance(d):
    for exps in itertools.product(*[range(d - i) for i in range(d)]):
        base = flag_monomial_nonzero(d, exps)
        for perm in set(itertools.permutations(exps)):
            assert flag_monomial_nonzero(d, perm) == base


@pytest.mark.parametrize("d", [2, 3, 4])
def test_nonvanishing_matches_sigma_oracle(d):
    for exps in itertools.product(range(d), repeat=d):
        assert flag_monomial_nonzero(d, exps) == oracles.flag_monomial_nonzero(d, exps)


def test_grassmann_class_examples():
    w1 = grassmann_class(4, 1, "taut", 1)
    assert w1 == AlgebraElement(flag_algebra(4), flag_algebra(4).monomial([1]))
    perp_top = grassmann_class(4, 2, "complement", 2)
    assert perp_top**2
    assert grassmann_class(4, 2, "complement", 3) == 0
    assert grassmann_class(4, 2, "taut", 0) == AlgebraElement(flag_algebra(4), flag_algebra(4).unit)
    with pytest.raises(InputError):
        grassmann_class(4, 5, "taut", 1)
    with pytest.raises(InputError):
        grassmann_class(4, 2, "taut", -1)
    with pytest.raises(InputError):
        grassmann_class(4, 2, "dual", 1)


@pytest.mark.parametrize("d", range(2, 7))
def test_gambelli_power_nonzero(d):
    for ell in range(1, d):
        assert grassmann_class(d, ell, "complement", d - ell) ** ell


def test_elements_from_different_algebras_do_not_mix():
    a = grassmann_class(3, 1, "taut", 1)
    b = grassmann_class(4, 1, "taut", 1)
    with pytest.raises(InputError):
        a + b


def test_point_algebra():
    assert POINT.rank == 1
    assert POINT.mul(POINT.unit, POINT.unit) == POINT.unit


def test_rank_cap():
    with resource_limits(max_flag_rank=200):
        with pytest.raises(ResourceLimitError):
            flag_algebra(6)
        assert flag_algebra(5).rank == 120
