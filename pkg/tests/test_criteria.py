import itertools

import pytest

from equipart import f2poly
from equipart.charclass import Base, FlagCanonical, Hopf, Inverse, Sum, Tautological, Trivial, direct_sum, sw_class
from equipart.criteria import (
    Verdict,
    certify_constrained,
    certify_orthogonal,
    certify_unconstrained,
    dual_class_monomial,
    dual_class_product,
    fairy_bread_check,
    flag_product_checks,
    iota1_via_inverse,
)
from equipart.coeffring import flag_algebra
from equipart.errors import InputError
from equipart.ideals import CoeffPoly
from equipart.invariants import iota_bundles, iota_numeric, omega, projective_bundle_system


def test_unconstrained_examples():
    yes = certify_unconstrained("taut(2,4)", 3, 1)
    assert yes.verdict is Verdict.CERTIFIED
    assert str(yes) == "Certified (Theorem: unconstrained; iota=3)"
    no = certify_unconstrained("taut(2,4)", 4, 1)
    assert not no.certified
    assert str(no).startswith("NotCertifiedByCriterion")
    for n in range(1, 7):
        assert certify_unconstrained(Trivial(n), n - 1 if n > 1 else 1, 1).certified == (n > 1)


def test_rejects_nonpositive_parameters():
    with pytest.raises(InputError):
        certify_unconstrained("taut(2,4)", 0, 1)
    with pytest.raises(InputError):
        certify_orthogonal("trivial(2)", 1, 3)
    with pytest.raises(InputError):
        certify_unconstrained("inverse(taut(2,4))", 1, 1)


def test_hyperplane_with_line_constraint():
    # E = H(R^(d-l+1)) + trivial(l-1) over P(R^(d-l+1)), one hyperplane, j = d-1.
    for d in range(2, 7):
        for ell in range(2, d + 1):
            e = Sum(Hopf(d - ell + 1), Trivial(ell - 1))
            assert certify_constrained([e], d - 1).certified


def test_flag_constrained_power_of_two_family():
    # E(i) = E_1 + ... + E_i over the complete flag; j = 2^t + r with d >= 2^(t+k-1) + r + 1.
    hits = 0
    for d in range(2, 7):
        for k in range(1, 3):
            if k >= d:
                continue
            dims = tuple(range(1, d))
            bundles = [direct_sum(*(FlagCanonical(r, dims, d) for r in range(1, i + 1))) for i in range(1, k + 1)]
            for t in range(0, 3):
                for r in range(0, 2**t):
                    if d < 2 ** (t + k - 1) + r + 1:
                        continue
                    hits += 1
                    assert certify_constrained(bundles, 2**t + r).certified
    assert hits > 5


def test_subbundle_certifies_no_more():
    cases = [
        (FlagCanonical(1, (1, 3), 4), direct_sum(FlagCanonical(1, (1, 3), 4), FlagCanonical(2, (1, 3), 4))),
        (Tautological(2, 5), Sum(Tautological(2, 5), Trivial(1))),
        (Hopf(4), Sum(Hopf(4), Trivial(2))),
        (FlagCanonical(2, (1, 2), 4), Sum(FlagCanonical(2, (1, 2), 4), FlagCanonical(3, (1, 2), 4))),
    ]
    for sub, whole in cases:
        assert iota_bundles([sub]) <= iota_bundles([whole])


def test_orthogonal_examples():
    assert certify_orthogonal("trivial(5)", 2, 2).certified
    no = certify_orthogonal("trivial(5)", 3, 2)
    assert not no.certified
    assert str(no) == "NotCertifiedByCriterion (Theorem: orthogonal; omega=2)"
    assert certify_orthogonal("trivial(4)", 1, 2).certified


def test_orthogonal_over_a_point_matches_omega():
    for n in range(2, 9):
        for k in range(1, min(n, 3) + 1):
            w = omega(k, n)
            if w >= 1:
                assert certify_orthogonal(Trivial(n), w, k).certified
            assert not certify_orthogonal(Trivial(n), w + 1, k).certified


def test_unconstrained_with_extra_line_implies_orthogonal():
    hits = 0
    for n in range(1, 9):
        for k in range(1, min(n, 3) + 1):
            for j in range(1, 6):
                if certify_unconstrained(Trivial(n + 1), j + 1, k).certified:
                    hits += 1
                    assert certify_orthogonal(Trivial(n), j, k).certified
    assert hits > 10


def small_bundles():
    for d in range(1, 7):
        for ell in range(1, d + 1):
            yield Tautological(ell, d)
        yield Hopf(d)
        yield Sum(Hopf(d), Trivial(2))
    for d in range(2, 6):
        for k in range(1, d):
            for dims in itertools.combinations(range(1, d), k):
                for i in range(1, k + 2):
                    yield FlagCanonical(i, dims, d)
    for n in range(1, 5):
        yield Trivial(n)


def test_iota1_examples():
    assert iota1_via_inverse("taut(2,5)") == 4
    assert iota1_via_inverse("trivial(3)") == 2
    assert iota1_via_inverse("sum(hopf(4),trivial(2))") == 5


def test_iota1_two_routes_agree():
    for e in small_bundles():
        assert iota1_via_inverse(e) == iota_bundles([e]), str(e)


def candidate_bundles(base: Base):
    d, dims = base.ambient, base.dims
    if len(dims) == 1:
        yield Tautological(dims[0], d)
        yield Inverse(Inverse(Tautological(dims[0], d)))
    for i in range(1, len(dims) + 2):
        yield FlagCanonical(i, dims, d)
    for i in range(2, len(dims) + 2):
        yield direct_sum(*(FlagCanonical(r, dims, d) for r in range(1, i + 1)))


def small_bases():
    for d in range(2, 6):
        for k in range(1, d):
            for dims in itertools.combinations(range(1, d), k):
                yield Base(d, dims)


def test_iota_equals_numeric_under_top_class_hypothesis():
    hits = 0
    for base in small_bases():
        alg = base.algebra()
        bundles = [e for e in candidate_bundles(base) if e.dim >= 1]
        for k in (1, 2):
            for combo in itertools.product(bundles, repeat=k):
                ones = [iota1_via_inverse(e) for e in combo]
                product = alg.unit
                for e, a in zip(combo, ones):
                    product = alg.mul(product, sw_class(Inverse(e), base)[a - e.dim + 1])
                if not product:
                    continue
                hits += 1
                assert iota_bundles(list(combo)) == iota_numeric([a + 1 for a in ones])
                # The corner monomial x^a survives modulo the projective-bundle ideal.
                system = projective_bundle_system(list(combo)).system
                corner = CoeffPoly(alg, k, {f2poly.pack(ones): alg.unit})
                assert system.reduce(corner)
    assert hits > 50


def test_fairy_bread_examples():
    assert fairy_bread_check(2, 1, [1, 2])
    for perm in itertools.permutations([1, 2, 3]):
        assert fairy_bread_check(3, 1, perm)
    assert fairy_bread_check(4, 2, [4, 2, 3])


def test_fairy_bread_all_small_inputs():
    for d in range(1, 6):
        for k in range(1, d + 1):
            for perm in itertools.permutations(range(k, d + 1)):
                assert fairy_bread_check(d, k, perm)


def test_fairy_bread_rejects_non_permutations():
    with pytest.raises(InputError):
        fairy_bread_check(3, 1, [1, 1, 3])
    with pytest.raises(InputError):
        fairy_bread_check(3, 4, [])


def test_flag_products_examples():
    for d, dims in [(3, (1,)), (4, (1, 2)), (5, (2, 3))]:
        assert flag_product_checks(d, dims).all()
    assert dual_class_monomial(4, (1, 2)) == [0, 1, 2, 2]


def test_flag_products_all_small_flags():
    for d in range(2, 6):
        alg = flag_algebra(d)
        for k in range(1, d):
            for dims in itertools.combinations(range(1, d), k):
                assert flag_product_checks(d, dims).all()
                assert dual_class_product(d, dims) == alg.monomial(dual_class_monomial(d, dims))


def test_flag_products_reject_bad_dims():
    for dims in [(), (0, 2), (2, 2), (3, 1), (1, 4)]:
        with pytest.raises(InputError):
            flag_product_checks(4, dims)


def test_verdicts_are_deterministic():
    first = [str(certify_unconstrained(e, 2, 1)) for e in small_bundles()]
    again = [str(certify_unconstrained(e, 2, 1)) for e in reversed(list(small_bundles()))]
    assert first == list(reversed(again))


def test_partial_sums_over_complete_flag_match_numeric():
    for d in range(2, 6):
        dims = tuple(range(1, d))
        partial = [direct_sum(*(FlagCanonical(r, dims, d) for r in range(1, i + 1))) for i in range(1, d)]
        for k in range(1, min(d - 1, 2) + 1):
            assert iota_bundles(partial[:k]) == iota_numeric([d] * k)
