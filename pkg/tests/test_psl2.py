"""Tests for the 2x2 matrix families and their automorphisms."""

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np
import pytest

from ctcsa.errors import (
    NoMatrixLabels,
    NonPrime,
    NotCharTwo,
    NotNormal,
    PreconditionFailed,
)
from ctcsa.fields import make_field
from ctcsa.groups import (
    SubgroupSet,
    alternating_group,
    center,
    close_generators,
    cyclic_group,
    dihedral_group,
    is_isomorphic,
    symmetric_group,
)
from ctcsa.psl2 import (
    GroupAutomorphism,
    Mat2,
    ProjMat2,
    char0_ct_counterexample,
    commutes,
    compose,
    conjugation_kernel,
    equal_automorphisms,
    frobenius_automorphism,
    gaussian_tuv_example,
    inner_automorphism,
    matrix_index,
    psl2_group,
    psl2_order,
    scalar_centralizer_check,
    sl2_group,
)


@lru_cache(maxsize=None)
def _psl2(q):
    return psl2_group(q)


@lru_cache(maxsize=None)
def _sl2(q):
    return sl2_group(q)


# ---------------------------------------------------------------------------
# Mat2 / ProjMat2 arithmetic


def test_mat2_identity_and_inverse_gf5():
    spec = make_field("finite", 5)
    eye = Mat2.identity(spec)
    m = Mat2.of(spec, [[2, 1], [1, 1]])
    assert m * m.inverse() == eye
    assert m.inverse() * m == eye
    assert (m * m).det() == m.det() * m.det()


def test_mat2_det_multiplicative_exhaustive_gf3():
    spec = make_field("finite", 3)
    mats = [
        Mat2.of(spec, [[a, b], [c, d]])
        for a in range(3)
        for b in range(3)
        for c in range(3)
        for d in range(3)
    ]
    rng = np.random.default_rng(11)
    for _ in range(300):
        m1, m2 = (mats[i] for i in rng.integers(0, len(mats), size=2))
        assert (m1 * m2).det() == m1.det() * m2.det()


def test_mat2_label_round_trip_gaussian():
    qi = make_field("gaussian-rational")
    m = Mat2(qi.i(), qi.from_fraction(-3, 5), qi.zero(), qi.from_int(2))
    assert m.label() == "[[i,-3/5],[0,2]]"


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8])
def test_projmat2_canonical_independent_of_sign(q):
    group = _sl2(q)
    mats = group.matrices
    rng = np.random.default_rng(q)
    for _ in range(1000):
        i, j = rng.integers(0, group.n, size=2)
        m = mats[i] * mats[j]
        assert ProjMat2.of(m) == ProjMat2.of(-m)
        rep = ProjMat2.of(m).rep
        assert rep == m or rep == -m


def test_projmat2_canonical_picks_smaller_first_entry():
    spec = make_field("finite", 5)
    m = Mat2.of(spec, [[0, 3], [3, 1]])  # first nonzero is 3, -3 = 2 < 3
    assert ProjMat2.of(m).rep == -m
    assert ProjMat2.of(-m).rep == -m


def test_projmat2_label_sign_prefix():
    assert _psl2(5).labels[1].startswith("±")
    assert not _psl2(4).labels[1].startswith("±")


def test_projective_commutes_up_to_sign():
    qi = make_field("gaussian-rational")
    a = ProjMat2.of(Mat2(-qi.i(), qi.zero(), qi.zero(), qi.i()))
    b = ProjMat2.of(Mat2(qi.zero(), qi.one(), -qi.one(), qi.zero()))
    assert commutes(a, b)
    assert a.rep * b.rep == -(b.rep * a.rep)  # strict anticommutation underneath


# ---------------------------------------------------------------------------
# group construction and orders


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13])
def test_psl2_order_formula(q):
    assert _psl2(q).n == psl2_order(q) == q * (q * q - 1) // gcd(2, q - 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_sl2_order(q):
    assert _sl2(q).n == q * (q * q - 1)


@pytest.mark.parametrize("q", [2, 4, 8])
def test_char_two_psl_equals_sl(q):
    assert (_psl2(q).table == _sl2(q).table).all()


def test_sl2_center_is_plus_minus_identity():
    assert center(_sl2(3)).size == 2
    assert center(_sl2(5)).size == 2
    assert center(_sl2(4)).size == 1
    assert _sl2(5).n // center(_sl2(5)).size == _psl2(5).n


def test_extension_field_needs_basis_transvections():
    # over GF(4) the two integer transvections only reach the GF(2) subgroup
    spec = make_field("finite", 2, 2)
    one, zero = spec.one(), spec.zero()
    prime_only = close_generators(
        [Mat2(one, one, zero, one), Mat2(one, zero, one, one)],
        lambda x, y: x * y,
        lambda x: x.inverse(),
        provenance="sl2-prime-subfield",
    )
    assert prime_only.n == 6  # SL(2,2), not SL(2,4)
    assert _sl2(4).n == 60


def test_small_psl2_isomorphism_types():
    assert is_isomorphic(_psl2(2), symmetric_group(3))
    assert is_isomorphic(_psl2(3), alternating_group(4))
    assert is_isomorphic(_psl2(4), alternating_group(5))
    assert is_isomorphic(_psl2(5), alternating_group(5))


def test_non_prime_power_rejected():
    with pytest.raises(NonPrime):
        sl2_group(6)
    with pytest.raises(NonPrime):
        psl2_group(12)
    with pytest.raises(NonPrime):
        psl2_group(1)


def test_matrix_index_round_trip():
    group = _psl2(5)
    for i in (0, 1, group.n // 2, group.n - 1):
        assert matrix_index(group, group.matrices[i]) == i


def test_matrix_index_accepts_plain_mat_for_projective_group():
    group = _psl2(5)
    rep = group.matrices[7].rep
    assert matrix_index(group, rep) == 7
    assert matrix_index(group, -rep) == 7


def test_matrix_index_requires_matrix_group():
    with pytest.raises(NoMatrixLabels):
        matrix_index(cyclic_group(6), None)


# ---------------------------------------------------------------------------
# characteristic-0 witnesses


def test_gaussian_abc_witness_exact():
    qi = make_field("gaussian-rational")
    a, b, c = char0_ct_counterexample(qi, qi.i(), qi.zero())
    one = qi.one()
    assert a.rep.det() == one and b.rep.det() == one and c.rep.det() == one
    assert commutes(a, b) and commutes(b, c)
    assert not commutes(a, c)
    # B and C are both rotations, so they commute strictly, not just up to sign
    assert b.rep * c.rep == c.rep * b.rep


def test_gaussian_abc_rejects_wrong_xy():
    qi = make_field("gaussian-rational")
    with pytest.raises(PreconditionFailed):
        char0_ct_counterexample(qi, qi.one(), qi.zero())


def test_rational_field_has_no_witness_pair():
    qq = make_field("rational")
    with pytest.raises(PreconditionFailed):
        char0_ct_counterexample(qq, qq.from_int(2), qq.from_int(3))
    # bounded scan: no rational pair with small numerators and denominators works
    vals = [
        Fraction(n, d) for d in range(1, 8) for n in range(-12, 13) if gcd(n, d) == 1
    ]
    assert all(x * x + y * y != -1 for x in vals for y in vals)


def test_rational_field_rejects_foreign_scalars():
    qq = make_field("rational")
    qi = make_field("gaussian-rational")
    with pytest.raises(PreconditionFailed):
        char0_ct_counterexample(qq, qi.i(), qi.zero())


def test_gaussian_tuv_witness():
    t, u, v = gaussian_tuv_example()
    assert commutes(u, t) and commutes(u, v)
    assert not commutes(t, v)
    # U anticommutes with T strictly and commutes with V strictly
    assert u.rep * t.rep == -(t.rep * u.rep)
    assert u.rep * v.rep == v.rep * u.rep


# ---------------------------------------------------------------------------
# automorphisms


def test_inner_automorphism_matches_conjugation():
    group = symmetric_group(4)
    phi = inner_automorphism(group, 5)
    for x in range(group.n):
        assert phi(x) == group.conjugate(5, x)


def test_automorphism_rejects_non_bijection():
    group = cyclic_group(5)
    with pytest.raises(PreconditionFailed):
        GroupAutomorphism(group, np.zeros(group.n, dtype=np.int32), "bad")


def test_automorphism_rejects_table_violation():
    group = symmetric_group(3)
    image = np.arange(group.n, dtype=np.int32)
    image[[1, 2]] = image[[2, 1]]  # swaps a transposition with a 3-cycle
    with pytest.raises(PreconditionFailed):
        GroupAutomorphism(group, image, "bad")


def test_frobenius_requires_matrices_and_char_two():
    with pytest.raises(NoMatrixLabels):
        frobenius_automorphism(cyclic_group(4))
    with pytest.raises(NotCharTwo):
        frobenius_automorphism(_sl2(3))


def test_frobenius_order_matches_field_degree():
    tau4 = frobenius_automorphism(_sl2(4))
    assert not tau4.is_identity()
    assert compose(tau4, tau4).is_identity()

    tau8 = frobenius_automorphism(_sl2(8))
    assert not tau8.is_identity()
    assert not compose(tau8, tau8).is_identity()
    assert compose(tau8, compose(tau8, tau8)).is_identity()

    tau2 = frobenius_automorphism(_sl2(2))
    assert tau2.is_identity()


def test_frobenius_commutes_with_integer_transvection_inners():
    group = _sl2(4)
    spec = group.field_spec
    one, zero = spec.one(), spec.zero()
    alpha = inner_automorphism(group, matrix_index(group, Mat2(one, one, zero, one)))
    beta = inner_automorphism(group, matrix_index(group, Mat2(one, zero, one, one)))
    tau = frobenius_automorphism(group)
    assert equal_automorphisms(compose(alpha, tau), compose(tau, alpha))
    assert equal_automorphisms(compose(beta, tau), compose(tau, beta))
    assert not equal_automorphisms(compose(alpha, beta), compose(beta, alpha))


def test_frobenius_on_projective_group():
    group = _psl2(4)
    tau = frobenius_automorphism(group)
    assert not tau.is_identity()
    assert compose(tau, tau).is_identity()


def test_compose_rejects_mixed_parents():
    f = inner_automorphism(symmetric_group(3), 1)
    g = inner_automorphism(symmetric_group(4), 1)
    with pytest.raises(PreconditionFailed):
        compose(f, g)


# ---------------------------------------------------------------------------
# conjugation kernels


def test_conjugation_kernel_on_whole_group_is_center():
    for group in (dihedral_group(4), symmetric_group(4), _psl2(4)):
        ker = conjugation_kernel(group, SubgroupSet(group, np.arange(group.n)))
        assert ker.members == center(group).members


def test_conjugation_kernel_trivial_on_simple_psl24():
    group = _psl2(4)
    ker = conjugation_kernel(group, SubgroupSet(group, np.arange(group.n)))
    assert ker.size == 1


def test_conjugation_kernel_requires_normal():
    group = symmetric_group(3)
    sub = SubgroupSet(group, [0, 1])  # a transposition's span, not normal
    with pytest.raises(NotNormal):
        conjugation_kernel(group, sub)


def test_conjugation_kernel_of_v4_in_s4():
    group = symmetric_group(4)
    v4 = next(
        s
        for s in _normal_subgroup_candidates(group)
        if s.size == 4
    )
    ker = conjugation_kernel(group, v4)
    # acting trivially on V4 means centralizing it; in S4 that is V4 itself
    assert ker.members == v4.members


def _normal_subgroup_candidates(group):
    from ctcsa.groups import normal_subgroups

    return normal_subgroups(group)


# ---------------------------------------------------------------------------
# scalar centralizer scan


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_scalar_centralizer_forced(q):
    assert scalar_centralizer_check(q)
