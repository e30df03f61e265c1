"""Tests for the truncated-series core.

Oracles here are deliberately naive: a dynamic-programming partition
counter, schoolbook convolution, and factor-by-factor product expansion.
The fast implementations must agree with them exactly.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qshift.qseries import (
    BeyondOrder,
    EmptySet,
    InvalidExponent,
    NonUnitLeading,
    ResidueOutOfRange,
    Series,
    _mul_packed,
    _mul_schoolbook,
    invert,
    linear_combine,
    mul,
    pochhammer,
    residue_product,
    shift_scale,
)

# ----------------------------------------------------------------------
# oracles
# ----------------------------------------------------------------------


def count_partitions_into(parts, n):
    """Partitions of 0..n into parts from the given set, by direct DP."""
    table = [1] + [0] * n
    for k in sorted(set(parts)):
        for j in range(k, n + 1):
            table[j] += table[j - k]
    return table


def parts_from_residues(residues, modulus, limit):
    keep = {r % modulus for r in residues} | {(-r) % modulus for r in residues}
    return [k for k in range(1, limit + 1) if k % modulus in keep]


def poch_oracle(e, m, sigma, n):
    """(sigma*q^e; q^m)_inf by multiplying factors one at a time."""
    acc = Series.one(n)
    exp = e
    while exp <= n:
        factor = [0] * (n + 1)
        factor[0] = 1
        factor[exp] = -sigma
        acc = mul(acc, Series(0, factor, n))
        exp += m
    return acc


# ----------------------------------------------------------------------
# construction and canonical form
# ----------------------------------------------------------------------


def test_leading_zeros_fold_into_offset():
    s = Series(2, [0, 0, 3, 1], 5)
    assert s.offset == 4
    assert s.coeffs == (3, 1)
    assert s.order == 5


def test_short_coefficients_pad_to_order():
    s = Series(0, [1, 2], 4)
    assert s.coeffs == (1, 2, 0, 0, 0)


def test_long_coefficients_truncate_to_order():
    s = Series(0, [1, 2, 3, 4], 1)
    assert s.coeffs == (1, 2)
    assert s.order == 1


def test_order_below_offset_gives_zero():
    s = Series(5, [1, 2], 3)
    assert s.is_zero()
    assert s.offset == 3 and s.order == 3


def test_all_zero_coefficients_give_zero():
    s = Series(-2, [0, 0, 0], 4)
    assert s.is_zero()
    assert s.valuation() is None


def test_implicit_order_from_coefficients():
    s = Series(3, [1, 0, 5])
    assert s.order == 5
    assert s.coeff(5) == 5


def test_series_is_immutable():
    s = Series.one(3)
    with pytest.raises(AttributeError):
        s.order = 10


# ----------------------------------------------------------------------
# equality up to the common order
# ----------------------------------------------------------------------


def test_equal_up_to_common_order():
    a = Series(0, [1, 2, 3], 2)
    b = Series(0, [1, 2, 3, 9, 9], 4)
    assert a == b
    assert b == a


def test_unequal_within_common_order():
    a = Series(0, [1, 2, 3], 2)
    b = Series(0, [1, 2, 4], 2)
    assert a != b
    assert a.first_difference(b) == 2


def test_zero_equals_zero_of_other_order():
    assert Series.zero(3) == Series.zero(100)


def test_first_difference_none_when_agreeing():
    a = Series(0, [1, 2], 1)
    b = Series(0, [1, 2, 7], 2)
    assert a.first_difference(b) is None


# ----------------------------------------------------------------------
# coefficient access
# ----------------------------------------------------------------------


def test_coeff_below_offset_is_zero():
    s = Series(3, [4, 5], 4)
    assert s.coeff(0) == 0
    assert s.coeff(-10) == 0
    assert s.coeff(3) == 4


def test_coeff_beyond_order_raises():
    s = Series(0, [1], 2)
    with pytest.raises(BeyondOrder):
        s.coeff(3)


def test_truncate_drops_high_terms():
    s = Series(0, [1, 2, 3, 4], 3)
    t = s.truncate(1)
    assert t.order == 1
    assert t.coeffs == (1, 2)
    assert s.truncate(10) is s


# ----------------------------------------------------------------------
# linear combinations, shifts
# ----------------------------------------------------------------------


def test_linear_combine_basic():
    a = Series(0, [1, 1, 1], 2)
    b = Series(1, [2, 2], 2)
    c = linear_combine([(1, a), (-1, b)])
    assert [c.coeff(k) for k in range(3)] == [1, -1, -1]


def test_linear_combine_takes_minimum_order():
    a = Series(0, [1] * 10, 9)
    b = Series(0, [1] * 3, 2)
    assert linear_combine([(1, a), (1, b)]).order == 2


def test_operator_sugar_matches_linear_combine():
    a = Series(0, [1, 2, 3], 2)
    b = Series(0, [5, 0, 1], 2)
    assert a + b == linear_combine([(1, a), (1, b)])
    assert a - b == linear_combine([(1, a), (-1, b)])
    assert (-a) == shift_scale(a, -1, 0)


def test_shift_scale_moves_offset_and_order():
    a = Series(1, [1, 2], 2)
    b = shift_scale(a, -1, 3)
    assert b.offset == 4
    assert b.order == 5
    assert b.coeffs == (-1, -2)


# ----------------------------------------------------------------------
# multiplication
# ----------------------------------------------------------------------


def test_mul_small_example():
    a = Series(0, [1, 1], 5)  # 1 + q
    sq = mul(a, a)
    assert [sq.coeff(k) for k in range(3)] == [1, 2, 1]


def test_mul_offsets_add():
    a = Series(2, [3], 10)
    b = Series(-1, [5], 10)
    c = mul(a, b)
    assert c.offset == 1
    assert c.coeff(1) == 15


def test_mul_order_is_minimum():
    a = Series(0, [1, 1], 3)
    b = Series(0, [1, 1], 7)
    assert mul(a, b).order == 3


def test_mul_by_zero():
    a = Series(0, [1, 2], 5)
    assert mul(a, Series.zero(5)).is_zero()


@given(
    st.lists(st.integers(-9, 9), min_size=1, max_size=14),
    st.lists(st.integers(-9, 9), min_size=1, max_size=14),
    st.integers(-3, 3),
    st.integers(-3, 3),
)
@settings(deadline=None)
def test_mul_matches_dict_convolution(acs, bcs, aoff, boff):
    order = aoff + boff + 6
    a = Series(aoff, acs, aoff + len(acs) - 1)
    b = Series(boff, bcs, boff + len(bcs) - 1)
    got = mul(a, b)
    want = {}
    for i, ac in enumerate(acs):
        for j, bc in enumerate(bcs):
            k = aoff + i + boff + j
            want[k] = want.get(k, 0) + ac * bc
    for k in range(got.offset, got.order + 1):
        assert got.coeff(k) == want.get(k, 0)


@given(
    st.lists(st.integers(-(10**25), 10**25), min_size=1, max_size=40),
    st.lists(st.integers(-(10**25), 10**25), min_size=1, max_size=40),
)
@settings(deadline=None)
def test_packed_convolution_matches_schoolbook(a, b):
    count = len(a) + len(b) - 1
    assert _mul_packed(a, b, count) == _mul_schoolbook(a, b, count)


@st.composite
def nonneg_offset_series(draw):
    offset = draw(st.integers(0, 5))
    cs = draw(st.lists(st.integers(-6, 6), min_size=1, max_size=10))
    pad = draw(st.integers(0, 3))
    return Series(offset, cs, offset + len(cs) - 1 + pad)


@given(nonneg_offset_series(), nonneg_offset_series())
@settings(deadline=None)
def test_mul_commutative(a, b):
    assert mul(a, b) == mul(b, a)


@given(nonneg_offset_series(), nonneg_offset_series(), nonneg_offset_series())
@settings(deadline=None, max_examples=60)
def test_mul_associative(a, b, c):
    left = mul(mul(a, b), c)
    right = mul(a, mul(b, c))
    assert left == right
    assert left.order == right.order


@given(nonneg_offset_series(), nonneg_offset_series(), nonneg_offset_series())
@settings(deadline=None, max_examples=60)
def test_mul_distributes_over_sum(a, b, c):
    assert mul(a, b + c) == mul(a, b) + mul(a, c)


# ----------------------------------------------------------------------
# inversion
# ----------------------------------------------------------------------


@st.composite
def unit_leading_series(draw):
    lead = draw(st.sampled_from([1, -1]))
    rest = draw(st.lists(st.integers(-6, 6), max_size=10))
    offset = draw(st.integers(-3, 5))
    cs = [lead] + rest
    return Series(offset, cs, offset + len(cs) - 1)


@given(unit_leading_series())
@settings(deadline=None)
def test_mul_by_inverse_is_one(a):
    b = invert(a)
    assert b.offset == -a.offset
    assert b.order == a.order - 2 * a.offset
    prod = mul(a, b)
    assert prod == Series.one(prod.order)


def test_invert_geometric():
    a = Series(0, [1, -1], 6)  # 1 - q
    b = invert(a)
    assert [b.coeff(k) for k in range(7)] == [1] * 7


def test_invert_requires_unit_leading():
    with pytest.raises(NonUnitLeading):
        invert(Series(0, [2, 1], 4))
    with pytest.raises(NonUnitLeading):
        invert(Series.zero(4))


def test_invert_negative_leading():
    a = Series(1, [-1, 3], 5)
    prod = mul(a, invert(a))
    assert prod == Series.one(prod.order)


# ----------------------------------------------------------------------
# pochhammer products
# ----------------------------------------------------------------------


def test_euler_product_pentagonal_expansion():
    s = pochhammer(1, 1, 1, 15)
    want = [0] * 16
    for k, sign in ((0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)):
        want[k] = sign
    assert [s.coeff(k) for k in range(16)] == want


def test_pochhammer_beyond_order_is_one():
    assert pochhammer(5, 1, 1, 4) == Series.one(4)


def test_pochhammer_small_negative_sign():
    s = pochhammer(1, 2, -1, 3)  # (1+q)(1+q^3)
    assert [s.coeff(k) for k in range(4)] == [1, 1, 0, 1]


def test_pochhammer_rejects_bad_exponents():
    with pytest.raises(InvalidExponent):
        pochhammer(0, 1, 1, 5)
    with pytest.raises(InvalidExponent):
        pochhammer(1, 0, 1, 5)


@given(
    st.integers(1, 8),
    st.integers(1, 6),
    st.sampled_from([1, -1]),
    st.integers(0, 60),
)
@settings(deadline=None, max_examples=60)
def test_pochhammer_matches_factor_product(e, m, sigma, n):
    assert pochhammer(e, m, sigma, n) == poch_oracle(e, m, sigma, n)


def test_distinct_parts_equal_odd_parts():
    # Euler: prod (1+q^k) = prod 1/(1-q^(2k-1))
    n = 80
    assert pochhammer(1, 1, -1, n) == residue_product({1}, 2, n)


# ----------------------------------------------------------------------
# residue products
# ----------------------------------------------------------------------


def test_odd_part_counts():
    s = residue_product({1}, 2, 8)
    assert [s.coeff(k) for k in range(9)] == [1, 1, 1, 2, 2, 3, 4, 5, 6]


def test_residues_one_mod_three():
    s = residue_product({1}, 3, 6)
    # parts 1, 2, 4, 5, ...
    assert s.coeff(3) == 2  # 1+1+1, 1+2
    assert s.coeff(4) == 4  # 4, 2+2, 2+1+1, 1+1+1+1


def test_residue_product_rejects_empty_set():
    with pytest.raises(EmptySet):
        residue_product(set(), 5, 10)


def test_residue_product_rejects_out_of_range():
    with pytest.raises(ResidueOutOfRange):
        residue_product({3}, 5, 10)
    with pytest.raises(ResidueOutOfRange):
        residue_product({0}, 5, 10)


def test_half_modulus_residue_allowed():
    s = residue_product({2}, 4, 8)
    # parts 2, 6, 10, ... (2 and -2 coincide mod 4)
    assert [s.coeff(k) for k in range(9)] == [1, 0, 1, 0, 1, 0, 2, 0, 2]


@given(st.data())
@settings(deadline=None, max_examples=60)
def test_residue_product_matches_direct_count(data):
    modulus = data.draw(st.integers(2, 24))
    half = modulus // 2
    residues = data.draw(
        st.sets(st.integers(1, half), min_size=1, max_size=half)
    )
    n = data.draw(st.integers(0, 120))
    got = residue_product(residues, modulus, n)
    want = count_partitions_into(parts_from_residues(residues, modulus, n), n)
    assert [got.coeff(k) for k in range(n + 1)] == want


def test_inverse_of_euler_product_counts_all_partitions():
    n = 100
    inv = invert(pochhammer(1, 1, 1, n))
    want = count_partitions_into(range(1, n + 1), n)
    assert [inv.coeff(k) for k in range(n + 1)] == want


def test_large_order_spot_check():
    # parts not divisible by 4, checked at order 1000 against a direct DP
    n = 1000
    got = residue_product({1, 2}, 4, n)
    want = count_partitions_into(parts_from_residues({1, 2}, 4, n), n)
    assert [got.coeff(k) for k in range(n + 1)] == want
