"""Tests for theta atoms, monomials, and the two-variable series.

The independent oracle here is the bilateral sum

    sum over k of c^k * q^(m*k(k-1)/2 + e*k)      c = -1 or +1

computed term by term with a dictionary.  By the triple product it equals
[e:m] * (q^m; q^m)_inf for c = -1 and (e:m) * (q^m; q^m)_inf for c = +1,
for every integer e, which exercises the full normalization including
signs, q-shifts, folding, and the degenerate cases.
"""

import pytest

from math import isqrt

from qshift.qseries import Series, mul, pochhammer, shift_scale
from qshift.theta import (
    BRACKET,
    PAREN,
    Atom,
    DegenerateZero,
    Divergent,
    FMono,
    ThetaMonomial,
    UnsupportedNegativeExponent,
    atom_series,
    atom_str,
    bracket,
    make_monomial,
    monomial_mul,
    monomial_series,
    monomial_str,
    normalize_atom,
    normalize_paren,
    paren,
    paren_to_bracket,
    ramanujan_f_product,
    ramanujan_f_sum,
)


def bilateral_sum_oracle(e, m, c, n):
    """sum_k c^k q^(m k(k-1)/2 + e k) as a Series of order n."""
    acc = {}
    bound = isqrt(2 * n // m + 4) + (2 * abs(e) + m) // m + 4
    for k in range(-bound, bound + 1):
        exp = m * k * (k - 1) // 2 + e * k
        if exp > n:
            continue
        acc[exp] = acc.get(exp, 0) + (c if k % 2 else 1)
    lo = min(acc)
    return Series(lo, [acc.get(k, 0) for k in range(lo, n + 1)], n)


# ----------------------------------------------------------------------
# normalization: hand-checked table
# ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "e,m,want",
    [
        (3, 10, (1, 0, 3)),
        (7, 10, (1, 0, 3)),
        (13, 10, (-1, -3, 3)),
        (-3, 10, (-1, -3, 3)),
        (5, 10, (1, 0, 5)),
        (1, 2, (1, 0, 1)),
        (23, 10, (1, -16, 3)),
        (-13, 10, (1, -16, 3)),
    ],
)
def test_normalize_atom_table(e, m, want):
    assert normalize_atom(e, m) == want


def test_normalize_atom_degenerate():
    for e in (0, 10, -10, 30):
        with pytest.raises(DegenerateZero):
            normalize_atom(e, 10)
    with pytest.raises(DegenerateZero):
        normalize_atom(5, 1)


def test_normalize_paren_allows_zero_residue():
    assert normalize_paren(0, 7) == (0, 0)
    assert normalize_paren(7, 7) == (0, 0)  # (m:m) = q^0 (0:m)
    assert normalize_paren(14, 7) == (-7, 0)
    assert normalize_paren(13, 10) == (-3, 3)


def test_bracket_and_paren_wrappers():
    s, t, a = bracket(13, 10)
    assert (s, t) == (-1, -3) and a == Atom(3, 10, BRACKET)
    s, t, a = paren(13, 10)
    assert (s, t) == (1, -3) and a == Atom(3, 10, PAREN)


# ----------------------------------------------------------------------
# normalization: sum-oracle grid
# ----------------------------------------------------------------------


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8, 11, 12])
def test_bracket_normalization_against_sum(m):
    n = 5 * m
    qm = pochhammer(m, m, 1, n)
    for e in range(-3 * m, 3 * m + 1):
        want = bilateral_sum_oracle(e, m, -1, n)
        if e % m == 0:
            assert want == Series.zero(n)
            with pytest.raises(DegenerateZero):
                normalize_atom(e, m)
            continue
        sign, qshift, r = normalize_atom(e, m)
        inner = mul(atom_series(r, m, BRACKET, n - qshift), qm.truncate(n - qshift))
        assert shift_scale(inner, sign, qshift) == want, (e, m)


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8, 11, 12])
def test_paren_normalization_against_sum(m):
    n = 5 * m
    qm = pochhammer(m, m, 1, n)
    for e in range(-3 * m, 3 * m + 1):
        want = bilateral_sum_oracle(e, m, 1, n)
        qshift, r = normalize_paren(e, m)
        inner = mul(atom_series(r, m, PAREN, n - qshift), qm.truncate(n - qshift))
        assert shift_scale(inner, 1, qshift) == want, (e, m)


def test_paren_zero_residue_series():
    # (0:3) = 2(-q^3; q^3)^2 = 2 + 4q^3 + 6q^6 + ...
    s = atom_series(0, 3, PAREN, 6)
    assert [s.coeff(k) for k in (0, 3, 6)] == [2, 4, 6]


def test_atom_series_rejects_noncanonical():
    with pytest.raises(ValueError):
        atom_series(7, 10, BRACKET, 20)
    with pytest.raises(ValueError):
        atom_series(0, 10, BRACKET, 20)
    with pytest.raises(ValueError):
        atom_series(6, 10, PAREN, 20)


# ----------------------------------------------------------------------
# monomials
# ----------------------------------------------------------------------


def test_make_monomial_cancels_common_atoms():
    a = Atom(1, 6, BRACKET)
    b = Atom(2, 6, BRACKET)
    c = Atom(1, 7, BRACKET)
    mono = make_monomial(1, 0, num=(a, b), den=(b, c))
    assert mono.num == (a,)
    assert mono.den == (c,)


def test_make_monomial_keeps_multiplicity():
    a = Atom(2, 9, BRACKET)
    mono = make_monomial(-1, 2, num=(a, a, a), den=(a,))
    assert mono.num == (a, a)
    assert mono.den == ()


def test_monomial_mul_combines():
    a = Atom(1, 6, BRACKET)
    b = Atom(2, 6, BRACKET)
    m1 = make_monomial(-1, 2, num=(a,))
    m2 = make_monomial(-1, 3, num=(b,), den=(a,))
    prod = monomial_mul(m1, m2)
    assert prod == make_monomial(1, 5, num=(b,))


def test_monomial_series_sign_and_shift():
    a = Atom(1, 4, BRACKET)
    plain = monomial_series(make_monomial(1, 0, num=(a,)), 10)
    shifted = monomial_series(make_monomial(-1, 3, num=(a,)), 13)
    assert shifted == shift_scale(plain, -1, 3)


def test_monomial_series_ratio_cancels_numerically():
    a = Atom(1, 6, BRACKET)
    b = Atom(2, 6, BRACKET)
    mono = ThetaMonomial(1, 0, num=(a, b), den=(b,))  # bypass cancellation
    assert monomial_series(mono, 40) == atom_series(1, 6, BRACKET, 40)


def test_empty_monomial_is_signed_power():
    assert monomial_series(make_monomial(-1, 2, (), ()), 8) == Series(2, [-1], 8)


# ----------------------------------------------------------------------
# paren -> bracket rewrite
# ----------------------------------------------------------------------


def test_paren_to_bracket_small_case():
    # (1:3) = [2:6] / ([1:6][4:6]); after folding [4:6] = [2:6] this is 1/[1:6]
    mono = paren_to_bracket(1, 3)
    assert mono.sign == 1 and mono.qexp == 0
    assert mono.num == ()
    assert mono.den == (Atom(1, 6, BRACKET),)


@pytest.mark.parametrize("m", [2, 3, 5, 9])
def test_paren_to_bracket_matches_paren_series(m):
    n = 6 * m
    for e in range(-2 * m, 2 * m + 1):
        if e % m == 0:
            with pytest.raises(DegenerateZero):
                paren_to_bracket(e, m)
            continue
        qshift, r = normalize_paren(e, m)
        want = shift_scale(atom_series(r, m, PAREN, n - qshift), 1, qshift)
        assert monomial_series(paren_to_bracket(e, m), n) == want, (e, m)


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------


def test_atom_and_monomial_rendering():
    a = Atom(3, 42, BRACKET)
    p = Atom(0, 3, PAREN)
    assert atom_str(a) == "[3:42]"
    assert atom_str(p) == "(0:3)"
    mono = make_monomial(-1, 3, num=(a,), den=(p,))
    assert monomial_str(mono) == "-q^3 [3:42] / (0:3)"
    assert monomial_str(make_monomial(1, 0, (), ())) == "1"


# ----------------------------------------------------------------------
# two-variable theta series
# ----------------------------------------------------------------------


def test_f_sum_pentagonal():
    # f(-q, -q^2) is Euler's product
    got = ramanujan_f_sum(FMono(-1, 1), FMono(-1, 2), 60)
    assert got == pochhammer(1, 1, 1, 60)


def test_f_sum_matches_bilateral_oracle():
    # f(-q^e, -q^(m-e)) has the bracket-type bilateral expansion
    for m, e in [(5, 2), (7, 3), (9, 4)]:
        got = ramanujan_f_sum(FMono(-1, e), FMono(-1, m - e), 80)
        assert got == bilateral_sum_oracle(e, m, -1, 80)


@pytest.mark.parametrize("sa", [1, -1])
@pytest.mark.parametrize("sb", [1, -1])
def test_f_sum_equals_f_product(sa, sb):
    n = 120
    for ea in range(1, 7):
        for eb in range(1, 7):
            a, b = FMono(sa, ea), FMono(sb, eb)
            assert ramanujan_f_sum(a, b, n) == ramanujan_f_product(a, b, n), (a, b)


def test_f_sum_allows_one_nonpositive_exponent():
    # converges whenever e_a + e_b >= 1
    # exponent is k^2 - 2k: minimum -1 at k=1, and k=0, k=2 both land on q^0
    got = ramanujan_f_sum(FMono(1, -1), FMono(1, 3), 30)
    assert got.offset == -1
    assert got.coeff(-1) == 1
    assert got.coeff(0) == 2


def test_f_sum_divergent():
    with pytest.raises(Divergent):
        ramanujan_f_sum(FMono(1, 0), FMono(1, 0), 10)
    with pytest.raises(Divergent):
        ramanujan_f_sum(FMono(1, 5), FMono(1, -5), 10)


def test_f_product_needs_positive_exponents():
    with pytest.raises(UnsupportedNegativeExponent):
        ramanujan_f_product(FMono(1, 0), FMono(1, 3), 10)
