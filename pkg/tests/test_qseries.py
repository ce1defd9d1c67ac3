import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twocolor import families as fam
from twocolor import qseries as qs
from twocolor import verify as ver
from twocolor.partitions import enumerate_partitions, to_triple
from twocolor.qseries import MarkerPoly, OrderMismatch, TruncatedSeries

P = MarkerPoly


def q_series(order, ints, t_order=None):
    return TruncatedSeries(order, [P.const(c) for c in ints], t_order)


def q_coeffs(s):
    return [s.coeff(n) for n in range(s.order + 1)]


# -- oracles -----------------------------------------------------------------


def distinct_into_m_parts(limit):
    """counts[n][m] of strict partitions of n into m parts, by filtering all partitions."""
    counts = [Counter() for _ in range(limit + 1)]
    for p in itertools.chain.from_iterable(enumerate_partitions(n) for n in range(limit + 1)):
        if p.is_strict():
            counts[p.weight][len(p)] += 1
    return counts


def bounded_part_counts(limit, biggest):
    return [sum(1 for p in enumerate_partitions(n) if all(v <= biggest for v in p)) for n in range(limit + 1)]


# -- MarkerPoly --------------------------------------------------------------


def test_marker_poly_arithmetic_and_text():
    x, y = P.monomial(x=1), P.monomial(y=1)
    prod = (x + y).mul(x - y)
    assert str(prod) == "-y^2 + x^2"
    assert prod.coeff(x=2) == 1 and prod.coeff(y=2) == -1 and prod.coeff(x=1, y=1) == 0
    assert str(P.monomial(4, x=1, y=1)) == "4*x*y"
    assert str(P()) == "0"
    assert P.monomial(t=3).mul(P.monomial(t=2), t_order=4) == P()


def test_marker_poly_substitute_and_extract():
    p = P({qs.mono(x=2, z=1): 3, qs.mono(z=2): 1})
    assert p.substitute("z", 1) == P({qs.mono(x=2): 3, qs.mono(): 1})
    assert p.substitute("z", 0) == P()
    assert p.extract("z", 1) == P.monomial(3, x=2)


def test_unknown_marker():
    with pytest.raises(KeyError):
        qs.mono(w=1)


# -- arithmetic --------------------------------------------------------------


def test_one_plus_q_times_one_minus_q():
    assert q_coeffs(q_series(2, [1, 1]) * q_series(2, [1, -1])) == [1, 0, -1]


def test_two_marker_product():
    a = TruncatedSeries.one(2) + TruncatedSeries.monomial(2, 1, x=1)
    b = TruncatedSeries.one(2) + TruncatedSeries.monomial(2, 1, y=1)
    s = a * b
    assert s.coeff(1, x=1) == s.coeff(1, y=1) == 1
    assert s.coeff(2, x=1, y=1) == 1
    assert s.coeff(0) == 1


def test_product_over_one_two_three():
    prod = TruncatedSeries.one(6)
    for i in (1, 2, 3):
        prod = prod * (TruncatedSeries.one(6) + TruncatedSeries.monomial(6, i))
    subset_sums = Counter(sum(c) for r in range(4) for c in itertools.combinations((1, 2, 3), r))
    assert q_coeffs(prod) == [subset_sums[n] for n in range(7)] == [1, 1, 1, 2, 1, 1, 1]


def test_truncation_drops_high_terms():
    s = TruncatedSeries.monomial(3, 5)
    assert q_coeffs(s) == [0, 0, 0, 0]
    assert q_coeffs(q_series(3, [1, 1, 1, 1]) * q_series(3, [1, 1, 1, 1])) == [1, 2, 3, 4]


# -- inverses ------------------------------------------------------------------


def test_inverse_geometric():
    assert q_coeffs(qs.series_inverse(q_series(3, [1, -1]))) == [1, 1, 1, 1]


def test_inverse_in_t():
    inv = qs.series_inverse(TruncatedSeries.one(3) - TruncatedSeries.monomial(3, 1, t=1))
    assert [inv.coeff(n, t=n) for n in range(4)] == [1, 1, 1, 1]
    assert inv.coeff(2, t=1) == 0


def test_inverse_of_finite_pochhammer_counts_bounded_partitions():
    inv = qs.series_inverse(qs._qq(4, 3))
    assert q_coeffs(inv) == bounded_part_counts(4, 3) == [1, 1, 2, 3, 4]
    inv = qs.series_inverse(qs._qq(15, 3))
    assert q_coeffs(inv) == bounded_part_counts(15, 3)


def test_non_unit_constant_term():
    with pytest.raises(ValueError):
        qs.series_inverse(q_series(3, [2, 1]))
    with pytest.raises(ValueError):
        qs.series_inverse(q_series(3, [0, 1]))
    # 1 - t is only invertible under t-truncation
    one_minus_t = TruncatedSeries.term(3, 0, P.const(1) - P.monomial(t=1))
    with pytest.raises(ValueError):
        qs.series_inverse(one_minus_t)
    capped = TruncatedSeries.term(3, 0, P.const(1) - P.monomial(t=1), t_order=4)
    inv = qs.series_inverse(capped)
    assert [inv.coeff(0, t=k) for k in range(6)] == [1, 1, 1, 1, 1, 0]


def test_order_mismatch_and_coeff_beyond_order():
    with pytest.raises(OrderMismatch):
        TruncatedSeries.one(3) + TruncatedSeries.one(4)
    with pytest.raises(OrderMismatch):
        TruncatedSeries.one(3) * TruncatedSeries.one(3, t_order=2)
    with pytest.raises(ValueError):
        TruncatedSeries.one(3).coeff(4)
    with pytest.raises(ValueError):
        TruncatedSeries(-1)


# -- ring laws -----------------------------------------------------------------

ORDER = 5
small_poly = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)).map(lambda e: qs.mono(x=e[0], y=e[1])),
    st.integers(-3, 3),
    max_size=3,
).map(P)
series = st.lists(small_poly, min_size=ORDER + 1, max_size=ORDER + 1).map(
    lambda cs: TruncatedSeries(ORDER, cs)
)
unit_series = series.map(lambda s: TruncatedSeries(ORDER, [P.const(1)] + s.coeffs[1:]))


@settings(max_examples=100, deadline=None)
@given(series, series, series)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == TruncatedSeries.zero(ORDER)
    assert a * TruncatedSeries.one(ORDER) == a


@settings(max_examples=100, deadline=None)
@given(unit_series)
def test_inverse_law(s):
    assert s * qs.series_inverse(s) == TruncatedSeries.one(ORDER)


@settings(max_examples=50, deadline=None)
@given(series, series)
def test_substitution_is_a_ring_map(a, b):
    assert (a * b).substitute("x", 1) == a.substitute("x", 1) * b.substitute("x", 1)


# -- Pochhammer --------------------------------------------------------------


def test_empty_pochhammer_is_one():
    assert qs._qq(5, 0) == TruncatedSeries.one(5)


def test_distinct_part_pochhammer():
    s = qs.qpoch(5, c=-1, q_shift=1)
    assert q_coeffs(s) == [1, 1, 1, 2, 2, 3]


def test_two_factor_pochhammer():
    s = qs.qpoch(3, c=-1, q_shift=1, length=2, z=1)
    assert s.coeff(1, z=1) == s.coeff(2, z=1) == s.coeff(3, z=2) == 1
    assert s.coeff(3, z=1) == 0 and s.coeff(0) == 1


def test_pochhammer_step():
    with pytest.raises(ValueError):
        qs.PochhammerSpec(step=0)
    # (q^2; q^2)_inf inverse counts partitions into even parts
    inv = qs.series_inverse(qs.qpoch(10, q_shift=2, step=2))
    evens = [sum(1 for p in enumerate_partitions(n) if all(v % 2 == 0 for v in p)) for n in range(11)]
    assert q_coeffs(inv) == evens


# -- family generating functions -----------------------------------------------


def test_gf_L1_examples():
    s = qs.gf_L1_rhs(20)
    assert s.coeff(7, x=1, y=1) == 4
    assert s.coeff(0) == 1
    assert all(s.coeff(n) == 0 for n in range(1, 21))


def test_gf_A_examples():
    assert qs.gf_A_rhs(20).coeff(7, x=1, y=1) == 4
    assert qs.gf_A_rhs(20) == qs.gf_L1_rhs(20)


def test_gf_A_refined_example():
    s = qs.gf_A_refined_rhs(12)
    # A(7,1,1,1) = {4g+2r+1r, 4r+2g+1r}; 4g+3r has j = 0
    assert s.coeff(7, x=1, y=1, z=1) == 2
    assert s.coeff(7, x=1, y=1) == 2
    assert s.substitute("z", 1) == qs.gf_A_rhs(12)


def test_gf_L2_examples():
    s = qs.gf_L2_rhs(18)
    assert s.coeff(15, x=1, y=2) == 6
    assert s.coeff(0) == 1


def test_gf_L2_at_one_counts_basis_partitions():
    s = qs.gf_L2_rhs(25).substitute("x", 1).substitute("y", 1)
    oracle = [sum(1 for p in enumerate_partitions(n) if fam.is_basis(to_triple(p))) for n in range(26)]
    assert q_coeffs(s) == oracle


@pytest.mark.parametrize("check", [ver.check_gf2, ver.check_gf3, ver.check_gf8, ver.check_gfAref])
def test_family_series_checks_small(check):
    assert check(12).passed


# -- classical identities ------------------------------------------------------


def test_lebesgue():
    left, right = qs.lebesgue_sides(30)
    assert left == right
    counts = distinct_into_m_parts(30)
    z0 = left.substitute("z", 0)
    assert q_coeffs(z0) == [sum(c.values()) for c in counts]


def test_sylvester():
    left, right = qs.sylvester_sides(30)
    assert left == right
    counts = distinct_into_m_parts(30)
    for n in range(31):
        for m in range(9):
            assert left.coeff(n, a=m) == counts[n][m]


def test_qbinomial():
    left, right = qs.qbinomial_sides(20, 6)
    assert left == right
    # a = 1 kills every positive t-power on the left and gives 1 on the right
    assert left.substitute("a", 1) == TruncatedSeries.one(20, 6)
    # the t^1 slice is (1 - a) / (1 - q)
    slice1 = left.extract("t", 1)
    for n in range(21):
        assert slice1.coeff(n) == 1 and slice1.coeff(n, a=1) == -1


def test_first_difference():
    a, b = q_series(3, [1, 2, 3, 4]), q_series(3, [1, 2, 5, 4])
    assert qs.first_difference(a, a) is None
    n, powers, ca, cb = qs.first_difference(a, b)
    assert (n, ca, cb) == (2, 3, 5) and not any(powers.values())


def test_builders_cover_the_cli_names():
    assert set(qs.BUILDERS) >= {"gf2", "gf3", "gf8", "gfAref", "lebesgue-left", "qbinomial-left"}
    assert qs.BUILDERS["gf2"](5).dump().splitlines()[0] == "q^0: 1"
