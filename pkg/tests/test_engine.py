import math
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ucmquad.engine import basis_table, build_rule, compute_weights, degree_of_precision, error_coefficient
from ucmquad.errors import DegreeDetectionError
from ucmquad.moments import LegendreWeight, Uniform
from ucmquad.oracle import monomial_error_coefficient, probe_degree, vandermonde_weights
from ucmquad.polynomial import NodeSet, repeated_factor_indices
from ucmquad.scalar import BigFloatField, Precision

node_lists = st.lists(
    st.fractions(min_value=-3, max_value=3, max_denominator=6), min_size=1, max_size=8, unique=True
)
intervals = st.tuples(
    st.fractions(min_value=-3, max_value=3, max_denominator=5),
    st.fractions(min_value=Fr(1, 5), max_value=4, max_denominator=5),
).map(lambda t: (t[0], t[0] + t[1]))


def rule_on(xs, a, b):
    return NodeSet(xs, (a, b)), Uniform(a, b)


def test_single_node_weight_is_length():
    nodes, mp = rule_on([Fr(7)], Fr(-1, 2), Fr(3))
    assert compute_weights(nodes, mp) == [Fr(7, 2)]


@pytest.mark.parametrize(
    "xs, a, b, weights",
    [
        ([0, 1], 0, 1, [Fr(1, 2), Fr(1, 2)]),
        ([0, 1, 2], 0, 2, [Fr(1, 3), Fr(4, 3), Fr(1, 3)]),
        ([0, -1], 0, 1, [Fr(3, 2), Fr(-1, 2)]),
    ],
)
def test_weights_examples(xs, a, b, weights):
    assert compute_weights(*rule_on(xs, a, b)) == weights


def test_gauss_two_point_weights_bigfloat():
    f = BigFloatField(Precision.from_digits(50))
    r = 1 / f.sqrt(3)
    w = compute_weights(NodeSet([-r, r], (-1, 1), f), LegendreWeight(f))
    assert all(abs(v - 1) < f("1e-45") for v in w)


@pytest.mark.parametrize(
    "xs, a, b, degree, c",
    [
        ([0, 1], 0, 1, 1, Fr(-1, 12)),
        ([0, 1, 2], 0, 2, 3, Fr(-1, 90)),
        ([0, -1], 0, 1, 1, Fr(5, 12)),
        ([1], 0, 2, 1, Fr(1, 3)),
    ],
)
def test_degree_and_error_examples(xs, a, b, degree, c):
    nodes, mp = rule_on(xs, a, b)
    d, i_q = degree_of_precision(nodes, mp)
    assert d == degree
    assert i_q[-1] == c * math.factorial(d + 1)
    assert all(v == 0 for v in i_q[:-1])
    assert error_coefficient(nodes, mp, d) == c


def test_error_coefficient_checks_degree_range():
    nodes, mp = rule_on([0, 1], 0, 1)
    with pytest.raises(ValueError):
        error_coefficient(nodes, mp, 4)


def test_gauss_two_point_error():
    f = BigFloatField(Precision.from_digits(60))
    r = 1 / f.sqrt(3)
    nodes, mp = NodeSet([-r, r], (-1, 1), f), LegendreWeight(f)
    d, _ = degree_of_precision(nodes, mp)
    assert d == 3
    assert abs(error_coefficient(nodes, mp, d) - f(Fr(1, 135))) < f("1e-55")


def test_build_rule_trapezoid():
    rule = build_rule(*rule_on([0, 1], 0, 1))
    assert rule.weights == (Fr(1, 2), Fr(1, 2))
    assert rule.degree == 1 and rule.derivative_order == 2
    assert rule.error_coefficient == Fr(-1, 12)
    assert rule.diag_det == 1
    assert not rule.conditioning_warning


def test_build_rule_midpoint():
    rule = build_rule(*rule_on([1], 0, 2))
    assert rule.weights == (Fr(2),)
    assert (rule.degree, rule.error_coefficient) == (1, Fr(1, 3))


def test_build_rule_gauss_three_point():
    f = BigFloatField(Precision.from_digits(60))
    s = f.sqrt(f(3) / 5)
    rule = build_rule(NodeSet([-s, f(0), s], (-1, 1), f), LegendreWeight(f))
    assert rule.degree == 5
    assert abs(rule.error_coefficient - f(Fr(1, 15750))) < f("1e-55") * f(Fr(1, 15750))
    for w, exact in zip(rule.weights, [Fr(5, 9), Fr(8, 9), Fr(5, 9)]):
        assert abs(w - f(exact)) < f("1e-55")


def test_diag_det_is_product_of_pivots():
    nodes, mp = rule_on([0, 1, 2], 0, 2)
    # phi_1(x_2) * phi_2(x_3) = 1 * (2 * 1)
    assert build_rule(nodes, mp).diag_det == 2
    table = basis_table(nodes)
    assert [table[i][i] for i in range(3)] == [1, 1, 2]


def test_conditioning_warning_for_clustered_nodes():
    f = BigFloatField(Precision.from_digits(40))
    xs = [f(k) / 10**6 for k in range(6)]
    rule = build_rule(NodeSet(xs, (0, 1), f), Uniform(0, 1, f))
    assert rule.conditioning_warning


def test_mixed_fields_rejected():
    f = BigFloatField(Precision(128))
    with pytest.raises(ValueError):
        build_rule(NodeSet([0, 1], (0, 1)), Uniform(0, 1, f))


def test_inconsistent_tolerance_is_reported():
    # a tolerance of 1 declares every extension integral zero
    f = BigFloatField(Precision(128), tol=1)
    with pytest.raises(DegreeDetectionError):
        degree_of_precision(NodeSet([0, 10], (0, 1), f), Uniform(0, 1, f))


@settings(max_examples=60, deadline=None)
@given(node_lists, intervals)
def test_weights_match_vandermonde_oracle(xs, interval):
    nodes, mp = rule_on(xs, *interval)
    assert compute_weights(nodes, mp) == vandermonde_weights(nodes, mp)


@settings(max_examples=60, deadline=None)
@given(node_lists, intervals)
def test_degree_is_exact_and_sharp(xs, interval):
    nodes, mp = rule_on(xs, *interval)
    rule = build_rule(nodes, mp)
    n = len(xs)
    assert n - 1 <= rule.degree <= 2 * n - 1
    assert probe_degree(xs, rule.weights, mp) == rule.degree
    assert rule.error_coefficient == monomial_error_coefficient(xs, rule.weights, mp, rule.degree)
    assert sum(rule.weights) == mp.mass()


@settings(max_examples=40, deadline=None)
@given(node_lists, intervals)
def test_alternative_extension_gives_same_answer(xs, interval):
    nodes, mp = rule_on(xs, *interval)
    d, _ = degree_of_precision(nodes, mp)
    d_alt, _ = degree_of_precision(nodes, mp, repeated_factor_indices)
    assert d == d_alt
    assert error_coefficient(nodes, mp, d) == error_coefficient(nodes, mp, d, repeated_factor_indices)


@settings(max_examples=40, deadline=None)
@given(node_lists, intervals, st.randoms(use_true_random=False))
def test_weights_follow_their_nodes_under_permutation(xs, interval, rnd):
    nodes, mp = rule_on(xs, *interval)
    order = list(range(len(xs)))
    rnd.shuffle(order)
    base = dict(zip(xs, compute_weights(nodes, mp)))
    shuffled = nodes.reordered(order)
    assert dict(zip(shuffled.nodes, compute_weights(shuffled, mp))) == base


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.fractions(min_value=Fr(1, 7), max_value=3, max_denominator=7), max_size=4, unique=True),
    st.booleans(),
    st.fractions(min_value=-2, max_value=2, max_denominator=3),
    st.fractions(min_value=Fr(1, 2), max_value=3, max_denominator=4),
)
def test_symmetric_nodes_give_palindromic_weights(offsets, centre, mid, half):
    xs = sorted([mid - o for o in offsets] + ([mid] if centre or not offsets else []) + [mid + o for o in offsets])
    nodes, mp = rule_on(xs, mid - half, mid + half)
    w = compute_weights(nodes, mp)
    assert w == w[::-1]
