import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from deskfair.generators import gen_case_study, gen_triangle
from deskfair.instance import DimensionMismatch, KeepVector
from deskfair.metrics import (
    NonBinaryKeepVector,
    cost,
    evaluate,
    format_rational,
    is_feasible,
    is_ideal,
    parse_rational,
    rational_decimal,
    zeta_group,
    zeta_ind,
)

from conftest import instances_with_keep, random_feasible_keep, random_instance


def keep_all_but(inst, *paper_ids):
    drop = set(paper_ids)
    return KeepVector.binary(0 if p.id in drop else 1 for p in inst.papers)


def test_cost_case_study(cvpr26):
    reject_last = keep_all_but(cvpr26, "p26")
    assert cost(cvpr26, reject_last, 1) == 1
    assert cost(cvpr26, reject_last, 0) == Fraction(1, 26)
    reject_first = keep_all_but(cvpr26, "p1")
    assert cost(cvpr26, reject_first, 0) == Fraction(1, 26)
    assert cost(cvpr26, reject_first, 1) == 0


def test_cost_keep_all_is_zero(cvpr26, triangle):
    for inst in (cvpr26, triangle):
        full = KeepVector.binary([1] * inst.m)
        assert all(cost(inst, full, i) == 0 for i in range(inst.n))


def test_zeta_ind_case_study(cvpr26):
    assert zeta_ind(cvpr26, keep_all_but(cvpr26, "p26")) == 1
    assert zeta_ind(cvpr26, keep_all_but(cvpr26, "p1")) == Fraction(1, 26)


def test_zeta_ind_appc1_case():
    inst = gen_case_study("appc1")
    assert zeta_ind(inst, keep_all_but(inst, "p1", "p2")) == Fraction(1, 2)


def test_zeta_group_case_study(cvpr26):
    assert zeta_group(cvpr26, keep_all_but(cvpr26, "p1")) == Fraction(1, 52)
    assert zeta_group(cvpr26, keep_all_but(cvpr26, "p26")) == Fraction(27, 52)


def test_zeta_group_appc1_case():
    inst = gen_case_study("appc1")
    assert zeta_group(inst, keep_all_but(inst, "p1", "p2")) == Fraction(1, 6)


def test_feasibility_triangle(triangle):
    assert not is_feasible(triangle, KeepVector.binary([1, 1, 1]))
    assert is_feasible(triangle, KeepVector.binary([1, 0, 0]))
    assert is_feasible(triangle, KeepVector.binary([0, 0, 0]))


def test_ideal_case_study(cvpr26):
    assert is_ideal(cvpr26, keep_all_but(cvpr26, "p1"))
    assert not is_ideal(cvpr26, keep_all_but(cvpr26, "p26"))


def test_ideal_triangle_never(triangle):
    for mask in range(8):
        keep = KeepVector.binary((mask >> j) & 1 for j in range(3))
        assert not is_ideal(triangle, keep)


def test_ideal_trivially_when_under_cap():
    inst = random_instance(3)
    roomy = inst.with_cap(inst.m)
    assert is_ideal(roomy, KeepVector.binary([1] * roomy.m))


def test_rejects_fractional_and_mismatched(triangle):
    with pytest.raises(NonBinaryKeepVector):
        zeta_ind(triangle, KeepVector.fractional([0.5, 0.5, 0.5]))
    with pytest.raises(DimensionMismatch):
        zeta_group(triangle, KeepVector.binary([1, 0]))


@given(instances_with_keep())
@settings(max_examples=200)
def test_cost_bounds_and_metric_order(pair):
    inst, keep = pair
    costs = [cost(inst, keep, i) for i in range(inst.n)]
    assert all(0 <= c <= 1 for c in costs)
    assert zeta_group(inst, keep) <= zeta_ind(inst, keep)


@given(instances_with_keep())
@settings(max_examples=200)
def test_cost_antitone_in_keep_set(pair):
    inst, keep = pair
    rejected = keep.rejected_indices()
    if not rejected:
        return
    wider = list(keep.values)
    wider[rejected[0]] = 1
    wider = KeepVector.binary(wider)
    for i in range(inst.n):
        assert cost(inst, wider, i) <= cost(inst, keep, i)


@given(instances_with_keep())
@settings(max_examples=200)
def test_ideal_implies_feasible(pair):
    inst, keep = pair
    if is_ideal(inst, keep):
        assert is_feasible(inst, keep)


def test_metric_order_on_repaired_random_pairs():
    rng = random.Random(0)
    for seed in range(300):
        inst = random_instance(seed)
        keep = random_feasible_keep(inst, rng)
        assert is_feasible(inst, keep)
        assert zeta_group(inst, keep) <= zeta_ind(inst, keep)


def test_report_consistency(cvpr26):
    rep = evaluate(cvpr26, keep_all_but(cvpr26, "p1"))
    assert rep.zeta_ind == max(rep.per_author_cost)
    assert rep.zeta_group == Fraction(sum(rep.per_author_cost), cvpr26.n)
    assert rep.feasible and rep.ideal
    assert rep.kept_counts == (25, 1)


def test_rationals_in_lowest_terms():
    inst = gen_triangle()
    rep = evaluate(inst, KeepVector.binary([1, 0, 0]))
    for c in rep.per_author_cost + (rep.zeta_ind, rep.zeta_group):
        assert math.gcd(c.numerator, c.denominator) == 1
        assert c.denominator > 0


def test_rational_formatting_round_trip():
    for f in (Fraction(27, 52), Fraction(0), Fraction(1), Fraction(51, 676)):
        assert parse_rational(format_rational(f)) == f


def test_rational_decimal_half_even_12_digits():
    assert rational_decimal(Fraction(1, 3)) == "0.333333333333"
    assert rational_decimal(Fraction(2, 3)) == "0.666666666667"
    assert rational_decimal(Fraction(27, 52)) == "0.519230769231"
    # exact half at the 12th significant digit rounds to even
    assert rational_decimal(Fraction(1234567890125, 10**13)) == "0.123456789012"
