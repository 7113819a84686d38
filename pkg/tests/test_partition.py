import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from revcousin.bairefun import clb1_sqrt2_over_2, dyadic_cex
from revcousin.codings import stern_brocot_index, stern_brocot_rational
from revcousin.contfun import Linear, NotAvailable, RuleCode, WHOLE, const, spike
from revcousin.cousin import find_partition
from revcousin.intervals import IntervalR, IntervalUI
from revcousin.partition import (CHI_Q, SQRT2_OVER_2, UNKNOWN, VERIFIED, FinderFailed,
                                 GaugeDomainError, IrrTag, PartitionError, RatTag, Refuted,
                                 constant_gauge, dirichlet_gauge, gauge_integrate,
                                 irr_tag_from_name, is_delta_fine, mk_partition,
                                 partition_from_json, riemann_integrate, riemann_sum,
                                 uniform_partition)

F = Fraction
HALF = F(1, 2)


def test_mk_partition():
    P = mk_partition([0, 1], [HALF])
    assert P.size == 1
    with pytest.raises(PartitionError):
        mk_partition([0, 1], [0])
    with pytest.raises(PartitionError):
        mk_partition([F(1, 8), 1], [HALF])
    with pytest.raises(PartitionError):
        mk_partition([0, HALF, 1], [F(1, 4), F(1, 4)])
    assert mk_partition([0, 1], [SQRT2_OVER_2]).tags[0].name == "sqrt2/2"


def test_surd_tags():
    t = irr_tag_from_name("1/3+1/5*sqrt(3)")
    assert t.sign_minus(F(2, 3)) > 0 and t.sign_minus(F(7, 10)) < 0
    assert SQRT2_OVER_2.sign_minus(F(707, 1000)) > 0
    assert SQRT2_OVER_2.sign_minus(F(708, 1000)) < 0
    with pytest.raises(ValueError):
        IrrTag(0, 1, 4)


def test_json_roundtrip():
    P = mk_partition([0, F(1, 4), 1], [F(1, 8), SQRT2_OVER_2])
    text = P.to_json()
    obj = json.loads(text)
    assert obj == {"points": ["0/1", "1/4", "1/1"],
                   "tags": [{"kind": "rat", "value": "1/8"}, {"kind": "irr", "name": "sqrt2/2"}]}
    assert partition_from_json(text) == P
    assert text.endswith("}\n")


def test_riemann_sums():
    rng = random.Random(8)
    for n in (1, 3, 8):
        assert riemann_sum(const(1), uniform_partition(n)) == 1
        assert riemann_sum(CHI_Q, uniform_partition(n)) == 1
        assert riemann_sum(CHI_Q, uniform_partition(n, "irr")) == 0
    assert riemann_sum(Linear(1, 0), uniform_partition(8)) == HALF
    pts = sorted({F(rng.randint(1, 99), 100) for _ in range(10)})
    pts = [F(0)] + pts + [F(1)]
    P = mk_partition(pts, [(a + b) / 2 for a, b in zip(pts, pts[1:])])
    assert riemann_sum(Linear(2, 1), P) == 2


def test_riemann_sum_refinement_additivity():
    # splitting a rational-tagged block into two rational-tagged halves keeps RS(chi_Q)
    rng = random.Random(9)
    for _ in range(30):
        pts = sorted({F(rng.randint(1, 63), 64) for _ in range(5)})
        pts = [F(0)] + pts + [F(1)]
        tags = [RatTag((a + b) / 2) if rng.random() < .5 else SQRT2_OVER_2.scaled_into(a, b)
                for a, b in zip(pts, pts[1:])]
        P = mk_partition(pts, tags)
        j = rng.randrange(P.size)
        a, t, b = P.blocks()[j]
        if isinstance(t, RatTag):
            c = t.value
            m1, m2 = (a + c) / 2, (c + b) / 2
            Q = mk_partition(pts[:j + 1] + [c] + pts[j + 1:], list(tags[:j]) + [m1, m2] + list(tags[j + 1:]))
            assert riemann_sum(CHI_Q, Q) == riemann_sum(CHI_Q, P)


def test_fineness_examples():
    assert is_delta_fine(const(1), mk_partition([0, 1], [HALF])) == VERIFIED
    assert is_delta_fine(dirichlet_gauge(F(1, 8)), mk_partition([0, 1], [SQRT2_OVER_2])) == VERIFIED
    assert is_delta_fine(dyadic_cex(), mk_partition([0, 1], [HALF])) == Refuted(0)
    assert is_delta_fine(dyadic_cex(), mk_partition([0, 1], [F(1, 3)])) == VERIFIED
    # closed inequalities: delta exactly the half-block is still fine
    assert is_delta_fine(constant_gauge(F(1, 4)), uniform_partition(2)) == VERIFIED
    assert is_delta_fine(constant_gauge(F(1, 4) - F(1, 10**6)), uniform_partition(2)) == Refuted(0)


def test_least_refuted_index():
    P = uniform_partition(8)
    assert is_delta_fine(constant_gauge(F(1, 100)), P) == Refuted(0)
    assert is_delta_fine(clb1_sqrt2_over_2(), P) == Refuted(5)


def test_unknown_when_undecidable():
    # a code that never localises beyond (-1, 2): no verdict either way
    vague = RuleCode(lambda U, V: V.p < -1 and V.q > 2, (WHOLE, IntervalR(-2, 3)))
    assert is_delta_fine(vague, mk_partition([0, 1], [HALF]), budget=40) == UNKNOWN


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=F(1, 64), max_value=F(63, 64), max_denominator=64),
                min_size=0, max_size=6, unique=True), st.integers(2, 40))
def test_fineness_verdicts_monotone(cuts, b):
    pts = [F(0)] + sorted(cuts) + [F(1)]
    P = mk_partition(pts, [(x + y) / 2 for x, y in zip(pts, pts[1:])])
    g = spike(IntervalUI(-1, 2))
    v1, v2 = is_delta_fine(g, P, b), is_delta_fine(g, P, b + 20)
    if v1 != UNKNOWN:
        assert v2 == v1


def test_riemann_integrate():
    assert riemann_integrate(Linear(1, 0), 8) == (HALF, F(1, 256))
    assert riemann_integrate(const(F(2, 3)), 4)[0] == F(2, 3)
    est, err = riemann_integrate(spike(IntervalUI(0, 1)), 10)
    assert abs(est - F(1, 4)) <= err <= F(1, 1024)
    with pytest.raises(NotAvailable):
        riemann_integrate(RuleCode(lambda U, V: True, (WHOLE, IntervalR(0, 1))), 3)


def test_dirichlet_gauge_values():
    g = dirichlet_gauge(F(1, 4))
    assert g.at_tag(RatTag(stern_brocot_rational(0))) == F(1, 16)
    assert g.at_tag(SQRT2_OVER_2) == 1
    assert g.at_tag(RatTag(HALF)) == F(1, 4) * F(1, 16)
    with pytest.raises(GaugeDomainError):
        g.at_tag(RatTag(F(1, 1000)))


def test_dirichlet_chain_on_certified_partitions():
    rng = random.Random(10)
    eps = F(1, 4)
    g = dirichlet_gauge(eps)
    hits = 0
    for _ in range(300):
        # one rational tag at a point with tiny gauge value inside an irrational-tagged cover
        q = stern_brocot_rational(rng.randint(0, 200))
        if not 0 < q < 1:
            continue
        r = g.at_tag(RatTag(q))
        a, b = q - r * F(rng.randint(1, 10), 10), q + r * F(rng.randint(1, 10), 10)
        P = mk_partition([0, a, b, 1], [SQRT2_OVER_2.scaled_into(0, a), q, SQRT2_OVER_2.scaled_into(b, 1)])
        if is_delta_fine(g, P) == VERIFIED:
            hits += 1
            m = stern_brocot_index(q)
            assert riemann_sum(CHI_Q, P) == b - a <= 2 * r == pow2m(m) * eps < eps
    assert hits > 50


def pow2m(m):
    return F(1, 2 ** (m + 1))


def test_gauge_integrate():
    P = mk_partition([0, 1], [SQRT2_OVER_2])
    val, cert = gauge_integrate(CHI_Q, dirichlet_gauge, lambda d: P, F(1, 16))
    assert val == 0 and cert.verdict == VERIFIED
    for eps in (F(1, 2), F(1, 8)):
        val, _ = gauge_integrate(const(1), constant_gauge, lambda d: find_partition(d, 10), eps)
        assert val == 1
        val, _ = gauge_integrate(Linear(1, 0), lambda e: constant_gauge(e / 2),
                                 lambda d: find_partition(d, 12), eps)
        assert abs(val - HALF) < eps
    with pytest.raises(FinderFailed):
        gauge_integrate(CHI_Q, dirichlet_gauge, lambda d: None, F(1, 4))
    with pytest.raises(FinderFailed):
        gauge_integrate(CHI_Q, dirichlet_gauge, lambda d: uniform_partition(2), F(1, 4))
