"""Broken flow lines, downward limits, and the resolution diagram."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

import pytest

from secantflow import (
    INF,
    ChainRecord,
    CriticalPointData,
    CurveFunction,
    Divisor,
    DualClass,
    FlowLinePoint,
    G_map,
    P_morse,
    P_sec,
    Poly,
    SecantPoint,
    commuting_check,
    downward_limit,
    embedding_matrix,
    enumerate_chains,
    flow_line_point,
    make_critical_point,
    make_curve,
    point_class,
    section_order,
    standard_curve,
    upward_targets,
)
from secantflow.errors import (
    BoundViolationError,
    BudgetViolationError,
    InadmissibleSupportError,
    MalformedInputError,
    UnsupportedSupportError,
    WeierstrassPointError,
    WitnessNotMinimalError,
    ZeroSectionError,
)
from secantflow.resolution import with_phases


@pytest.fixture(scope="module")
def curve():
    return make_curve([1, -1, 0, 0, 0, 1])  # y^2 = x^5 - x + 1


@pytest.fixture(scope="module")
def pool(curve):
    return [curve.point(0, 1), curve.point(0, -1),
            curve.point(1, 1), curve.point(1, -1),
            curve.point(-1, 1), curve.point(-1, -1)]


@pytest.fixture(scope="module")
def one(curve):
    return CurveFunction(curve, Poly([1]), Poly.zero())


@pytest.fixture(scope="module")
def top(curve, one):
    # degE = 1, degM = 6; top level u = 3 = d_max
    return make_critical_point(curve, Divisor({INF: 3}), Divisor({INF: -2}),
                               Divisor({INF: 6}), one)


def class_with_witness(curve, pair, D):
    """A class on the plane of D involving every column (generic there)."""
    mat = embedding_matrix(curve, pair, D)
    cols = list(zip(*mat))
    return DualClass(tuple(sum(col[i] for col in cols)
                           for i in range(len(mat))))


# -- critical point validation ----------------------------------------------

def test_critical_point_degrees(top):
    assert (top.d, top.degE, top.degM, top.delta) == (3, 1, 6, 5)
    assert top.bundle_divisor() == Divisor({INF: 1})
    assert top.pair().delta == 5


def test_level_field_must_match_degree(curve, one):
    with pytest.raises(MalformedInputError):
        CriticalPointData(Divisor({INF: 3}), Divisor({INF: -2}),
                          Divisor({INF: 6}), one, 2)


def test_zero_section_rejected(curve):
    zero = CurveFunction(curve, Poly.zero(), Poly.zero())
    with pytest.raises(ZeroSectionError):
        make_critical_point(curve, Divisor({INF: 3}), Divisor({INF: -2}),
                            Divisor({INF: 6}), zero)


def test_level_window_enforced(curve, one):
    # 2d <= degE: level not above the minimum
    with pytest.raises(BoundViolationError):
        make_critical_point(curve, Divisor.zero(), Divisor({INF: 1}),
                            Divisor({INF: 6}), one)
    # degE + degM - 2d < 0: section bundle has negative degree
    with pytest.raises(BoundViolationError):
        make_critical_point(curve, Divisor({INF: 5}), Divisor({INF: -4}),
                            Divisor({INF: 2}), one)


def test_irrational_pole_support_rejected(curve):
    h = CurveFunction(curve, Poly([1]), Poly.zero(), Poly([-2, 0, 1]))
    with pytest.raises(UnsupportedSupportError):
        make_critical_point(curve, Divisor({INF: 3}), Divisor({INF: -2}),
                            Divisor({INF: 10}), h)


def test_weierstrass_pole_fibre_rejected():
    c = make_curve([0, -4, 0, 0, 0, 1])  # f(0) = 0
    h = CurveFunction(c, Poly([1]), Poly.zero(), Poly([0, 1]))
    with pytest.raises(WeierstrassPointError):
        make_critical_point(c, Divisor({INF: 3}), Divisor({INF: -2}),
                            Divisor({INF: 10}), h)


def test_irrational_pole_fibre_rejected():
    c = standard_curve(2)                # f(2) = 44, not a square
    h = CurveFunction(c, Poly([1]), Poly.zero(), Poly([-2, 1]))
    with pytest.raises(UnsupportedSupportError):
        make_critical_point(c, Divisor({INF: 3}), Divisor({INF: -2}),
                            Divisor({INF: 10}), h)


def test_section_effectivity_enforced():
    c = standard_curve(2)                # f(0) = 4: rational fibre (0, ±2)
    h = CurveFunction(c, Poly([1]), Poly.zero(), Poly([0, 1]))  # 1/x
    with pytest.raises(MalformedInputError):
        make_critical_point(c, Divisor({INF: 3}), Divisor({INF: -2}),
                            Divisor({INF: 6}), h)


def test_section_order_reads_the_bundle_frame(curve, top, pool):
    # phi = 1 has no zeros of its own; the order at a pool point is the
    # bundle coefficient there, which is 0 at the top.
    assert section_order(curve, top, pool[0]) == 0
    assert section_order(curve, top, INF) == 1


# -- flow line points --------------------------------------------------------

def test_flow_line_point_validation(curve, top, pool):
    pair = top.pair()
    p = pool[0]
    x = flow_line_point(curve, pair, point_class(curve, pair, p),
                        Divisor.of_point(p), pool)
    assert x.phase == Fraction(0)
    assert x.erased().phase is None
    with pytest.raises(MalformedInputError):
        FlowLinePoint(x.cls, Divisor.zero())
    with pytest.raises(MalformedInputError):
        FlowLinePoint(x.cls, x.witness, Fraction(3, 2))


def test_flow_line_point_rejects_off_plane_class(curve, top, pool):
    pair = top.pair()
    cls = point_class(curve, pair, pool[0])
    with pytest.raises(WitnessNotMinimalError):
        flow_line_point(curve, pair, cls, Divisor.of_point(pool[2]), pool)


def test_flow_line_point_rejects_non_minimal_witness(curve, top, pool):
    pair = top.pair()
    cls = point_class(curve, pair, pool[0])
    fat = Divisor.of_point(pool[0]) + Divisor.of_point(pool[2])
    with pytest.raises(WitnessNotMinimalError):
        flow_line_point(curve, pair, cls, fat, pool)


# -- downward limits ---------------------------------------------------------

def test_downward_limit_single_point(curve, top, pool):
    pair = top.pair()
    p = pool[0]
    x = flow_line_point(curve, pair, point_class(curve, pair, p),
                        Divisor.of_point(p), pool)
    limit = downward_limit(curve, top, x)
    assert limit.d == 2
    assert limit.L1_rep == top.L1_rep - Divisor.of_point(p)
    assert limit.L2_rep == top.L2_rep + Divisor.of_point(p)
    assert limit.M_rep == top.M_rep
    assert section_order(curve, limit, p) == section_order(curve, top, p) + 2


def test_downward_limit_double_point(curve, top, pool):
    pair = top.pair()
    p = pool[0]
    D = Divisor.of_point(p, 2)
    x = flow_line_point(curve, pair, class_with_witness(curve, pair, D),
                        D, pool)
    limit = downward_limit(curve, top, x)
    assert limit.d == 1
    assert section_order(curve, limit, p) == section_order(curve, top, p) + 4


def test_downward_limit_budget(curve, top, pool):
    pair = top.pair()
    D = Divisor.of_point(pool[0], 3)   # 2 deg = 6 >= delta = 5
    x = FlowLinePoint(class_with_witness(curve, pair, D), D)
    with pytest.raises(BudgetViolationError):
        downward_limit(curve, top, x)


def test_downward_limit_requires_minimal_witness(curve, top, pool):
    pair = top.pair()
    cls = point_class(curve, pair, pool[0])
    fat = Divisor.of_point(pool[0]) + Divisor.of_point(pool[2])
    with pytest.raises(WitnessNotMinimalError):
        downward_limit(curve, top, FlowLinePoint(cls, fat))


# -- upward targets ----------------------------------------------------------

def test_upward_targets_relists_the_used_witness(curve, top, pool):
    pair = top.pair()
    p = pool[0]
    x = flow_line_point(curve, pair, point_class(curve, pair, p),
                        Divisor.of_point(p), pool)
    bottom = downward_limit(curve, top, x)
    ups = upward_targets(curve, bottom, None, pool)
    assert ups == [(Divisor.of_point(p), 3)]


def test_upward_targets_respect_section_divisibility(curve, one, pool):
    # a deeper bottom: twist by p twice; then only multiples of p up to
    # the order cap and the level window qualify
    p = pool[0]
    bottom = make_critical_point(
        curve, Divisor({INF: 3}) - Divisor.of_point(p, 2),
        Divisor({INF: -2}) + Divisor.of_point(p, 2), Divisor({INF: 6}), one)
    ups = upward_targets(curve, bottom, None, pool)
    assert ups == [(Divisor.of_point(p), 2),
                   (Divisor.of_point(p, 2), 3)]


def test_upward_targets_param_consistency(curve, top, pool):
    from secantflow import ModuliParams
    with pytest.raises(MalformedInputError):
        upward_targets(curve, top, ModuliParams(2, 1, 4), pool)


def test_upward_targets_level_window(curve, one, pool):
    # at the top level no flow line can arrive from above
    top_level = make_critical_point(curve, Divisor({INF: 3}),
                                    Divisor({INF: -2}), Divisor({INF: 6}),
                                    one)
    assert upward_targets(curve, top_level, None, pool) == []


# -- chain records -----------------------------------------------------------

def test_chain_bookkeeping(curve, top, pool):
    chain = enumerate_chains(curve, top, 2, pool)[0]
    assert chain.budget == 1
    assert chain.bottom.d == 2
    assert chain.levels() == [2]
    assert [w.degree for w in chain.witnesses()] == [1]


def test_chain_requires_steps(top):
    with pytest.raises(MalformedInputError):
        ChainRecord(top, ())


def test_chain_rejects_inconsistent_steps(curve, top, pool):
    chain = enumerate_chains(curve, top, 2, pool)[0]
    x, data = chain.steps[0]
    # wrong arrival level
    bad = CriticalPointData(data.L1_rep, data.L2_rep, data.M_rep,
                            data.phi, data.d)
    with pytest.raises(MalformedInputError):
        ChainRecord(top, ((x, bad), (x, bad)))
    # not the witness twist: reuse the top as its own successor
    with pytest.raises(MalformedInputError):
        ChainRecord(top, ((x, CriticalPointData(
            top.L1_rep, top.L2_rep, top.M_rep, top.phi, top.d)),))


def test_with_phases(curve, top, pool):
    chain = enumerate_chains(curve, top, 1, pool)[0]
    n = len(chain.steps)
    phased = with_phases(chain, [Fraction(1, 3)] * n)
    assert all(x.phase == Fraction(1, 3) for x, _ in phased.steps)
    with pytest.raises(MalformedInputError):
        with_phases(chain, [Fraction(0)] * (n + 1))


# -- enumeration -------------------------------------------------------------

def test_enumerate_budget_one(curve, top, pool):
    chains = enumerate_chains(curve, top, 2, pool)
    assert len(chains) == 6
    assert all(c.budget == 1 and c.bottom.d == 2 for c in chains)
    assert {c.steps[0][0].witness for c in chains} == {
        Divisor.of_point(p) for p in pool}


def test_enumerate_budget_two(curve, top, pool):
    chains = enumerate_chains(curve, top, 1, pool)
    shapes = Counter(tuple(x.witness.degree for x, _ in c.steps)
                     for c in chains)
    assert len(chains) == 57
    assert dict(shapes) == {(1, 1): 36, (2,): 21}


def test_enumerate_budget_three(curve, one):
    pool4 = [curve.point(0, 1), curve.point(0, -1),
             curve.point(1, 1), curve.point(1, -1)]
    top = make_critical_point(curve, Divisor({INF: 4}), Divisor({INF: -3}),
                              Divisor({INF: 8}), one)
    chains = enumerate_chains(curve, top, 1, pool4)
    shapes = Counter(tuple(x.witness.degree for x, _ in c.steps)
                     for c in chains)
    assert len(chains) == 164
    assert dict(shapes) == {(1, 1, 1): 64, (1, 2): 40, (2, 1): 40, (3,): 20}


def test_enumerate_level_windows(curve, top, pool):
    with pytest.raises(BoundViolationError):
        enumerate_chains(curve, top, 5, pool)     # outside the range
    with pytest.raises(BoundViolationError):
        enumerate_chains(curve, top, 3, pool)     # needs ell < u


def test_enumerate_rejects_bad_pool(curve, top, pool):
    with pytest.raises(InadmissibleSupportError):
        enumerate_chains(curve, top, 2, pool + [pool[0]])


def test_chains_twist_consistently(curve, top, pool):
    for chain in enumerate_chains(curve, top, 1, pool):
        level = top
        for x, data in chain.steps:
            assert data.L1_rep == level.L1_rep - x.witness
            assert data.L2_rep == level.L2_rep + x.witness
            assert data.d == level.d - x.witness.degree
            for p, mult in x.witness.items():
                assert section_order(curve, data, p) >= 2 * mult
            level = data


# -- projections and the diagram ---------------------------------------------

def test_projection_maps(curve, top, pool):
    chain = enumerate_chains(curve, top, 1, pool)[0]
    erased = G_map(chain)
    assert all(x.phase is None for x, _ in erased.steps)
    first = P_morse(chain)
    assert first.phase == Fraction(0)
    sec = P_sec(chain)
    assert sec == SecantPoint(first.cls, first.witness)


def test_commuting_square_budget_two(curve, top, pool):
    rep = commuting_check(curve, top, 1, pool)
    assert rep.ok
    assert (rep.chains, rep.first_steps) == (57, 27)
    assert rep.commute_failures == 0 and rep.fibre_failures == 0


def test_fibres_count_continuations(curve, top, pool):
    # every first step of degree n at level 3 - n must carry as many
    # chains as the inner enumeration from its limit
    chains = enumerate_chains(curve, top, 1, pool)
    groups: dict = {}
    for c in chains:
        x = c.steps[0][0]
        groups.setdefault((x.cls, x.witness), []).append(c)
    for group in groups.values():
        inner = group[0].steps[0][1]
        if inner.d == 1:
            assert len(group) == 1
        else:
            assert len(group) == len(enumerate_chains(curve, inner, 1, pool))
