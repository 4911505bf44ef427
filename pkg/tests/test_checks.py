import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wicklab import (ChaosExpansion, ExponentError, ExponentTuple, GridFunction, GridSpec,
                     WickLabError, ZeroNormError, chaos_lp_norm, constants_identity_suite,
                     exponential_chaos, full_holder_ratio, holder_wick_ratio,
                     minimality_counterexample, nelson_ratio, second_quantization,
                     sharpness_witness, tensorization_check, verify_conv_wick_identity)
from wicklab import checks as ck
from wicklab.harness import random_chaos

GRID = [ExponentTuple.full(u, p, q)
        for u, p, q in itertools.product((4 / 3, 2.0, 4.0), (1.5, 2.0, 3.0, 4.0), (1.5, 2.0, 3.0, 4.0))]
ONE = ChaosExpansion.constant(1)
GRID_1D = GridSpec(1, 12.0, 0.01)


def poly(*coeffs):
    return ChaosExpansion(1, {(n,): c for n, c in enumerate(coeffs)})


# --- CheckReport -------------------------------------------------------------------

def test_report_row_formatting():
    rep = ck.CheckReport.inequality("holder", (2.0, 2.0, math.inf, math.inf, math.inf), 1.0, 2.0)
    row = rep.row()
    assert row[0] == "holder" and row[3] == "inf" and row[8] == "0.5" and row[10] == "true"
    assert list(rep.as_dict()) == list(ck.CSV_COLUMNS)
    assert ck.CheckReport("x").row()[1] == ""


def test_report_pass_rules():
    assert not ck.CheckReport.inequality("a", (), 1.0 + 2e-8, 1.0).passed
    assert ck.CheckReport.inequality("a", (), 1.0 + 5e-9, 1.0).passed
    assert ck.CheckReport.identity("b", (), 1, 1, 2e-6, 1e-6).passed is False
    assert not ck.CheckReport.failure("c", (), "bad").passed


# --- conv-Wick identity ----------------------------------------------------------------

def test_conv_wick_constants():
    rep = verify_conv_wick_identity(ONE, ONE, 2, 2, GRID_1D)
    assert rep.passed and rep.residual <= 1e-8
    x = GRID_1D.axis()
    pts = x[:, None]
    closed = ck.conv_wick_exponential_closed_form([0.0], [0.0], 2, 2, pts)
    np.testing.assert_allclose(closed.real, np.exp(-x * x / 8), atol=1e-15)


def test_conv_wick_exponentials_and_closed_form():
    phi, psi = exponential_chaos([0.5], 30), exponential_chaos([-0.3], 30)
    assert verify_conv_wick_identity(phi, psi, 2, 2, GRID_1D).residual <= 1e-6
    pts = GRID_1D.points()
    w = ck.wick_pair(phi, psi, 1 / math.sqrt(2), 1 / math.sqrt(2))
    series = w.evaluate(pts / 2) * np.exp(-pts[:, 0] ** 2 / 8)
    closed = ck.conv_wick_exponential_closed_form([0.5], [-0.3], 2, 2, pts)
    assert np.abs(series - closed).max() <= 1e-12


def test_conv_wick_polynomials():
    rep = verify_conv_wick_identity(ChaosExpansion.basis((2,)), ChaosExpansion.basis((1,)), 3, 1.5, GRID_1D)
    assert rep.residual <= 1e-6


@pytest.mark.parametrize("uv", [(2.0, 2.0), (3.0, 1.5), (4.0, 4 / 3)])
def test_conv_wick_random_complex(uv):
    phi = random_chaos(11, 1, 4, 0.6, True)
    psi = random_chaos(12, 1, 4, 0.6, False)
    assert verify_conv_wick_identity(phi, psi, *uv, GRID_1D).residual <= 1e-6


def test_conv_wick_two_dimensions():
    phi = ChaosExpansion(2, {(0, 0): 1.0, (1, 0): 0.5, (0, 2): 0.25})
    psi = ChaosExpansion(2, {(0, 0): 1.0, (1, 1): -0.3})
    rep = verify_conv_wick_identity(phi, psi, 2, 2, GridSpec(2, 8.0, 0.1))
    assert rep.residual <= 1e-6


def test_conv_wick_rejects_bad_pair():
    with pytest.raises(ExponentError):
        verify_conv_wick_identity(ONE, ONE, 3, 3, GRID_1D)


# --- Hoelder -----------------------------------------------------------------------

@pytest.mark.parametrize("p", [1.0, 2.0, 3.0, math.inf])
def test_holder_constants_ratio_one(p):
    rep = holder_wick_ratio(ONE, ONE, p, 4, 4 / 3)
    assert rep.ratio == pytest.approx(1.0, abs=1e-14) and rep.passed


@pytest.mark.parametrize("seed", range(10))
def test_holder_random_pairs(seed):
    phi = random_chaos(2 * seed, 1, 6, 0.5, seed % 2 == 1)
    psi = random_chaos(2 * seed + 1, 1, 6, 0.5, seed % 2 == 1)
    assert holder_wick_ratio(phi, psi, 3, 2, 2).ratio <= 1 + 1e-8


def test_holder_zero_input():
    with pytest.raises(ZeroNormError):
        holder_wick_ratio(ChaosExpansion.zero(1), ONE, 2, 2, 2)


def test_holder_infinite_p_carries_caveat():
    rep = holder_wick_ratio(poly(1, 0.3), poly(0.5, -0.2), math.inf, 2, 2)
    assert "lower estimate" in rep.note


def test_holder_equality_for_positive_inputs_at_p_one():
    # at p = 1 the identity turns positive inputs into an equality
    phi, psi = exponential_chaos([0.7], 40), exponential_chaos([-0.4], 40)
    assert holder_wick_ratio(phi, psi, 1, 2, 2).ratio == pytest.approx(1.0, abs=1e-10)


# --- Nelson -----------------------------------------------------------------------------

@pytest.mark.parametrize("p, r", [(2.0, 4.0), (1.5, 3.0), (3.0, 5.0)])
def test_nelson_sharp_on_exponentials(p, r):
    rep = nelson_ratio(exponential_chaos([0.8], 60), ONE, p, r)
    assert abs(rep.ratio - 1.0) <= 1e-6


@pytest.mark.parametrize("seed", range(8))
def test_nelson_random_polynomial(seed):
    phi = random_chaos(seed, 1, 6, 0.5, seed % 2 == 1)
    assert nelson_ratio(phi, ONE, 2, 4).ratio <= 1 + 1e-8


def test_nelson_degenerate_endpoint():
    phi, psi = poly(1.0, 0.4, -0.3), poly(0.2, 1.0, 0.5)
    rep = nelson_ratio(phi, psi, 2, 2)
    expected = chaos_lp_norm(phi, 2) * 0.2 / (chaos_lp_norm(phi, 2) * chaos_lp_norm(psi, math.inf))
    assert rep.ratio == pytest.approx(expected, rel=1e-12) and rep.ratio <= 1


def test_nelson_rejects_r_below_p():
    with pytest.raises(ExponentError):
        nelson_ratio(ONE, ONE, 3, 2)


# --- full Hoelder ---------------------------------------------------------------------------

@pytest.mark.parametrize("p", [1.0, 2.0, 3.0, math.inf])
def test_full_holder_specializes_to_holder(p):
    phi, psi = random_chaos(5, 1, 5, 0.5), random_chaos(6, 1, 5, 0.5, True)
    a = holder_wick_ratio(phi, psi, p, 4, 4 / 3)
    b = full_holder_ratio(phi, psi, ExponentTuple(4, 4 / 3, p, p, p))
    assert abs(a.ratio - b.ratio) <= 1e-12 and abs(a.lhs - b.lhs) <= 1e-12 * a.lhs


@pytest.mark.parametrize("p, r", [(2.0, 4.0), (1.5, 3.0)])
def test_full_holder_specializes_to_nelson(p, r):
    phi, psi = random_chaos(7, 1, 5, 0.5), random_chaos(8, 1, 5, 0.5)
    a = nelson_ratio(phi, psi, p, r)
    b = full_holder_ratio(phi, psi, ExponentTuple.nelson(p, r))
    assert abs(a.ratio - b.ratio) <= 1e-6


@pytest.mark.parametrize("seed", range(8))
def test_full_holder_random(seed):
    phi = random_chaos(seed + 100, 1, 6, 0.5, seed % 2 == 1)
    psi = random_chaos(seed + 200, 1, 6, 0.5, seed % 2 == 1)
    assert full_holder_ratio(phi, psi, ExponentTuple(2, 2, 2, 4, 2.5)).ratio <= 1 + 1e-8


# --- witnesses ------------------------------------------------------------------------------------

def test_witness_symmetric_example():
    xi, eta = sharpness_witness(ExponentTuple(2, 2, 3, 3, 3), dim=3)
    assert xi.tolist() == pytest.approx([1 / (math.sqrt(2) * 2), 0, 0])
    assert eta.tolist() == pytest.approx(xi.tolist())


@pytest.mark.parametrize("e", GRID[::4], ids=lambda e: "u{:.3g}-p{:.3g}-q{:.3g}".format(e.u, e.p, e.q))
def test_witness_gives_equality(e):
    rep = ck.witness_report(e)
    assert rep.passed and abs(rep.ratio - 1) <= 1e-6


@pytest.mark.parametrize("scale", [0.5, 2.0, 2.5])
def test_witness_scaling_keeps_equality(scale):
    rep = ck.witness_report(ExponentTuple(2, 2, 2, 4, 2.5), scale=scale)
    assert abs(rep.ratio - 1) <= 1e-6


def test_witness_perturbation_breaks_equality():
    rep = ck.witness_report(GRID[0], eta_factor=2.0)
    assert rep.check == "witness_perturbed" and rep.ratio < 1 - 1e-3


@pytest.mark.parametrize("p", [1.0, math.inf])
def test_witness_endpoint_exponents(p):
    assert ck.witness_report(ExponentTuple(2, 2, p, p, p)).passed


def test_witness_closed_form_norms():
    e = ExponentTuple(2, 2, 2, 4, 2.5)
    xi, eta = sharpness_witness(e)
    zeta = xi / math.sqrt(e.u) + eta / math.sqrt(e.v)
    closed = ck.exponential_norm(zeta, e.r) / (ck.exponential_norm(xi, e.p) * ck.exponential_norm(eta, e.q))
    assert closed == pytest.approx(1.0, abs=1e-14)


# --- constant identities --------------------------------------------------------------------

@pytest.mark.parametrize("e", GRID, ids=lambda e: "u{:.3g}-p{:.3g}-q{:.3g}".format(e.u, e.p, e.q))
def test_constant_suite_on_grid(e):
    reports = constants_identity_suite(e)
    assert len(reports) == 8
    for rep in reports:
        assert rep.passed, rep
        assert rep.residual <= 1e-12


@pytest.mark.parametrize("e", [ExponentTuple(2, 2, 2, 2, 2), ExponentTuple.nelson(2, 4),
                               ExponentTuple.nelson(1.5, 3), ExponentTuple.nelson(2, 2)])
def test_constant_suite_special_tuples(e):
    assert all(r.passed for r in constants_identity_suite(e))


def test_nelson_constant_example():
    assert abs(ck.nelson_constant(2, 4) - 1.0) <= 1e-12


@given(st.floats(1.05, 8), st.floats(1.01, 4))
def test_nelson_constant_is_one(p, ratio):
    assert abs(ck.nelson_constant(p, p * ratio) - 1.0) <= 1e-12
    assert ck.nelson_square_residual(p, p * ratio) <= 1e-12 * max(1.0, p * ratio)


def test_jensen_equality_only_at_one():
    e = ExponentTuple(2, 2, 2, 4, 2.5)
    l1, r1, l2, r2 = ck.jensen_steps(e, 1, 1)
    assert abs(l1 - r1) <= 1e-15 and abs(l2 - r2) <= 1e-15
    l1, r1, l2, r2 = ck.jensen_steps(e, 2, 0.5)
    assert l1 > r1 and l2 > r2


# --- minimality ---------------------------------------------------------------------------------

def test_minimality_worked_ratio():
    assert ck.minimality_ratio(1.5, 1.5, 2, 1.0) == pytest.approx(math.exp(1 / 3), rel=1e-15)
    xi, eta = ck.minimality_witness(1.5, 1.5, 1.0)
    assert ck.minimality_pair_ratio(1.5, 1.5, 2, xi, eta) == pytest.approx(1.395612, abs=1e-6)


def test_minimality_boundary_is_equality():
    for t in ck.MINIMALITY_LADDER[:5]:
        xi, eta = ck.minimality_witness(2, 2, t)
        assert ck.minimality_pair_ratio(2, 2, 2, xi, eta) == pytest.approx(1.0, abs=1e-12)


def test_minimality_example_at_one_point_nine():
    t, ratio = minimality_counterexample(1.9, 1.9, 2)
    assert ratio > 1.01 and t in ck.MINIMALITY_LADDER


@settings(max_examples=60)
@given(st.floats(1.01, 30), st.floats(0.0, 1.0), st.floats(1.2, 6))
def test_minimality_found_whenever_excess_is_large(u, frac, p):
    # 1/v ranges over [1.05 - 1/u, 1), which is nonempty because 1/u < 1
    lo = max(1.05 - 1 / u, 1e-3)
    inv_v = lo + frac * (0.999 - lo)
    if inv_v >= 1:
        return
    v = 1 / inv_v
    t, ratio = minimality_counterexample(u, v, p)
    assert ratio >= 1.01
    # smallest ladder scale: the previous rung does not exceed the threshold
    k = ck.MINIMALITY_LADDER.index(t)
    if k:
        assert ck.minimality_ratio(u, v, p, ck.MINIMALITY_LADDER[k - 1]) <= 1.01


@given(st.floats(1.01, 30), st.floats(0.0, 1.0), st.floats(1.0, 6))
def test_minimality_never_below_boundary(u, frac, p):
    v = u / (u - 1) * (1 + 3 * frac)
    with pytest.raises(ExponentError):
        minimality_counterexample(u, v, p)
    for t in ck.MINIMALITY_LADDER:
        xi, eta = ck.minimality_witness(u, v, t)
        assert ck.minimality_pair_ratio(u, v, p, xi, eta) <= 1 + 1e-9


def test_minimality_against_plain_equal_exponentials():
    # the equal-exponential direction misses unequal pairs; the normalised direction does not
    u, v, p = 1.01, 20.0, 2.0
    plain = max(ck.minimality_pair_ratio(u, v, p, t, t) for t in ck.MINIMALITY_LADDER)
    assert plain <= 1.0
    assert minimality_counterexample(u, v, p)[1] > 1.01


def test_false_counterexample_trials():
    rep = ck.false_counterexample_trials(seed=7, trials=200)
    assert rep.passed and rep.residual == 0


# --- second quantization on L^p ---------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(-1, 1), st.sampled_from([1.0, 2.0, 3.0, math.inf]),
       st.booleans())
def test_gamma_contracts_every_lp(seed, c, p, cplx):
    phi = random_chaos(seed, 1, 6, 0.7, cplx)
    assert chaos_lp_norm(second_quantization(c, phi), p) <= chaos_lp_norm(phi, p) + 1e-8


# --- Young on grids ----------------------------------------------------------------------------

def test_young_check_on_fixtures():
    x = GRID_1D.axis()
    f = GridFunction(GRID_1D, np.exp(-x * x / 2))
    box = GridFunction(GRID_1D, (np.abs(x) <= 1).astype(float))
    for p, q, r in [(4 / 3, 4 / 3, 2.0), (1.0, 2.0, 2.0), (2.0, 2.0, math.inf)]:
        rep = ck.young_inequality_check(f, box, p, q, r)
        assert rep.passed and rep.lhs <= rep.rhs + 1e-6


# --- tensorization ------------------------------------------------------------------------------

def test_tensorization_constants():
    rep = tensorization_check(ONE, ONE, ExponentTuple(2, 2, 2, 4, 2.5))
    assert rep.passed and rep.rhs == pytest.approx(1.0, abs=1e-14)


def test_tensorization_exponentials():
    n = ck.witness_degree([0.3], [-0.5])
    rep = tensorization_check(exponential_chaos([0.3], n), exponential_chaos([-0.5], n),
                              ExponentTuple(2, 2, 2, 4, 2.5))
    assert rep.passed and rep.residual <= 1e-5


def test_tensorization_rejects_two_dimensional_input():
    with pytest.raises(WickLabError):
        tensorization_check(ChaosExpansion.constant(1, 2), ONE, GRID[0])
