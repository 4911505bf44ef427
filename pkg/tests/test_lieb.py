import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import optimize

from wicklab import (ExponentError, ExponentTuple, GaussianTrial, GridFunction, GridSpec,
                     convolve_normalized,
                     lieb_closed_form, lieb_objective, lieb_sup_search, lp_norm_lebesgue,
                     sharp_young_constant)
from wicklab.lieb import golden_section_max, lieb_kernel_norm

GRID = [ExponentTuple.full(u, p, q)
        for u, p, q in itertools.product((4 / 3, 2.0, 4.0), (1.5, 2.0, 3.0, 4.0), (1.5, 2.0, 3.0, 4.0))]


def test_closed_form_worked_value():
    e = ExponentTuple(2, 2, 2, 4, 2.5)
    opt = lieb_closed_form(e)
    assert opt.s == pytest.approx(1 / 4) and opt.t == pytest.approx(1 / 8)
    assert opt.value == pytest.approx(2 ** (1 / 20), rel=1e-15)
    assert abs(opt.value - 1.035265) <= 1e-6
    assert lieb_objective(opt.s, opt.t, e) == pytest.approx(opt.value, rel=1e-12)


def test_symmetric_case_is_one():
    e = ExponentTuple(2, 2, 2, 2, 2)
    assert lieb_objective(0.25, 0.25, e) == pytest.approx(1.0, rel=1e-12)
    res = lieb_sup_search(e)
    assert res.s == pytest.approx(0.25, abs=1e-8) and res.t == pytest.approx(0.25, abs=1e-8)
    assert res.value == pytest.approx(1.0, abs=1e-8)


def test_search_finds_worked_example():
    e = ExponentTuple(2, 2, 2, 4, 2.5)
    res = lieb_sup_search(e)
    assert abs(res.value - 2 ** (1 / 20)) <= 1e-8
    assert abs(res.s - 0.25) <= 1e-5 and abs(res.t - 0.125) <= 1e-5
    assert res.start_spread <= 1e-12


@pytest.mark.parametrize("e", GRID, ids=lambda e: "u{:.3g}-p{:.3g}-q{:.3g}".format(e.u, e.p, e.q))
def test_search_matches_closed_form_on_grid(e):
    res, cf = lieb_sup_search(e), lieb_closed_form(e)
    assert abs(res.value - cf.value) <= 1e-8 * cf.value
    assert abs(res.s - cf.s) <= 1e-5 * cf.s and abs(res.t - cf.t) <= 1e-5 * cf.t


@settings(max_examples=40)
@given(st.sampled_from(GRID), st.floats(0.2, 5), st.floats(0.2, 5))
def test_objective_below_supremum(e, fs, ft):
    cf = lieb_closed_form(e)
    assert lieb_objective(cf.s * fs, cf.t * ft, e) <= cf.value * (1 + 1e-12)


@pytest.mark.parametrize("e", GRID[::5])
def test_perturbed_point_is_strictly_lower(e):
    cf = lieb_closed_form(e)
    assert lieb_objective(1.1 * cf.s, cf.t, e) < cf.value
    assert lieb_objective(cf.s, 0.9 * cf.t, e) < cf.value


def test_nelson_search_is_one_dimensional():
    e = ExponentTuple.nelson(2, 4)
    res = lieb_sup_search(e)
    cf = lieb_closed_form(e)
    assert res.t == 0.0 and cf.t == 0.0
    assert abs(res.value - cf.value) <= 1e-8 and abs(res.s - cf.s) <= 1e-5 * cf.s


def test_search_rejects_unsupported_tuples():
    with pytest.raises(ExponentError):
        lieb_sup_search(ExponentTuple.nelson(2, 2))
    with pytest.raises(ExponentError):
        lieb_sup_search(ExponentTuple.holder(2, math.inf))


def test_objective_domain():
    e = ExponentTuple(2, 2, 2, 4, 2.5)
    with pytest.raises(ValueError):
        lieb_objective(0.0, 1.0, e)


def test_golden_section_on_parabola():
    x, fx = golden_section_max(lambda z: -(z - 1.3) ** 2 + 2, -5, 5)
    # a smooth maximum locates only to about sqrt(eps)
    assert x == pytest.approx(1.3, abs=1e-7) and fx == pytest.approx(2)


@pytest.mark.parametrize("s, p", [(0.25, 2.0), (1 / 8, 4.0), (1.0, 1.5), (0.05, 3.0)])
def test_gaussian_trial_has_unit_norm(s, p):
    f = GridFunction.from_callable(GridSpec(1, 40.0, 0.01), GaussianTrial(s, p))
    assert abs(lp_norm_lebesgue(f, p) - 1.0) <= 1e-8


def test_gaussian_trial_validation():
    with pytest.raises(ValueError):
        GaussianTrial(0.0, 2.0)


@pytest.mark.parametrize("e", [ExponentTuple(2, 2, 2, 4, 2.5), ExponentTuple(2, 2, 3, 3, 3),
                               ExponentTuple.full(4 / 3, 1.5, 4.0)])
def test_kernel_norm_at_trials_matches_objective(e):
    cf = lieb_closed_form(e)
    k = lieb_kernel_norm(GaussianTrial(cf.s, e.p), GaussianTrial(cf.t, e.q), e, GridSpec(1, 16.0, 0.1))
    assert k ** 2 == pytest.approx(cf.value, rel=1e-7)


def _gauss_young_ratio(b, p, q, r):
    # f = e^{-x^2/2}, g = e^{-b x^2/2}, norms under (2 pi)^{-1/2} dx
    def norm(a, k):
        return (a * k) ** (-1 / (2 * k))
    conv_norm = (1 + b) ** -0.5 * norm(b / (1 + b), r)
    return conv_norm / (norm(1.0, p) * norm(b, q))


@pytest.mark.parametrize("p, q, r", [(4 / 3, 4 / 3, 2.0), (1.5, 1.5, 3.0), (1.2, 1.6, 24 / 11)])
def test_young_constant_attained_by_gaussians(p, q, r):
    res = optimize.minimize_scalar(lambda lb: -_gauss_young_ratio(math.exp(lb), p, q, r),
                                   bounds=(-8, 8), method="bounded", options={"xatol": 1e-10})
    assert -res.fun == pytest.approx(sharp_young_constant(p, q, r), rel=1e-9)


def test_young_ratio_closed_form_agrees_with_grid():
    spec = GridSpec(1, 20.0, 0.01)
    x = spec.axis()
    b, p, q, r = 0.7, 4 / 3, 4 / 3, 2.0
    f = GridFunction(spec, np.exp(-x * x / 2))
    g = GridFunction(spec, np.exp(-b * x * x / 2))
    grid_ratio = lp_norm_lebesgue(convolve_normalized(f, g), r) / (lp_norm_lebesgue(f, p) * lp_norm_lebesgue(g, q))
    assert grid_ratio == pytest.approx(_gauss_young_ratio(b, p, q, r), rel=1e-9)
