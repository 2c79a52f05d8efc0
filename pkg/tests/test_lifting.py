"""
提升判定测试
"""
import math

import numpy as np
import pytest

from app.errors import InvalidInputError
from app.models.interpolation import InterpolationData
from app.models.kernel import KernelCombo
from app.models.poly import ComplexPoly
from app.models.results import PolyVerdict, Verdict
from app.services.interpolation_service import InterpolationService
from app.services.lifting_service import LiftingService, coefficient_l1_bound
from app.utils.serialization import encode_json

TWO_DIM = InterpolationData([[0.0, 0.0], [0.5, 0.0]], [0.0, 0.5])
SCHWARZ = InterpolationData([[0.0], [0.5]], [0.0, 0.5])


@pytest.fixture
def lifting(settings) -> LiftingService:
    return LiftingService(settings)


# ---- 扰动判定 ----

def test_perturbation_check_on_kernel_span(lifting):
    data = InterpolationData([[0.0], [0.5]], [0.0, 0.4])
    module = lifting.quotient.build_qz(data.points)
    psi = lifting.interpolation.solve_psi(data)
    phi = lifting.interpolation.schur_interpolant(data)
    assert lifting.perturbation_check(psi, phi, module)
    assert lifting.perturbation_check(psi, ComplexPoly.coordinate(0, 1) * 0.8, module)
    assert not lifting.perturbation_check(psi, ComplexPoly.coordinate(0, 1), module)


def test_perturbation_check_on_poly_space(lifting):
    module = lifting.quotient.build_qm(2, 2)
    p = ComplexPoly(2, {(0, 0): 0.5, (1, 1): 0.25j})
    assert lifting.perturbation_check(p, p + ComplexPoly.monomial((3, 0)), module)
    assert not lifting.perturbation_check(p, p + ComplexPoly.monomial((1, 0)), module)
    with pytest.raises(InvalidInputError):
        lifting.perturbation_check(KernelCombo([[0.0, 0.0]], [1.0]), p, module)


def test_perturbation_check_matches_compression_agreement(lifting, ball_points):
    points = ball_points(3, 2)
    module = lifting.quotient.build_qz(points)
    q = ComplexPoly(2, {(1, 0): 0.3, (0, 1): -0.2j, (2, 0): 0.1})
    data = InterpolationData(points, q.evaluate(points))
    psi = lifting.interpolation.solve_psi(data)
    same = lifting.quotient.compress_poly_on_qz(q, module)
    via_psi = lifting.quotient.compress_on_qz(lifting.hardy.eval_kernel_combo(psi, points), module)
    assert lifting.perturbation_check(psi, q, module)
    assert np.allclose(same.matrix, via_psi.matrix, atol=1e-10)

    other = q + 0.05
    assert not lifting.perturbation_check(psi, other, module)
    assert not np.allclose(lifting.quotient.compress_poly_on_qz(other, module).matrix, via_psi.matrix, atol=1e-10)


# ---- 必要条件 ----

def test_lift_necessary_check_examples(lifting):
    check = lifting.lift_necessary_check(TWO_DIM)
    assert check.opnorm == pytest.approx(2 / math.sqrt(7), abs=1e-8)
    assert check.passed

    check = lifting.lift_necessary_check(InterpolationData([[0.0], [0.5]], [0.0, 0.6]))
    assert check.opnorm == pytest.approx(1.2, abs=1e-8)
    assert not check.passed

    check = lifting.lift_necessary_check(InterpolationData([[0.1], [0.5]], [0.0, 0.0]))
    assert check.opnorm == 0.0
    assert check.passed
    assert check.to_payload() == {"opnorm": 0.0, "pass": True}


# ---- L1/L2 判据 ----

def test_unit_l2_lift_test_unimodular_constant(lifting):
    result = lifting.unit_l2_lift_test(ComplexPoly.constant(2, 1j), 0)
    assert result.verdict == PolyVerdict.LIFT
    assert result.l1.value == pytest.approx(1.0)


def test_unit_l2_lift_test_scaled_coordinate(full_settings):
    result = LiftingService(full_settings).unit_l2_lift_test(ComplexPoly.monomial((1, 0), math.sqrt(2)), 1)
    assert result.verdict == PolyVerdict.NO_LIFT
    assert abs(result.l1.value - 2 * math.sqrt(2) / 3) <= 0.003
    assert result.l2 == pytest.approx(1.0)


def test_unit_l2_lift_test_monomial_on_circle(lifting):
    result = lifting.unit_l2_lift_test(ComplexPoly.monomial((3,)), 3)
    assert result.verdict == PolyVerdict.LIFT
    assert result.max_deviation <= 1e-12


def test_unit_l2_lift_test_spread_coefficients(lifting):
    p = ComplexPoly(2, {(1, 0): 1.0, (0, 1): 1.0})
    assert lifting.unit_l2_lift_test(p, 1).verdict == PolyVerdict.NO_LIFT
    q = ComplexPoly(2, {(0, 0): 0.6, (1, 1): 0.8 * math.sqrt(6)})
    assert lifting.unit_l2_lift_test(q, 2).verdict == PolyVerdict.NO_LIFT


def test_unit_l2_lift_test_rejects_bad_input(lifting):
    with pytest.raises(InvalidInputError):
        lifting.unit_l2_lift_test(ComplexPoly.coordinate(0, 2), 1)
    with pytest.raises(InvalidInputError):
        lifting.unit_l2_lift_test(ComplexPoly.monomial((3,)), 2)
    with pytest.raises(InvalidInputError):
        lifting.unit_l2_lift_test(ComplexPoly.zero(1), 0)


# ---- sup 范数上界 ----

def test_min_supnorm_single_node(lifting):
    data = InterpolationData([[0.2, 0.1]], [0.3 - 0.4j])
    result = lifting.min_supnorm_upper(data, 0)
    assert result.grid_value == pytest.approx(0.5, abs=1e-12)
    assert result.witness.allclose(ComplexPoly.constant(2, 0.3 - 0.4j))
    assert lifting.min_supnorm_upper(data, 2).grid_value <= 0.5 + 1e-6


def test_min_supnorm_schwarz_example(lifting):
    result = lifting.min_supnorm_upper(SCHWARZ, 1)
    assert 1 - 1e-6 <= result.value <= 1.02
    assert result.witness.allclose(ComplexPoly.coordinate(0, 1), tol=1e-10)
    assert result.certified


def test_min_supnorm_converges_on_fine_grid(settings):
    lifting = LiftingService(settings.with_overrides(grid_points_per_dim=2048))
    result = lifting.min_supnorm_upper(SCHWARZ, 4)
    assert 1 - 1e-6 <= result.value <= 1.02
    assert result.grid_size == 2048
    assert abs(result.witness.coefficient((1,)) - 1.0) <= 1e-2


def test_min_supnorm_two_dimensional_example(lifting):
    result = lifting.min_supnorm_upper(TWO_DIM, 3)
    assert result.value <= 1.02 + 1e-6
    assert not result.certified
    assert result.inflation == pytest.approx(1.02)
    residual = np.abs(result.witness.evaluate(TWO_DIM.points) - TWO_DIM.values)
    assert np.max(residual) <= 1e-8


def test_min_supnorm_is_monotone_in_degree(lifting):
    data = InterpolationData([[0.0], [0.4], [-0.3j]], [0.1, 0.3j, -0.2])
    values = [lifting.min_supnorm_upper(data, d).value for d in range(2, 6)]
    for lower, higher in zip(values, values[1:]):
        assert higher <= lower + lifting.settings.solver_tol


def test_min_supnorm_reports_minimal_feasible_degree(lifting):
    data = InterpolationData([[0.0], [0.5], [-0.5]], [0.0, 0.3, 0.1])
    with pytest.raises(InvalidInputError) as exc:
        lifting.min_supnorm_upper(data, 1)
    assert exc.value.details["minimal_feasible_degree"] == 2
    with pytest.raises(InvalidInputError):
        lifting.min_supnorm_upper(data, lifting.settings.max_degree + 1)


def test_inflation_rules(settings):
    lifting = LiftingService(settings)
    factor, certified = lifting.inflation(1)
    assert factor == pytest.approx(1 / math.cos(math.pi * settings.max_degree / settings.grid_points_per_dim))
    assert certified
    assert lifting.inflation(2) == (1.02, False)
    explicit = LiftingService(settings.with_overrides(inflation_factor=1.5))
    assert explicit.inflation(1) == (1.5, True)
    assert explicit.inflation(3) == (1.5, False)
    with pytest.raises(InvalidInputError):
        LiftingService(settings.with_overrides(grid_points_per_dim=16)).inflation(1)


# ---- 距离区间 ----

def test_distance_report_two_dimensional_bracket(lifting):
    report = lifting.distance_report(TWO_DIM, 3)
    low, high = report.distance_bracket
    assert report.opnorm_lower == pytest.approx(2 / math.sqrt(7), abs=1e-8)
    assert report.supnorm_upper <= 1.02 + 1e-6
    assert 0.98 <= low <= 1 / 1.02 + 1e-4
    assert math.sqrt(7) / 2 - 1e-8 <= high <= 1.33
    assert report.verdict == Verdict.UNDETERMINED
    assert report.to_payload()["upper_bound_kind"] == "heuristic upper bound"
    assert report.psi_norm2 > 0


def test_distance_report_collapses_at_one_dimension(settings, interp_service, ball_points, rng):
    lifting = LiftingService(settings)
    for k in range(6):
        m = 2 + k % 3
        z = ball_points(m, 1, radius=0.6)[:, 0]
        scale = 0.5 + 0.4 * rng.uniform()
        if k % 2 == 0:
            w = scale * z ** (m - 1)
        else:
            a = 0.2 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
            w = scale * (z - a) / (1 - np.conj(a) * z)
        data = InterpolationData(z[:, None], w)
        report = lifting.distance_report(data, m + 2)
        assert abs(report.supnorm_upper - report.opnorm_lower) <= 0.02 * report.opnorm_lower
        assert report.opnorm_lower == pytest.approx(interp_service.pick_constant(data), abs=1e-8)
        assert report.verdict == Verdict.FEASIBLE
        assert report.certified


def test_distance_report_zero_data(lifting):
    report = lifting.distance_report(InterpolationData([[0.0, 0.0], [0.3, 0.2]], [0.0, 0.0]), 2)
    assert report.verdict == Verdict.FEASIBLE
    assert report.witness.is_zero()
    assert report.distance_bracket == (math.inf, math.inf)
    assert '"distance_bracket": ["inf", "inf"]' in encode_json(report)


def test_distance_report_infeasible(lifting):
    report = lifting.distance_report(InterpolationData([[0.0], [0.5]], [0.0, 0.6]), 3)
    assert report.verdict == Verdict.INFEASIBLE
    assert report.opnorm_lower <= report.supnorm_upper + lifting.settings.solver_tol


def test_feasible_verdict_has_concrete_witness(lifting):
    data = InterpolationData([[0.0], [0.5]], [0.0, 0.3])
    report = lifting.distance_report(data, 3)
    assert report.verdict == Verdict.FEASIBLE
    residual = np.abs(report.witness.evaluate(data.points) - data.values)
    assert np.max(residual) <= 1e-8
    grid = lifting.sphere.boundary_grid(1)
    assert np.max(np.abs(report.witness.evaluate(grid))) <= 1 + lifting.settings.solver_tol


# ---- 多项式模映射 ----

def test_poly_module_report_brackets_shift(lifting):
    report = lifting.poly_module_report(ComplexPoly.coordinate(0, 2), 1, 3)
    assert report.opnorm_lower == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert report.supnorm_upper <= 1.02 + 1e-6
    assert report.verdict != Verdict.INFEASIBLE
    assert report.extras["module_dimension"] == 3


def test_poly_module_report_matches_norm_at_one_dimension(lifting):
    report = lifting.poly_module_report(ComplexPoly.from_coefficients([1.0, 1.0]), 1, 12)
    golden = (1 + math.sqrt(5)) / 2
    assert report.opnorm_lower == pytest.approx(golden, abs=1e-10)
    assert abs(report.supnorm_upper - golden) <= 0.02 * golden
    assert report.verdict == Verdict.INFEASIBLE


def test_poly_module_report_vanishing_compression(lifting):
    report = lifting.poly_module_report(ComplexPoly.monomial((2,)), 1, 3)
    assert report.opnorm_lower == 0.0
    assert report.supnorm_upper == 0.0
    assert report.verdict == Verdict.FEASIBLE


def test_coefficient_l1_bound_dominates_sup(settings):
    q = ComplexPoly(2, {(0, 0): 0.2, (1, 0): -0.5j, (1, 2): 0.3})
    grid = LiftingService(settings).sphere.boundary_grid(2)
    assert coefficient_l1_bound(q) == pytest.approx(1.0)
    assert np.max(np.abs(q.evaluate(grid))) <= coefficient_l1_bound(q)


@pytest.fixture
def interp_service(settings) -> InterpolationService:
    return InterpolationService(settings)
