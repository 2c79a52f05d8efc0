"""
商模与压缩算子测试
"""
import math

import numpy as np
import pytest

from app.errors import InvalidInputError
from app.models import multi_index as mi
from app.models.interpolation import InterpolationData
from app.models.modules import basis_labels
from app.models.poly import ComplexPoly
from app.services.quotient_service import QuotientService
from app.services.sphere_service import SphereService


@pytest.fixture
def quotient(settings) -> QuotientService:
    return QuotientService(settings)


def test_build_qm_dimensions(quotient):
    q1 = quotient.build_qm(1, 2)
    assert q1.dimension == 3
    assert basis_labels(q1) == [[0, 0], [1, 0], [0, 1]]
    assert quotient.build_qm(2, 2).dimension == 6
    assert quotient.build_qm(3, 3).dimension == math.comb(6, 3)
    assert np.all(q1.norms > 0)


def test_build_qm_graded_order(quotient):
    basis = quotient.build_qm(2, 2).basis
    assert list(basis) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_build_qm_rejects_negative_degree(quotient):
    with pytest.raises(InvalidInputError):
        quotient.build_qm(-1, 2)


def test_build_qz_stores_gram(quotient):
    module = quotient.build_qz([[0.0], [0.5]])
    assert module.dimension == 2
    assert np.allclose(module.gram, [[1.0, 1.0], [1.0, 4 / 3]])


def test_project_qz_examples(quotient):
    single = quotient.project_qz([0.3j], quotient.build_qz([[0.2, 0.1]]))
    assert single.coeffs[0] == pytest.approx(0.3j / quotient.hardy.szego_kernel([0.2, 0.1], [0.2, 0.1]))

    module = quotient.build_qz([[0.0], [0.5]])
    combo = quotient.project_qz([0.0, 0.5], module)
    assert np.allclose(combo.coeffs, [-1.5, 1.5])

    zero = quotient.project_qz([0.0, 0.0], module)
    assert zero.is_zero()


def test_project_qz_reproduces_values(quotient, ball_points, rng):
    points = ball_points(5, 3)
    values = rng.uniform(-1, 1, 5) + 1j * rng.uniform(-1, 1, 5)
    combo = quotient.project_qz(values, quotient.build_qz(points))
    residual = quotient.hardy.eval_kernel_combo(combo, points) - values
    assert np.linalg.norm(residual) <= 1e-10 * np.linalg.norm(values)


def test_project_qz_rejects_wrong_length(quotient):
    with pytest.raises(InvalidInputError):
        quotient.project_qz([1.0], quotient.build_qz([[0.0], [0.5]]))


def test_project_qm_truncates(quotient):
    p = ComplexPoly(2, {(0, 0): 1.0, (1, 0): 2.0, (1, 1): 3.0})
    assert quotient.project_qm(p, 2) == p
    assert quotient.project_qm(ComplexPoly.monomial((3, 0)), 2).is_zero()

    residual = p - quotient.project_qm(p, 1)
    for alpha in mi.multi_indices_up_to(1, 2):
        assert quotient.hardy.h2_inner(residual, ComplexPoly.monomial(alpha)) == 0


def test_compress_on_qm_examples(quotient):
    module = quotient.build_qm(2, 2)
    identity = quotient.compress_on_qm(ComplexPoly.constant(2, 1.0), module)
    assert np.allclose(identity.matrix, np.eye(6))
    scaled = quotient.compress_on_qm(ComplexPoly.constant(2, 2 - 1j), module)
    assert np.allclose(scaled.matrix, (2 - 1j) * np.eye(6))

    shift = quotient.compress_on_qm(ComplexPoly.coordinate(0, 1), quotient.build_qm(1, 1))
    assert np.allclose(shift.matrix, [[0, 0], [1, 0]])


def test_compress_on_qm_degree_zero(quotient):
    module = quotient.build_qm(0, 2)
    op = quotient.compress_on_qm(ComplexPoly(2, {(0, 0): 3.0, (1, 0): 1.0}), module)
    assert op.matrix.shape == (1, 1)
    assert op.matrix[0, 0] == pytest.approx(3.0)
    assert quotient.gram_operator_norm(op) == pytest.approx(3.0)


def test_high_degree_monomials_orthogonal_to_qm(quotient):
    for n in (1, 2, 3):
        for m in range(5):
            low = mi.multi_indices_up_to(m, n)
            high = mi.multi_indices_between(m + 1, m + 3, n)
            for alpha in low:
                for beta in high:
                    inner = quotient.hardy.h2_inner(ComplexPoly.monomial(alpha), ComplexPoly.monomial(beta))
                    assert inner == 0


def test_monomials_span_qm(quotient):
    for n, m in [(1, 3), (2, 2), (3, 2)]:
        module = quotient.build_qm(m, n)
        rows = [
            quotient.coordinates(quotient.project_qm(ComplexPoly.monomial(alpha), m), module)
            for alpha in module.basis
        ]
        assert np.linalg.matrix_rank(np.array(rows)) == module.dimension


def test_compressions_commute_with_coordinate_shifts(quotient):
    module = quotient.build_qm(3, 2)
    p = ComplexPoly(2, {(0, 0): 0.5, (1, 0): -1j, (1, 1): 0.25, (0, 3): 2.0})
    sp = quotient.compress_on_qm(p, module)
    for i in range(2):
        sz = quotient.compress_on_qm(ComplexPoly.coordinate(i, 2), module)
        assert np.max(np.abs((sp @ sz).matrix - (sz @ sp).matrix)) <= 1e-12


def test_qm_norm_bounded_by_grid_sup(settings, quotient):
    p = ComplexPoly(2, {(1, 0): 1.0, (0, 1): 0.5, (1, 1): -0.3j})
    grid_sup = float(np.max(np.abs(p.evaluate(SphereService(settings).boundary_grid(2)))))
    norm = quotient.gram_operator_norm(quotient.compress_on_qm(p, quotient.build_qm(2, 2)))
    assert norm <= 1.05 * grid_sup


def test_compress_on_qz_constant_and_adjoint(quotient, ball_points):
    module = quotient.build_qz(ball_points(4, 2))
    constant = quotient.compress_on_qz([0.7j] * 4, module)
    assert np.allclose(constant.matrix, 0.7j * np.eye(4), atol=1e-10)

    values = np.array([0.1, -0.2j, 0.3 + 0.1j, 0.4])
    op = quotient.compress_on_qz(values, module)
    adjoint = quotient.gram_adjoint(op)
    for i in range(4):
        assert np.allclose(adjoint[:, i], np.conj(values[i]) * np.eye(4)[:, i], atol=1e-10)


def test_compress_poly_on_qz_uses_node_values(quotient, ball_points):
    points = ball_points(3, 2)
    module = quotient.build_qz(points)
    p = ComplexPoly(2, {(1, 0): 1.0, (0, 2): 0.5j})
    op = quotient.compress_poly_on_qz(p, module)
    assert np.allclose(op.node_values, p.evaluate(points))


def test_identity_map_on_two_points_has_norm_one(quotient):
    op = quotient.compress_on_qz([0.0, 0.5], quotient.build_qz([[0.0], [0.5]]))
    assert quotient.gram_operator_norm(op) == pytest.approx(1.0, abs=1e-8)


def test_module_map_examples(quotient, ball_points):
    points = ball_points(3, 2)
    zero = quotient.module_map(points, [0.0, 0.0, 0.0])
    assert quotient.gram_operator_norm(zero) == 0.0
    constant = quotient.module_map(points, [0.3 - 0.4j] * 3)
    assert quotient.gram_operator_norm(constant) == pytest.approx(0.5, abs=1e-8)


def test_module_map_homogeneity(quotient, ball_points, rng):
    points = ball_points(4, 2)
    values = 0.5 * (rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4))
    base = quotient.gram_operator_norm(quotient.module_map(points, values))
    for scale in (0.5, 2.0, -1.5j):
        scaled = quotient.gram_operator_norm(quotient.module_map(points, scale * values))
        assert abs(scaled - abs(scale) * base) <= 1e-10 * max(1.0, abs(scale) * base)


def test_gram_operator_norm_two_dimensional_example(quotient):
    data = InterpolationData([[0.0, 0.0], [0.5, 0.0]], [0.0, 0.5])
    op = quotient.module_map(data)
    assert quotient.gram_operator_norm(op) == pytest.approx(2 / math.sqrt(7), abs=1e-8)
    assert quotient.psd_route(op.module, op.node_values) == pytest.approx(2 / math.sqrt(7), abs=1e-8)


def test_psd_matrix_at_one_matches_pick_matrix(quotient):
    z = np.array([0.0, 0.5, -0.3j])
    w = np.array([0.1, 0.4, 0.2 + 0.1j])
    module = quotient.build_qz(z[:, None])
    at_one = (1.0 - np.outer(w, w.conj())) * module.gram
    pick = (1.0 - np.outer(w, w.conj())) / (1.0 - np.outer(z, z.conj()))
    assert np.allclose(np.linalg.eigvalsh(at_one), np.linalg.eigvalsh(pick))


def test_qm_adjoint_is_conjugate_transpose(quotient):
    module = quotient.build_qm(2, 2)
    op = quotient.compress_on_qm(ComplexPoly(2, {(1, 0): 1.0, (0, 1): 1j}), module)
    assert np.array_equal(quotient.gram_adjoint(op), op.matrix.conj().T)
