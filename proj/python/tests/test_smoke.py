import math

import numpy as np
import pytest

import sqm


def test_trace_product_identity():
    assert sqm.trace_product([np.eye(2, dtype=complex)]) == pytest.approx(2.0)


def test_rank_one_is_projection():
    p = sqm.random_rank_one(4, 7)
    assert np.allclose(p, p.conj().T, atol=1e-12)
    assert np.allclose(p @ p, p, atol=1e-12)
    assert np.trace(p).real == pytest.approx(1.0, abs=1e-12)


def test_spectrum_sorted():
    w, v = sqm.hermitian_spectrum(np.diag([3.0, 1.0, 2.0]).astype(complex))
    assert list(w) == pytest.approx([1.0, 2.0, 3.0])
    assert np.allclose(v.conj().T @ v, np.eye(3), atol=1e-12)


def test_non_hermitian_rejected():
    with pytest.raises(sqm.ValidationError):
        sqm.hermitian_spectrum(np.array([[0, 1], [0, 0]], dtype=complex))


def test_single_position_projection_rejected():
    with pytest.raises(ValueError):
        sqm.prior_prob_pvm([[(-1, 1)], [(0, 2)]], [0.0, 1.0], 1)


def test_doubleslit_full_screen():
    p = sqm.doubleslit_prob([(-1, 1)], [(-1.1, -0.9), (0.9, 1.1)], [(-1e4, 1e4)], [0.0, 1.0, 2.0])
    assert p["probability"] == pytest.approx(1.0, abs=1e-3)


def test_kappa_reduction():
    assert max(sqm.kappa_suite("free", 5, 5)) <= 1e-10


def test_povm_completeness_and_naimark():
    fam = sqm.CoherentFamily.gauss_product(3, 2, 3)
    assert fam.completeness_residual() <= 1e-12
    north = fam.element((0.0, 0.0, 1.6))
    rest = np.eye(3) - north
    v, proj, residual = sqm.naimark_dilation([north, rest])
    assert residual <= 1e-12
    assert np.allclose(v.conj().T @ v, np.eye(3), atol=1e-12)


def test_sorkin_suite():
    assert max(sqm.sorkin_suite(20)) <= 1e-12


def test_zeta_reduction():
    vs = [sqm.random_unit_vector(4, s) for s in range(6)]
    direct, reduced = sqm.zeta_n(vs), sqm.zeta_reduce(vs)
    assert abs(direct - reduced) <= 1e-11 * abs(direct)


def test_octant_phase():
    h = sqm.polygon_holonomy(2, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], 256)
    assert h == pytest.approx(complex(math.cos(math.pi / 4), -math.sin(math.pi / 4)), abs=1e-10)


def test_car_law():
    u, v = np.eye(7)[0], np.eye(7)[1]
    assert sqm.car_prob(u, v, u, v)["trace_value"] == pytest.approx(1.0)
    assert sqm.car_prob(u, v, v, u)["trace_value"] == pytest.approx(0.0, abs=1e-15)
    assert max(r for r, _ in sqm.car_suite(7, 50)) <= 1e-12


def test_car_structure():
    s = sqm.structure_check(3)
    assert (s["algebra_dim"], s["center_dim"], s["blocks"]) == (8, 2, [2, 2])
    assert sqm.structure_check(5, even_part=True)["matches"]


def test_weyl_grid():
    rep = sqm.WeylGridRep(math.sqrt(math.pi * 128 / 2), 128)
    assert sqm.weyl_relation_residual(rep, np.array([0.5, 0.2]), np.array([-0.3, 0.4])) <= 1e-6
    w = rep.weyl(np.array([0.5, 0.2]))
    assert np.allclose(w.conj().T @ w, np.eye(128), atol=1e-12)


def test_window_violation():
    rep = sqm.WeylGridRep(8.0, 64)
    with pytest.raises(sqm.ValidationError):
        rep.field_pvm(np.array([1.0, 0.0]), [(-7.8, 7.8)])
