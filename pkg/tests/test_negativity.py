import inspect

import numpy as np
import pytest

from conftest import random_separable
from negmeter import multicopy as mc
from negmeter import negativity as ng
from negmeter import states as st

MIXED = np.eye(4) / 4


class TestCoefficients:
    def test_mixed_from_moments(self):
        m = st.pt_moments(MIXED)
        c = ng.coeffs_from_moments(m, 1 / 256)
        assert (c.a0, c.a1, c.a2) == pytest.approx((3 / 16, 3 / 2, 9 / 2))
        assert c.a3 == 6.0 and c.a4 == 3.0

    def test_singlet_from_moments(self):
        m = st.pt_moments(st.singlet())
        c = ng.coeffs_from_moments(m, -1 / 16)
        assert (c.a0, c.a1, c.a2) == pytest.approx((-3.0, -6.0, 0.0))

    def test_mixed_from_g(self):
        c = ng.coeffs_from_g(mc.g_table(MIXED))
        assert (c.a0, c.a1, c.a2) == pytest.approx((3 / 16, 3 / 2, 9 / 2))

    def test_singlet_from_g(self):
        c = ng.coeffs_from_g(mc.g_table(st.singlet()))
        assert (c.a0, c.a1, c.a2) == pytest.approx((-3.0, -6.0, 0.0), abs=1e-12)

    def test_two_routes_agree(self, random_mixed_states):
        for rho in random_mixed_states[:40]:
            m = st.pt_moments(rho)
            cm = ng.coeffs_from_moments(m, ng.det_pt_from_moments(m))
            cg = ng.coeffs_from_g(mc.g_table(rho))
            assert cg.a0 == pytest.approx(cm.a0, abs=1e-9)
            assert cg.a1 == pytest.approx(cm.a1, abs=1e-9)
            assert cg.a2 == pytest.approx(cm.a2, abs=1e-9)


class TestDetPt:
    def test_mixed(self):
        assert ng.det_pt_from_moments(st.pt_moments(MIXED)) == \
            pytest.approx(1 / 256)

    def test_singlet(self):
        assert ng.det_pt_from_moments(st.pt_moments(st.singlet())) == \
            pytest.approx(-1 / 16)

    def test_matches_direct_determinant(self, random_mixed_states):
        for rho in random_mixed_states[:40]:
            assert abs(ng.det_pt_from_moments(st.pt_moments(rho))
                       - st.det_pt_direct(rho)) < 1e-10


class TestSolve:
    def test_mixed_no_positive_root(self):
        assert ng.solve_negativity(
            ng.QuarticCoefficients(3 / 16, 3 / 2, 9 / 2)) == 0.0

    def test_singlet_root_at_one(self):
        # substitution check: 3 + 6 + 0 - 6 - 3 = 0
        assert 3 + 6 + 0 - 6 - 3 == 0
        assert ng.solve_negativity(
            ng.QuarticCoefficients(-3.0, -6.0, 0.0)) == pytest.approx(1.0)

    def test_werner_09(self):
        c = ng.coeffs_from_g(mc.g_table(st.werner(0.9)))
        assert ng.solve_negativity(c) == pytest.approx(0.85, abs=1e-9)

    def test_roots_are_scaled_pt_eigenvalues(self, random_mixed_states):
        for rho in random_mixed_states[:20]:
            m = st.pt_moments(rho)
            c = ng.coeffs_from_moments(m, ng.det_pt_from_moments(m))
            roots = sorted(r.real for r in ng.quartic_roots(c))
            lam = sorted(-2.0 * st.pt_eigenvalues(rho), )
            assert np.allclose(roots, lam, atol=1e-8)

    def test_separable_mixtures_give_zero(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            rho = random_separable(rng)
            c = ng.coeffs_from_g(mc.g_table(rho))
            assert ng.solve_negativity(c) == 0.0

    def test_end_to_end_against_oracle(self, random_mixed_states,
                                       random_pure_states):
        for rho in random_mixed_states[:40] + random_pure_states[:40]:
            n = ng.solve_negativity(ng.coeffs_from_g(mc.g_table(rho)))
            assert abs(n - st.negativity_oracle(rho)) < 1e-8

    def test_ambiguous_roots_raises(self):
        # 3 (N - 0.2)(N - 0.5)(N + 1)(N + 1.7): two positive roots
        poly = 3.0 * np.poly([0.2, 0.5, -1.0, -1.7])
        assert poly[1] == pytest.approx(6.0)
        c = ng.QuarticCoefficients(a0=poly[4], a1=poly[3], a2=poly[2])
        with pytest.raises(ng.AmbiguousRootsError):
            ng.solve_negativity(c)
        assert ng.solve_negativity_noisy(c) == pytest.approx(0.5, abs=1e-9)

    def test_noisy_rescue_with_negative_a0(self):
        # a0 < 0 always admits a positive root; the noisy path must find it
        c = ng.QuarticCoefficients(a0=-1e-4, a1=1.0, a2=4.0)
        n = ng.solve_negativity_noisy(c)
        assert 0 < n < 1e-3


class TestWitness:
    def test_singlet(self):
        w = ng.witness_from_g(mc.g_table(st.singlet()))
        assert w.det_pt == pytest.approx(-1 / 16, abs=1e-12)
        assert w.entangled
        assert w.margin == pytest.approx(1 / 16, abs=1e-12)

    def test_product_states_not_entangled(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            rho = random_separable(rng, n_terms=1)
            w = ng.witness_from_g(mc.g_table(rho))
            assert w.det_pt >= -1e-10
            assert not (w.det_pt < -1e-10)

    def test_werner_boundary(self):
        w = ng.witness_from_g(mc.g_table(st.werner(1 / 3)))
        assert abs(w.det_pt) < 1e-10
        assert not w.entangled

    def test_witness_needs_only_eight_observables(self):
        params = inspect.signature(ng.a0_from_witness_observables).parameters
        assert len(params) == 8
        assert all(p.kind is inspect.Parameter.KEYWORD_ONLY
                   for p in params.values())
        for excluded in ("g13", "g24", "g13_46"):
            assert excluded not in params

    def test_a0_equals_48_det(self, random_mixed_states):
        for rho in random_mixed_states[:40]:
            w = ng.witness_from_g(mc.g_table(rho))
            assert abs(w.det_pt - st.det_pt_direct(rho)) < 1e-9

    def test_sign_agrees_with_eigenvalue_verdict(self, random_mixed_states,
                                                 random_pure_states):
        for rho in random_mixed_states[:40] + random_pure_states[:40]:
            w = ng.witness_from_g(mc.g_table(rho))
            if abs(w.det_pt) > 1e-10:
                assert w.entangled == (st.negativity_oracle(rho) > 0)
