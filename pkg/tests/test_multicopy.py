import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hyp

from negmeter import invariants as iv
from negmeter import multicopy as mc
from negmeter import states as st

MIXED = np.eye(4) / 4

# 4^-m values for the maximally mixed state, per pairing size.
MIXED_G = {name: 4.0 ** -p.n_pairs for name, p in mc.PAIRINGS.items()}


class TestSingletProjector:
    def test_projector(self):
        p = mc.singlet_projector()
        assert np.allclose(p @ p, p, atol=1e-14)
        assert np.trace(p).real == pytest.approx(1.0)

    def test_antisymmetric_subspace_form(self):
        swap = np.eye(4)[[0, 2, 1, 3]]
        assert np.allclose(mc.singlet_projector(), (np.eye(4) - swap) / 2,
                           atol=1e-14)

    def test_pauli_form(self):
        p = np.eye(4, dtype=complex)
        for sig in st.PAULIS:
            p = p - np.kron(sig, sig)
        assert np.allclose(mc.singlet_projector(), p / 4, atol=1e-14)

    def test_bell_overlaps(self):
        p = mc.singlet_projector()
        psim = st.bell_ket("psi-")
        phip = st.bell_ket("phi+")
        assert np.vdot(psim, p @ psim).real == pytest.approx(1.0)
        assert abs(np.vdot(phip, p @ phip)) == pytest.approx(0.0, abs=1e-14)


class TestPairing:
    def test_duplicate_index_rejected(self):
        with pytest.raises(mc.InvalidPairingError):
            mc.Pairing(2, ((1, 3), (3, 4)))

    def test_index_out_of_range(self):
        with pytest.raises(mc.InvalidPairingError):
            mc.Pairing(1, ((1, 3),))

    def test_pairs_normalized_unordered(self):
        assert mc.Pairing(3, ((3, 6), (1, 4), (5, 2))) == \
            mc.Pairing(3, ((1, 4), (2, 5), (3, 6)))


class TestGExact:
    def test_mixed_four_to_minus_m(self):
        for name, pairing in mc.PAIRINGS.items():
            assert mc.g_exact(MIXED, pairing) == pytest.approx(
                MIXED_G[name], abs=1e-12), name

    def test_singlet_fidelity(self):
        assert mc.g_exact(st.singlet(), mc.PAIRINGS["g12"]) == pytest.approx(1.0)

    def test_singlet_cross_copy(self):
        # reduced state of either subsystem is I/2
        for name in ("g13", "g14", "g24"):
            assert mc.g_exact(st.singlet(), mc.PAIRINGS[name]) == \
                pytest.approx(0.25, abs=1e-12)

    def test_matches_dense_oracle(self, random_mixed_states):
        for rho in random_mixed_states[:10]:
            for pairing in mc.PAIRINGS.values():
                assert abs(mc.g_exact(rho, pairing)
                           - mc.g_exact_dense(rho, pairing)) < 1e-12

    def test_range(self, random_mixed_states):
        for rho in random_mixed_states[:20]:
            g = mc.g_table(rho)
            for name, val in g.as_dict().items():
                assert -1e-12 <= val <= 1 + 1e-12, name

    def test_singlet_fidelity_one_only_for_singlet(self, random_pure_states):
        for rho in random_pure_states[:20]:
            fid = mc.g_exact(rho, mc.PAIRINGS["g12"])
            overlap = np.trace(mc.singlet_projector() @ rho).real
            assert fid == pytest.approx(overlap, abs=1e-12)
            if fid > 1 - 1e-9:
                assert np.max(np.abs(rho - st.singlet())) < 1e-4


class TestGTable:
    def test_mixed(self):
        g = mc.g_table(MIXED)
        for name, val in g.as_dict().items():
            assert val == pytest.approx(MIXED_G[name], abs=1e-12)

    def test_singlet(self):
        g = mc.g_table(st.singlet())
        assert g.g12 == pytest.approx(1.0)
        for name in ("g13", "g14", "g24"):
            assert g[name] == pytest.approx(0.25, abs=1e-12)

    def test_field_order_is_canonical(self):
        assert tuple(mc.GTable(**MIXED_G).as_dict()) == mc.G_FIELDS


class TestCyclicEquivalence:
    def test_shift_by_four(self):
        p1 = mc.Pairing(4, ((5, 7), (2, 8)))
        p2 = mc.Pairing(4, ((1, 3), (4, 6)))
        assert mc.cyclically_equivalent(p1, p2)

    def test_shift_by_six(self):
        p1 = mc.Pairing(4, ((4, 6), (5, 7), (2, 8)))
        p2 = mc.Pairing(4, ((2, 4), (3, 5), (6, 8)))
        assert mc.cyclically_equivalent(p1, p2)

    def test_different_subsystem_types(self):
        assert not mc.cyclically_equivalent(mc.Pairing(2, ((1, 3),)),
                                            mc.Pairing(2, ((1, 4),)))

    def test_modular_wraparound_convention(self):
        # for six particles a shift of 2 maps 6 to 2
        p = mc.Pairing(3, ((4, 6),))
        assert p.shifted(2) == mc.Pairing(3, ((6, 2),))

    @given(data=hyp.data())
    @settings(max_examples=30, deadline=None)
    def test_shift_invariance_of_g(self, data):
        name = data.draw(hyp.sampled_from(sorted(mc.PAIRINGS)))
        pairing = mc.PAIRINGS[name]
        k = data.draw(hyp.integers(min_value=1, max_value=pairing.n_copies))
        rho = st.random_mixed(data.draw(hyp.integers(0, 1000)))
        shifted = pairing.shifted(2 * k)
        assert mc.cyclically_equivalent(pairing, shifted) or shifted == pairing
        assert mc.g_exact(rho, pairing) == pytest.approx(
            mc.g_exact(rho, shifted), abs=1e-12)

    def test_copy_permutation_invariance(self, random_mixed_states):
        rho = random_mixed_states[0]
        # relabeling whole copies: (2,3) is g14 with copies swapped
        assert mc.g_exact(rho, mc.Pairing(2, ((2, 3),))) == pytest.approx(
            mc.g_exact(rho, mc.PAIRINGS["g14"]), abs=1e-12)
        # three copies of the two-pair chain, all relabelings
        base = mc.PAIRINGS["g13_46"]
        val = mc.g_exact(rho, base)
        for perm in itertools.permutations(range(3)):
            pairs = []
            for a, b in base.pairs:
                ca, sa = divmod(a - 1, 2)
                cb, sb = divmod(b - 1, 2)
                pairs.append((2 * perm[ca] + sa + 1, 2 * perm[cb] + sb + 1))
            assert mc.g_exact(rho, mc.Pairing(3, tuple(pairs))) == \
                pytest.approx(val, abs=1e-12)


class TestBetaMoments:
    def test_mixed(self):
        assert mc.beta_moments_from_g(mc.g_table(MIXED)) == \
            pytest.approx((0.0, 0.0, 0.0), abs=1e-12)

    def test_singlet(self):
        assert mc.beta_moments_from_g(mc.g_table(st.singlet())) == \
            pytest.approx((-3.0, 3.0, -3.0), abs=1e-12)

    def test_matches_matrix_powers(self, random_mixed_states):
        for rho in random_mixed_states[:20]:
            beta = st.pauli_decompose(rho).beta
            got = mc.beta_moments_from_g(mc.g_table(rho))
            for n in (1, 2, 3):
                want = np.trace(np.linalg.matrix_power(beta, n))
                assert abs(got[n - 1] - want) < 1e-10


class TestClosure:
    RING = mc.Pairing(4, ((1, 4), (3, 6), (5, 8), (7, 2)))

    def test_mixed(self):
        g = mc.g_table(MIXED)
        assert mc.g_closure_14365872(g, 0.0) == pytest.approx(1 / 256, abs=1e-12)

    def test_singlet_matches_direct(self):
        rho = st.singlet()
        g = mc.g_table(rho)
        det_b = iv.det_beta_from_g(g)
        assert mc.g_closure_14365872(g, det_b) == pytest.approx(
            mc.g_exact_dense(rho, self.RING), abs=1e-10)

    def test_random_matches_direct(self, random_mixed_states):
        for rho in random_mixed_states[:20]:
            g = mc.g_table(rho)
            det_b = iv.det_beta_from_g(g)
            assert abs(mc.g_closure_14365872(g, det_b)
                       - mc.g_exact(rho, self.RING)) < 1e-9
