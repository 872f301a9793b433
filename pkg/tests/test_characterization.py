import numpy as np
import pytest

import liftlab as ll
from liftlab.errors import CharacterizationError, InvalidParameterError

from conftest import random_base
from oracles import circulant_cycle_spectrum


class TestRootOfUnity:
    def test_power_k_is_one(self):
        for k in range(1, 12):
            for j in range(k):
                assert abs(ll.RootOfUnity(k, j).value ** k - 1) <= 1e-12

    def test_zeroth_root_is_exactly_one(self):
        assert ll.RootOfUnity(7, 0).value == 1.0 + 0.0j

    def test_k2_root_is_exactly_minus_one(self):
        assert ll.RootOfUnity(2, 1).value == -1.0 + 0.0j

    def test_roots_listing(self):
        roots = ll.roots_of_unity(4)
        assert [r.j for r in roots] == [0, 1, 2, 3]
        assert roots[1].value == 1j

    def test_bad_exponent(self):
        with pytest.raises(InvalidParameterError):
            ll.RootOfUnity(3, 3)


class TestShiftMatrix:
    def test_root_one_equals_adjacency_exactly(self, rng):
        g = random_base(rng)
        sa = ll.random_shift_lift(g, 6, 1)
        h = ll.shift_matrix(g, sa, ll.RootOfUnity(6, 0))
        assert np.array_equal(h.data, ll.adjacency_matrix(g).astype(complex))

    def test_k2_matches_signed_adjacency_exactly(self, rng):
        g = random_base(rng)
        sa = ll.random_shift_lift(g, 2, 9)
        h = ll.shift_matrix(g, sa, ll.RootOfUnity(2, 1))
        signed = ll.signed_adjacency(g, ll.shift_to_signing(sa))
        assert np.array_equal(h.data, signed.astype(complex))

    def test_entries_and_hermitian_structure(self):
        g = ll.cycle_graph(3)
        sa = ll.ShiftAssignment(4, (1, 2, 3))
        h = ll.shift_matrix(g, sa, ll.RootOfUnity(4, 1)).data
        assert h[0, 1] == 1j and h[1, 0] == -1j        # shift 1 at t=i
        assert h[0, 2] == -1.0 and h[2, 0] == -1.0     # shift 2
        assert h[1, 2] == -1j and h[2, 1] == 1j        # shift 3
        assert np.array_equal(np.diag(h), np.zeros(3))

    def test_mismatched_assignment_rejected(self, k4):
        with pytest.raises(InvalidParameterError):
            ll.shift_matrix(k4, ll.ShiftAssignment(3, (0, 1)), ll.RootOfUnity(3, 1))
        with pytest.raises(InvalidParameterError):
            ll.shift_matrix(k4, ll.ShiftAssignment(3, (0,) * 6), ll.RootOfUnity(4, 1))


class TestLiftEigenvector:
    def test_root_one_duplicates_per_fiber(self):
        v = np.array([1.0, 2.0, 3.0])
        out = ll.lift_eigenvector(v, ll.RootOfUnity(2, 0), 2)
        # fiber-contiguous encoding: component (x, i) sits at row x*k + i
        assert np.array_equal(out, np.array([1, 1, 2, 2, 3, 3], dtype=complex))

    def test_component_formula(self, rng):
        v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        t = ll.RootOfUnity(4, 3)
        out = ll.lift_eigenvector(v, t, 4)
        for x in range(5):
            for i in range(4):
                assert out[x * 4 + i] == pytest.approx(t.value**i * v[x], abs=1e-12)

    def test_norm_scales_by_k(self, rng):
        v = rng.standard_normal(6)
        out = ll.lift_eigenvector(v, ll.RootOfUnity(3, 1), 3)
        assert np.vdot(out, out).real == pytest.approx(3 * np.dot(v, v), abs=1e-9)

    def test_zero_vector_rejected(self):
        with pytest.raises(InvalidParameterError):
            ll.lift_eigenvector(np.zeros(4), ll.RootOfUnity(2, 1), 2)


class TestVerifyCharacterization:
    def test_all_zero_shifts(self, rng):
        g = random_base(rng)
        k = 4
        sa = ll.ShiftAssignment(k, (0,) * g.num_edges)
        report = ll.verify_characterization(g, sa)
        base = ll.eig_symmetric(ll.adjacency_matrix(g)).values
        expected = np.sort(np.concatenate([base] * k))[::-1]
        assert ll.max_multiset_mismatch(report.pooled, expected) <= 1e-9

    def test_triangle_pooled_spectrum_is_nine_cycle(self):
        g = ll.cycle_graph(3)
        report = ll.verify_characterization(g, ll.ShiftAssignment(3, (1, 0, 0)))
        assert ll.max_multiset_mismatch(report.pooled,
                                        circulant_cycle_spectrum(9)) <= 1e-9

    def test_random_instances(self, rng):
        for _ in range(30):
            g = random_base(rng)
            k = int(rng.integers(2, 9))
            sa = ll.random_shift_lift(g, k, int(rng.integers(0, 2**63)))
            report = ll.verify_characterization(g, sa)
            assert report.max_multiset_mismatch <= 1e-6
            assert report.max_eigenvector_residual <= 1e-8 * report.lift_frobenius_norm
            assert report.max_cross_root_inner <= 1e-8

    def test_lambda_new_equals_max_root_radius(self, rng):
        for _ in range(10):
            g = random_base(rng)
            k = int(rng.integers(2, 6))
            sa = ll.random_shift_lift(g, k, int(rng.integers(0, 2**63)))
            lifted = ll.build_shift_lift(g, sa)
            split = ll.split_old_new(
                ll.eig_symmetric(ll.adjacency_matrix(g)),
                ll.eig_symmetric(ll.adjacency_matrix(lifted.graph)),
                k,
            )
            from_roots, radii = ll.lambda_new_from_roots(g, sa)
            assert len(radii) == k - 1
            assert abs(split.lambda_new - from_roots) <= 1e-6

    def test_impossible_tolerance_raises_with_offender(self, rng):
        g = random_base(rng)
        sa = ll.random_shift_lift(g, 3, 123)
        with pytest.raises(CharacterizationError, match="residual"):
            ll.verify_characterization(g, sa, tol=0.0)

    def test_report_per_root_ordering(self, rng):
        g = random_base(rng)
        k = 3
        sa = ll.random_shift_lift(g, k, 5)
        report = ll.verify_characterization(g, sa)
        assert len(report.per_root_spectra) == k
        base = ll.eig_symmetric(ll.adjacency_matrix(g)).values
        # root j=0 is t=1, whose spectrum is the old (base) spectrum
        assert ll.max_multiset_mismatch(report.per_root_spectra[0].values,
                                        base) <= 1e-9
