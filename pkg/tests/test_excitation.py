import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phloewner.errors import InvalidParameter
from phloewner.excitation import ExperimentPlan, add_noise, design_input, generate_record, select_interpolation_points
from phloewner.freqest import dft_coefficients
from phloewner.lti import benchmark_ladder, ph_to_descriptor


class TestSelectPoints:
    def test_full_setup(self):
        plan = select_interpolation_points(10000, 100)
        first = plan.indices[:50]
        assert min(first) == 1 and max(first) == 4999
        assert plan.k_min == 2500
        assert plan.r == 100
        assert plan.is_conjugate_closed

    def test_small_case(self):
        assert select_interpolation_points(16, 4).indices == (1, 7, 15, 9)

    def test_smallest_plan(self):
        assert select_interpolation_points(32, 2).indices == (1, 31)

    def test_collisions_advance_upward(self):
        # log spacing of 10 bins in [1, 7] collides heavily at the low end
        plan = select_interpolation_points(16, 12)
        assert plan.indices[:6] == (1, 2, 3, 4, 5, 7)

    def test_too_many_points(self):
        with pytest.raises(InvalidParameter):
            select_interpolation_points(16, 16)

    def test_default_kmin_leaves_too_few_rows(self):
        with pytest.raises(InvalidParameter):
            select_interpolation_points(16, 14)
        assert select_interpolation_points(16, 14, k_min=2).r == 14

    @pytest.mark.parametrize("m", [0, 3, -2])
    def test_bad_m(self, m):
        with pytest.raises(InvalidParameter):
            select_interpolation_points(64, m)

    @given(st.integers(8, 5000), st.data())
    @settings(max_examples=60, deadline=None)
    def test_conjugate_closure(self, K, data):
        hi = K // 2 - 1
        # the default k_min = K//4 must leave at least m steady-state rows
        m = 2 * data.draw(st.integers(1, max(1, min(hi, (K - K // 4) // 2, 60))))
        plan = select_interpolation_points(K, m)
        assert sorted(K - i for i in plan.indices) == sorted(plan.indices)
        assert len(set(plan.indices)) == m
        assert all(1 <= i <= hi for i in plan.indices[: m // 2])


class TestPlan:
    def test_validation(self):
        with pytest.raises(InvalidParameter):
            ExperimentPlan(8, (1, 1), 2)
        with pytest.raises(InvalidParameter):
            ExperimentPlan(8, (0,), 2)
        with pytest.raises(InvalidParameter):
            ExperimentPlan(8, (1, 7), 7)

    def test_points_on_unit_circle(self):
        plan = ExperimentPlan(8, (2,), 1)
        assert plan.points[0] == pytest.approx(1j)


class TestDesignInput:
    def test_k4_single_bin(self):
        u = design_input(ExperimentPlan(4, (1,), 1))
        np.testing.assert_allclose(u, np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]) / 4, atol=1e-16)

    def test_empty_plan(self):
        assert np.all(design_input(ExperimentPlan(8, (), 0)) == 0)

    @given(st.integers(8, 3000), st.integers(1, 30))
    @settings(max_examples=40, deadline=None)
    def test_dft_support(self, K, half):
        half = min(half, K // 2 - 1, (K - K // 4) // 2)
        plan = select_interpolation_points(K, 2 * half)
        U = dft_coefficients(design_input(plan))
        idx = list(plan.indices)
        np.testing.assert_allclose(U[idx], (1 + 1j) / K, atol=1e-13)
        off = np.delete(U, idx)
        assert np.abs(off).max(initial=0.0) < 1e-13


class TestNoise:
    def test_zero_sigma(self):
        y = np.arange(5.0) + 1j
        out = add_noise(y, 0.0, 3)
        np.testing.assert_array_equal(out, y)
        assert out is not y

    def test_std(self):
        out = add_noise(np.ones(100_000), 1e-2, 7)
        assert 0.0095 <= np.std(out - 1) <= 0.0105

    def test_unbiased(self):
        K, sigma = 100_000, 1e-2
        out = add_noise(np.ones(K), sigma, 11)
        assert abs(out.mean() - 1) < 5 * sigma / np.sqrt(K)

    def test_deterministic(self):
        y = np.linspace(0, 1, 100) * (1 + 2j)
        assert add_noise(y, 1e-3, 5).tobytes() == add_noise(y, 1e-3, 5).tobytes()
        assert add_noise(y, 1e-3, 5).tobytes() != add_noise(y, 1e-3, 6).tobytes()

    def test_negative_sigma(self):
        with pytest.raises(InvalidParameter):
            add_noise(np.ones(3), -1.0, 0)


def test_generate_record_metadata():
    plan = select_interpolation_points(256, 8, Ts=0.01)
    rec = generate_record(ph_to_descriptor(benchmark_ladder(2)), plan, sigma=1e-4, seed=3)
    assert rec.K == 256 and rec.Ts == 0.01
    assert rec.meta["rng"] == "PCG64"
    assert rec.meta["seed"] == 3 and rec.meta["disc"] == "zoh"
    np.testing.assert_array_equal(rec.u, design_input(plan))
