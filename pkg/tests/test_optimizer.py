import numpy as np
import pytest
from numpy.testing import assert_allclose

from poldeg import groups, polarization
from poldeg.errors import DimMismatch, OutsideTriangle
from poldeg.optimizer import (
    Zone,
    classify_zone,
    degree_hs_analytic,
    degree_hs_oracle,
    degree_trace_distance,
    diag_from_n3n8,
    hs_distance_sq,
    inside_triangle,
    n3n8_from_diag,
    overlap_transform,
    trace_distance_oracle,
)
from poldeg.polarization import make_coherence, random_coherence, to_stokes


def diag_state(n3, n8):
    vec = np.zeros(8)
    vec[2] = n3
    vec[7] = n8
    return polarization.from_stokes(vec)


class TestHsDistance:
    def test_zero_for_equal(self, rng):
        rho = random_coherence(3, rng)
        assert hs_distance_sq(rho, rho) == 0.0

    def test_orthogonal_pure_states(self):
        a = make_coherence(np.diag([1.0, 0.0]))
        b = make_coherence(np.diag([0.0, 1.0]))
        assert hs_distance_sq(a, b) == pytest.approx(1.0)

    def test_overlap_identity_under_conjugation(self, rng):
        for seed in range(30):
            rho = random_coherence(3, rng)
            g = groups.sample_group(3, 1, seed)[0]
            rho_g = groups.conjugate(rho, g)
            lhs = hs_distance_sq(rho, rho_g)
            rhs = polarization.purity(rho) - np.trace(rho.matrix @ rho_g.matrix).real
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_dim_mismatch(self, rng):
        with pytest.raises(DimMismatch):
            hs_distance_sq(random_coherence(2, rng), random_coherence(3, rng))


class TestAnalytic:
    def test_2d_diagonal(self):
        res = degree_hs_analytic(make_coherence(np.diag([0.75, 0.25])))
        assert res.degree == pytest.approx(0.5, abs=1e-12)
        assert res.min_overlap == pytest.approx(0.375, abs=1e-12)
        assert res.method == "analytic"

    def test_2d_matches_stokes_formula(self, rng):
        for _ in range(200):
            rho = random_coherence(2, rng)
            res = degree_hs_analytic(rho)
            n2 = float(np.linalg.norm(to_stokes(rho)) ** 2)
            assert res.min_overlap == pytest.approx((1 - n2) / 2, abs=1e-10)

    def test_3d_two_equal_smallest(self):
        lam1, lam3 = 0.6, 0.2
        res = degree_hs_analytic(make_coherence(np.diag([lam1, lam3, lam3])))
        assert res.min_overlap == pytest.approx(2 * lam1 * lam3 + lam3 ** 2, abs=1e-12)

    def test_3d_generic_diagonal(self):
        res = degree_hs_analytic(make_coherence(np.diag([0.5, 0.3, 0.2])))
        assert res.degree == pytest.approx(0.3, abs=1e-12)
        assert res.min_overlap == pytest.approx(0.29, abs=1e-12)

    def test_argmin_achieves_minimum(self, rng):
        for dim in (2, 3):
            for _ in range(100):
                rho = random_coherence(dim, rng)
                res = degree_hs_analytic(rho)
                rho_g = groups.conjugate(rho, res.argmin)
                achieved = np.trace(rho.matrix @ rho_g.matrix).real
                assert achieved == pytest.approx(res.min_overlap, abs=1e-10)

    def test_result_invariants(self, rng):
        for dim in (2, 3):
            for _ in range(200):
                rho = random_coherence(dim, rng)
                res = degree_hs_analytic(rho)
                assert res.degree ** 2 == pytest.approx(
                    polarization.purity(rho) - res.min_overlap, abs=1e-9)
                assert res.min_overlap <= polarization.purity(rho) + 1e-12

    def test_invariant_under_conjugation(self, rng):
        for seed in range(30):
            rho = random_coherence(3, rng)
            g = groups.sample_group(3, 1, seed)[0]
            a = degree_hs_analytic(rho)
            b = degree_hs_analytic(groups.conjugate(rho, g))
            assert abs(a.degree - b.degree) <= 1e-10
            assert abs(a.min_overlap - b.min_overlap) <= 1e-10

    def test_invariant_state_uses_identity(self):
        res = degree_hs_analytic(make_coherence(np.eye(3)))
        assert res.degree == 0.0
        assert_allclose(res.argmin.u, np.eye(3))
        assert res.min_overlap == pytest.approx(1 / 3, abs=1e-12)

    def test_agrees_with_closed_form_degrees_2d(self, rng):
        for _ in range(200):
            rho = random_coherence(2, rng)
            res = degree_hs_analytic(rho)
            assert abs(res.degree - polarization.degree_length(rho)) <= 1e-10
            assert abs(res.degree - polarization.degree_purity(rho)) <= 1e-10
            assert abs(res.degree - polarization.degree_eigen(rho)) <= 1e-10


class TestOracle:
    def test_pure_2d_reaches_zero_overlap(self, rng):
        psi = rng.normal(size=2) + 1j * rng.normal(size=2)
        rho = make_coherence(np.outer(psi, psi.conj()))
        res = degree_hs_oracle(rho, samples=10_000, seed=4, refine_steps=20)
        assert res.min_overlap == pytest.approx(0.0, abs=1e-6)

    def test_invariant_state(self):
        rho = make_coherence(np.eye(3))
        res = degree_hs_oracle(rho, samples=100, seed=1, refine_steps=2)
        assert res.min_overlap == pytest.approx(1 / 3, abs=1e-12)
        # the degree is a square root of a round-off-level residual here
        assert res.degree == pytest.approx(0.0, abs=1e-7)

    def test_frozen_benchmark(self):
        rho = make_coherence(np.diag([0.5, 0.3, 0.2]))
        res = degree_hs_oracle(rho, samples=100_000, seed=7, refine_steps=50)
        assert res.min_overlap == pytest.approx(0.29, abs=1e-4)
        assert res.method == "oracle"
        assert res.refinement_steps == 50

    def test_monotone_in_samples_and_sweeps(self, rng):
        rho = random_coherence(3, rng)
        base = degree_hs_oracle(rho, samples=500, seed=11, refine_steps=2)
        more_samples = degree_hs_oracle(rho, samples=2000, seed=11, refine_steps=2)
        more_sweeps = degree_hs_oracle(rho, samples=500, seed=11, refine_steps=8)
        assert more_samples.min_overlap <= base.min_overlap + 1e-15
        assert more_sweeps.min_overlap <= base.min_overlap + 1e-15

    def test_tracks_analytic_on_random_states(self, rng):
        for _ in range(10):
            rho = random_coherence(3, rng)
            ana = degree_hs_analytic(rho)
            orc = degree_hs_oracle(rho, samples=10_000, seed=13, refine_steps=20)
            assert orc.min_overlap >= ana.min_overlap - 1e-9
            assert orc.min_overlap <= ana.min_overlap + 1e-3

    def test_rejects_zero_samples(self, rng):
        with pytest.raises(ValueError):
            degree_hs_oracle(random_coherence(2, rng), samples=0, seed=0, refine_steps=1)


class TestTraceDistance:
    def test_2d_diagonal(self):
        assert degree_trace_distance(make_coherence(np.diag([0.75, 0.25]))) == \
            pytest.approx(0.5, abs=1e-12)

    def test_3d_diagonal(self):
        assert degree_trace_distance(make_coherence(np.diag([0.5, 0.3, 0.2]))) == \
            pytest.approx(0.3, abs=1e-12)

    def test_invariant_state(self):
        assert degree_trace_distance(make_coherence(np.eye(3))) == pytest.approx(0.0, abs=1e-12)

    def test_oracle_cannot_beat_analytic_value(self, rng):
        for _ in range(5):
            rho = random_coherence(3, rng)
            ana = degree_hs_analytic(rho)
            res = trace_distance_oracle(rho, samples=5000, seed=17, refine_steps=10)
            assert res.value <= ana.degree + 1e-9
            assert res.value >= ana.degree - 1e-2  # loose here; tight in acceptance


class TestZones:
    def test_zone_examples(self):
        z = classify_zone(0.2, 0.4)
        assert (z.zone, z.theta, z.beta_angles) == (
            Zone.ZONE1, pytest.approx(2 * np.pi / 3), (np.pi, np.pi, np.pi))
        z = classify_zone(0.4, 0.1)
        assert (z.zone, z.theta, z.beta_angles) == (Zone.ZONE2, 0.0, (0.0, np.pi, 0.0))
        z = classify_zone(0.2, -0.4)
        assert (z.zone, z.theta, z.beta_angles) == (
            Zone.ZONE3, pytest.approx(-2 * np.pi / 3), (0.0, 0.0, np.pi))

    def test_degenerate_axis(self):
        z = classify_zone(0.0, -0.5)
        assert z.zone is Zone.DEGENERATE
        assert np.isinf(z.x)

    def test_outside_rejected(self):
        with pytest.raises(OutsideTriangle):
            classify_zone(0.0, 0.6)
        with pytest.raises(OutsideTriangle):
            classify_zone(1.0, 0.4)

    def test_inside_triangle_vertices(self):
        assert inside_triangle(0.0, -1.0)
        assert inside_triangle(np.sqrt(3) / 2, 0.5)
        assert inside_triangle(-np.sqrt(3) / 2, 0.5)
        assert not inside_triangle(0.0, 0.50001)

    def test_beta_conjugation_reaches_minimum(self, rng):
        for _ in range(100):
            n8 = rng.uniform(-1.0, 0.5)
            lo = max(-(1 + n8), -(2 - n8)) / np.sqrt(3)
            hi = -lo
            n3 = rng.uniform(lo * 0.98, hi * 0.98)
            if abs(n3) < 1e-12:
                continue
            rho = diag_state(n3, n8)
            z = classify_zone(n3, n8)
            b1, b2, b3 = z.beta_angles
            g = groups.su3_from_euler(groups.EulerSU3(0, b1, 0, b2, 0, b3, 0, 0))
            achieved = np.trace(rho.matrix @ groups.conjugate(rho, g).matrix).real
            assert achieved == pytest.approx(
                degree_hs_analytic(rho).min_overlap, abs=1e-10)

    def test_six_permutation_images_share_degree(self):
        from itertools import permutations

        d = diag_from_n3n8(0.2, 0.1)
        degrees = set()
        for perm in permutations(d):
            n3, n8 = n3n8_from_diag(*perm)
            rho = diag_state(n3, n8)
            degrees.add(round(degree_hs_analytic(rho).degree, 12))
        assert len(degrees) == 1


class TestOverlapTransform:
    def test_theta_zero_reflects_n3(self):
        assert overlap_transform(0.3, -0.2, 0.0) == pytest.approx((-0.3, -0.2))

    def test_degenerate_axis_matrix(self):
        n3g, n8g = overlap_transform(0.0, 0.5, 2 * np.pi / 3)
        assert n3g == pytest.approx(-np.sqrt(3) / 4, abs=1e-12)
        assert n8g == pytest.approx(-0.25, abs=1e-12)
        assert 0.0 * n3g + 0.5 * n8g == pytest.approx(-0.5 ** 2 / 2, abs=1e-12)

    def test_image_reproduces_analytic_minimum(self, rng):
        for _ in range(100):
            n8 = rng.uniform(-0.95, 0.45)
            lo = max(-(1 + n8), -(2 - n8)) / np.sqrt(3)
            n3 = rng.uniform(lo * 0.95, -lo * 0.95)
            if abs(n3) < 1e-9:
                continue
            z = classify_zone(n3, n8)
            i3, i8 = overlap_transform(n3, n8, z.theta)
            overlap = (1 + 2 * (n3 * i3 + n8 * i8)) / 3
            rho = diag_state(n3, n8)
            assert overlap == pytest.approx(
                degree_hs_analytic(rho).min_overlap, abs=1e-10)

    def test_image_stays_norm_preserving(self, rng):
        for theta in (0.0, 2 * np.pi / 3, -2 * np.pi / 3):
            v = rng.normal(size=2)
            img = overlap_transform(v[0], v[1], theta)
            assert np.hypot(*img) == pytest.approx(np.hypot(*v), abs=1e-12)


class TestDiagMaps:
    def test_round_trip(self, rng):
        for _ in range(100):
            n8 = rng.uniform(-1.0, 0.5)
            lo = max(-(1 + n8), -(2 - n8)) / np.sqrt(3)
            n3 = rng.uniform(lo, -lo)
            d = diag_from_n3n8(n3, n8)
            assert sum(d) == pytest.approx(1.0, abs=1e-12)
            back = n3n8_from_diag(*d)
            assert back == pytest.approx((n3, n8), abs=1e-12)
