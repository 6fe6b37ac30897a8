import pytest
from mpmath import exp, mp, mpc, mpf, pi

from motivedim import (Bounds, ChartSingularity, MotiveSpec, ValidationError,
                       eta_map, exp_G_coords, gpoint_is_torsion,
                       is_torsion_log, mult_rank_gpoints, mult_rank_units,
                       serre_f, sigma, zeta)

from conftest import PREC, generic_log, generic_t


def two_pi_i():
    return 2j * pi + mpc(0)


class TestMotiveSpec:
    def test_valid(self, gauss, bounds, rng):
        spec = MotiveSpec(lattice=gauss, q=[generic_log(rng, gauss)],
                          p=[generic_log(rng, gauss)],
                          t=[[generic_t(rng)]], bounds=bounds)
        assert (spec.n, spec.r) == (1, 1)

    def test_point_on_lattice_rejected(self, gauss, bounds, rng):
        with pytest.raises(ValidationError):
            MotiveSpec(lattice=gauss, q=[gauss.omega1],
                       p=[generic_log(rng, gauss)], t=[[mpc(1)]],
                       bounds=bounds)

    def test_shape_mismatch_rejected(self, gauss, bounds, rng):
        with pytest.raises(ValidationError):
            MotiveSpec(lattice=gauss, q=[generic_log(rng, gauss)],
                       p=[generic_log(rng, gauss)], t=[[mpc(1)], [mpc(2)]],
                       bounds=bounds)

    def test_empty_rejected(self, gauss, bounds, rng):
        with pytest.raises(ValidationError):
            MotiveSpec(lattice=gauss, q=[], p=[generic_log(rng, gauss)],
                       t=[[]], bounds=bounds)


class TestExpGCoords:
    def test_third_coordinate_is_sigma_cubed(self, gauss, rng):
        p, q, t = generic_log(rng, gauss), generic_log(rng, gauss), \
            generic_t(rng)
        coords = exp_G_coords(p, t, q, gauss).coords
        with mp.workprec(PREC + 64):  # coords are produced at work precision
            assert coords[2] == sigma(p, gauss) ** 3

    def test_t_zero_fourth_coordinate(self, gauss, rng):
        # sigma(p)^3 f_q(p) = sigma(p)^2 sigma(p+q) e^{-zeta(q) p} / sigma(q)
        p, q = generic_log(rng, gauss), generic_log(rng, gauss)
        coords = exp_G_coords(p, mpc(0), q, gauss).coords
        expected = sigma(p, gauss) ** 2 * sigma(p + q, gauss) \
            * exp(-zeta(q, gauss) * p) / sigma(q, gauss)
        assert abs(coords[3] - expected) < mpf(2) ** (-PREC + 32) \
            * max(1, abs(expected))

    def test_period_shift_ratio_consistency(self, noncm, rng):
        # coords 1-3 scale by (sigma(p+w)/sigma(p))^3; coords 4-5 pick up
        # the extra Serre factor exp(eta(w) q - zeta(q) w)
        p, q, t = generic_log(rng, noncm), generic_log(rng, noncm), \
            generic_t(rng)
        w = noncm.omega1
        a = exp_G_coords(p, t, q, noncm).coords
        b = exp_G_coords(p + w, t, q, noncm).coords
        lam = b[2] / a[2]
        fac = exp(eta_map((1, 0), noncm) * q - zeta(q, noncm) * w)
        tol = mpf(2) ** (-PREC + 40)
        for k in (0, 1):
            assert abs(b[k] / a[k] - lam) < tol * max(1, abs(lam))
        for k in (3, 4):
            assert abs(b[k] / a[k] - lam * fac) < tol * max(1, abs(lam * fac))

    def test_period_shift_with_compensated_t_is_projective(self, noncm, rng):
        # shifting p by w and t by zeta(q) w - eta(w) q is the same G-point:
        # all five coordinates share one scalar
        p, q, t = generic_log(rng, noncm), generic_log(rng, noncm), \
            generic_t(rng)
        w = noncm.omega2
        t2 = t + zeta(q, noncm) * w - eta_map((0, 1), noncm) * q
        a = exp_G_coords(p, t, q, noncm).coords
        b = exp_G_coords(p + w, t2, q, noncm).coords
        lam = b[2] / a[2]
        tol = mpf(2) ** (-PREC + 40)
        for x, y in zip(a, b):
            assert abs(y - lam * x) < tol * max(1, abs(lam * x))

    def test_chart_singularity(self, gauss, rng):
        p = generic_log(rng, gauss)
        with pytest.raises(ChartSingularity):
            exp_G_coords(p, mpc(1), -p, gauss)  # wp(-p) = wp(p)


class TestTorsionLog:
    def test_half_period(self, gauss, bounds):
        assert is_torsion_log(gauss.omega1 / 2, gauss, bounds) == 2

    def test_mixed_rational(self, gauss, bounds):
        p = mpf(3) / 10 * gauss.omega1 + mpf(1) / 4 * gauss.omega2
        assert is_torsion_log(p, gauss, bounds) == 20

    def test_generic_none(self, gauss, bounds, rng):
        assert is_torsion_log(generic_log(rng, gauss), gauss, bounds) is None


class TestGPointTorsion:
    def test_joint_torsion(self, gauss, bounds):
        assert gpoint_is_torsion(gauss.omega1 / 2, pi * mpc(0, 1), gauss,
                                 bounds)

    def test_t_not_in_two_pi_i_z(self, gauss, bounds):
        assert not gpoint_is_torsion(gauss.omega1 / 2, mpc(1), gauss, bounds)

    def test_planted_order_three(self, gauss, bounds):
        assert gpoint_is_torsion(gauss.omega1 / 3, two_pi_i() * mpf(5) / 3,
                                 gauss, bounds)


class TestMultRankGPoints:
    def test_li_pairs_have_full_rank(self, gauss, bounds, rng):
        # k-independent p's: rank n'r' (here 2 x 1)
        entries = [(i, 0, generic_log(rng, gauss), generic_t(rng))
                   for i in range(2)]
        rank, lattices = mult_rank_gpoints(entries, gauss, bounds)
        assert rank == 2 and lattices[0].rank == 0

    def test_planted_torsion_power(self, gauss, bounds, rng):
        p, t = generic_log(rng, gauss), generic_t(rng)
        p2 = 2 * p + gauss.omega1 / 5
        t2 = 2 * t + two_pi_i() * mpf(3) / 7
        rank, lattices = mult_rank_gpoints(
            [(0, 0, p, t), (1, 0, p2, t2)], gauss, bounds)
        assert rank == 1 and lattices[0].basis == [[2, -1]]

    def test_second_condition_fails(self, gauss, bounds, rng):
        p, t = generic_log(rng, gauss), generic_t(rng)
        p2 = 2 * p + gauss.omega1 / 5
        rank, _ = mult_rank_gpoints(
            [(0, 0, p, t), (1, 0, p2, generic_t(rng))], gauss, bounds)
        assert rank == 2

    def test_rank_invariant_under_torsion_twist(self, gauss, bounds, rng):
        p, t = generic_log(rng, gauss), generic_t(rng)
        base = [(0, 0, p, t)]
        twisted = [(0, 0, p + gauss.omega1 / 7, t + two_pi_i() / 5)]
        assert mult_rank_gpoints(base, gauss, bounds)[0] \
            == mult_rank_gpoints(twisted, gauss, bounds)[0] == 1

    def test_rank_additive_over_j(self, gauss, bounds, rng):
        p1, p2 = generic_log(rng, gauss), generic_log(rng, gauss)
        e1 = [(0, 0, p1, generic_t(rng)), (1, 0, p2, generic_t(rng))]
        e2 = [(0, 1, p1, generic_t(rng))]
        joint = mult_rank_gpoints(e1 + e2, gauss, bounds)[0]
        assert joint == mult_rank_gpoints(e1, gauss, bounds)[0] \
            + mult_rank_gpoints(e2, gauss, bounds)[0] == 3

    def test_power_product_does_not_raise_rank(self, gauss, bounds, rng):
        p, t = generic_log(rng, gauss), generic_t(rng)
        extra = (1, 0, 3 * p + gauss.omega2 / 2, 3 * t + two_pi_i() / 4)
        assert mult_rank_gpoints([(0, 0, p, t), extra], gauss, bounds)[0] == 1

    def test_empty(self, gauss, bounds):
        assert mult_rank_gpoints([], gauss, bounds) == (0, {})


class TestMultRankUnits:
    def test_root_of_unity(self, bounds):
        assert mult_rank_units([two_pi_i() / 7], bounds) == 0

    def test_rational_ratio(self, bounds):
        assert mult_rank_units([mpc(1), mpc(2)], bounds) == 1

    def test_pi_i_is_a_torsion_unit(self, bounds):
        # e^{pi i} = -1: the relation 2*(pi i) - (2 pi i) = 0 kills one rank
        assert mult_rank_units([mpc(1), pi * mpc(0, 1)], bounds) == 1
        assert mult_rank_units([pi * mpc(0, 1)], bounds) == 0

    def test_scaled_pi_i_independent(self, bounds, rng):
        # a generic multiple of pi i has no bounded relation with 2 pi i
        from conftest import generic_real
        assert mult_rank_units(
            [mpc(1), pi * mpc(0, 1) * generic_real(rng)], bounds) == 2

    def test_empty(self, bounds):
        assert mult_rank_units([], bounds) == 0
